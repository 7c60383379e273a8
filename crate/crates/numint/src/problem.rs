//! Test problems `y′ = f(y)·y` over the shipped actions.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Vector3};

use crate::action::{rodrigues, Action, Adjoint, Coords, SphereRotation, Translation};

type Field<P> = Arc<dyn Fn(&P) -> Coords + Send + Sync>;
type Flow<P> = Arc<dyn Fn(f64) -> P + Send + Sync>;

/// An ODE written through a frozen-field map `f: M → g`.
#[derive(Clone)]
pub struct Problem<A: Action> {
    pub name: String,
    pub action: A,
    pub y0: A::Point,
    field: Field<A::Point>,
    exact: Option<Flow<A::Point>>,
}

impl<A: Action> fmt::Debug for Problem<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem").field("name", &self.name).field("closed_form", &self.exact.is_some()).finish()
    }
}

impl<A: Action> Problem<A> {
    pub fn new(name: impl Into<String>, action: A, y0: A::Point, field: impl Fn(&A::Point) -> Coords + Send + Sync + 'static) -> Self {
        Self { name: name.into(), action, y0, field: Arc::new(field), exact: None }
    }

    /// Attach the exact flow `t ↦ y(t)`.
    pub fn with_exact(mut self, flow: impl Fn(f64) -> A::Point + Send + Sync + 'static) -> Self {
        self.exact = Some(Arc::new(flow));
        self
    }

    /// `f(y) ∈ g`.
    pub fn frozen(&self, y: &A::Point) -> Coords {
        (self.field)(y)
    }

    pub fn exact(&self, t: f64) -> Option<A::Point> {
        self.exact.as_ref().map(|flow| flow(t))
    }
}

/// Angular velocity of the sphere test problem, `w(y) = (sin y₃ + 1, y₁y₂ + ½, cos y₁)`.
pub fn sphere_velocity(y: &Vector3<f64>) -> Vector3<f64> {
    Vector3::new(y[2].sin() + 1.0, y[0] * y[1] + 0.5, y[0].cos())
}

/// `y′ = w(y) × y` on `S²` from the north pole.
pub fn sphere_problem() -> Problem<SphereRotation> {
    Problem::new("sphere", SphereRotation, Vector3::new(0.0, 0.0, 1.0), |y| {
        let w = sphere_velocity(y);
        DVector::from_column_slice(w.as_slice())
    })
}

/// Rigid rotation with constant angular velocity `w`, with its closed-form flow.
pub fn rotation_problem(w: Vector3<f64>, y0: Vector3<f64>) -> Problem<SphereRotation> {
    let coords = DVector::from_column_slice(w.as_slice());
    Problem::new("rotation", SphereRotation, y0, move |_| coords.clone()).with_exact(move |t| rodrigues(&(w * t), &y0))
}

/// The Toda generator `B(Y) = Y₊ − Y₋` (strict upper minus strict lower part).
pub fn toda_b(y: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(y.nrows(), y.ncols(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => y[(i, j)],
        std::cmp::Ordering::Greater => -y[(i, j)],
        std::cmp::Ordering::Equal => 0.0,
    })
}

/// Isospectral Toda flow `Y′ = [B(Y), Y]` on symmetric tridiagonal `n×n` matrices.
pub fn toda_problem(n: usize) -> Problem<Adjoint> {
    let y0 = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0 - i as f64 * 0.75
        } else if i.abs_diff(j) == 1 {
            0.8 + 0.1 * i.min(j) as f64
        } else {
            0.0
        }
    });
    Problem::new("isospectral", Adjoint { n }, y0, |y| Adjoint::flatten(&toda_b(y)))
}

/// `y′ = F(y)` on `ℝ³` with `F(y) = (y₂, −sin y₁, y₁y₃/10)`, under translations.
pub fn translation_problem() -> Problem<Translation> {
    Problem::new("rn", Translation { n: 3 }, DVector::from_vec(vec![1.0, 0.0, 1.0]), translation_field)
}

pub fn translation_field(y: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![y[1], -y[0].sin(), 0.1 * y[0] * y[2]])
}
