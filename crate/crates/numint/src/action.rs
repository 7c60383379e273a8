//! Group actions whose frozen vector fields can be exponentiated exactly.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen, Vector3};

/// Coordinates of a Lie algebra element in a fixed basis.
pub type Coords = DVector<f64>;

/// A Lie algebra `g` of frozen vector fields acting on a manifold.
///
/// `bracket` is the Jacobi bracket of the generated vector fields. For a left
/// matrix action this is minus the matrix commutator.
pub trait Action: Send + Sync {
    type Point: Clone + Send + Sync;

    fn algebra_dim(&self) -> usize;

    fn bracket(&self, u: &Coords, v: &Coords) -> Coords;

    /// `exp(v)·y`, the time-one flow of the frozen field `v`.
    fn exp_act(&self, v: &Coords, y: &Self::Point) -> Self::Point;

    /// The generator `ξ_v(y)` in ambient coordinates.
    fn generator(&self, v: &Coords, y: &Self::Point) -> Vec<f64>;

    fn coords(&self, y: &Self::Point) -> Vec<f64>;

    fn from_coords(&self, c: &[f64]) -> Self::Point;

    /// Per-step invariant diagnostics between two states.
    fn diagnostics(&self, _before: &Self::Point, _after: &Self::Point) -> BTreeMap<String, f64> {
        BTreeMap::new()
    }

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64 {
        self.coords(a).iter().zip(self.coords(b)).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
    }
}

/// `so(3)` acting on `S² ⊂ ℝ³` by rotations; `v` is the axis-angle vector of `v̂`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SphereRotation;

fn v3(v: &Coords) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

/// `exp(ŵ)y` by the Rodrigues formula in its small-angle-safe form.
pub fn rodrigues(w: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
    let theta = w.norm();
    let (a, b) = if theta < 1e-8 {
        let t2 = theta * theta;
        (1.0 - t2 / 6.0, 0.5 - t2 / 24.0)
    } else {
        let s = (theta / 2.0).sin();
        (theta.sin() / theta, 2.0 * s * s / (theta * theta))
    };
    let wy = w.cross(y);
    y + wy * a + w.cross(&wy) * b
}

impl Action for SphereRotation {
    type Point = Vector3<f64>;

    fn algebra_dim(&self) -> usize {
        3
    }

    fn bracket(&self, u: &Coords, v: &Coords) -> Coords {
        let c = v3(v).cross(&v3(u));
        DVector::from_column_slice(c.as_slice())
    }

    fn exp_act(&self, v: &Coords, y: &Vector3<f64>) -> Vector3<f64> {
        rodrigues(&v3(v), y)
    }

    fn generator(&self, v: &Coords, y: &Vector3<f64>) -> Vec<f64> {
        v3(v).cross(y).as_slice().to_vec()
    }

    fn coords(&self, y: &Vector3<f64>) -> Vec<f64> {
        y.as_slice().to_vec()
    }

    fn from_coords(&self, c: &[f64]) -> Vector3<f64> {
        Vector3::new(c[0], c[1], c[2])
    }

    fn diagnostics(&self, before: &Vector3<f64>, after: &Vector3<f64>) -> BTreeMap<String, f64> {
        BTreeMap::from([("norm_drift".to_owned(), (after.norm() - before.norm()).abs())])
    }
}

/// `GL(n)` acting on `gl(n)` by similarity, `A·Y = AYA⁻¹`; coordinates are column-major.
#[derive(Debug, Clone, Copy)]
pub struct Adjoint {
    pub n: usize,
}

impl Adjoint {
    pub fn matrix(&self, v: &Coords) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.n, self.n, v.as_slice())
    }

    pub fn flatten(m: &DMatrix<f64>) -> Coords {
        DVector::from_column_slice(m.as_slice())
    }
}

/// Sorted eigenvalues of the symmetric part of `y`.
pub fn sorted_eigenvalues(y: &DMatrix<f64>) -> Option<Vec<f64>> {
    let sym = (y + y.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 10_000)?;
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Some(ev)
}

/// Largest deviation between the sorted spectra of `a` and `b`.
pub fn spectral_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Option<f64> {
    let (ea, eb) = (sorted_eigenvalues(a)?, sorted_eigenvalues(b)?);
    Some(ea.iter().zip(&eb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

impl Action for Adjoint {
    type Point = DMatrix<f64>;

    fn algebra_dim(&self) -> usize {
        self.n * self.n
    }

    fn bracket(&self, u: &Coords, v: &Coords) -> Coords {
        let (a, b) = (self.matrix(u), self.matrix(v));
        Self::flatten(&(&b * &a - &a * &b))
    }

    fn exp_act(&self, v: &Coords, y: &DMatrix<f64>) -> DMatrix<f64> {
        let a = self.matrix(v);
        let forward = a.clone().exp();
        let backward = (-a).exp();
        forward * y * backward
    }

    fn generator(&self, v: &Coords, y: &DMatrix<f64>) -> Vec<f64> {
        let a = self.matrix(v);
        (&a * y - y * &a).as_slice().to_vec()
    }

    fn coords(&self, y: &DMatrix<f64>) -> Vec<f64> {
        y.as_slice().to_vec()
    }

    fn from_coords(&self, c: &[f64]) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.n, self.n, c)
    }

    fn diagnostics(&self, before: &DMatrix<f64>, after: &DMatrix<f64>) -> BTreeMap<String, f64> {
        let drift = spectral_distance(before, after).unwrap_or(f64::NAN);
        BTreeMap::from([("eig_drift".to_owned(), drift)])
    }
}

/// `ℝⁿ` acting on itself by translation; all brackets vanish.
#[derive(Debug, Clone, Copy)]
pub struct Translation {
    pub n: usize,
}

impl Action for Translation {
    type Point = DVector<f64>;

    fn algebra_dim(&self) -> usize {
        self.n
    }

    fn bracket(&self, _u: &Coords, _v: &Coords) -> Coords {
        DVector::zeros(self.n)
    }

    fn exp_act(&self, v: &Coords, y: &DVector<f64>) -> DVector<f64> {
        y + v
    }

    fn generator(&self, v: &Coords, _y: &DVector<f64>) -> Vec<f64> {
        v.as_slice().to_vec()
    }

    fn coords(&self, y: &DVector<f64>) -> Vec<f64> {
        y.as_slice().to_vec()
    }

    fn from_coords(&self, c: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Rotation3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, n: usize) -> Coords {
        DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn check_bracket<A: Action>(action: &A, rng: &mut ChaCha8Rng) {
        for _ in 0..20 {
            let n = action.algebra_dim();
            let (x, y, z) = (random(rng, n), random(rng, n), random(rng, n));
            let anti = action.bracket(&x, &y) + action.bracket(&y, &x);
            assert!(anti.norm() < 1e-12);
            let jacobi = action.bracket(&x, &action.bracket(&y, &z))
                + action.bracket(&y, &action.bracket(&z, &x))
                + action.bracket(&z, &action.bracket(&x, &y));
            assert!(jacobi.norm() < 1e-12);
            let lin = action.bracket(&(&x * 2.0 + &z), &y) - (action.bracket(&x, &y) * 2.0 + action.bracket(&z, &y));
            assert!(lin.norm() < 1e-12);
        }
    }

    #[test]
    fn brackets_are_lie() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        check_bracket(&SphereRotation, &mut rng);
        check_bracket(&Adjoint { n: 3 }, &mut rng);
        check_bracket(&Translation { n: 3 }, &mut rng);
    }

    #[test]
    fn bracket_is_jacobi_bracket_of_fields() {
        // [ξ_u, ξ_v](y) = Dξ_v(y)·ξ_u(y) − Dξ_u(y)·ξ_v(y), linear fields here
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let act = SphereRotation;
        let (u, v) = (random(&mut rng, 3), random(&mut rng, 3));
        let y = Vector3::new(0.3, -0.4, 0.5);
        let xu = Vector3::from_vec(act.generator(&u, &y));
        let xv = Vector3::from_vec(act.generator(&v, &y));
        let expect = v3(&v).cross(&xu) - v3(&u).cross(&xv);
        let got = Vector3::from_vec(act.generator(&act.bracket(&u, &v), &y));
        assert!((expect - got).norm() < 1e-14);
    }

    #[test]
    fn sphere_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let act = SphereRotation;
        for _ in 0..50 {
            let y = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).normalize();
            let (u, v) = (random(&mut rng, 3) * 3.0, random(&mut rng, 3));
            assert_eq!(act.exp_act(&DVector::zeros(3), &y), y);
            let moved = act.exp_act(&u, &y);
            assert!((moved.norm() - 1.0).abs() < 1e-13);
            let oracle = Rotation3::new(v3(&u)) * y;
            assert!((moved - oracle).norm() < 1e-13);
            let both = act.exp_act(&u, &act.exp_act(&v, &y));
            let group = Rotation3::new(v3(&u)) * Rotation3::new(v3(&v)) * y;
            assert!((both - group).norm() < 1e-13);
        }
        let tiny = DVector::from_vec(vec![1e-10, -2e-10, 3e-11]);
        let y = Vector3::new(0.0, 0.6, 0.8);
        assert!((act.exp_act(&tiny, &y) - Rotation3::new(v3(&tiny)) * y).norm() < 1e-16);
    }

    #[test]
    fn adjoint_action_is_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let act = Adjoint { n: 3 };
        let y = DMatrix::from_fn(3, 3, |i, j| (i + 2 * j) as f64 * 0.3 - 0.7);
        let y = &y + y.transpose();
        let u = random(&mut rng, 9);
        assert!((act.exp_act(&DVector::zeros(9), &y) - &y).norm() < 1e-15);
        let moved = act.exp_act(&u, &y);
        assert!((moved.trace() - y.trace()).abs() < 1e-12);
        // group action: exp(u)·(exp(v)·y) = (e^U e^V) y (e^U e^V)⁻¹
        let v = random(&mut rng, 9);
        let g = act.matrix(&u).exp() * act.matrix(&v).exp();
        let direct = &g * &y * g.clone().try_inverse().unwrap();
        assert!((act.exp_act(&u, &act.exp_act(&v, &y)) - direct).norm() < 1e-12);
        // skew generators keep the symmetric spectrum
        let skew = act.matrix(&u) - act.matrix(&u).transpose();
        let rotated = act.exp_act(&Adjoint::flatten(&skew), &y);
        assert!(spectral_distance(&y, &rotated).unwrap() < 1e-13);
    }

    #[test]
    fn translation_action() {
        let act = Translation { n: 2 };
        let y = DVector::from_vec(vec![1.0, 2.0]);
        let v = DVector::from_vec(vec![0.5, -1.0]);
        assert_eq!(act.exp_act(&v, &y), DVector::from_vec(vec![1.5, 1.0]));
        assert_eq!(act.bracket(&v, &y), DVector::zeros(2));
    }
}
