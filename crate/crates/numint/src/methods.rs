//! One-step Lie group integrators.
//!
//! Products of exponentials are written left to right in the order the flows
//! are applied: `exp(A)·exp(B)·y` means "flow along `A`, then along `B`".

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::action::{Action, Coords};
use crate::problem::Problem;
use crate::{NumError, Result};

/// Output of one step.
#[derive(Debug, Clone)]
pub struct StepResult<P> {
    pub y: P,
    pub diagnostics: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExpEuler,
    Rkmk4,
    Cg3,
    Cf4,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::ExpEuler, Method::Rkmk4, Method::Cg3, Method::Cf4];

    pub fn name(self) -> &'static str {
        match self {
            Method::ExpEuler => "euler",
            Method::Rkmk4 => "rkmk4",
            Method::Cg3 => "cg3",
            Method::Cf4 => "cf4",
        }
    }

    /// Classical order of accuracy.
    pub fn order(self) -> u32 {
        match self {
            Method::ExpEuler => 1,
            Method::Cg3 => 3,
            Method::Rkmk4 | Method::Cf4 => 4,
        }
    }

    pub fn step<A: Action>(self, p: &Problem<A>, y0: &A::Point, h: f64) -> Result<StepResult<A::Point>> {
        match self {
            Method::ExpEuler => exp_euler_step(p, y0, h),
            Method::Rkmk4 => rkmk4_step(p, y0, h),
            Method::Cg3 => cg3_step(p, y0, h),
            Method::Cf4 => cf4_step(p, y0, h),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| NumError::UnknownMethod(s.to_owned()))
    }
}

fn lin(terms: &[(f64, &Coords)]) -> Coords {
    let mut out = terms[0].1 * terms[0].0;
    for (c, v) in &terms[1..] {
        out += *v * *c;
    }
    out
}

fn finish<A: Action>(p: &Problem<A>, y0: &A::Point, y: A::Point) -> Result<StepResult<A::Point>> {
    if p.action.coords(&y).iter().any(|x| !x.is_finite()) {
        return Err(NumError::NonFinite);
    }
    let diagnostics = p.action.diagnostics(y0, &y);
    Ok(StepResult { y, diagnostics })
}

fn check_h(h: f64) -> Result<()> {
    if h.is_finite() {
        Ok(())
    } else {
        Err(NumError::InvalidStep(h))
    }
}

/// Flow along each field in turn, starting from `y`.
fn flow_sequence<A: Action>(p: &Problem<A>, fields: &[Coords], y: &A::Point) -> A::Point {
    fields.iter().fold(y.clone(), |acc, v| p.action.exp_act(v, &acc))
}

/// `y₁ = exp(h f(y₀))·y₀`.
pub fn exp_euler_step<A: Action>(p: &Problem<A>, y0: &A::Point, h: f64) -> Result<StepResult<A::Point>> {
    check_h(h)?;
    let f1 = p.frozen(y0) * h;
    finish(p, y0, p.action.exp_act(&f1, y0))
}

/// Fourth order Runge–Kutta–Munthe-Kaas.
pub fn rkmk4_step<A: Action>(p: &Problem<A>, y0: &A::Point, h: f64) -> Result<StepResult<A::Point>> {
    check_h(h)?;
    let act = &p.action;
    let f1 = p.frozen(y0) * h;
    let f2 = p.frozen(&act.exp_act(&(&f1 * 0.5), y0)) * h;
    let u3 = lin(&[(0.5, &f2), (1.0 / 24.0, &act.bracket(&f1, &f2))]);
    let f3 = p.frozen(&act.exp_act(&u3, y0)) * h;
    let u4 = lin(&[(1.0, &f3), (1.0 / 6.0, &act.bracket(&f1, &f3))]);
    let f4 = p.frozen(&act.exp_act(&u4, y0)) * h;
    let v = lin(&[(1.0 / 6.0, &f1), (1.0 / 3.0, &f2), (1.0 / 3.0, &f3), (1.0 / 6.0, &f4)]);
    let i = lin(&[(1.0 / 8.0, &f1), (1.0 / 12.0, &f2), (1.0 / 12.0, &f3), (-1.0 / 24.0, &f4)]);
    let u = &v + act.bracket(&i, &v);
    finish(p, y0, act.exp_act(&u, y0))
}

/// Third order Crouch–Grossman with `c = (0, 3/4, 17/24)`.
pub fn cg3_step<A: Action>(p: &Problem<A>, y0: &A::Point, h: f64) -> Result<StepResult<A::Point>> {
    check_h(h)?;
    let f1 = p.frozen(y0) * h;
    let f2 = p.frozen(&p.action.exp_act(&(&f1 * 0.75), y0)) * h;
    let y3 = flow_sequence(p, &[&f1 * (119.0 / 216.0), &f2 * (17.0 / 108.0)], y0);
    let f3 = p.frozen(&y3) * h;
    let y1 = flow_sequence(p, &[&f1 * (13.0 / 51.0), &f2 * (-2.0 / 3.0), &f3 * (24.0 / 17.0)], y0);
    finish(p, y0, y1)
}

/// Fourth order commutator-free method.
pub fn cf4_step<A: Action>(p: &Problem<A>, y0: &A::Point, h: f64) -> Result<StepResult<A::Point>> {
    check_h(h)?;
    let act = &p.action;
    let f1 = p.frozen(y0) * h;
    let y2 = act.exp_act(&(&f1 * 0.5), y0);
    let f2 = p.frozen(&y2) * h;
    let f3 = p.frozen(&act.exp_act(&(&f2 * 0.5), y0)) * h;
    let y4 = act.exp_act(&lin(&[(-0.5, &f1), (1.0, &f3)]), &y2);
    let f4 = p.frozen(&y4) * h;
    let first = lin(&[(0.25, &f1), (1.0 / 6.0, &f2), (1.0 / 6.0, &f3), (-1.0 / 12.0, &f4)]);
    let second = lin(&[(-1.0 / 12.0, &f1), (1.0 / 6.0, &f2), (1.0 / 6.0, &f3), (0.25, &f4)]);
    finish(p, y0, flow_sequence(p, &[first, second], y0))
}

/// The classical fourth order Runge–Kutta step on the ambient vector field `F(y) = ξ_{f(y)}(y)`.
pub fn classical_rk4_step<A: Action>(p: &Problem<A>, y0: &A::Point, h: f64) -> Result<StepResult<A::Point>> {
    check_h(h)?;
    let act = &p.action;
    let field = |y: &[f64]| {
        let pt = act.from_coords(y);
        act.generator(&p.frozen(&pt), &pt)
    };
    let axpy = |y: &[f64], a: f64, k: &[f64]| y.iter().zip(k).map(|(y, k)| y + a * k).collect::<Vec<_>>();
    let y = act.coords(y0);
    let k1 = field(&y);
    let k2 = field(&axpy(&y, h / 2.0, &k1));
    let k3 = field(&axpy(&y, h / 2.0, &k2));
    let k4 = field(&axpy(&y, h, &k3));
    let y1: Vec<f64> = (0..y.len()).map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect();
    finish(p, y0, act.from_coords(&y1))
}
