//! Trajectories, convergence-order fits and invariant drift.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::action::{spectral_distance, Action, Adjoint};
use crate::methods::Method;
use crate::problem::Problem;
use crate::{NumError, Result};

/// Errors at or below this size carry no order information.
pub const NOISE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct Trajectory<P> {
    pub times: Vec<f64>,
    pub states: Vec<P>,
    /// Diagnostics of the step that produced each state; empty for the initial one.
    pub diagnostics: Vec<BTreeMap<String, f64>>,
}

impl<P> Trajectory<P> {
    pub fn last(&self) -> &P {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Number of steps of size `h` covering `[0, t_end]`.
pub fn step_count(h: f64, t_end: f64) -> Result<usize> {
    if !(h.is_finite() && h > 0.0 && t_end.is_finite() && t_end >= 0.0) {
        return Err(NumError::InvalidStep(h));
    }
    let n = (t_end / h).round();
    if ((n * h) - t_end).abs() > 1e-9 * t_end.max(1.0) {
        return Err(NumError::Grid { h, t_end });
    }
    Ok(n as usize)
}

pub fn integrate<A: Action>(p: &Problem<A>, method: Method, h: f64, t_end: f64) -> Result<Trajectory<A::Point>> {
    let n = step_count(h, t_end)?;
    let mut out = Trajectory { times: vec![0.0], states: vec![p.y0.clone()], diagnostics: vec![BTreeMap::new()] };
    let mut y = p.y0.clone();
    for k in 1..=n {
        let step = method.step(p, &y, h)?;
        y = step.y;
        out.times.push(k as f64 * h);
        out.states.push(y.clone());
        out.diagnostics.push(step.diagnostics);
    }
    Ok(out)
}

/// Endpoint only, without storing the path.
pub fn endpoint<A: Action>(p: &Problem<A>, method: Method, h: f64, t_end: f64) -> Result<A::Point> {
    let n = step_count(h, t_end)?;
    let mut y = p.y0.clone();
    for _ in 0..n {
        y = method.step(p, &y, h)?.y;
    }
    Ok(y)
}

/// The reference endpoint: the closed form if known, otherwise RKMK4 at `h_min/100`.
pub fn reference_endpoint<A: Action>(p: &Problem<A>, h_min: f64, t_end: f64) -> Result<A::Point> {
    match p.exact(t_end) {
        Some(y) => Ok(y),
        None => endpoint(p, Method::Rkmk4, h_min / 100.0, t_end).map_err(|e| NumError::Reference(Box::new(e))),
    }
}

#[derive(Debug, Clone)]
pub struct Convergence {
    pub method: Method,
    pub hs: Vec<f64>,
    pub errors: Vec<f64>,
    /// Least-squares slope of `log(error)` against `log(h)`.
    pub slope: f64,
}

/// Least-squares slope of `log e` against `log h`.
pub fn fit_slope(hs: &[f64], errors: &[f64]) -> Result<f64> {
    if hs.len() < 3 || hs.len() != errors.len() {
        return Err(NumError::TooFewPoints(hs.len()));
    }
    if let Some(&e) = errors.iter().find(|e| !(**e > NOISE_FLOOR)) {
        return Err(NumError::BelowNoiseFloor(e));
    }
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Measure the order of `method` from endpoint errors at `t_end` over `hs`.
pub fn convergence_order<A: Action>(p: &Problem<A>, method: Method, hs: &[f64], t_end: f64) -> Result<Convergence>
where
    A::Point: Send,
{
    if hs.len() < 3 {
        return Err(NumError::TooFewPoints(hs.len()));
    }
    let h_min = hs.iter().copied().fold(f64::INFINITY, f64::min);
    let reference = reference_endpoint(p, h_min, t_end)?;
    let errors = hs
        .par_iter()
        .map(|&h| endpoint(p, method, h, t_end).map(|y| p.action.distance(&y, &reference)))
        .collect::<Result<Vec<f64>>>()?;
    let slope = fit_slope(hs, &errors)?;
    Ok(Convergence { method, hs: hs.to_vec(), errors, slope })
}

/// `h = 2⁻ᵏ` for `k ∈ from..=to`.
pub fn dyadic_steps(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|k| 2f64.powi(-k)).collect()
}

/// Largest deviation of the sorted spectrum from that of `Y(0)` along the numerical solution.
pub fn isospectral_drift(p: &Problem<Adjoint>, method: Method, h: f64, t_end: f64) -> Result<f64> {
    let steps = if h == 0.0 { 1 } else { step_count(h, t_end)? };
    let mut y = p.y0.clone();
    let mut worst: f64 = 0.0;
    for _ in 0..steps {
        y = method.step(p, &y, h)?.y;
        worst = worst.max(spectral_distance(&p.y0, &y).ok_or(NumError::Eigen)?);
    }
    Ok(worst)
}

/// Same measurement for the classical RK4 applied to `Y′ = [B(Y), Y]` in matrix coordinates.
pub fn ambient_rk4_isospectral_drift(p: &Problem<Adjoint>, h: f64, t_end: f64) -> Result<f64> {
    let steps = step_count(h, t_end)?;
    let mut y = p.y0.clone();
    let mut worst: f64 = 0.0;
    for _ in 0..steps {
        y = crate::methods::classical_rk4_step(p, &y, h)?.y;
        worst = worst.max(spectral_distance(&p.y0, &y).ok_or(NumError::Eigen)?);
    }
    Ok(worst)
}

/// `‖Ψ₋ₕ(Ψₕ(y₀)) − y₀‖`.
pub fn symmetry_defect<A: Action>(p: &Problem<A>, method: Method, h: f64) -> Result<f64> {
    let forward = method.step(p, &p.y0, h)?.y;
    let back = method.step(p, &forward, -h)?.y;
    Ok(p.action.distance(&back, &p.y0))
}
