//! Numerical Lie group integrators over group actions with exact exponentials.

pub mod action;
pub mod analysis;
pub mod methods;
pub mod problem;

pub use action::{Action, Adjoint, Coords, SphereRotation, Translation};
pub use analysis::{convergence_order, integrate, isospectral_drift, Convergence, Trajectory};
pub use methods::{cf4_step, cg3_step, exp_euler_step, rkmk4_step, Method, StepResult};
pub use problem::Problem;

#[derive(Debug, thiserror::Error)]
pub enum NumError {
    #[error("non-finite state")]
    NonFinite,

    #[error("invalid step size {0}")]
    InvalidStep(f64),

    #[error("step size {h} does not divide the interval [0, {t_end}]")]
    Grid { h: f64, t_end: f64 },

    #[error("unknown method `{0}` (expected euler, rkmk4, cg3 or cf4)")]
    UnknownMethod(String),

    #[error("need at least three step sizes, got {0}")]
    TooFewPoints(usize),

    #[error("error {0:e} is below the noise floor; slope fit rejected")]
    BelowNoiseFloor(f64),

    #[error("reference solution failed: {0}")]
    Reference(Box<NumError>),

    #[error("symmetric eigensolver did not converge")]
    Eigen,
}

pub type Result<T> = std::result::Result<T, NumError>;
