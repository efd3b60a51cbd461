use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A frequency profile violates one of its invariants.
    #[error("invalid frequency profile: {0}")]
    InvalidProfile(String),

    /// The phase of the trajectory advanced by too much in a single step.
    #[error("step too coarse at t = {t}: phase increment {increment} rad cannot be unwound")]
    StepTooCoarse { t: f64, increment: f64 },

    /// The Wronskian drifted beyond its tolerance.
    #[error("integration diverged at t = {t}: |W - 2i| = {drift:e} exceeds {tolerance:e}")]
    IntegrationDiverged { t: f64, drift: f64, tolerance: f64 },

    /// Quantities that must be consistent by construction were not.
    #[error("internal consistency violated: {0}")]
    Inconsistent(String),

    /// A numeric quadrature produced an imaginary residue above its threshold.
    #[error("quadrature failure: imaginary residue {residue:e} exceeds {threshold:e}")]
    QuadratureFailure { residue: f64, threshold: f64 },

    /// A grid does not cover the support of the function sampled on it.
    #[error("support truncated: edge magnitude {edge:e} exceeds {threshold:e}")]
    Truncation { edge: f64, threshold: f64 },

    /// The fractional-Fourier route is singular for this frame.
    #[error("frame nu = {nu} is too close to zero for the fractional-Fourier route; use the analytic tomogram")]
    NearSingularFrame { nu: f64 },

    /// A requested time does not fall on the trajectory grid.
    #[error("time {t} is not on the trajectory grid (step {step}, t_max {t_max})")]
    OffGrid { t: f64, step: f64, t_max: f64 },

    #[error("invalid configuration at `{key}`: {reason}")]
    Config { key: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
