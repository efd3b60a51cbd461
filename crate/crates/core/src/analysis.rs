//! Uncertainty products, the position-momentum correlation coefficient and
//! squeezing detection along a trajectory.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::states::{phase_space_moments, CoherentLabel, PhaseSpaceMoments};
use crate::trajectory::{ClassicalTrajectory, TrajectoryPoint};

/// Values within this band of the vacuum reference are not flagged.
pub const FLAG_TOLERANCE: f64 = 1e-12;

/// Allowed shortfall of `|eps eps'|` below 1.
pub const PRODUCT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingRecord {
    pub t: f64,
    pub var_q: f64,
    pub var_p: f64,
    pub r_squared: f64,
    pub q_squeezed: bool,
    pub p_squeezed: bool,
    pub correlated: bool,
}

/// `r^2 = 1 - |eps eps'|^{-2}`.
pub fn correlation_coefficient_sq(pt: &TrajectoryPoint) -> Result<f64> {
    let product = pt.eps.norm() * pt.deps.norm();
    if product < 1.0 - PRODUCT_TOLERANCE {
        return Err(Error::Inconsistent(format!(
            "|eps eps'| = {product} < 1 at t = {}; the Wronskian has drifted",
            pt.t
        )));
    }
    Ok(clamped_r_squared(pt))
}

fn clamped_r_squared(pt: &TrajectoryPoint) -> f64 {
    let product_sq = pt.eps.norm_sqr() * pt.deps.norm_sqr();
    (1.0 - product_sq.recip()).clamp(0.0, 1.0 - f64::EPSILON)
}

/// `(s_qq s_pp, s_qq s_pp - s_qp^2)`.
pub fn uncertainty_products(m: &PhaseSpaceMoments) -> (f64, f64) {
    (m.s_qq * m.s_pp, m.det())
}

/// One record per trajectory point. The flags depend only on `(eps, eps')`;
/// `alpha` merely displaces the state.
pub fn squeezing_report(traj: &ClassicalTrajectory, alpha: CoherentLabel) -> Vec<SqueezingRecord> {
    let points = traj.points();
    Execution::default().map(points.len(), |k| squeezing_record(&points[k], alpha))
}

fn squeezing_record(pt: &TrajectoryPoint, alpha: CoherentLabel) -> SqueezingRecord {
    let m = phase_space_moments(alpha, pt);
    let (eps_sq, deps_sq) = (pt.eps.norm_sqr(), pt.deps.norm_sqr());
    SqueezingRecord {
        t: pt.t,
        var_q: m.s_qq,
        var_p: m.s_pp,
        r_squared: clamped_r_squared(pt),
        q_squeezed: eps_sq < 1.0 - FLAG_TOLERANCE,
        p_squeezed: deps_sq < 1.0 - FLAG_TOLERANCE,
        correlated: eps_sq * deps_sq > 1.0 + FLAG_TOLERANCE,
    }
}
