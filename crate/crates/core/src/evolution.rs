//! Tomogram evolution by substitution of Heisenberg-transformed frames.
//!
//! For a quadratic Hamiltonian the Heisenberg operators are linear,
//! `q_H = Re eps q + Im eps p` and `p_H = Re eps' q + Im eps' p`, so the
//! tomogram at time `t` is the initial tomogram read at the transformed
//! frame. No propagator kernel is ever integrated.

use crate::error::Result;
use crate::tomography::{Gaussian1D, ReferenceFrame, Tomogram};
use crate::trajectory::TrajectoryPoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergFrame {
    pub mu_h: f64,
    pub nu_h: f64,
    pub t: f64,
}

impl HeisenbergFrame {
    pub fn as_frame(&self) -> Result<ReferenceFrame> {
        ReferenceFrame::new(self.mu_h, self.nu_h)
    }
}

pub fn heisenberg_frame(frame: ReferenceFrame, pt: &TrajectoryPoint) -> HeisenbergFrame {
    let (mu, nu) = (frame.mu(), frame.nu());
    HeisenbergFrame {
        mu_h: mu * pt.eps.re + nu * pt.deps.re,
        nu_h: mu * pt.eps.im + nu * pt.deps.im,
        t: pt.t,
    }
}

/// Determinant of `(mu, nu) -> (mu_H, nu_H)`; equals `Im(conj(eps) eps') = 1`.
pub fn frame_map_determinant(pt: &TrajectoryPoint) -> f64 {
    pt.eps.re * pt.deps.im - pt.eps.im * pt.deps.re
}

/// `w_t(X | mu, nu) = w_0(X | mu_H(t), nu_H(t))`.
pub fn propagate_tomogram<T: Tomogram + ?Sized>(
    initial: &T,
    frame: ReferenceFrame,
    pt: &TrajectoryPoint,
    x: f64,
) -> Result<f64> {
    let h = heisenberg_frame(frame, pt).as_frame()?;
    Ok(initial.density(x, h))
}

/// The initial tomogram viewed at a later trajectory point.
pub struct EvolvedTomogram<T> {
    initial: T,
    point: TrajectoryPoint,
}

impl<T: Tomogram> EvolvedTomogram<T> {
    pub fn new(initial: T, point: TrajectoryPoint) -> Self {
        Self { initial, point }
    }
}

impl<T: Tomogram> Tomogram for EvolvedTomogram<T> {
    fn density(&self, x: f64, frame: ReferenceFrame) -> f64 {
        propagate_tomogram(&self.initial, frame, &self.point, x).unwrap_or(f64::NAN)
    }

    fn gaussian(&self, frame: ReferenceFrame) -> Option<Gaussian1D> {
        let h = heisenberg_frame(frame, &self.point).as_frame().ok()?;
        self.initial.gaussian(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{phase_space_moments, CoherentLabel};
    use crate::tomography::symplectic_tomogram;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn frame_examples() {
        let f = ReferenceFrame::new(0.4, -1.3).unwrap();
        let h = heisenberg_frame(f, &TrajectoryPoint::initial());
        assert_eq!((h.mu_h, h.nu_h), (0.4, -1.3));

        let quarter = TrajectoryPoint::unit_frequency(FRAC_PI_2);
        let h = heisenberg_frame(ReferenceFrame::new(1.0, 0.0).unwrap(), &quarter);
        assert!(h.mu_h.abs() < 1e-15 && (h.nu_h - 1.0).abs() < 1e-15);
        let h = heisenberg_frame(ReferenceFrame::new(0.0, 1.0).unwrap(), &quarter);
        assert!((h.mu_h + 1.0).abs() < 1e-15 && h.nu_h.abs() < 1e-15);
    }

    #[test]
    fn propagation_examples() {
        let alpha = CoherentLabel::from_parts(0.8, -0.6).unwrap();
        let initial = phase_space_moments(alpha, &TrajectoryPoint::initial());
        let f = ReferenceFrame::new(1.0, 0.0).unwrap();
        let at_zero = propagate_tomogram(&initial, f, &TrajectoryPoint::initial(), 0.2).unwrap();
        assert_eq!(at_zero, initial.density(0.2, f));

        let quarter = TrajectoryPoint::unit_frequency(FRAC_PI_2);
        let evolved = EvolvedTomogram::new(initial, quarter);
        let g = evolved.gaussian(f).unwrap();
        assert!((g.mean() - SQRT_2 * -0.6).abs() < 1e-14);

        let direct = symplectic_tomogram(&phase_space_moments(alpha, &quarter), f).unwrap();
        assert!((g.variance() - direct.variance()).abs() < 1e-15);
        assert!((frame_map_determinant(&quarter) - 1.0).abs() < 1e-15);
    }
}
