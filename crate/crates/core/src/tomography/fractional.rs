use std::f64::consts::PI;

use num_complex::Complex64;

use super::ReferenceFrame;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quadrature::trapezoid_nodes;
use crate::states::Wavefunction;

/// Frames with `|nu|` at or below this are refused by the fractional-Fourier route.
pub const MIN_FRACTIONAL_NU: f64 = 1e-3;

/// Trapezoid rule over `y in [-y_max, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalQuadrature {
    pub y_max: f64,
    pub n_y: usize,
}

impl Default for FractionalQuadrature {
    fn default() -> Self {
        Self {
            y_max: 12.0,
            n_y: 4096,
        }
    }
}

/// `w(X | mu, nu) = |integral psi(y) e^{i mu y^2 / (2 nu) - i X y / nu} dy|^2 / (2 pi |nu|)`.
pub fn tomogram_via_fractional_fourier<W: Wavefunction + ?Sized>(
    psi: &W,
    frame: ReferenceFrame,
    x: f64,
    quad: FractionalQuadrature,
) -> Result<f64> {
    Ok(fractional_fourier_tomogram(psi, frame, &[x], quad, Execution::Sequential)?[0])
}

/// [`tomogram_via_fractional_fourier`] at every `X` in `xs`, sharing the
/// chirped wavefunction samples.
pub fn fractional_fourier_tomogram<W: Wavefunction + ?Sized>(
    psi: &W,
    frame: ReferenceFrame,
    xs: &[f64],
    quad: FractionalQuadrature,
    exec: Execution,
) -> Result<Vec<f64>> {
    let (mu, nu) = (frame.mu(), frame.nu());
    if nu.abs() <= MIN_FRACTIONAL_NU {
        return Err(Error::NearSingularFrame { nu });
    }
    if !(quad.y_max > 0.0) || quad.n_y < 2 {
        return Err(Error::Domain(format!(
            "invalid fractional-Fourier quadrature {quad:?}"
        )));
    }
    let chirped: Vec<(f64, Complex64)> = trapezoid_nodes(-quad.y_max, quad.y_max, quad.n_y)
        .into_iter()
        .map(|(y, w)| {
            (
                y,
                w * psi.amplitude(y) * Complex64::from_polar(1.0, mu * y * y / (2.0 * nu)),
            )
        })
        .collect();
    let scale = 1.0 / (2.0 * PI * nu.abs());
    Ok(exec.map(xs.len(), |k| {
        let x = xs[k];
        let sum: Complex64 = chirped
            .iter()
            .map(|&(y, a)| a * Complex64::from_polar(1.0, -x * y / nu))
            .sum();
        scale * sum.norm_sqr()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{CoherentLabel, CoherentState};
    use crate::trajectory::TrajectoryPoint;

    #[test]
    fn vacuum_momentum_peak() {
        let vac = CoherentState::new(CoherentLabel::vacuum(), TrajectoryPoint::initial());
        let frame = ReferenceFrame::new(0.0, 1.0).unwrap();
        let w = tomogram_via_fractional_fourier(&vac, frame, 0.0, FractionalQuadrature::default())
            .unwrap();
        assert!((w - 1.0 / PI.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn near_singular_frame_is_signalled() {
        let vac = CoherentState::new(CoherentLabel::vacuum(), TrajectoryPoint::initial());
        let frame = ReferenceFrame::new(1.0, 5e-4).unwrap();
        let err =
            tomogram_via_fractional_fourier(&vac, frame, 0.0, FractionalQuadrature::default());
        assert!(matches!(err, Err(Error::NearSingularFrame { .. })));
    }
}
