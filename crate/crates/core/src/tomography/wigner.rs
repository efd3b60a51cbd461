use num_complex::Complex64;

use super::grid::{PhaseSpaceGrid, PhaseSpaceGridSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quadrature::trapezoid_nodes;
use crate::states::{PhaseSpaceMoments, Wavefunction};

/// Imaginary residue above which [`wigner_from_density`] fails.
pub const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-8;

/// Largest density-matrix magnitude allowed at the ends of the `u` range.
pub const TRUNCATION_LIMIT: f64 = 1e-10;

/// Wigner function of a Gaussian state, normalized so that
/// `integral W dq dp / (2 pi) = 1` (peak 2 for a pure state).
pub fn wigner_gaussian(m: &PhaseSpaceMoments, q: f64, p: f64) -> Result<f64> {
    let det = m.det();
    if !(det > 0.0) || !det.is_finite() {
        return Err(Error::Domain(format!(
            "singular covariance matrix (det = {det})"
        )));
    }
    let (dq, dp) = (q - m.q_mean, p - m.p_mean);
    let quad = (m.s_pp * dq * dq - 2.0 * m.s_qp * dq * dp + m.s_qq * dp * dp) / det;
    Ok((-0.5 * quad).exp() / det.sqrt())
}

pub fn wigner_grid_gaussian(
    m: &PhaseSpaceMoments,
    spec: PhaseSpaceGridSpec,
    exec: Execution,
) -> Result<PhaseSpaceGrid> {
    wigner_gaussian(m, m.q_mean, m.p_mean)?;
    let n_p = spec.p.n;
    let values = exec.map(spec.len(), |k| {
        wigner_gaussian(m, spec.q.node(k / n_p), spec.p.node(k % n_p)).expect("checked covariance")
    });
    PhaseSpaceGrid::from_values(spec, values)
}

/// Trapezoid rule over `u in [-u_max, u_max]` for the density-matrix Fourier integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerQuadrature {
    pub u_max: f64,
    pub n_u: usize,
}

impl WignerQuadrature {
    /// A rule resolving a Gaussian state with moments `m` on `spec`:
    /// `u_max` reaches 16 position standard deviations, and the node spacing
    /// resolves the fastest phase `e^{-ipu}` on the grid.
    pub fn for_moments(m: &PhaseSpaceMoments, spec: &PhaseSpaceGridSpec) -> Self {
        let sd = m.s_qq.sqrt();
        let u_max = 16.0 * sd;
        let p_reach = spec.p.min.abs().max(spec.p.max.abs()) + m.p_mean.abs();
        let du = (0.5 * sd).min(std::f64::consts::PI / (4.0 * p_reach.max(1.0)));
        let n_u = 2 * ((u_max / du).ceil() as usize) + 1;
        Self { u_max, n_u }
    }
}

/// Wigner function of the pure state `psi` on every node of `spec`.
pub fn wigner_from_density<W: Wavefunction + ?Sized>(
    psi: &W,
    spec: PhaseSpaceGridSpec,
    quad: WignerQuadrature,
    exec: Execution,
) -> Result<PhaseSpaceGrid> {
    wigner_from_density_matrix(
        |x, xp| psi.amplitude(x) * psi.amplitude(xp).conj(),
        spec,
        quad,
        exec,
    )
}

/// `W(q, p) = integral rho(q + u/2, q - u/2) e^{-ipu} du` by trapezoid
/// quadrature, for every node of `spec`.
pub fn wigner_from_density_matrix<R>(
    rho: R,
    spec: PhaseSpaceGridSpec,
    quad: WignerQuadrature,
    exec: Execution,
) -> Result<PhaseSpaceGrid>
where
    R: Fn(f64, f64) -> Complex64 + Sync,
{
    if !(quad.u_max > 0.0) || quad.n_u < 3 {
        return Err(Error::Domain(format!(
            "u quadrature needs u_max > 0 and at least 3 nodes, got {quad:?}"
        )));
    }
    let nodes = trapezoid_nodes(-quad.u_max, quad.u_max, quad.n_u);
    let du = 2.0 * quad.u_max / (quad.n_u - 1) as f64;

    let rows = exec.map(spec.q.n, |i| -> Result<Vec<f64>> {
        let q = spec.q.node(i);
        let terms: Vec<Complex64> = nodes
            .iter()
            .map(|&(u, w)| w * rho(q + 0.5 * u, q - 0.5 * u))
            .collect();
        let edge = (terms[0].norm() / nodes[0].1).max(terms[quad.n_u - 1].norm() / nodes[0].1);
        if edge > TRUNCATION_LIMIT {
            return Err(Error::Truncation {
                edge,
                threshold: TRUNCATION_LIMIT,
            });
        }
        spec.p
            .nodes()
            .map(|p| {
                let sum = fourier_sum(&terms, -quad.u_max, du, p);
                if sum.im.abs() > IMAGINARY_RESIDUE_LIMIT {
                    return Err(Error::QuadratureFailure {
                        residue: sum.im.abs(),
                        threshold: IMAGINARY_RESIDUE_LIMIT,
                    });
                }
                Ok(sum.re)
            })
            .collect()
    });

    let mut values = Vec::with_capacity(spec.len());
    for row in rows {
        values.extend(row?);
    }
    PhaseSpaceGrid::from_values(spec, values)
}

/// `sum_k terms[k] e^{-ip(u0 + k du)}`, advancing the phasor by
/// multiplication and re-seeding it periodically to bound rounding drift.
fn fourier_sum(terms: &[Complex64], u0: f64, du: f64, p: f64) -> Complex64 {
    const RESEED: usize = 64;
    let rotation = Complex64::from_polar(1.0, -p * du);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut phasor = Complex64::new(1.0, 0.0);
    for (k, term) in terms.iter().enumerate() {
        if k % RESEED == 0 {
            phasor = Complex64::from_polar(1.0, -p * (u0 + k as f64 * du));
        }
        sum += term * phasor;
        phasor *= rotation;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{phase_space_moments, CoherentLabel, CoherentState, FockState};
    use crate::trajectory::TrajectoryPoint;
    use std::f64::consts::SQRT_2;

    fn single_point(q: f64, p: f64) -> PhaseSpaceGridSpec {
        // 9 x 9 grid whose centre node is (q, p).
        PhaseSpaceGridSpec::new(q - 0.9, q + 0.9, p - 0.9, p + 0.9, 9, 9).unwrap()
    }

    #[test]
    fn gaussian_examples() {
        let vac = phase_space_moments(CoherentLabel::vacuum(), &TrajectoryPoint::initial());
        assert!((wigner_gaussian(&vac, 0.0, 0.0).unwrap() - 2.0).abs() < 1e-12);

        let pt = TrajectoryPoint::unit_frequency(0.8);
        let alpha = CoherentLabel::from_parts(0.6, 1.1).unwrap();
        let m = phase_space_moments(alpha, &pt);
        let v = phase_space_moments(CoherentLabel::vacuum(), &pt);
        let shift_q = SQRT_2 * (alpha.alpha() * pt.eps.conj()).re;
        let shift_p = SQRT_2 * (alpha.alpha() * pt.deps.conj()).re;
        for (q, p) in [(0.1, 0.2), (-1.0, 2.0), (3.0, -0.5)] {
            let a = wigner_gaussian(&m, q + shift_q, p + shift_p).unwrap();
            let b = wigner_gaussian(&v, q, p).unwrap();
            assert!((a - b).abs() < 1e-14);
            assert!(a >= 0.0);
        }
        let singular = PhaseSpaceMoments { s_qp: 0.5, ..v };
        assert!(wigner_gaussian(&singular, 0.0, 0.0).is_err());
    }

    #[test]
    fn numeric_examples() {
        let quad = WignerQuadrature {
            u_max: 20.0,
            n_u: 801,
        };
        let exec = Execution::Sequential;
        let vac = CoherentState::new(CoherentLabel::vacuum(), TrajectoryPoint::initial());
        let w = wigner_from_density(&vac, single_point(0.0, 0.0), quad, exec).unwrap();
        assert!((w.value(4, 4) - 2.0).abs() < 1e-6);

        let one = CoherentState::new(
            CoherentLabel::from_parts(1.0, 0.0).unwrap(),
            TrajectoryPoint::initial(),
        );
        let w = wigner_from_density(&one, single_point(SQRT_2, 0.0), quad, exec).unwrap();
        assert!((w.value(4, 4) - 2.0).abs() < 1e-6);

        let fock = FockState::new(1, TrajectoryPoint::initial()).unwrap();
        let w = wigner_from_density(&fock, single_point(0.0, 0.0), quad, exec).unwrap();
        assert!((w.value(4, 4) + 2.0).abs() < 1e-4);
    }

    #[test]
    fn short_u_range_is_truncation() {
        let vac = CoherentState::new(CoherentLabel::vacuum(), TrajectoryPoint::initial());
        let quad = WignerQuadrature {
            u_max: 3.0,
            n_u: 101,
        };
        let err = wigner_from_density(&vac, single_point(0.0, 0.0), quad, Execution::Sequential);
        assert!(matches!(err, Err(Error::Truncation { .. })));
    }

    #[test]
    fn non_hermitian_input_is_quadrature_failure() {
        let broken = |x: f64, xp: f64| Complex64::new(0.0, 1.0) * (-x * x - xp * xp).exp();
        let quad = WignerQuadrature {
            u_max: 20.0,
            n_u: 801,
        };
        let err =
            wigner_from_density_matrix(broken, single_point(0.3, 0.4), quad, Execution::Sequential);
        assert!(matches!(err, Err(Error::QuadratureFailure { .. })));
    }
}
