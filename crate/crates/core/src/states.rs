//! Vacuum, coherent and Fock states of the parametric oscillator, built from
//! a single trajectory point.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::trajectory::TrajectoryPoint;

/// Largest Fock index and Hermite degree supported.
pub const MAX_FOCK_INDEX: usize = 200;

/// Largest `|alpha|` accepted by [`CoherentLabel::new`].
pub const MAX_ALPHA: f64 = 1e3;

/// Time-independent eigenvalue `alpha` of the annihilation-like integral of motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentLabel(Complex64);

impl CoherentLabel {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
        }
        if alpha.norm() > MAX_ALPHA {
            return Err(Error::Domain(format!(
                "|alpha| must not exceed {MAX_ALPHA}, got {}",
                alpha.norm()
            )));
        }
        Ok(Self(alpha))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn vacuum() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn alpha(&self) -> Complex64 {
        self.0
    }
}

/// First moments and covariance matrix of a Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceMoments {
    pub t: f64,
    pub q_mean: f64,
    pub p_mean: f64,
    pub s_qq: f64,
    pub s_pp: f64,
    pub s_qp: f64,
}

impl PhaseSpaceMoments {
    /// `s_qq s_pp - s_qp^2`; 1/4 for every pure Gaussian state.
    pub fn det(&self) -> f64 {
        self.s_qq * self.s_pp - self.s_qp * self.s_qp
    }
}

/// Moments of the coherent state `|alpha, t>`.
pub fn phase_space_moments(alpha: CoherentLabel, pt: &TrajectoryPoint) -> PhaseSpaceMoments {
    let a = alpha.alpha();
    PhaseSpaceMoments {
        t: pt.t,
        q_mean: SQRT_2 * (a * pt.eps.conj()).re,
        p_mean: SQRT_2 * (a * pt.deps.conj()).re,
        s_qq: 0.5 * pt.eps.norm_sqr(),
        s_pp: 0.5 * pt.deps.norm_sqr(),
        s_qp: 0.5 * (pt.deps * pt.eps.conj()).re,
    }
}

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    if n > MAX_FOCK_INDEX {
        return Err(Error::Domain(format!(
            "Hermite degree must not exceed {MAX_FOCK_INDEX}, got {n}"
        )));
    }
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `H_n(y) / sqrt(2^n n!)` as `(mantissa, ln scale)`, rescaled during the
/// recurrence so large `n` or `y` neither overflows nor underflows.
fn normalized_hermite(n: usize, y: f64) -> (f64, f64) {
    const BIG: f64 = 1e150;
    let (mut prev, mut cur) = (1.0, SQRT_2 * y);
    let mut log_scale = 0.0;
    if n == 0 {
        return (prev, log_scale);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * y * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            log_scale += BIG.ln();
        }
    }
    (cur, log_scale)
}

/// A position-representation wavefunction.
pub trait Wavefunction: Sync {
    fn amplitude(&self, x: f64) -> Complex64;
}

impl<F> Wavefunction for F
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn amplitude(&self, x: f64) -> Complex64 {
        self(x)
    }
}

/// `ln psi_0(x, t)`.
fn vacuum_log_amplitude(pt: &TrajectoryPoint, x: f64) -> Complex64 {
    let ln_eps = Complex64::new(pt.eps.norm().ln(), pt.eps_phase);
    Complex64::new(-0.25 * PI.ln(), 0.0) - 0.5 * ln_eps
        + Complex64::i() * pt.deps * x * x / (2.0 * pt.eps)
}

/// Gaussian ground state of the parametric oscillator.
pub fn vacuum_wavefunction(pt: &TrajectoryPoint, x: f64) -> Complex64 {
    vacuum_log_amplitude(pt, x).exp()
}

pub fn coherent_wavefunction(alpha: CoherentLabel, pt: &TrajectoryPoint, x: f64) -> Complex64 {
    let a = alpha.alpha();
    let exponent =
        -0.5 * a.norm_sqr() + SQRT_2 * a * x / pt.eps - a * a * pt.eps.conj() / (2.0 * pt.eps);
    (vacuum_log_amplitude(pt, x) + exponent).exp()
}

pub fn fock_wavefunction(n: usize, pt: &TrajectoryPoint, x: f64) -> Result<Complex64> {
    if n > MAX_FOCK_INDEX {
        return Err(Error::Domain(format!(
            "Fock index must not exceed {MAX_FOCK_INDEX}, got {n}"
        )));
    }
    Ok(fock_amplitude(n, pt, x))
}

fn fock_amplitude(n: usize, pt: &TrajectoryPoint, x: f64) -> Complex64 {
    let (h, log_scale) = normalized_hermite(n, x / pt.eps.norm());
    if h == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let phase = Complex64::new(0.0, -(n as f64) * pt.eps_phase);
    let log = vacuum_log_amplitude(pt, x) + phase + log_scale + h.abs().ln();
    h.signum() * log.exp()
}

/// `rho(x, x') = psi(x) conj(psi(x'))`.
pub fn density_matrix<W: Wavefunction + ?Sized>(psi: &W, x: f64, xp: f64) -> Complex64 {
    psi.amplitude(x) * psi.amplitude(xp).conj()
}

#[derive(Debug, Clone, Copy)]
pub struct VacuumState {
    pub point: TrajectoryPoint,
}

impl Wavefunction for VacuumState {
    fn amplitude(&self, x: f64) -> Complex64 {
        vacuum_wavefunction(&self.point, x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CoherentState {
    pub alpha: CoherentLabel,
    pub point: TrajectoryPoint,
}

impl CoherentState {
    pub fn new(alpha: CoherentLabel, point: TrajectoryPoint) -> Self {
        Self { alpha, point }
    }

    pub fn moments(&self) -> PhaseSpaceMoments {
        phase_space_moments(self.alpha, &self.point)
    }
}

impl Wavefunction for CoherentState {
    fn amplitude(&self, x: f64) -> Complex64 {
        coherent_wavefunction(self.alpha, &self.point, x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FockState {
    n: usize,
    point: TrajectoryPoint,
}

impl FockState {
    pub fn new(n: usize, point: TrajectoryPoint) -> Result<Self> {
        if n > MAX_FOCK_INDEX {
            return Err(Error::Domain(format!(
                "Fock index must not exceed {MAX_FOCK_INDEX}, got {n}"
            )));
        }
        Ok(Self { n, point })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl Wavefunction for FockState {
    fn amplitude(&self, x: f64) -> Complex64 {
        fock_amplitude(self.n, &self.point, x)
    }
}
