//! Symplectic and optical tomograms, Wigner functions and the transforms
//! between them.
//!
//! A symplectic tomogram `w(X | mu, nu)` is the probability density of the
//! observable `mu q + nu p`. For the Gaussian states built in
//! [`crate::states`] it is a normal distribution whose mean and variance are
//! linear and quadratic in the frame, so every numeric route in this module
//! (fractional Fourier transform of the wavefunction, Radon transform of a
//! sampled Wigner function, inverse Radon reconstruction) can be checked
//! against the analytic one.

mod fractional;
mod grid;
mod joint;
mod radon;
mod wigner;

use std::f64::consts::PI;

pub use fractional::{
    fractional_fourier_tomogram, tomogram_via_fractional_fourier, FractionalQuadrature,
    MIN_FRACTIONAL_NU,
};
pub use grid::{PhaseSpaceGrid, PhaseSpaceGridSpec, QuadratureGrid, QuadratureGridSpec};
pub use joint::{bayes_recover, joint_probability, standard_frame_weight};
pub use radon::{inverse_radon, radon_transform, InverseRadonOptions};
pub use wigner::{
    wigner_from_density, wigner_from_density_matrix, wigner_gaussian, wigner_grid_gaussian,
    WignerQuadrature,
};

use crate::error::{Error, Result};
use crate::states::PhaseSpaceMoments;

/// Normal distribution of a tomogram slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian1D {
    mean: f64,
    variance: f64,
}

impl Gaussian1D {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Domain(format!("mean must be finite, got {mean}")));
        }
        if !(variance > 0.0) || !variance.is_finite() {
            return Err(Error::Domain(format!(
                "variance must be positive, got {variance}"
            )));
        }
        Ok(Self { mean, variance })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn density(&self, x: f64) -> f64 {
        tomogram_density(self, x)
    }

    /// `E[e^{iX}]`, used by the inverse Radon transform.
    fn characteristic_at_one(&self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar((-0.5 * self.variance).exp(), self.mean)
    }
}

/// `(2 pi var)^{-1/2} exp(-(X - mean)^2 / (2 var))`.
pub fn tomogram_density(g: &Gaussian1D, x: f64) -> f64 {
    let d = x - g.mean;
    (-d * d / (2.0 * g.variance)).exp() / (2.0 * PI * g.variance).sqrt()
}

/// Reference-frame parameters `(mu, nu)` of a symplectic tomogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceFrame {
    mu: f64,
    nu: f64,
}

impl ReferenceFrame {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !mu.is_finite() || !nu.is_finite() {
            return Err(Error::Domain(format!(
                "frame must be finite, got ({mu}, {nu})"
            )));
        }
        if mu == 0.0 && nu == 0.0 {
            return Err(Error::Domain(
                "frame (0, 0) does not define a quadrature".into(),
            ));
        }
        Ok(Self { mu, nu })
    }

    /// The optical frame `(cos theta, sin theta)`.
    pub fn optical(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { mu: c, nu: s }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn norm(&self) -> f64 {
        self.mu.hypot(self.nu)
    }

    /// Local-oscillator phase of the frame direction.
    pub fn angle(&self) -> f64 {
        self.nu.atan2(self.mu)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(lambda * self.mu, lambda * self.nu)
    }
}

/// Tomogram of the Gaussian state with moments `m`.
pub fn symplectic_tomogram(m: &PhaseSpaceMoments, frame: ReferenceFrame) -> Result<Gaussian1D> {
    let (mu, nu) = (frame.mu, frame.nu);
    let mean = mu * m.q_mean + nu * m.p_mean;
    let variance = mu * mu * m.s_qq + nu * nu * m.s_pp + 2.0 * mu * nu * m.s_qp;
    if !(variance > 0.0) {
        return Err(Error::Inconsistent(format!(
            "tomogram variance {variance} is not positive for frame ({mu}, {nu})"
        )));
    }
    Gaussian1D::new(mean, variance)
}

/// Homodyne tomogram at local-oscillator phase `theta`.
pub fn optical_tomogram(m: &PhaseSpaceMoments, theta: f64) -> Result<Gaussian1D> {
    symplectic_tomogram(m, ReferenceFrame::optical(theta))
}

/// Symplectic tomogram density from an optical tomogram `optical(X, theta)`.
pub fn optical_to_symplectic<F>(optical: F, frame: ReferenceFrame, x: f64) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let scale = frame.norm();
    optical(x / scale, frame.angle()) / scale
}

/// Anything that yields tomogram densities `w(X | mu, nu)`.
pub trait Tomogram: Sync {
    fn density(&self, x: f64, frame: ReferenceFrame) -> f64;

    /// The normal distribution at `frame`, when the tomogram is known to be Gaussian.
    fn gaussian(&self, _frame: ReferenceFrame) -> Option<Gaussian1D> {
        None
    }
}

impl Tomogram for PhaseSpaceMoments {
    fn density(&self, x: f64, frame: ReferenceFrame) -> f64 {
        symplectic_tomogram(self, frame).map_or(f64::NAN, |g| g.density(x))
    }

    fn gaussian(&self, frame: ReferenceFrame) -> Option<Gaussian1D> {
        symplectic_tomogram(self, frame).ok()
    }
}

impl<T: Tomogram> Tomogram for &T {
    fn density(&self, x: f64, frame: ReferenceFrame) -> f64 {
        (**self).density(x, frame)
    }

    fn gaussian(&self, frame: ReferenceFrame) -> Option<Gaussian1D> {
        (**self).gaussian(frame)
    }
}

/// A tomogram given only through its density function.
pub struct FnTomogram<F>(pub F);

impl<F> Tomogram for FnTomogram<F>
where
    F: Fn(f64, ReferenceFrame) -> f64 + Sync,
{
    fn density(&self, x: f64, frame: ReferenceFrame) -> f64 {
        (self.0)(x, frame)
    }
}
