//! Frames drawn at random: the tomogram becomes a joint density of `(X, mu, nu)`.

use std::f64::consts::PI;

use super::{Gaussian1D, ReferenceFrame};
use crate::error::{Error, Result};

/// `P(mu, nu) = exp(-mu^2 - nu^2) / pi`.
pub fn standard_frame_weight(mu: f64, nu: f64) -> f64 {
    (-mu * mu - nu * nu).exp() / PI
}

/// `w(X | mu, nu) P(mu, nu)` for the tomogram slice `g` taken at `frame`.
pub fn joint_probability<P>(g: &Gaussian1D, weight: P, frame: ReferenceFrame, x: f64) -> f64
where
    P: Fn(f64, f64) -> f64,
{
    g.density(x) * weight(frame.mu(), frame.nu())
}

/// Recovers `w(X | mu, nu)` from a joint density by dividing out the frame weight.
pub fn bayes_recover<J, P>(joint: J, weight: P, frame: ReferenceFrame, x: f64) -> Result<f64>
where
    J: Fn(f64, f64, f64) -> f64,
    P: Fn(f64, f64) -> f64,
{
    let (mu, nu) = (frame.mu(), frame.nu());
    let p = weight(mu, nu);
    if !(p > 0.0) {
        return Err(Error::Domain(format!(
            "frame weight is {p} at ({mu}, {nu}); the conditional density is undefined"
        )));
    }
    Ok(joint(x, mu, nu) / p)
}
