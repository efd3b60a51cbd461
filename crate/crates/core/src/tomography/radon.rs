use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::{PhaseSpaceGrid, QuadratureGrid, QuadratureGridSpec};
use super::{ReferenceFrame, Tomogram};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quadrature::trapezoid_nodes;

/// Largest `|W|` tolerated on the boundary of a grid fed to [`radon_transform`].
pub const RADON_EDGE_LIMIT: f64 = 1e-10;

/// Imaginary residue above which [`inverse_radon`] fails.
pub const RECONSTRUCTION_RESIDUE_LIMIT: f64 = 1e-4;

/// Tomogram of a sampled Wigner function along `frame`, binned on `x_spec`.
///
/// The grid is read as the bilinear interpolant of its samples. Each sample
/// owns a tent of half-widths `(dq, dp)`; its projection onto the `X` axis is
/// the convolution of two triangles of widths `|mu| dq` and `|nu| dp`, whose
/// mass is split exactly between the bins it overlaps. Densities are bin
/// masses divided by the bin width.
pub fn radon_transform(
    w: &PhaseSpaceGrid,
    frame: ReferenceFrame,
    x_spec: QuadratureGridSpec,
    exec: Execution,
) -> Result<QuadratureGrid> {
    let edge = w.edge_magnitude();
    if edge > RADON_EDGE_LIMIT {
        return Err(Error::Truncation {
            edge,
            threshold: RADON_EDGE_LIMIT,
        });
    }

    let spec = *w.spec();
    let (mu, nu) = (frame.mu(), frame.nu());
    let footprint = Footprint::new(&[
        mu.abs() * spec.q.delta(),
        mu.abs() * spec.q.delta(),
        nu.abs() * spec.p.delta(),
        nu.abs() * spec.p.delta(),
    ]);
    let cell_mass = spec.cell_area() / (2.0 * PI);
    let x_axis = x_spec.x;
    let dx = x_axis.delta();
    let x_lo = x_axis.node(0) - 0.5 * dx;
    let n_x = x_axis.n;

    let rows = exec.map(spec.q.n, |i| {
        let mut bins = vec![0.0; n_x];
        let q = spec.q.node(i);
        for j in 0..spec.p.n {
            let mass = w.value(i, j) * cell_mass;
            if mass == 0.0 {
                continue;
            }
            let centre = mu * q + nu * spec.p.node(j);
            let first = ((centre - footprint.half_support - x_lo) / dx)
                .floor()
                .max(0.0) as usize;
            let last = ((centre + footprint.half_support - x_lo) / dx).floor();
            if last < 0.0 || first >= n_x {
                continue;
            }
            let last = (last as usize).min(n_x - 1);
            let mut below = footprint.cdf(x_lo + first as f64 * dx - centre);
            for (k, bin) in bins.iter_mut().enumerate().take(last + 1).skip(first) {
                let above = footprint.cdf(x_lo + (k + 1) as f64 * dx - centre);
                *bin += mass * (above - below);
                below = above;
            }
        }
        bins
    });

    let mut values = vec![0.0; n_x];
    for row in rows {
        for (v, b) in values.iter_mut().zip(row) {
            *v += b;
        }
    }
    for v in &mut values {
        *v /= dx;
    }
    QuadratureGrid::from_values(x_spec, values)
}

/// Distribution of a sum of centred uniform variables.
struct Footprint {
    widths: Vec<f64>,
    half_support: f64,
    norm: f64,
}

impl Footprint {
    fn new(widths: &[f64]) -> Self {
        let widest = widths.iter().fold(0.0f64, |a, &b| a.max(b));
        // Boxes far narrower than the widest one only add O(width^2) smoothing
        // but make the truncated-power sum below cancel catastrophically.
        let widths: Vec<f64> = widths
            .iter()
            .copied()
            .filter(|&w| w > 1e-2 * widest)
            .collect();
        let n = widths.len();
        let factorial: f64 = (1..=n).map(|k| k as f64).product();
        Self {
            half_support: 0.5 * widths.iter().sum::<f64>(),
            norm: factorial * widths.iter().product::<f64>(),
            widths,
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= -self.half_support {
            return 0.0;
        }
        if x >= self.half_support {
            return 1.0;
        }
        let n = self.widths.len() as i32;
        let mut total = 0.0;
        for mask in 0..(1u32 << n) {
            let mut shift = 0.0;
            let mut sign = 1.0;
            for (b, w) in self.widths.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    shift += 0.5 * w;
                    sign = -sign;
                } else {
                    shift -= 0.5 * w;
                }
            }
            let y = x - shift;
            if y > 0.0 {
                total += sign * y.powi(n);
            }
        }
        (total / self.norm).clamp(0.0, 1.0)
    }
}

/// Node count, cutoff and fallback `X` quadrature for [`inverse_radon`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseRadonOptions {
    /// `(mu, nu)` integration runs over `[-cutoff, cutoff]^2`.
    pub cutoff: f64,
    /// Trapezoid nodes per frame axis.
    pub n_nodes: usize,
    /// For tomograms without a Gaussian form, `X` is integrated numerically
    /// over `+- x_reach * |(mu, nu)|`.
    pub x_reach: f64,
    pub n_x: usize,
}

impl Default for InverseRadonOptions {
    fn default() -> Self {
        Self {
            cutoff: 8.0,
            n_nodes: 257,
            x_reach: 12.0,
            n_x: 801,
        }
    }
}

/// Wigner function at `(q, p)` reconstructed from a tomogram,
/// `W = (1/2pi) integral w(X | mu, nu) e^{i(X - mu q - nu p)} dX dmu dnu`.
///
/// Gaussian tomograms contribute their characteristic function in closed
/// form, leaving a two-dimensional trapezoid sum over the frame.
pub fn inverse_radon<T: Tomogram + ?Sized>(
    tomo: &T,
    q: f64,
    p: f64,
    options: InverseRadonOptions,
    exec: Execution,
) -> Result<f64> {
    if !(options.cutoff > 0.0) || options.n_nodes < 2 || options.n_x < 2 {
        return Err(Error::Domain(format!(
            "invalid inverse Radon options {options:?}"
        )));
    }
    let nodes = trapezoid_nodes(-options.cutoff, options.cutoff, options.n_nodes);

    let rows = exec.map(nodes.len(), |a| {
        let (mu, w_mu) = nodes[a];
        let mut row = Complex64::new(0.0, 0.0);
        for &(nu, w_nu) in &nodes {
            let characteristic = match ReferenceFrame::new(mu, nu) {
                // The tomogram at the origin is a delta at X = 0.
                Err(_) => Complex64::new(1.0, 0.0),
                Ok(frame) => match tomo.gaussian(frame) {
                    Some(g) => g.characteristic_at_one(),
                    None => numeric_characteristic(tomo, frame, &options),
                },
            };
            row += w_mu * w_nu * characteristic * Complex64::from_polar(1.0, -(mu * q + nu * p));
        }
        row
    });

    let total = rows.into_iter().sum::<Complex64>() / (2.0 * PI);
    if total.im.abs() > RECONSTRUCTION_RESIDUE_LIMIT {
        return Err(Error::QuadratureFailure {
            residue: total.im.abs(),
            threshold: RECONSTRUCTION_RESIDUE_LIMIT,
        });
    }
    Ok(total.re)
}

fn numeric_characteristic<T: Tomogram + ?Sized>(
    tomo: &T,
    frame: ReferenceFrame,
    options: &InverseRadonOptions,
) -> Complex64 {
    let reach = options.x_reach * frame.norm();
    trapezoid_nodes(-reach, reach, options.n_x)
        .into_iter()
        .map(|(x, w)| w * tomo.density(x, frame) * Complex64::from_polar(1.0, x))
        .sum()
}
