use std::f64::consts::PI;

use super::Gaussian1D;
use crate::error::{Error, Result};
use crate::quadrature::{trapezoid, UniformAxis};
use crate::states::PhaseSpaceMoments;

/// Minimum nodes per phase-space axis.
pub const MIN_PHASE_SPACE_NODES: usize = 8;

/// Cell-centred sampling of phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceGridSpec {
    pub q: UniformAxis,
    pub p: UniformAxis,
}

impl PhaseSpaceGridSpec {
    pub fn new(
        q_min: f64,
        q_max: f64,
        p_min: f64,
        p_max: f64,
        n_q: usize,
        n_p: usize,
    ) -> Result<Self> {
        if n_q < MIN_PHASE_SPACE_NODES || n_p < MIN_PHASE_SPACE_NODES {
            return Err(Error::Domain(format!(
                "phase-space grids need at least {MIN_PHASE_SPACE_NODES} nodes per axis, got {n_q} x {n_p}"
            )));
        }
        Ok(Self {
            q: UniformAxis::new(q_min, q_max, n_q)?,
            p: UniformAxis::new(p_min, p_max, n_p)?,
        })
    }

    /// Grid centred on the state's means, `half_width` standard deviations
    /// wide along each axis.
    pub fn around(m: &PhaseSpaceMoments, half_width: f64, n_q: usize, n_p: usize) -> Result<Self> {
        let (dq, dp) = (half_width * m.s_qq.sqrt(), half_width * m.s_pp.sqrt());
        Self::new(
            m.q_mean - dq,
            m.q_mean + dq,
            m.p_mean - dp,
            m.p_mean + dp,
            n_q,
            n_p,
        )
    }

    pub fn cell_area(&self) -> f64 {
        self.q.delta() * self.p.delta()
    }

    pub fn len(&self) -> usize {
        self.q.n * self.p.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Wigner samples on a [`PhaseSpaceGridSpec`], row-major in `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceGrid {
    spec: PhaseSpaceGridSpec,
    values: Vec<f64>,
}

impl PhaseSpaceGrid {
    pub fn from_values(spec: PhaseSpaceGridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::Domain(format!(
                "expected {} samples, got {}",
                spec.len(),
                values.len()
            )));
        }
        Ok(Self { spec, values })
    }

    pub fn spec(&self) -> &PhaseSpaceGridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.spec.p.n + j]
    }

    /// `(q, p, W)` in row-major order.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n_p = self.spec.p.n;
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &w)| (self.spec.q.node(k / n_p), self.spec.p.node(k % n_p), w))
    }

    /// `sum W dq dp / (2 pi)`.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell_area() / (2.0 * PI)
    }

    /// Largest `|W|` on the outermost rows and columns.
    pub fn edge_magnitude(&self) -> f64 {
        let (n_q, n_p) = (self.spec.q.n, self.spec.p.n);
        let rows = (0..n_p).flat_map(|j| [self.value(0, j), self.value(n_q - 1, j)]);
        let cols = (0..n_q).flat_map(|i| [self.value(i, 0), self.value(i, n_p - 1)]);
        rows.chain(cols).fold(0.0, |acc, w| acc.max(w.abs()))
    }

    pub fn max_abs_diff(&self, other: &PhaseSpaceGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

/// Cell-centred sampling of the quadrature axis `X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGridSpec {
    pub x: UniformAxis,
}

impl QuadratureGridSpec {
    pub fn new(x_min: f64, x_max: f64, n_x: usize) -> Result<Self> {
        if n_x < 2 {
            return Err(Error::Domain(format!(
                "quadrature grids need at least 2 nodes, got {n_x}"
            )));
        }
        Ok(Self {
            x: UniformAxis::new(x_min, x_max, n_x)?,
        })
    }

    /// `mean +- half_width * sd` of `g`.
    pub fn around(g: &Gaussian1D, half_width: f64, n_x: usize) -> Result<Self> {
        let h = half_width * g.std_dev();
        Self::new(g.mean() - h, g.mean() + h, n_x)
    }
}

/// Tomogram densities on a [`QuadratureGridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    spec: QuadratureGridSpec,
    values: Vec<f64>,
}

impl QuadratureGrid {
    pub fn from_values(spec: QuadratureGridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.x.n {
            return Err(Error::Domain(format!(
                "expected {} samples, got {}",
                spec.x.n,
                values.len()
            )));
        }
        Ok(Self { spec, values })
    }

    /// Samples `f` at every node.
    pub fn sample<F: Fn(f64) -> f64>(spec: QuadratureGridSpec, f: F) -> Self {
        let values = spec.x.nodes().map(f).collect();
        Self { spec, values }
    }

    pub fn spec(&self) -> &QuadratureGridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.spec.x.nodes().zip(self.values.iter().copied())
    }

    /// Trapezoid integral over the nodes.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.values, self.spec.x.delta())
    }

    pub fn max_abs_diff(&self, other: &QuadratureGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }
}
