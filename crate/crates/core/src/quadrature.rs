//! Uniform grids and the trapezoid rule.

use crate::error::{Error, Result};

/// `n` cell-centred nodes covering `[min, max]`: node `k` sits at
/// `centre + (k - (n-1)/2) * delta`, `delta = (max - min) / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformAxis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl UniformAxis {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::Domain(format!(
                "axis bounds must be ordered and finite, got [{min}, {max}]"
            )));
        }
        if n == 0 {
            return Err(Error::Domain("axis needs at least one node".into()));
        }
        Ok(Self { min, max, n })
    }

    /// Axis of `n` nodes centred on `centre` spanning `centre +- half_width`.
    pub fn centred(centre: f64, half_width: f64, n: usize) -> Result<Self> {
        Self::new(centre - half_width, centre + half_width, n)
    }

    pub fn delta(&self) -> f64 {
        (self.max - self.min) / self.n as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        let centre = 0.5 * (self.min + self.max);
        centre + (k as f64 - 0.5 * (self.n as f64 - 1.0)) * self.delta()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.node(k))
    }
}

/// Trapezoid rule for samples `ys` at uniform spacing `h`.
pub fn trapezoid(ys: &[f64], h: f64) -> f64 {
    match ys {
        [] | [_] => 0.0,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// Trapezoid weights on `n` points over `[a, b]`, endpoints included.
pub fn trapezoid_nodes(a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2, "trapezoid rule needs at least two nodes");
    let h = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|k| {
            let w = if k == 0 || k == n - 1 { 0.5 * h } else { h };
            (a + k as f64 * h, w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_nodes_are_symmetric() {
        let axis = UniformAxis::new(-3.0, 3.0, 7).unwrap();
        assert_eq!(axis.node(3), 0.0);
        assert!((axis.node(0) + axis.node(6)).abs() < 1e-15);
        assert!((axis.delta() - 6.0 / 7.0).abs() < 1e-15);
        assert!(UniformAxis::new(1.0, 1.0, 4).is_err());
    }

    #[test]
    fn trapezoid_is_exact_for_lines() {
        let ys: Vec<f64> = (0..11).map(|k| 2.0 * k as f64 * 0.1 + 1.0).collect();
        assert!((trapezoid(&ys, 0.1) - 2.0).abs() < 1e-14);
        let total: f64 = trapezoid_nodes(0.0, 1.0, 11)
            .iter()
            .map(|&(x, w)| w * (2.0 * x + 1.0))
            .sum();
        assert!((total - 2.0).abs() < 1e-14);
    }
}
