//! CSV exports behind the command-line subcommands.
//!
//! Output is deterministic: floats use the shortest decimal that round-trips
//! to the same `f64`, booleans are `0`/`1`, lines end in `\n`, and metadata
//! lives on `#`-prefixed comment lines.

use std::fmt::Write as _;

use crate::acceptance::{self, AcceptanceSettings};
use crate::analysis::squeezing_report;
use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::exec::Execution;
use crate::states::{phase_space_moments, CoherentState, PhaseSpaceMoments};
use crate::tomography::{
    radon_transform, symplectic_tomogram, wigner_from_density, wigner_grid_gaussian, Gaussian1D,
    PhaseSpaceGrid, PhaseSpaceGridSpec, QuadratureGrid, QuadratureGridSpec, ReferenceFrame,
    WignerQuadrature,
};
use crate::trajectory::{
    integrate_trajectory_with, ClassicalTrajectory, IntegrationOptions, TrajectoryPoint,
};

pub const TRAJECTORY_HEADER: &str =
    "t,re_eps,im_eps,re_deps,im_deps,var_q,var_p,cov_qp,r2,q_squeezed,p_squeezed,correlated";

/// Default tomogram grid: `mean +- 6 sd`, odd node count so the mean is a node.
pub const DEFAULT_TOMOGRAM_NODES: usize = 257;
pub const TOMOGRAM_HALF_WIDTH: f64 = 6.0;
pub const DEFAULT_WIGNER_NODES: usize = 129;
pub const WIGNER_HALF_WIDTH: f64 = 8.0;
pub const DEFAULT_RADON_PHASE_NODES: usize = 256;
pub const DEFAULT_RADON_BINS: usize = 128;

/// Shortest round-trip decimal; scientific notation outside `[1e-5, 1e16)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Integrates the scenario's trajectory.
pub fn scenario_trajectory(cfg: &ScenarioConfig) -> Result<ClassicalTrajectory> {
    let options = IntegrationOptions {
        allow_coarse_step: cfg.allow_coarse_step,
        ..IntegrationOptions::default()
    };
    integrate_trajectory_with(&cfg.profile, cfg.t_max, cfg.step, options)
}

pub fn run_trajectory_command(cfg: &ScenarioConfig) -> Result<String> {
    let traj = scenario_trajectory(cfg)?;
    let report = squeezing_report(&traj, cfg.alpha);
    let mut out = String::with_capacity(128 * report.len());
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for (pt, rec) in traj.points().iter().zip(&report) {
        let m = phase_space_moments(cfg.alpha, pt);
        let cells = [
            format_float(pt.t),
            format_float(pt.eps.re),
            format_float(pt.eps.im),
            format_float(pt.deps.re),
            format_float(pt.deps.im),
            format_float(rec.var_q),
            format_float(rec.var_p),
            format_float(m.s_qp),
            format_float(rec.r_squared),
            flag(rec.q_squeezed).into(),
            flag(rec.p_squeezed).into(),
            flag(rec.correlated).into(),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Which tomogram a command exports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TomogramMode {
    Symplectic(ReferenceFrame),
    Optical(f64),
}

impl TomogramMode {
    pub fn frame(&self) -> ReferenceFrame {
        match *self {
            TomogramMode::Symplectic(f) => f,
            TomogramMode::Optical(theta) => ReferenceFrame::optical(theta),
        }
    }
}

fn moments_at(cfg: &ScenarioConfig, t: f64) -> Result<(TrajectoryPoint, PhaseSpaceMoments)> {
    let traj = scenario_trajectory(cfg)?;
    let pt = *traj.at_time(t)?;
    Ok((pt, phase_space_moments(cfg.alpha, &pt)))
}

fn tomogram_csv(g: &Gaussian1D, grid: &QuadratureGrid, extra: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# mean={} variance={}{extra}",
        format_float(g.mean()),
        format_float(g.variance())
    );
    out.push_str("X,density\n");
    for (x, d) in grid.samples() {
        let _ = writeln!(out, "{},{}", format_float(x), format_float(d));
    }
    out
}

/// Analytic tomogram densities at time `t` on the configured (or default) `X` grid.
pub fn run_tomogram_command(cfg: &ScenarioConfig, mode: TomogramMode, t: f64) -> Result<String> {
    let (_, m) = moments_at(cfg, t)?;
    let g = symplectic_tomogram(&m, mode.frame())?;
    let spec = match cfg.x_grid {
        Some(spec) => spec,
        None => QuadratureGridSpec::around(&g, TOMOGRAM_HALF_WIDTH, DEFAULT_TOMOGRAM_NODES)?,
    };
    let grid = QuadratureGrid::sample(spec, |x| g.density(x));
    Ok(tomogram_csv(&g, &grid, ""))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WignerSource {
    Analytic,
    Numeric,
}

/// Wigner grid of the scenario's coherent state at time `t`.
pub fn wigner_grid(
    cfg: &ScenarioConfig,
    t: f64,
    source: WignerSource,
    default_nodes: usize,
) -> Result<PhaseSpaceGrid> {
    let (pt, m) = moments_at(cfg, t)?;
    let spec = match cfg.phase_grid {
        Some(spec) => spec,
        None => PhaseSpaceGridSpec::around(&m, WIGNER_HALF_WIDTH, default_nodes, default_nodes)?,
    };
    let exec = Execution::default();
    match source {
        WignerSource::Analytic => wigner_grid_gaussian(&m, spec, exec),
        WignerSource::Numeric => {
            let quad = cfg
                .wigner_quadrature
                .unwrap_or_else(|| WignerQuadrature::for_moments(&m, &spec));
            wigner_from_density(&CoherentState::new(cfg.alpha, pt), spec, quad, exec)
        }
    }
}

pub fn run_wigner_command(cfg: &ScenarioConfig, t: f64, source: WignerSource) -> Result<String> {
    let grid = wigner_grid(cfg, t, source, DEFAULT_WIGNER_NODES)?;
    let mut out = String::with_capacity(48 * grid.values().len());
    let name = match source {
        WignerSource::Analytic => "analytic",
        WignerSource::Numeric => "numeric",
    };
    let _ = writeln!(
        out,
        "# source={name} t={} mass={}",
        format_float(t),
        format_float(grid.mass())
    );
    out.push_str("q,p,W\n");
    for (q, p, w) in grid.samples() {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_float(q),
            format_float(p),
            format_float(w)
        );
    }
    Ok(out)
}

/// Radon transform of the numerically computed Wigner function.
pub fn radon_tomogram(
    cfg: &ScenarioConfig,
    frame: ReferenceFrame,
    t: f64,
) -> Result<(Gaussian1D, QuadratureGrid)> {
    let wigner = wigner_grid(cfg, t, WignerSource::Numeric, DEFAULT_RADON_PHASE_NODES)?;
    let (_, m) = moments_at(cfg, t)?;
    let g = symplectic_tomogram(&m, frame)?;
    let spec = match cfg.x_grid {
        Some(spec) => spec,
        None => QuadratureGridSpec::around(&g, TOMOGRAM_HALF_WIDTH, DEFAULT_RADON_BINS)?,
    };
    Ok((
        g,
        radon_transform(&wigner, frame, spec, Execution::default())?,
    ))
}

pub fn run_radon_command(cfg: &ScenarioConfig, mode: TomogramMode, t: f64) -> Result<String> {
    let (g, grid) = radon_tomogram(cfg, mode.frame(), t)?;
    let analytic = QuadratureGrid::sample(*grid.spec(), |x| g.density(x));
    let extra = format!(
        " max_abs_dev={}",
        format_float(grid.max_abs_diff(&analytic))
    );
    Ok(tomogram_csv(&g, &grid, &extra))
}

/// Runs every acceptance criterion; returns the report and whether all passed.
pub fn run_verify_command(cfg: &ScenarioConfig) -> (String, bool) {
    let outcomes = acceptance::run_all(&AcceptanceSettings::from_config(cfg));
    let mut out = String::new();
    for o in &outcomes {
        let _ = writeln!(out, "{o}");
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let _ = writeln!(
        out,
        "{} of {} criteria passed",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len()
    );
    (out, passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1e-20), "1e-20");
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-7,
            6.02e23,
            std::f64::consts::PI,
            f64::MIN_POSITIVE,
        ] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
