//! Coherent states of the quantum parametric oscillator in the tomographic
//! probability representation.
//!
//! A single complex classical trajectory `eps(t)`, solving
//! `eps'' + omega(t)^2 eps = 0` with `eps(0) = 1`, `eps'(0) = i`, determines
//! every quantity here: wavefunctions, phase-space moments, Wigner functions,
//! symplectic and optical tomograms, and squeezing diagnostics.
//!
//! ```
//! use paramosc::{integrate_trajectory, phase_space_moments, symplectic_tomogram};
//! use paramosc::{CoherentLabel, FrequencyProfile, ReferenceFrame};
//!
//! let traj = integrate_trajectory(&FrequencyProfile::step_one_to_two(), 1.0, 1e-3).unwrap();
//! // Off-grid times are rejected rather than interpolated.
//! assert!(traj.at_time(std::f64::consts::FRAC_PI_4).is_err());
//! let m = phase_space_moments(CoherentLabel::vacuum(), traj.last());
//! let g = symplectic_tomogram(&m, ReferenceFrame::new(1.0, 0.0).unwrap()).unwrap();
//! assert!((g.variance() - m.s_qq).abs() < 1e-15);
//! ```

// `!(x > 0.0)` is the NaN-rejecting form used throughout input validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod analysis;
pub mod commands;
pub mod config;
mod error;
pub mod evolution;
pub mod exec;
pub mod quadrature;
pub mod states;
pub mod tomography;
pub mod trajectory;

pub use analysis::{
    correlation_coefficient_sq, squeezing_report, uncertainty_products, SqueezingRecord,
};
pub use config::{parse_config, parse_config_with_overrides, ScenarioConfig};
pub use error::{Error, Result};
pub use evolution::{heisenberg_frame, propagate_tomogram, EvolvedTomogram, HeisenbergFrame};
pub use exec::Execution;
pub use states::{
    coherent_wavefunction, fock_wavefunction, hermite, phase_space_moments, vacuum_wavefunction,
    CoherentLabel, CoherentState, FockState, PhaseSpaceMoments, VacuumState, Wavefunction,
};
pub use tomography::{
    optical_tomogram, symplectic_tomogram, tomogram_density, Gaussian1D, ReferenceFrame, Tomogram,
};
pub use trajectory::{
    closed_form_piecewise, integrate_trajectory, integrate_trajectory_with, omega_at, wronskian,
    ClassicalTrajectory, FrequencyProfile, IntegrationOptions, ProfileShape, TrajectoryPoint,
};
