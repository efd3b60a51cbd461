//! Frequency profiles and the classical complex trajectory.
//!
//! The trajectory obeys `eps'' + omega(t)^2 eps = 0` with `eps(0) = 1`,
//! `eps'(0) = i`. Every quantum quantity elsewhere in the crate is a closed
//! form in `(eps, eps')`, so this module is the only place time is stepped.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `omega(0) = 1` when the unit-initial-frequency convention is enforced.
pub const UNIT_INITIAL_TOLERANCE: f64 = 1e-12;

/// Largest step accepted by [`integrate_trajectory`].
pub const MAX_STEP: f64 = 1e-2;

/// Wronskian drift allowed per unit of integrated time.
pub const WRONSKIAN_TOLERANCE: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shape of the parametric drive.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileShape {
    /// `omega(t) = omega0`.
    Constant { omega0: f64 },
    /// `omega(t) = omegas[i]` on `[times[i], times[i+1])`; `times[0] = 0`.
    PiecewiseConstant { times: Vec<f64>, omegas: Vec<f64> },
    /// `omega(t)^2 = omega0^2 (1 + kappa cos(gamma t))`.
    Sinusoidal { omega0: f64, kappa: f64, gamma: f64 },
    /// Linear interpolation between samples, clamped beyond either end.
    Tabulated { times: Vec<f64>, omegas: Vec<f64> },
}

/// A validated frequency profile `omega(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyProfile {
    shape: ProfileShape,
    allow_nonunit_initial: bool,
}

impl FrequencyProfile {
    /// Validates `shape`. Unless `allow_nonunit_initial` is set, `omega(0)`
    /// must equal 1.
    pub fn new(shape: ProfileShape, allow_nonunit_initial: bool) -> Result<Self> {
        validate_shape(&shape)?;
        let profile = Self {
            shape,
            allow_nonunit_initial,
        };
        let omega0 = profile.omega_unchecked(0.0);
        if !allow_nonunit_initial && (omega0 - 1.0).abs() > UNIT_INITIAL_TOLERANCE {
            return Err(Error::InvalidProfile(format!(
                "omega(0) = {omega0} but the unit initial frequency convention requires omega(0) = 1 \
                 (set the override flag to allow it)"
            )));
        }
        Ok(profile)
    }

    pub fn constant(omega0: f64) -> Result<Self> {
        Self::new(ProfileShape::Constant { omega0 }, false)
    }

    /// Piecewise-constant profile from `(t_i, omega_i)` pairs.
    pub fn piecewise(segments: &[(f64, f64)]) -> Result<Self> {
        let (times, omegas) = segments.iter().copied().unzip();
        Self::new(ProfileShape::PiecewiseConstant { times, omegas }, false)
    }

    pub fn sinusoidal(omega0: f64, kappa: f64, gamma: f64) -> Result<Self> {
        Self::new(
            ProfileShape::Sinusoidal {
                omega0,
                kappa,
                gamma,
            },
            false,
        )
    }

    pub fn tabulated(samples: &[(f64, f64)]) -> Result<Self> {
        let (times, omegas) = samples.iter().copied().unzip();
        Self::new(ProfileShape::Tabulated { times, omegas }, false)
    }

    /// The sudden jump `omega: 1 -> 2` at `t = 0`: the oscillator keeps the
    /// unit-frequency vacuum as its initial condition but evolves at `omega = 2`.
    pub fn step_one_to_two() -> Self {
        Self::new(
            ProfileShape::PiecewiseConstant {
                times: vec![0.0],
                omegas: vec![2.0],
            },
            true,
        )
        .expect("valid step profile")
    }

    pub fn shape(&self) -> &ProfileShape {
        &self.shape
    }

    pub fn allows_nonunit_initial(&self) -> bool {
        self.allow_nonunit_initial
    }

    /// `omega(t)`; left-closed intervals for piecewise profiles.
    pub fn omega_at(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("omega(t) requires t >= 0, got {t}")));
        }
        Ok(self.omega_unchecked(t))
    }

    fn omega_unchecked(&self, t: f64) -> f64 {
        match &self.shape {
            ProfileShape::Constant { omega0 } => *omega0,
            ProfileShape::PiecewiseConstant { times, omegas } => omegas[segment_index(times, t)],
            ProfileShape::Sinusoidal { .. } => self.omega_sq_unchecked(t).sqrt(),
            ProfileShape::Tabulated { times, omegas } => interpolate(times, omegas, t),
        }
    }

    fn omega_sq_unchecked(&self, t: f64) -> f64 {
        match &self.shape {
            ProfileShape::Sinusoidal {
                omega0,
                kappa,
                gamma,
            } => omega0 * omega0 * (1.0 + kappa * (gamma * t).cos()),
            _ => {
                let w = self.omega_unchecked(t);
                w * w
            }
        }
    }

    /// `omega^2` as seen by an integration stage inside the sub-interval
    /// `[a, b]`, which never straddles a breakpoint. Piecewise profiles take
    /// the value of the segment holding the interval, so the stage at `b`
    /// does not see the next segment.
    fn omega_sq_within(&self, a: f64, b: f64, t: f64) -> f64 {
        match &self.shape {
            ProfileShape::PiecewiseConstant { times, omegas } => {
                let w = omegas[segment_index(times, 0.5 * (a + b))];
                w * w
            }
            _ => self.omega_sq_unchecked(t),
        }
    }

    /// Interior times at which `omega` or its derivative is discontinuous.
    fn breakpoints(&self) -> Vec<f64> {
        match &self.shape {
            ProfileShape::PiecewiseConstant { times, .. }
            | ProfileShape::Tabulated { times, .. } => {
                times.iter().copied().filter(|&t| t > 0.0).collect()
            }
            _ => Vec::new(),
        }
    }
}

fn validate_shape(shape: &ProfileShape) -> Result<()> {
    let positive = |name: &str, w: f64| {
        if w.is_finite() && w > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidProfile(format!(
                "{name} must be positive and finite, got {w}"
            )))
        }
    };
    match shape {
        ProfileShape::Constant { omega0 } => positive("omega0", *omega0),
        ProfileShape::Sinusoidal {
            omega0,
            kappa,
            gamma,
        } => {
            positive("omega0", *omega0)?;
            if !(kappa.abs() < 1.0) {
                return Err(Error::InvalidProfile(format!(
                    "modulation depth must satisfy |kappa| < 1, got {kappa}"
                )));
            }
            if !gamma.is_finite() {
                return Err(Error::InvalidProfile(format!(
                    "gamma must be finite, got {gamma}"
                )));
            }
            Ok(())
        }
        ProfileShape::PiecewiseConstant { times, omegas }
        | ProfileShape::Tabulated { times, omegas } => {
            if times.is_empty() || times.len() != omegas.len() {
                return Err(Error::InvalidProfile(format!(
                    "need matching non-empty time and frequency lists, got {} times and {} frequencies",
                    times.len(),
                    omegas.len()
                )));
            }
            if times[0] != 0.0 {
                return Err(Error::InvalidProfile(format!(
                    "time list must start at 0, got {}",
                    times[0]
                )));
            }
            for pair in times.windows(2) {
                if !(pair[1] > pair[0]) || !pair[1].is_finite() {
                    return Err(Error::InvalidProfile(format!(
                        "times must be strictly increasing, got {} after {}",
                        pair[1], pair[0]
                    )));
                }
            }
            for (i, &w) in omegas.iter().enumerate() {
                positive(&format!("omega[{i}]"), w)?;
            }
            Ok(())
        }
    }
}

/// Index of the left-closed segment containing `t`.
fn segment_index(times: &[f64], t: f64) -> usize {
    times.partition_point(|&ti| ti <= t).saturating_sub(1)
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    let last = times.len() - 1;
    if t <= times[0] {
        return values[0];
    }
    if t >= times[last] {
        return values[last];
    }
    let i = segment_index(times, t);
    let s = (t - times[i]) / (times[i + 1] - times[i]);
    values[i] + s * (values[i + 1] - values[i])
}

/// `omega(t)` of `profile`.
pub fn omega_at(profile: &FrequencyProfile, t: f64) -> Result<f64> {
    profile.omega_at(t)
}

/// One instant of the classical trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub eps: Complex64,
    pub deps: Complex64,
    /// Continuously unwound `arg(eps)`.
    pub eps_phase: f64,
}

impl TrajectoryPoint {
    /// `(t, eps, deps, phase) = (0, 1, i, 0)`.
    pub fn initial() -> Self {
        Self {
            t: 0.0,
            eps: Complex64::new(1.0, 0.0),
            deps: I,
            eps_phase: 0.0,
        }
    }

    /// The point `eps = e^{it}` of the unit-frequency oscillator.
    pub fn unit_frequency(t: f64) -> Self {
        Self {
            t,
            eps: Complex64::from_polar(1.0, t),
            deps: I * Complex64::from_polar(1.0, t),
            eps_phase: t,
        }
    }

    /// `sqrt(eps)` on the branch selected by the unwound phase.
    pub fn sqrt_eps(&self) -> Complex64 {
        Complex64::from_polar(self.eps.norm().sqrt(), 0.5 * self.eps_phase)
    }

    pub fn wronskian(&self) -> Complex64 {
        wronskian(self)
    }
}

/// `deps conj(eps) - conj(deps) eps`, exactly `2i` on an exact trajectory.
pub fn wronskian(point: &TrajectoryPoint) -> Complex64 {
    point.deps * point.eps.conj() - point.deps.conj() * point.eps
}

/// Options relaxing the default integration checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    /// Accept steps above [`MAX_STEP`].
    pub allow_coarse_step: bool,
    /// Fail when `|W - 2i|` exceeds `WRONSKIAN_TOLERANCE * (1 + t)`.
    pub check_wronskian: bool,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            allow_coarse_step: false,
            check_wronskian: true,
        }
    }
}

/// A trajectory sampled on the uniform grid `t_k = k * step`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalTrajectory {
    profile: FrequencyProfile,
    step: f64,
    points: Vec<TrajectoryPoint>,
}

impl ClassicalTrajectory {
    pub fn profile(&self) -> &FrequencyProfile {
        &self.profile
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn points(&self) -> &[TrajectoryPoint] {
        &self.points
    }

    pub fn last(&self) -> &TrajectoryPoint {
        self.points
            .last()
            .expect("trajectory has at least one point")
    }

    pub fn t_max(&self) -> f64 {
        self.last().t
    }

    /// The grid point at time `t`. Times that are not a multiple of the step
    /// (to within a millionth of a step) are rejected.
    pub fn at_time(&self, t: f64) -> Result<&TrajectoryPoint> {
        let off_grid = || Error::OffGrid {
            t,
            step: self.step,
            t_max: self.t_max(),
        };
        if !(t >= 0.0) {
            return Err(off_grid());
        }
        let k = (t / self.step).round();
        if (t - k * self.step).abs() > 1e-6 * self.step {
            return Err(off_grid());
        }
        self.points.get(k as usize).ok_or_else(off_grid)
    }
}

/// Integrates the trajectory with classic RK4 up to `t_max` (inclusive,
/// rounded up to the grid) using the default checks.
pub fn integrate_trajectory(
    profile: &FrequencyProfile,
    t_max: f64,
    step: f64,
) -> Result<ClassicalTrajectory> {
    integrate_trajectory_with(profile, t_max, step, IntegrationOptions::default())
}

pub fn integrate_trajectory_with(
    profile: &FrequencyProfile,
    t_max: f64,
    step: f64,
    options: IntegrationOptions,
) -> Result<ClassicalTrajectory> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "t_max must be positive and finite, got {t_max}"
        )));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    if step > MAX_STEP && !options.allow_coarse_step {
        return Err(Error::Domain(format!(
            "step must not exceed {MAX_STEP}, got {step}"
        )));
    }

    let n_steps = (t_max / step - 1e-9).ceil().max(1.0) as usize;
    let breakpoints = profile.breakpoints();
    let mut next_break = 0;

    let mut points = Vec::with_capacity(n_steps + 1);
    let mut current = TrajectoryPoint::initial();
    points.push(current);

    for k in 0..n_steps {
        let t0 = k as f64 * step;
        let t1 = (k + 1) as f64 * step;
        let guard = 1e-12 * step;

        while next_break < breakpoints.len() && breakpoints[next_break] <= t0 + guard {
            next_break += 1;
        }
        let mut a = t0;
        let (mut eps, mut deps) = (current.eps, current.deps);
        while next_break < breakpoints.len() && breakpoints[next_break] < t1 - guard {
            let b = breakpoints[next_break];
            (eps, deps) = rk4_step(profile, a, b, eps, deps);
            a = b;
            next_break += 1;
        }
        (eps, deps) = rk4_step(profile, a, t1, eps, deps);

        let expected = 0.5 * step * (current.eps.norm_sqr().recip() + eps.norm_sqr().recip());
        let increment = (eps * current.eps.conj()).arg();
        if !(expected < PI) || (increment - expected).abs() > 0.5 * PI {
            return Err(Error::StepTooCoarse {
                t: t1,
                increment: expected,
            });
        }

        current = TrajectoryPoint {
            t: t1,
            eps,
            deps,
            eps_phase: current.eps_phase + increment,
        };
        if options.check_wronskian {
            let drift = (wronskian(&current) - 2.0 * I).norm();
            let tolerance = WRONSKIAN_TOLERANCE * (1.0 + t1);
            if !(drift <= tolerance) {
                return Err(Error::IntegrationDiverged {
                    t: t1,
                    drift,
                    tolerance,
                });
            }
        }
        points.push(current);
    }

    Ok(ClassicalTrajectory {
        profile: profile.clone(),
        step,
        points,
    })
}

fn rk4_step(
    profile: &FrequencyProfile,
    a: f64,
    b: f64,
    eps: Complex64,
    deps: Complex64,
) -> (Complex64, Complex64) {
    let h = b - a;
    let w2 = |t: f64| profile.omega_sq_within(a, b, t);
    let mid = a + 0.5 * h;

    let k1 = (deps, -w2(a) * eps);
    let y2 = (eps + 0.5 * h * k1.0, deps + 0.5 * h * k1.1);
    let k2 = (y2.1, -w2(mid) * y2.0);
    let y3 = (eps + 0.5 * h * k2.0, deps + 0.5 * h * k2.1);
    let k3 = (y3.1, -w2(mid) * y3.0);
    let y4 = (eps + h * k3.0, deps + h * k3.1);
    let k4 = (y4.1, -w2(b) * y4.0);

    (
        eps + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        deps + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// Exact trajectory of a piecewise-constant (or constant) profile, obtained
/// by propagating `(eps, deps)` through each segment with the rotation
/// solution of the constant-frequency oscillator.
pub fn closed_form_piecewise(profile: &FrequencyProfile, t: f64) -> Result<TrajectoryPoint> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t must be non-negative, got {t}")));
    }
    let (times, omegas) = match profile.shape() {
        ProfileShape::Constant { omega0 } => (vec![0.0], vec![*omega0]),
        ProfileShape::PiecewiseConstant { times, omegas } => (times.clone(), omegas.clone()),
        _ => {
            return Err(Error::Domain(
                "closed-form trajectory requires a piecewise-constant profile".into(),
            ))
        }
    };

    let mut point = TrajectoryPoint::initial();
    for (i, &w) in omegas.iter().enumerate() {
        let start = times[i];
        if start >= t {
            break;
        }
        let end = times.get(i + 1).copied().unwrap_or(f64::INFINITY).min(t);
        point = rotate(point, w, end - start);
    }
    point.t = t;
    Ok(point)
}

fn rotate(start: TrajectoryPoint, omega: f64, dt: f64) -> TrajectoryPoint {
    let propagate = |tau: f64| {
        let (s, c) = (omega * tau).sin_cos();
        (
            start.eps * c + start.deps / omega * s,
            -start.eps * omega * s + start.deps * c,
        )
    };
    let (eps, deps) = propagate(dt);

    // arg(eps) advances by exactly pi per half period and monotonically in between.
    let half_periods = (omega * dt / PI).floor();
    let (partial, _) = propagate(dt - half_periods * PI / omega);
    let within = (partial * start.eps.conj()).arg().rem_euclid(2.0 * PI);
    TrajectoryPoint {
        t: start.t + dt,
        eps,
        deps,
        eps_phase: start.eps_phase + half_periods * PI + within,
    }
}
