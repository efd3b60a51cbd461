use num_complex::Complex64;
use proptest::prelude::*;

use paramosc::{
    closed_form_piecewise, integrate_trajectory, FrequencyProfile, ProfileShape, TrajectoryPoint,
};

fn componentwise(a: &TrajectoryPoint, b: &TrajectoryPoint) -> f64 {
    [
        a.eps.re - b.eps.re,
        a.eps.im - b.eps.im,
        a.deps.re - b.deps.re,
        a.deps.im - b.deps.im,
    ]
    .iter()
    .fold(0.0f64, |m, d| m.max(d.abs()))
}

/// `eps = cos(w t) + (i / w) sin(w t)`, derived independently of the library.
fn harmonic(omega: f64, t: f64) -> (Complex64, Complex64) {
    let (s, c) = (omega * t).sin_cos();
    (Complex64::new(c, s / omega), Complex64::new(-omega * s, c))
}

#[test]
fn unit_frequency_is_exp_it() {
    let traj = integrate_trajectory(&FrequencyProfile::constant(1.0).unwrap(), 20.0, 1e-3).unwrap();
    for pt in traj.points().iter().step_by(997) {
        let exact = Complex64::from_polar(1.0, pt.t);
        assert!((pt.eps - exact).norm() < 1e-9);
        assert!((pt.deps - Complex64::i() * exact).norm() < 1e-9);
        assert!((pt.eps_phase - pt.t).abs() < 1e-9);
    }
}

#[test]
fn constant_nonunit_frequency_matches_harmonic_solution() {
    let profile = FrequencyProfile::new(ProfileShape::Constant { omega0: 3.0 }, true).unwrap();
    let traj = integrate_trajectory(&profile, 10.0, 1e-3).unwrap();
    for pt in traj.points().iter().step_by(499) {
        let (eps, deps) = harmonic(3.0, pt.t);
        assert!((pt.eps - eps).norm() < 1e-8, "t = {}", pt.t);
        assert!((pt.deps - deps).norm() < 1e-8, "t = {}", pt.t);
    }
}

#[test]
fn step_profile_matches_hand_derived_solution() {
    let traj = integrate_trajectory(&FrequencyProfile::step_one_to_two(), 20.0, 1e-3).unwrap();
    for pt in traj.points().iter().step_by(1009) {
        let (eps, deps) = harmonic(2.0, pt.t);
        assert!((pt.eps - eps).norm() < 1e-7);
        assert!((pt.deps - deps).norm() < 1e-7);
    }
}

#[test]
fn convergence_is_fourth_order_on_constant_frequency() {
    let profile = FrequencyProfile::constant(1.0).unwrap();
    let error = |h: f64| {
        let traj = integrate_trajectory(&profile, 20.0, h).unwrap();
        componentwise(
            traj.last(),
            &closed_form_piecewise(&profile, traj.last().t).unwrap(),
        )
    };
    let ratio = error(1e-2) / error(5e-3);
    assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn sinusoidal_drive_conserves_the_wronskian() {
    let profile = FrequencyProfile::new(
        ProfileShape::Sinusoidal {
            omega0: 1.0,
            kappa: 0.5,
            gamma: 2.0,
        },
        true,
    )
    .unwrap();
    let traj = integrate_trajectory(&profile, 20.0, 1e-3).unwrap();
    for pt in traj.points() {
        assert!((pt.wronskian() - Complex64::new(0.0, 2.0)).norm() <= 1e-9 * (1.0 + pt.t));
        assert!(pt.eps.norm() * pt.deps.norm() >= 1.0 - 1e-9);
    }
}

#[test]
fn sqrt_eps_is_continuous() {
    let traj = integrate_trajectory(&FrequencyProfile::step_one_to_two(), 20.0, 1e-3).unwrap();
    let roots: Vec<Complex64> = traj.points().iter().map(|p| p.sqrt_eps()).collect();
    for w in roots.windows(2) {
        assert!((w[1] - w[0]).norm() < 1e-2);
    }
    for (r, p) in roots.iter().zip(traj.points()) {
        assert!((r * r - p.eps).norm() < 1e-12);
    }
}

#[test]
fn rejects_invalid_inputs() {
    let profile = FrequencyProfile::constant(1.0).unwrap();
    assert!(integrate_trajectory(&profile, 1.0, 0.0).is_err());
    assert!(integrate_trajectory(&profile, 1.0, 0.1).is_err());
    assert!(integrate_trajectory(&profile, -1.0, 1e-3).is_err());
    assert!(FrequencyProfile::constant(2.0).is_err());
    assert!(FrequencyProfile::piecewise(&[(0.0, 1.0), (2.0, 1.5), (1.0, 1.0)]).is_err());
}

fn piecewise_profile() -> impl Strategy<Value = FrequencyProfile> {
    prop::collection::vec((0.2f64..4.0, 0.3f64..3.0), 0..4).prop_map(|tail| {
        let mut segments = vec![(0.0, 1.0)];
        let mut t = 0.0;
        for (dt, omega) in tail {
            t += dt;
            segments.push((t, omega));
        }
        FrequencyProfile::piecewise(&segments).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn piecewise_profiles_match_closed_form(profile in piecewise_profile()) {
        let traj = integrate_trajectory(&profile, 20.0, 1e-3).unwrap();
        for pt in traj.points().iter().step_by(2500).chain(std::iter::once(traj.last())) {
            let exact = closed_form_piecewise(&profile, pt.t).unwrap();
            prop_assert!(componentwise(pt, &exact) <= 1e-7, "t = {}", pt.t);
            prop_assert!((pt.eps_phase - exact.eps_phase).abs() < 1e-6);
        }
    }

    #[test]
    fn product_of_moduli_is_at_least_one(profile in piecewise_profile()) {
        let traj = integrate_trajectory(&profile, 10.0, 1e-3).unwrap();
        for pt in traj.points() {
            prop_assert!(pt.eps.norm() * pt.deps.norm() >= 1.0 - 1e-9);
        }
    }
}
