use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use paramosc::quadrature::trapezoid_nodes;
use paramosc::{
    coherent_wavefunction, fock_wavefunction, hermite, integrate_trajectory, phase_space_moments,
    vacuum_wavefunction, ClassicalTrajectory, CoherentLabel, FrequencyProfile, TrajectoryPoint,
};

fn step_trajectory() -> ClassicalTrajectory {
    integrate_trajectory(&FrequencyProfile::step_one_to_two(), 6.0, 1e-3).unwrap()
}

/// Exact point of the `omega = 2` trajectory, valid for `t < pi / 4`.
fn step_point(t: f64) -> TrajectoryPoint {
    let (s, c) = (2.0 * t).sin_cos();
    let eps = Complex64::new(c, 0.5 * s);
    TrajectoryPoint {
        t,
        eps,
        deps: Complex64::new(-2.0 * s, c),
        eps_phase: eps.arg(),
    }
}

struct QuadratureMoments {
    norm: f64,
    q_mean: f64,
    p_mean: f64,
    s_qq: f64,
    s_pp: f64,
    s_qp: f64,
}

/// Moments of `psi` by brute-force quadrature, with `psi'` from central differences.
fn quadrature_moments(
    psi: impl Fn(f64) -> Complex64,
    centre: f64,
    half_width: f64,
) -> QuadratureMoments {
    const H: f64 = 1e-5;
    let nodes = trapezoid_nodes(centre - half_width, centre + half_width, 4001);
    let (mut n, mut x1, mut x2, mut p1, mut p2, mut xp) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, w) in &nodes {
        let a = psi(x);
        let d = (psi(x + H) - psi(x - H)) / (2.0 * H);
        let rho = a.norm_sqr();
        n += w * rho;
        x1 += w * x * rho;
        x2 += w * x * x * rho;
        // <p> = Re int conj(psi) (-i psi'), <p^2> = int |psi'|^2
        p1 += w * (a.conj() * -Complex64::i() * d).re;
        p2 += w * d.norm_sqr();
        // symmetrized <xp>
        xp += w * x * (a.conj() * -Complex64::i() * d).re;
    }
    let (q_mean, p_mean) = (x1 / n, p1 / n);
    QuadratureMoments {
        norm: n,
        q_mean,
        p_mean,
        s_qq: x2 / n - q_mean * q_mean,
        s_pp: p2 / n - p_mean * p_mean,
        s_qp: xp / n - q_mean * p_mean,
    }
}

#[test]
fn hermite_matches_explicit_polynomials() {
    for x in [-2.5f64, -0.3, 0.0, 0.7, 3.1] {
        let explicit = [
            1.0,
            2.0 * x,
            4.0 * x * x - 2.0,
            8.0 * x.powi(3) - 12.0 * x,
            16.0 * x.powi(4) - 48.0 * x * x + 12.0,
            32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x,
        ];
        for (n, h) in explicit.iter().enumerate() {
            let got = hermite(n, x).unwrap();
            assert!(
                (got - h).abs() <= 1e-12 * h.abs().max(1.0),
                "H_{n}({x}) = {got}, expected {h}"
            );
        }
    }
}

#[test]
fn fock_states_are_orthonormal() {
    let pt = step_trajectory().at_time(1.3).unwrap().to_owned();
    let nodes = trapezoid_nodes(-14.0, 14.0, 4001);
    let ns = [0usize, 1, 2, 5, 10, 30];
    let states: Vec<Vec<Complex64>> = ns
        .iter()
        .map(|&n| {
            nodes
                .iter()
                .map(|&(x, _)| fock_wavefunction(n, &pt, x).unwrap())
                .collect()
        })
        .collect();
    for (a, sa) in states.iter().enumerate() {
        for (b, sb) in states.iter().enumerate() {
            let overlap: Complex64 = nodes
                .iter()
                .zip(sa.iter().zip(sb))
                .map(|(&(_, w), (u, v))| w * u.conj() * v)
                .sum();
            let expected = if a == b { 1.0 } else { 0.0 };
            assert!(
                (overlap - expected).norm() < 1e-10,
                "<{}|{}> = {overlap}",
                ns[a],
                ns[b]
            );
        }
    }
}

#[test]
fn high_fock_index_stays_finite() {
    let pt = TrajectoryPoint::initial();
    for x in [0.0, 5.0, 19.9, 25.0] {
        let v = fock_wavefunction(200, &pt, x).unwrap();
        assert!(v.re.is_finite() && v.im.is_finite());
    }
    assert!(fock_wavefunction(201, &pt, 0.0).is_err());
}

#[test]
fn generating_function_sums_to_coherent_state() {
    let traj = step_trajectory();
    for t in [0.0, 0.9, 4.2] {
        let pt = traj.at_time(t).unwrap();
        for alpha in [
            Complex64::new(0.5, 0.0),
            Complex64::new(-1.0, 1.5),
            Complex64::new(0.0, 2.0),
        ] {
            let label = CoherentLabel::new(alpha).unwrap();
            for x in [-2.0, -0.4, 0.0, 1.1, 2.7] {
                let mut sum = Complex64::new(0.0, 0.0);
                let mut coeff = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
                for n in 0..=40 {
                    if n > 0 {
                        coeff *= alpha / (n as f64).sqrt();
                    }
                    sum += coeff * fock_wavefunction(n, pt, x).unwrap();
                }
                let direct = coherent_wavefunction(label, pt, x);
                assert!((sum - direct).norm() < 1e-6, "t {t}, alpha {alpha}, x {x}");
            }
        }
    }
}

/// `i psi_t = -psi_xx / 2 + omega^2 x^2 psi / 2` by central differences.
fn schrodinger_residual(
    alpha: CoherentLabel,
    point: impl Fn(f64) -> TrajectoryPoint,
    omega: f64,
    t: f64,
    h: f64,
) -> f64 {
    let psi = |t: f64, x: f64| coherent_wavefunction(alpha, &point(t), x);
    let mut worst = 0.0f64;
    for x in [-1.5, -0.5, 0.0, 0.8, 1.7] {
        let dt = (psi(t + h, x) - psi(t - h, x)) / (2.0 * h);
        let dxx = (psi(t, x + h) - 2.0 * psi(t, x) + psi(t, x - h)) / (h * h);
        let rhs = -0.5 * dxx + 0.5 * omega * omega * x * x * psi(t, x);
        worst = worst.max((Complex64::i() * dt - rhs).norm());
    }
    worst
}

#[test]
fn coherent_state_solves_schrodinger_equation() {
    let alpha = CoherentLabel::from_parts(0.8, -0.6).unwrap();
    for (omega, t) in [(1.0, 0.7), (2.0, 0.3), (2.0, 0.6)] {
        let point = |t: f64| {
            if omega == 1.0 {
                TrajectoryPoint::unit_frequency(t)
            } else {
                step_point(t)
            }
        };
        let coarse = schrodinger_residual(alpha, point, omega, t, 2e-3);
        let fine = schrodinger_residual(alpha, point, omega, t, 1e-3);
        assert!(fine < 1e-3, "residual {fine}");
        let ratio = coarse / fine;
        assert!(
            ratio > 3.5 && ratio < 4.5,
            "omega {omega}, t {t}: ratio {ratio}"
        );
    }
}

#[test]
fn vacuum_is_alpha_zero_coherent_state() {
    let pt = step_trajectory().at_time(2.2).unwrap().to_owned();
    for x in [-1.0, 0.0, 0.4, 3.0] {
        let a = vacuum_wavefunction(&pt, x);
        let b = coherent_wavefunction(CoherentLabel::vacuum(), &pt, x);
        let c = fock_wavefunction(0, &pt, x).unwrap();
        assert!((a - b).norm() < 1e-15 && (a - c).norm() < 1e-14);
    }
}

#[test]
fn moments_match_two_hand_cases() {
    let m = phase_space_moments(
        CoherentLabel::from_parts(1.0, 0.0).unwrap(),
        &TrajectoryPoint::initial(),
    );
    assert!((m.q_mean - 2f64.sqrt()).abs() < 1e-15 && m.p_mean.abs() < 1e-15);
    let m = phase_space_moments(
        CoherentLabel::from_parts(0.0, 1.0).unwrap(),
        &TrajectoryPoint::initial(),
    );
    assert!(m.q_mean.abs() < 1e-15 && (m.p_mean - 2f64.sqrt()).abs() < 1e-15);
    // omega = 2 at t = pi/8: eps = (1 + i/2) / sqrt 2, eps' = (-2 + i) / sqrt 2
    let m = phase_space_moments(CoherentLabel::vacuum(), &step_point(PI / 8.0));
    assert!((m.s_qq - 5.0 / 16.0).abs() < 1e-15);
    assert!((m.s_pp - 5.0 / 4.0).abs() < 1e-15);
    assert!((m.s_qp + 3.0 / 8.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadrature_moments_match_closed_form(
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
        k in 0usize..=6000,
    ) {
        let traj = step_trajectory();
        let pt = traj.points()[k];
        let alpha = CoherentLabel::from_parts(re, im).unwrap();
        let m = phase_space_moments(alpha, &pt);
        let sd = m.s_qq.sqrt();
        let numeric = quadrature_moments(|x| coherent_wavefunction(alpha, &pt, x), m.q_mean, 12.0 * sd);
        prop_assert!((numeric.norm - 1.0).abs() < 1e-9);
        prop_assert!((numeric.q_mean - m.q_mean).abs() < 1e-6);
        prop_assert!((numeric.p_mean - m.p_mean).abs() < 1e-6);
        prop_assert!((numeric.s_qq - m.s_qq).abs() < 1e-6);
        prop_assert!((numeric.s_pp - m.s_pp).abs() < 1e-6);
        prop_assert!((numeric.s_qp - m.s_qp).abs() < 1e-6, "s_qp {} vs {}", numeric.s_qp, m.s_qp);
        prop_assert!((m.det() - 0.25).abs() < 1e-10);
    }
}
