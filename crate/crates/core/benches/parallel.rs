use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use paramosc::tomography::{
    inverse_radon, radon_transform, wigner_from_density, wigner_grid_gaussian, InverseRadonOptions,
    PhaseSpaceGridSpec, QuadratureGridSpec, WignerQuadrature,
};
use paramosc::{
    integrate_trajectory, phase_space_moments, symplectic_tomogram, CoherentLabel, CoherentState,
    Execution, FrequencyProfile, ReferenceFrame,
};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_grids(c: &mut Criterion) {
    let traj = integrate_trajectory(&FrequencyProfile::step_one_to_two(), 1.0, 1e-3).unwrap();
    let pt = *traj.last();
    let alpha = CoherentLabel::from_parts(1.0, 0.0).unwrap();
    let m = phase_space_moments(alpha, &pt);
    let state = CoherentState::new(alpha, pt);
    let spec = PhaseSpaceGridSpec::around(&m, 8.0, 256, 256).unwrap();
    let quad = WignerQuadrature::for_moments(&m, &spec);
    let frame = ReferenceFrame::new(0.8, -1.3).unwrap();
    let bins =
        QuadratureGridSpec::around(&symplectic_tomogram(&m, frame).unwrap(), 6.0, 128).unwrap();
    let wigner = wigner_from_density(&state, spec, quad, Execution::Parallel).unwrap();

    let mut group = c.benchmark_group("wigner_gaussian_256");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| wigner_grid_gaussian(black_box(&m), spec, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("wigner_numeric_256");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| wigner_from_density(black_box(&state), spec, quad, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("radon_256_to_128");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| radon_transform(black_box(&wigner), frame, bins, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("inverse_radon_257");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                inverse_radon(
                    black_box(&m),
                    0.3,
                    -0.2,
                    InverseRadonOptions::default(),
                    exec,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_grids);
criterion_main!(benches);
