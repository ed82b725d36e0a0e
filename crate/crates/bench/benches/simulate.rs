use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use queig_bench::*;
use queig_core::{eig_hermitian, grover_iteration, solve_type2, OracleMode, SolverConfig, TargetOracle};
use std::hint::black_box;

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_hermitian");
    for dim in [8, 16, 32, 64] {
        let a = hermitian(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &a, |b, a| {
            b.iter(|| eig_hermitian(black_box(a)).unwrap())
        });
    }
    group.finish();
}

fn heisenberg_spectrum(c: &mut Criterion) {
    let m = heisenberg(5).to_matrix().unwrap();
    c.bench_function("eig_heisenberg_5", |b| b.iter(|| eig_hermitian(black_box(&m)).unwrap()));
}

fn phase_estimation(c: &mut Criterion) {
    let setup = h2_setup(OracleMode::Circuit);
    let qpe = qpe_circuit(&setup);
    let start = register_state(&setup, &system_state(4, 1));
    c.bench_function("qpe_h2_r7", |b| {
        b.iter_batched(|| start.clone(), |mut s| qpe.apply(&mut s).unwrap(), BatchSize::SmallInput)
    });
}

fn grover_step(c: &mut Criterion) {
    let setup = h2_setup(OracleMode::Circuit);
    let qpe = qpe_circuit(&setup);
    let phi = system_state(4, 2);
    let start = register_state(&setup, &phi);
    let oracle = TargetOracle::Circuit {
        qpe: &qpe,
        window: setup.oracle_window(),
    };
    let (alpha, beta) = setup.schedule().steps().next().unwrap();
    c.bench_function("grover_iteration_h2_circuit", |b| {
        b.iter_batched(
            || start.clone(),
            |mut s| grover_iteration(&mut s, &phi, oracle, alpha, beta).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn h2_solve(c: &mut Criterion) {
    let h = queig_core::build_h2_jw();
    let mut group = c.benchmark_group("solve_h2");
    group.sample_size(10);
    for mode in [OracleMode::Ideal, OracleMode::Circuit] {
        let config = SolverConfig {
            lambda0: H2_LAMBDA0,
            mode,
            ..SolverConfig::default()
        };
        group.bench_function(format!("{mode:?}").to_lowercase(), |b| {
            b.iter(|| solve_type2(&h, black_box(&config)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, eigensolver, heisenberg_spectrum, phase_estimation, grover_step, h2_solve);
criterion_main!(benches);
