use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rarewave_bench::{default_profile, solver_fixture};
use rarewave_core::ibvp::{cfl_dt, step};
use rarewave_core::rarefaction::riemann_fan;
use rarewave_core::special::reg_lower_gamma;

fn bench_incomplete_gamma(c: &mut Criterion) {
    c.bench_function("reg_lower_gamma q=10", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 1..64 {
                acc += reg_lower_gamma(black_box(11.0), black_box(i as f64)).unwrap();
            }
            acc
        })
    });
}

fn bench_riemann_fan(c: &mut Criterion) {
    let profile = default_profile();
    let setup = profile.setup;
    let gas = profile.gas;
    c.bench_function("riemann_fan sweep", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 0..256 {
                let xi = 0.5 + 2.0 * i as f64 / 255.0;
                acc += riemann_fan(black_box(xi), &setup, &gas).v;
            }
            acc
        })
    });
}

fn bench_profile_eval(c: &mut Criterion) {
    let profile = default_profile();
    c.bench_function("profile eval mid-wave", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 0..64 {
                let x = 10.0 + i as f64;
                acc += profile.eval(black_box(25.0), black_box(x)).u_x;
            }
            acc
        })
    });
}

fn bench_solver_step(c: &mut Criterion) {
    let (profile, grid, cfg, f0) = solver_fixture(2048);
    let gas = profile.gas;
    let dt = cfl_dt(&f0, &gas, &grid, &cfg);
    c.bench_function("solver step N=2048", |b| {
        b.iter(|| step(black_box(&f0), dt, &profile, &gas, &grid).unwrap())
    });
}

criterion_group!(
    benches,
    bench_incomplete_gamma,
    bench_riemann_fan,
    bench_profile_eval,
    bench_solver_step
);
criterion_main!(benches);
