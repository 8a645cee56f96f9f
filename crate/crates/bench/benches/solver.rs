use chemopulse::solver::{Stepper, Tridiagonal};
use chemopulse_bench::{default_spec, developed_state};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn step(c: &mut Criterion) {
    let mut group = c.benchmark_group("step");
    for nx in [900, 1800, 3600] {
        let spec = default_spec(nx);
        let state = developed_state(&spec, 200);
        let ctrl = spec.control().unwrap();
        let mut stepper = Stepper::new();
        group.bench_with_input(BenchmarkId::from_parameter(nx), &state, |b, s| {
            b.iter(|| stepper.step(black_box(s), &spec.params, &spec.grid, &ctrl))
        });
    }
    group.finish();
}

fn thomas(c: &mut Criterion) {
    let n = 3600;
    let m = Tridiagonal::implicit_diffusion(n, 0.7, |_| 0.01);
    let rhs: Vec<f64> = (0..n).map(|k| (k as f64 * 0.01).sin().abs()).collect();
    let mut scratch = Vec::new();
    c.bench_function("thomas_3600", |b| {
        b.iter(|| {
            let mut x = rhs.clone();
            m.solve_in_place(black_box(&mut x), &mut scratch).unwrap();
            x
        })
    });
}

criterion_group!(benches, step, thomas);
criterion_main!(benches);
