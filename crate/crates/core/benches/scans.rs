//! Parallel scans against the same work pinned to one thread.
//!
//! Build with `--no-default-features` to drop rayon entirely; both groups
//! then measure the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use laguerre_hardy::exec;
use laguerre_hardy::hardy::{family_alpha, make_atom, uniform_phi_sum_scan};
use laguerre_hardy::kernel::{norm_scan, NormKind};
use laguerre_hardy::quadrature::coefficients_up_to;
use laguerre_hardy::verify::l1_grid;

fn both<F: Fn() + Sync + Send>(c: &mut Criterion, group: &str, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("parallel", exec::is_parallel()), |b| b.iter(&f));
    g.bench_function("sequential", |b| b.iter(|| exec::sequential(&f)));
    g.finish();
}

fn norm(c: &mut Criterion) {
    both(c, "norm_scan", || {
        norm_scan(NormKind::Derivative, &[0.5], &[0.9, 0.99], 0.75).unwrap();
    });
}

fn uniform(c: &mut Criterion) {
    let grid = l1_grid();
    both(c, "uniform_phi_sum_scan", || {
        uniform_phi_sum_scan(0.5, 0.0, &grid, 5000).unwrap();
    });
}

fn coefficients(c: &mut Criterion) {
    let atom = make_atom(2, &[1.5, 2.0], 0.5, 4).unwrap();
    let alpha = family_alpha(2);
    both(c, "coefficients_2d", || {
        coefficients_up_to(&atom.target(), &alpha, 40).unwrap();
    });
}

criterion_group!(benches, norm, uniform, coefficients);
criterion_main!(benches);
