//! Sequential vs rayon throughput on the two batch workloads: upper-bound
//! instance runs and adversary grids.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use twcolor::experiments::{
    adversary_cells, run_adversary_cell, run_upper_instance, upper_specs, AdversaryConfig,
    UpperConfig,
};
use twcolor::par::{map_collect_par, map_collect_seq};

fn bench_upper_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("upper_bound_batch");
    for &instances in &[64usize, 256] {
        let cfg = UpperConfig {
            t_values: vec![4],
            instances_per_t: instances,
            max_n: 14,
            density: None,
            seed: 11,
        };
        let specs = upper_specs(&cfg);
        group.bench_with_input(
            BenchmarkId::new("sequential", instances),
            &specs,
            |b, specs| b.iter(|| black_box(map_collect_seq(specs, run_upper_instance))),
        );
        group.bench_with_input(BenchmarkId::new("rayon", instances), &specs, |b, specs| {
            b.iter(|| black_box(map_collect_par(specs, run_upper_instance)))
        });
    }
    group.finish();
}

fn bench_adversary_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("adversary_grid");
    let cfg = AdversaryConfig {
        t_values: (0..=6).collect(),
        k_values: vec![3, 4],
        victims: twcolor::victims::VICTIM_NAMES
            .iter()
            .map(|s| s.to_string())
            .collect(),
        seed: 11,
    };
    let cells = adversary_cells(&cfg);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(map_collect_seq(&cells, run_adversary_cell)))
    });
    group.bench_function("rayon", |b| {
        b.iter(|| black_box(map_collect_par(&cells, run_adversary_cell)))
    });
    group.finish();
}

criterion_group!(benches, bench_upper_batch, bench_adversary_grid);
criterion_main!(benches);
