//! Sequential vs rayon execution of the batch sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use integral_fourier::identities::verify_identities;
use integral_fourier::sl2::round_trip;
use integral_fourier::suite::integrality_check;
use integral_fourier::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn integrality(c: &mut Criterion) {
    let mut group = c.benchmark_group("integrality");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| integrality_check(8, 3, 6, 6, exec).unwrap())
        });
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("identities_rank3_deg5");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_identities(3, 5, exec).unwrap())
        });
    }
    group.finish();
}

fn sl2_round_trip(c: &mut Criterion) {
    let mut group = c.benchmark_group("sl2_round_trip_g3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| round_trip(3, 16, 0, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, integrality, identities, sl2_round_trip);
criterion_main!(benches);
