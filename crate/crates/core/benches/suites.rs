use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fincat_core::linalg::{FieldSpec, Matrix};
use fincat_core::verify::{run_suite, Execution, SampleSpace, Suite};

const SAMPLES: usize = 32;

fn suites(c: &mut Criterion) {
    let space = SampleSpace::standard();
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for suite in [Suite::FreydKernel, Suite::BoxEvalSquare, Suite::AbelianWitness, Suite::DiscreteDecompose] {
        for (label, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
            group.bench_with_input(BenchmarkId::new(suite.name(), label), &exec, |b, &exec| {
                b.iter(|| run_suite(black_box(suite), &space, 7, SAMPLES, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for field in [FieldSpec::Rationals, FieldSpec::PrimeField(7)] {
        let n = 24;
        let values: Vec<i64> = (0..n * n).map(|i| ((i * 7919 + 13) % 11) as i64 - 5).collect();
        let m = Matrix::from_i64(field, n, n, &values);
        group.bench_function(BenchmarkId::new("24x24", field), |b| b.iter(|| black_box(&m).rank()));
    }
    group.finish();
}

criterion_group!(benches, suites, elimination);
criterion_main!(benches);
