use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lrdstable::harness::replicate_kstar;
use lrdstable::hermite::{coeff_table, J_TOL};
use lrdstable::{Execution, StableLaw};

fn replications(c: &mut Criterion) {
    let law = StableLaw::new(0.5, 0.5).unwrap();
    let mut group = c.benchmark_group("replications");
    group.sample_size(10);
    for n in [128usize, 512] {
        for (name, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| replicate_kstar(&law, 0.8, n, 64, 1, 0.4, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn coefficient_table(c: &mut Criterion) {
    let xs: Vec<f64> = (0..101).map(|i| -10.0 + 0.2 * i as f64).collect();
    let mut group = c.benchmark_group("coeff_table");
    group.sample_size(10);
    for (name, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| coeff_table(1.5, 0.8, &xs, J_TOL, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, replications, coefficient_table);
criterion_main!(benches);
