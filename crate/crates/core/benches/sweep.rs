use artin_hol::hilbert::{hilbert_basis_frontier, hilbert_basis_oracle};
use artin_hol::model::{DegreeVector, OrderVector};
use artin_hol::sweep::{run_sweep_to, Execution, SweepPlan};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for degrees in [vec![1, 1, 1, 3], vec![1, 1, 2, 3, 3]] {
        let plan = SweepPlan::new(DegreeVector::new(degrees.clone()).unwrap(), 2);
        let label = format!("{degrees:?}");
        group.bench_with_input(BenchmarkId::new("sequential", &label), &plan, |b, plan| {
            b.iter(|| run_sweep_to(plan, &mut std::io::sink(), Execution::Sequential).unwrap())
        });
        #[cfg(feature = "parallel")]
        {
            let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
            group.bench_with_input(BenchmarkId::new("parallel", &label), &plan, |b, plan| {
                b.iter(|| {
                    run_sweep_to(plan, &mut std::io::sink(), Execution::Parallel { workers })
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("hilbert");
    for orders in [vec![3, -2, 1, -3], vec![2, -3, 3, -1, 2]] {
        let v = OrderVector::new(orders.clone()).unwrap();
        let label = format!("{orders:?}");
        group.bench_with_input(BenchmarkId::new("oracle", &label), &v, |b, v| {
            b.iter(|| hilbert_basis_oracle(black_box(v)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("frontier", &label), &v, |b, v| {
            b.iter(|| hilbert_basis_frontier(black_box(v)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, engines);
criterion_main!(benches);
