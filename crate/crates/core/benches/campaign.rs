use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use supersphere::campaign::{check_single, CampaignConfig};
use supersphere::exec::Exec;
use supersphere::ns::ns_jacobi_check;

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("ns_jacobi_band2");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| ns_jacobi_check(2, exec))
        });
    }
    group.finish();
}

fn sphere_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("spheres_closure_n2");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let cfg = CampaignConfig { generators: 4, samples: 8, exec, ..CampaignConfig::default() };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &cfg, |b, cfg| {
            b.iter(|| check_single("spheres.closure.n=2", cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, jacobi, sphere_closure);
criterion_main!(benches);
