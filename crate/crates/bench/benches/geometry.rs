use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_complex::Complex64;

use wickforge_cli::RunConfig;
use wickforge_core::catalog::Catalog;
use wickforge_core::surface::PointGeometry;

fn jets(c: &mut Criterion) {
    let cat = Catalog::builtin();
    let chart = cat.get("CC").unwrap().surface().unwrap();
    let (u, v) = (Complex64::new(0.3, 0.1), Complex64::new(0.7, -0.2));
    c.bench_function("jet eval CC", |b| b.iter(|| chart.program.jets(black_box(u), black_box(v)).unwrap()));
    c.bench_function("point eval CC", |b| b.iter(|| chart.program.eval(black_box(u), black_box(v)).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let cat = Catalog::builtin();
    let (u, v) = (Complex64::new(0.3, 0.1), Complex64::new(0.7, -0.2));
    for id in ["CS2", "catenoid-R3", "B"] {
        let chart = cat.get(id).unwrap().surface().unwrap();
        c.bench_function(&format!("PointGeometry {id}"), |b| {
            b.iter(|| PointGeometry::compute(&chart, black_box(u), black_box(v)).unwrap())
        });
        let g = PointGeometry::compute(&chart, u, v).unwrap();
        c.bench_function(&format!("nabla h {id}"), |b| b.iter(|| black_box(&g).nabla_h()));
    }
}

fn sweep(c: &mut Criterion) {
    let cat = Catalog::builtin();
    let target = wickforge_cli::resolve(&cat, "CC").unwrap();
    let mut group = c.benchmark_group("verify CC 21x21");
    group.sample_size(20);
    for jobs in [1, 4] {
        let cfg = RunConfig { jobs, ..RunConfig::default() };
        group.bench_function(format!("jobs={jobs}"), |b| {
            b.iter_batched(|| target.clone(), |t| wickforge_cli::verify(&t, None, &cfg).unwrap(), BatchSize::SmallInput)
        });
    }
    group.finish();
}

criterion_group!(benches, jets, geometry, sweep);
criterion_main!(benches);
