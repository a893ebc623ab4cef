use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hecketrace::drinfeld::enumerate_classes_with;
use hecketrace::ffield::build_tower;
use hecketrace::funcfield::monic_irreducibles;
use hecketrace::hecke::{trace_table, HeckeContext, HeckeOptions};
use hecketrace::par::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_classes");
    for (p, m) in [(3u32, 6u32), (5, 4)] {
        let k = build_tower(p, 1, m).unwrap();
        let theta = k.primitive();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("{p}^{m}")), &exec, |b, &exec| {
                b.iter(|| enumerate_classes_with(&k, theta, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn traces(c: &mut Criterion) {
    let mut group = c.benchmark_group("hecke");
    group.sample_size(10);
    let fq = build_tower(3, 1, 1).unwrap();
    let ps = monic_irreducibles(&fq, 1);
    let ks: Vec<u32> = (2..=12).collect();
    for (name, exec) in MODES {
        let opts = HeckeOptions { exec, strict: false, ..HeckeOptions::default() };
        group.bench_function(BenchmarkId::new("trace_table", name), |b| {
            b.iter(|| trace_table(&ps, &[1, 2, 3], &ks, &[0, 1], &opts).unwrap())
        });
        let ctx = HeckeContext::new(&ps[0], 6, 729, exec).unwrap();
        group.bench_function(BenchmarkId::new("crystal_path", name), |b| b.iter(|| ctx.trace_via_crystals(10, 1, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, traces);
criterion_main!(benches);
