use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mfrac_bench::{c4, free};
use mfrac_core::FreeWord;

fn spheres(c: &mut Criterion) {
    let mut group = c.benchmark_group("sphere");
    for (name, p) in [("F2", free(2)), ("C4", c4())] {
        for k in [6, 10] {
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| b.iter(|| p.sphere(black_box(k)).unwrap()));
        }
    }
    group.finish();
}

fn normal_forms(c: &mut Criterion) {
    let p = c4();
    let word: FreeWord = (0..64u8).map(|i| (i * 7 + i / 3) % 4).collect::<Vec<u8>>().into();
    c.bench_function("normal_form/C4/64", |b| b.iter(|| p.normal_form(black_box(&word)).unwrap()));
}

criterion_group!(benches, spheres, normal_forms);
criterion_main!(benches);
