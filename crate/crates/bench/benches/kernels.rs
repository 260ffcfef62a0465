use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hyperforge::forms::witt_decompose;
use hyperforge::hauptsatz::{check_hauptsatz, GenMode, TraceMode};
use hyperforge::poly::euclid_divide;
use hyperforge::quadext::{extend, s_quotient};
use hyperforge::{check_axioms, CatalogKey, Kind};
use hyperforge_bench::{cycling_form, division_pair, field};

fn axioms(c: &mut Criterion) {
    let f = field(CatalogKey::Fan(8));
    c.bench_function("check_axioms hyperfield FAN8", |b| {
        b.iter(|| check_axioms(black_box(&f), Kind::Hyperfield).unwrap())
    });
}

fn extension(c: &mut Criterion) {
    let f = field(CatalogKey::Fan(8));
    let alpha = f.parse_element("a").unwrap();
    c.bench_function("extend FAN8 by a", |b| {
        b.iter(|| extend(black_box(&f), alpha).unwrap())
    });
    let e = extend(&f, alpha).unwrap();
    c.bench_function("s_quotient FAN8(a)", |b| {
        b.iter(|| s_quotient(black_box(&e), false))
    });
}

fn division(c: &mut Criterion) {
    let f = field(CatalogKey::Fan(4));
    let (num, den) = division_pair(&f);
    c.bench_function("euclid_divide FAN4 deg 4 by 2", |b| {
        b.iter(|| euclid_divide(&f, black_box(&num), black_box(&den)).unwrap())
    });
}

fn witt(c: &mut Criterion) {
    let f = field(CatalogKey::Fan(8));
    let phi = cycling_form(&f, 8);
    c.bench_function("witt_decompose FAN8 dim 8", |b| {
        b.iter(|| witt_decompose(&f, black_box(&phi)))
    });
}

fn hauptsatz(c: &mut Criterion) {
    let f = field(CatalogKey::Fan(4));
    let mut group = c.benchmark_group("hauptsatz");
    group.sample_size(10);
    group.bench_function("FAN4 n=2 terms=2 traced", |b| {
        b.iter(|| check_hauptsatz(&f, 2, 2, GenMode::Exhaustive, TraceMode::All).unwrap())
    });
    group.finish();
}

criterion_group!(kernels, axioms, extension, division, witt, hauptsatz);
criterion_main!(kernels);
