use std::hint::black_box;

use bordcalc_core::parse::parse_presentation;
use bordcalc_core::verify::{check_conner_floyd, check_exactness, verify};
use bordcalc_core::{identify_in_n, CoefRing, Engine, SpaceDesc};
use criterion::{criterion_group, criterion_main, Criterion};

fn normal_form(c: &mut Criterion) {
    let en = Engine::default();
    let x = parse_presentation("G(2,2)*G(1,3)*X2*X4 + a2*G(3,2)*G(1,2)", &en).unwrap();
    c.bench_function("normal_form/degree 11", |b| {
        b.iter(|| en.normal_form(black_box(&x)).unwrap())
    });
}

fn window_linear_algebra(c: &mut Criterion) {
    let en = Engine::default();
    c.bench_function("exactness/degree 6", |b| {
        b.iter(|| check_exactness(&en, black_box(6)).unwrap())
    });
    c.bench_function("conner_floyd/degree 6", |b| {
        b.iter(|| check_conner_floyd(&en, black_box(6)).unwrap())
    });
}

fn characteristic_numbers(c: &mut Criterion) {
    let ring = CoefRing::default();
    let space = SpaceDesc::Product(vec![SpaceDesc::Dold(1, 2), SpaceDesc::RP(4)]);
    c.bench_function("identify_in_n/Dold(1,2)xRP(4)", |b| {
        b.iter(|| identify_in_n(black_box(&space), &ring).unwrap())
    });
}

fn full_sweep(c: &mut Criterion) {
    let en = Engine::default();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("all/6", |b| {
        b.iter(|| verify("all", black_box(6), &en).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    normal_form,
    window_linear_algebra,
    characteristic_numbers,
    full_sweep
);
criterion_main!(benches);
