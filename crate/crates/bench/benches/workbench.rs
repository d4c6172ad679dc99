use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fracindex::catalog::{cp, hypersurface, product};
use fracindex::engine::dirac_index;
use fracindex::genera::{genus_of, CharData, GenusKind};
use fracindex::lab::{
    mckean_singer_check, parse_symbol_expr, symbol_index, GradedOperator, LabParams, LabSymbol,
};

fn bench_ahat_hypersurface(c: &mut Criterion) {
    c.bench_function("ahat_integral_v8_13", |b| {
        b.iter(|| {
            let m = hypersurface(black_box(4), black_box(13));
            genus_of(GenusKind::AHat, m.tangent()).unwrap().integrate()
        })
    });
}

fn bench_dirac_product(c: &mut Criterion) {
    let m = product(&cp(2), &cp(2)).unwrap();
    let e = CharData::trivial(m.ring(), 1);
    c.bench_function("dirac_index_cp2_x_cp2", |b| {
        b.iter(|| dirac_index(black_box(&m), black_box(&e)).unwrap().value)
    });
}

fn bench_toeplitz_exact(c: &mut Criterion) {
    let s = LabSymbol::Exact(parse_symbol_expr("e^{-3it}").unwrap());
    let params = LabParams {
        cutoff: 64,
        order: 32,
        window: 16,
    };
    c.bench_function("toeplitz_index_exact_k64", |b| {
        b.iter(|| symbol_index(black_box(&s), &params).unwrap())
    });
}

fn bench_toeplitz_numeric(c: &mut Criterion) {
    let s = LabSymbol::Numeric(parse_symbol_expr("1/4+e^{it}").unwrap().to_numeric());
    let params = LabParams::default();
    c.bench_function("toeplitz_index_numeric_k128", |b| {
        b.iter(|| symbol_index(black_box(&s), &params).unwrap())
    });
}

fn bench_mckean_singer(c: &mut Criterion) {
    let rows: Vec<Vec<f64>> = (0..10)
        .map(|i| (0..12).map(|j| ((i * 12 + j) as f64 * 0.37).sin()).collect())
        .collect();
    let d = GradedOperator::from_rows(rows);
    c.bench_function("mckean_singer_10x12", |b| {
        b.iter(|| mckean_singer_check(black_box(&d), &[0.1, 1.0, 10.0]))
    });
}

criterion_group!(
    benches,
    bench_ahat_hypersurface,
    bench_dirac_product,
    bench_toeplitz_exact,
    bench_toeplitz_numeric,
    bench_mckean_singer
);
criterion_main!(benches);
