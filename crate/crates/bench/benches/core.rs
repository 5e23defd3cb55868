use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cdc_core::algebra::gaussian_coefficient;
use cdc_core::bounds::{bound_cdc45, bound_new3, table_generate, RowFilter, TableId};
use cdc_core::cdc::lifted_mrd_code;
use cdc_core::rank_codes::{mrd_matrix_code, rank_distribution};
use cdc_core::verify::{verify_cdc, zassenhaus_distance, VerifyMode};
use cdc_core::{FiniteField, MatGF, Mcg64, Subspace};

fn random_subspaces(q: u64, n: usize, k: usize, count: usize) -> Vec<Subspace> {
    let f = FiniteField::new(q).unwrap();
    let mut g = Mcg64::new(1);
    (0..count)
        .map(|_| {
            let data = (0..k * n).map(|_| g.below(q) as u8).collect();
            Subspace::from_generator(&MatGF::from_vec(&f, k, n, data).unwrap())
        })
        .collect()
}

fn algebra(c: &mut Criterion) {
    c.bench_function("gaussian [36,18]_9", |b| b.iter(|| gaussian_coefficient(black_box(36), 18, 9)));
    let m = {
        let f = FiniteField::new(7).unwrap();
        let mut g = Mcg64::new(3);
        MatGF::from_vec(&f, 16, 24, (0..16 * 24).map(|_| g.below(7) as u8).collect()).unwrap()
    };
    c.bench_function("rref 16x24 over GF(7)", |b| b.iter(|| black_box(&m).rref()));
    for (q, n) in [(2u64, 8usize), (2, 16), (3, 8)] {
        let s = random_subspaces(q, n, n / 2, 64);
        c.bench_function(&format!("subspace distance GF({})^{}", q, n), |b| {
            b.iter(|| s.iter().zip(s.iter().skip(1)).map(|(u, v)| u.distance(v)).sum::<usize>())
        });
    }
    let s = random_subspaces(2, 8, 4, 64);
    c.bench_function("zassenhaus distance GF(2)^8", |b| {
        b.iter(|| s.iter().zip(s.iter().skip(1)).map(|(u, v)| zassenhaus_distance(u, v)).sum::<usize>())
    });
}

fn rank_codes(c: &mut Criterion) {
    let f = FiniteField::new(2).unwrap();
    let code = mrd_matrix_code(&f, 4, 4, 2).unwrap();
    c.bench_function("rank histogram of 4x4 MRD, delta 2", |b| b.iter(|| code.rank_histogram(1 << 16).unwrap()));
    c.bench_function("rank distribution q=9 12x12 delta 4", |b| b.iter(|| rank_distribution(9, 12, 12, 4).unwrap()));
}

fn bounds(c: &mut Criterion) {
    c.bench_function("new-3 bound q=9 (19,7,3)", |b| b.iter(|| bound_new3(9, black_box(19), 7, 3).unwrap()));
    c.bench_function("cdc45 bound q=9 n=14", |b| b.iter(|| bound_cdc45(9, black_box(14)).unwrap()));
    c.bench_function("table 3", |b| b.iter(|| table_generate(TableId::T3, &RowFilter::default()).unwrap()));
}

fn verification(c: &mut Criterion) {
    let f = FiniteField::new(2).unwrap();
    let code = lifted_mrd_code(&f, 8, 3, 2, 1 << 16).unwrap();
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("exhaustive lifted (8,3,2)_2", |b| b.iter(|| verify_cdc(&code, 4, VerifyMode::Exhaustive)));
    g.bench_function("sampled 10^5 pairs", |b| {
        b.iter(|| verify_cdc(&code, 4, VerifyMode::Sampled { pairs: 100_000, seed: 1 }))
    });
    g.finish();
}

criterion_group!(benches, algebra, rank_codes, bounds, verification);
criterion_main!(benches);
