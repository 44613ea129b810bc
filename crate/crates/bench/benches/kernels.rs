use std::hint::black_box;

use boundsol::lin::{conj3_stats, conj2_check, conj2_rows, ExhaustiveUnique, DEFAULT_EXHAUSTIVE_CAP};
use boundsol::linalg::{det_bareiss, min_norm_solution, pseudoinverse};
use boundsol::poly::{buchberger, solve_zero_dim, SolveOptions};
use boundsol::polysys::{full_pool, greedy_saturate, to_polynomials, PolySystem, PoolVariant, Saturation};
use boundsol::{QMatrix, QVector, SplitMix64};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn linear(c: &mut Criterion) {
    let m = QMatrix::from_ints(&[
        &[2, -1, 0, 0, 0],
        &[1, 1, -1, 0, 0],
        &[0, 2, 0, -1, 0],
        &[-1, 0, 1, 1, 0],
        &[0, 0, 1, 1, -1],
    ]);
    c.bench_function("det_bareiss_5x5", |b| b.iter(|| det_bareiss(black_box(&m)).unwrap()));

    let wide = QMatrix::from_ints(&[&[1, 0, 0, 0, 0], &[1, 1, -1, 0, 0], &[0, 2, 0, -1, 0], &[2, 0, 0, -1, 0]]);
    c.bench_function("pseudoinverse_4x5", |b| b.iter(|| pseudoinverse(black_box(&wide))));
    let rhs = QVector::from_ints(&[1, 0, 0, 0]);
    c.bench_function("min_norm_4x5", |b| b.iter(|| min_norm_solution(black_box(&wide), &rhs).unwrap()));

    let rows = conj2_rows(5);
    c.bench_function("conj2_check_n5", |b| b.iter(|| conj2_check(black_box(&rows[20..24]), 5).unwrap()));

    let ex = ExhaustiveUnique::new(5, DEFAULT_EXHAUSTIVE_CAP).unwrap();
    c.bench_function("exhaustive_conj3_slice_1000", |b| {
        b.iter(|| ex.iter_range(150_000, 151_000).map(|u| conj3_stats(&u.solution).max()).max())
    });
}

fn polynomial(c: &mut Criterion) {
    let chain = to_polynomials(&PolySystem::squaring_chain(4));
    let order = PolySystem::squaring_chain(4).order();
    c.bench_function("buchberger_squaring_chain_4", |b| b.iter(|| buchberger(black_box(&chain), order)));
    c.bench_function("solve_squaring_chain_4", |b| {
        b.iter(|| solve_zero_dim(black_box(&chain), &SolveOptions::default()).unwrap())
    });
    let pool = full_pool(4, PoolVariant::WithUnitsFixedX1).unwrap();
    let mut seed = 0u64;
    c.bench_function("greedy_saturation_fixed_x1_n4", |b| {
        b.iter_batched(
            || {
                seed += 1;
                SplitMix64::new(seed)
            },
            |mut rng| greedy_saturate(&pool, &mut rng, Saturation::UntilZeroDimensional, &SolveOptions::default()).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, linear, polynomial);
criterion_main!(benches);
