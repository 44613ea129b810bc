mod common;

use boundsol::lin::{check_bound_pow2, encode, w_n, LinSystem};
use boundsol::linalg::{
    det_bareiss, min_norm_solution, norm_sq, nullspace, pseudoinverse, rank, rref, satisfies_penrose,
    solve_cramer, solve_inverse,
};
use boundsol::poly::{buchberger, solve_zero_dim, standard_monomial_count, Dimension, SolveOptions};
use boundsol::polysys::{full_pool, greedy_saturate, to_polynomials, PoolVariant, Saturation};
use boundsol::{QMatrix, QVector, Rational, SplitMix64};
use proptest::prelude::*;

use common::{cofactor_det, int_mat, is_min_norm_least_squares, minor_rank};

fn matrix(max_rows: usize, max_cols: usize, vals: Vec<i64>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(prop::sample::select(vals.clone()), c), r)
    })
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(prop::sample::select(vec![-1i64, 0, 1, 2]), n), n)
    })
}

fn q(rows: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_rows(int_mat(rows), rows[0].len()).unwrap()
}

fn w_system(max_n: usize) -> impl Strategy<Value = LinSystem> {
    (1..=max_n).prop_flat_map(|n| {
        let all = w_n(n);
        prop::collection::vec(prop::sample::select(all), 1..=n + 2)
            .prop_map(move |eqs| LinSystem::new(n, eqs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_cofactor(m in square(4)) {
        prop_assert_eq!(det_bareiss(&q(&m)).unwrap(), cofactor_det(&int_mat(&m)));
    }

    #[test]
    fn pseudoinverse_satisfies_penrose(m in matrix(4, 4, vec![-2, -1, 0, 1, 2, 3])) {
        let a = q(&m);
        let p = pseudoinverse(&a);
        prop_assert_eq!((p.rows(), p.cols()), (a.cols(), a.rows()));
        prop_assert!(satisfies_penrose(&a, &p));
    }

    #[test]
    fn rref_is_idempotent(m in matrix(4, 5, vec![-2, -1, 0, 1, 2])) {
        let r = rref(&q(&m));
        let again = rref(&r.reduced);
        prop_assert_eq!(&again.reduced, &r.reduced);
        prop_assert_eq!(r.pivot_columns.len(), minor_rank(&int_mat(&m)));
    }

    #[test]
    fn nullspace_has_complementary_dimension(m in matrix(4, 5, vec![-1, 0, 1, 2])) {
        let a = q(&m);
        let ker = nullspace(&a);
        prop_assert_eq!(ker.len() + rank(&a), a.cols());
        for k in &ker {
            prop_assert!(a.mul_vec(k).unwrap().is_zero());
        }
    }

    #[test]
    fn min_norm_is_certified_and_strictly_minimal(
        m in matrix(4, 4, vec![-2, -1, 0, 1, 2]),
        rhs in prop::collection::vec(-3i64..=3, 4),
        shift in prop::collection::vec(-2i64..=2, 4),
    ) {
        let a = q(&m);
        let b = QVector::from_ints(&rhs[..m.len()]);
        let x = min_norm_solution(&a, &b).unwrap();
        prop_assert!(is_min_norm_least_squares(&int_mat(&m), b.entries(), x.entries()));
        // Any other least-squares solution differs by a kernel vector and is longer.
        let ker = nullspace(&a);
        let mut y = x.clone();
        for (k, &c) in ker.iter().zip(&shift) {
            let c = Rational::from_integer(c);
            y = y.add(&QVector::new(k.iter().map(|v| v * &c).collect()));
        }
        if y != x {
            prop_assert!(norm_sq(&y) > norm_sq(&x));
        }
    }

    #[test]
    fn cramer_agrees_with_inverse(s in w_system(5)) {
        let enc = encode(&s);
        if enc.a.is_square() && !cofactor_det(&(0..enc.a.rows()).map(|i| enc.a.row(i).to_vec()).collect()).is_zero() {
            let c = solve_cramer(&enc.a, &enc.b).unwrap();
            prop_assert_eq!(&c, &solve_inverse(&enc.a, &enc.b).unwrap());
            prop_assert!(s.is_solved_by(&c));
        }
    }

    #[test]
    fn consistent_min_norm_solves_and_stays_bounded(s in w_system(5)) {
        let enc = encode(&s);
        if enc.is_consistent() {
            let x = min_norm_solution(&enc.a, &enc.b).unwrap();
            prop_assert!(s.is_solved_by(&x));
            prop_assert!(check_bound_pow2(&x, s.n()).passed());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn solver_points_are_roots_and_bounded_in_number(
        seed in any::<u64>(),
        n in 2usize..=4,
        variant in prop::sample::select(vec![PoolVariant::FullEn, PoolVariant::NoUnitsAllVars, PoolVariant::WithUnitsFixedX1]),
    ) {
        let pool = full_pool(n, variant).unwrap();
        let mut rng = SplitMix64::new(seed);
        let o = greedy_saturate(&pool, &mut rng, Saturation::UntilZeroDimensional, &SolveOptions::default()).unwrap();
        prop_assume!(o.classification == Dimension::ZeroDimensional && pool.unknowns() > 0);
        let gens = to_polynomials(&o.system);
        let count = standard_monomial_count(&buchberger(&gens, o.system.order())).unwrap();
        let sol = solve_zero_dim(&gens, &SolveOptions::default()).unwrap();
        prop_assert!(!sol.points.is_empty());
        prop_assert!(sol.points.len() <= count);
        prop_assert_eq!(sol.points.len(), sol.expected);
        for p in &sol.points {
            prop_assert!(o.system.residual(&o.system.expand(&p.entries)) < 1e-8);
        }
        for w in sol.points.windows(2) {
            let far = w[0].entries.iter().zip(&w[1].entries).any(|(a, b)| (a - b).norm() > 1e-6);
            prop_assert!(far);
        }
    }

    #[test]
    fn seeded_saturation_is_reproducible(seed in any::<u64>(), n in 2usize..=4) {
        let pool = full_pool(n, PoolVariant::FullEn).unwrap();
        let run = || greedy_saturate(&pool, &mut SplitMix64::new(seed), Saturation::UntilZeroDimensional, &SolveOptions::default()).unwrap();
        prop_assert_eq!(run(), run());
    }
}
