use std::collections::HashSet;

use crate::combin::{binomial, combinations_in_range};
use crate::error::{Error, Result};
use crate::linalg::{solve_unique, QMatrix, QVector, RowSpace};
use crate::rational::Rational;
use crate::rng::SplitMix64;

use super::system::{EncodedSystem, LinEquation, LinSystem};

/// Largest n accepted by the exhaustive enumerator unless the caller raises it.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 5;

/// `e_i + e_j - e_k` over `n` columns, indices 1-based.
fn draw_row(n: usize, i: usize, j: usize, k: usize) -> QVector {
    let mut v = vec![0i64; n];
    v[i - 1] += 1;
    v[j - 1] += 1;
    v[k - 1] -= 1;
    QVector::from_ints(&v)
}

fn draw(n: usize, rng: &mut SplitMix64) -> (usize, usize, usize) {
    let i = rng.range_inclusive(1, n);
    let j = rng.range_inclusive(1, n);
    let k = rng.range_inclusive(1, n);
    (i, j, k)
}

/// `{x_1 = 1}` plus `n - 1` addition equations drawn uniformly from
/// `[1, n]^3`, each kept only when it raises the rank. The result has a
/// unique solution.
pub fn random_unique_system(n: usize, rng: &mut SplitMix64) -> LinSystem {
    assert!(n >= 1);
    let mut space = RowSpace::new(n);
    space.insert(&QVector::unit(n, 0));
    let mut eqs = vec![LinEquation::Unit(1)];
    while space.rank() < n {
        let (i, j, k) = draw(n, rng);
        if space.insert(&draw_row(n, i, j, k)) {
            eqs.push(LinEquation::add(i, j, k));
        }
    }
    LinSystem::new(n, eqs).expect("indices drawn from 1..=n")
}

/// Right-hand side used for a drawn row `e_i + e_j - e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RhsRule {
    /// 1 when `k == j`, else 0; reads the draw as `x_i = 1` in that case.
    #[default]
    Listing,
    /// Always 0, the literal meaning of `x_i + x_j = x_k`.
    Strict,
}

/// Row `e_1` with right-hand side 1, then `n - 1` unconditional draws.
pub fn random_card_le_n_system(n: usize, rule: RhsRule, rng: &mut SplitMix64) -> EncodedSystem {
    assert!(n >= 1);
    let mut a = QMatrix::zeros(0, n);
    a.push_row(QVector::unit(n, 0).entries());
    let mut b = vec![Rational::one()];
    let mut provenance = vec![LinEquation::Unit(1)];
    for _ in 1..n {
        let (i, j, k) = draw(n, rng);
        a.push_row(draw_row(n, i, j, k).entries());
        if rule == RhsRule::Listing && k == j {
            b.push(Rational::one());
            provenance.push(LinEquation::Unit(i));
        } else {
            b.push(Rational::zero());
            provenance.push(LinEquation::add(i, j, k));
        }
    }
    EncodedSystem {
        a,
        b: QVector::new(b),
        provenance,
    }
}

/// Distinct rows `e_i + e_j - e_k` over `(i, j, k) in [1, n]^3` in loop order,
/// without `e_1`, each with the first equation that produced it.
pub fn exhaustive_pool(n: usize) -> Vec<(QVector, LinEquation)> {
    let e1 = QVector::unit(n, 0);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let row = draw_row(n, i, j, k);
                if row != e1 && seen.insert(row.clone()) {
                    out.push((row, LinEquation::add(i, j, k)));
                }
            }
        }
    }
    out
}

/// A rank-n stack yielded by [`ExhaustiveUnique`].
#[derive(Debug, Clone)]
pub struct UniqueSystem {
    /// Lexicographic rank of the chosen pool subset.
    pub rank: u64,
    pub system: EncodedSystem,
    pub solution: QVector,
}

/// Every `(n-1)`-subset of [`exhaustive_pool`] stacked under `e_1`, in
/// lexicographic order of pool indices, addressable by combination rank.
#[derive(Debug, Clone)]
pub struct ExhaustiveUnique {
    n: usize,
    pool: Vec<(QVector, LinEquation)>,
}

impl ExhaustiveUnique {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        if n == 0 {
            return Err(Error::PreconditionViolated("n must be at least 1".into()));
        }
        Ok(ExhaustiveUnique {
            n,
            pool: exhaustive_pool(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pool(&self) -> &[(QVector, LinEquation)] {
        &self.pool
    }

    /// Number of subsets visited by a full run.
    pub fn total(&self) -> u64 {
        binomial(self.pool.len() as u64, self.n as u64 - 1)
    }

    /// Builds the stacked system for one subset; `None` when it is singular.
    pub fn evaluate(&self, rank: u64, subset: &[usize]) -> Option<UniqueSystem> {
        let n = self.n;
        let mut a = QMatrix::zeros(0, n);
        a.push_row(QVector::unit(n, 0).entries());
        let mut provenance = vec![LinEquation::Unit(1)];
        for &p in subset {
            a.push_row(self.pool[p].0.entries());
            provenance.push(self.pool[p].1);
        }
        let b = QVector::unit(n, 0);
        let solution = solve_unique(&a, &b).ok()?;
        Some(UniqueSystem {
            rank,
            system: EncodedSystem { a, b, provenance },
            solution,
        })
    }

    /// Subsets with ranks in `[start, end)`, singular ones skipped.
    pub fn iter_range(&self, start: u64, end: u64) -> impl Iterator<Item = UniqueSystem> + '_ {
        combinations_in_range(self.pool.len(), self.n - 1, start, end)
            .filter_map(move |(r, c)| self.evaluate(r, &c))
    }

    pub fn iter(&self) -> impl Iterator<Item = UniqueSystem> + '_ {
        self.iter_range(0, u64::MAX)
    }
}

impl UniqueSystem {
    /// The stacked rows as a W_n system. Pool rows are all realized by
    /// addition equations, so the encoding of this system equals `system`.
    pub fn as_lin_system(&self) -> LinSystem {
        LinSystem::new(self.system.n(), self.system.provenance.iter().copied())
            .expect("pool equations are in range")
    }
}
