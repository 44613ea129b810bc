use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{QVector, RowSpace};
use crate::rational::Rational;

use super::system::{encode, w_n, LinEquation, LinSystem};

/// Candidate values for one coordinate, in preference order: keep `x_i`,
/// then 0, 1, 2, 1/2, restricted to `|r| <= bound` and de-duplicated.
fn candidates(x: &Rational, bound: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(5);
    for v in [
        x.clone(),
        Rational::zero(),
        Rational::one(),
        Rational::from(2),
        Rational::new(1, 2),
    ] {
        if v.abs() <= *bound && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Searches the replacement grid `{x_i, 0, 1, 2, 1/2}` (capped at
/// `|r| <= 2^{n-1}`) for a tuple solving `s`. Coordinates are varied
/// odometer-style with `x_1` most significant, so the first hit prefers
/// kept values. Requires `n <= 4` and that `x` solves `s`.
pub fn observation1_hat_search(s: &LinSystem, x: &QVector) -> Result<Option<QVector>> {
    let n = s.n();
    if n > 4 {
        return Err(Error::PreconditionViolated(format!(
            "replacement search is defined for n <= 4, got {n}"
        )));
    }
    if !s.is_solved_by(x) {
        return Err(Error::PreconditionViolated(
            "the given tuple does not solve the system".into(),
        ));
    }
    let bound = Rational::pow2(n as u32 - 1);
    let grid: Vec<Vec<Rational>> = x.iter().map(|v| candidates(v, &bound)).collect();
    if grid.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut idx = vec![0usize; n];
    loop {
        let y: QVector = idx.iter().zip(&grid).map(|(&i, g)| g[i].clone()).collect();
        if s.is_solved_by(&y) {
            return Ok(Some(y));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < grid[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn augmented_row(e: &LinEquation, n: usize) -> QVector {
    let (mut row, rhs) = e.row(n);
    row.push(rhs);
    QVector::new(row)
}

/// Every consistent subset of W_n closed under implication: a system `S`
/// such that each W_n equation holding on all solutions of `S` is already in
/// `S`. Every consistent subset of W_n has the same solution set as exactly
/// one of these, and is contained in it.
pub fn consistent_closures(n: usize) -> Vec<LinSystem> {
    let all = w_n(n);
    assert!(all.len() <= 128, "closure enumeration is meant for small n");
    let rows: Vec<QVector> = all.iter().map(|e| augmented_row(e, n)).collect();
    // [0 ... 0 | 1] in the augmented row space means inconsistency.
    let bad = QVector::unit(n + 1, n);

    let closure = |space: &RowSpace| -> u128 {
        rows.iter()
            .enumerate()
            .filter(|(_, r)| space.contains(r))
            .fold(0u128, |m, (i, _)| m | (1 << i))
    };
    let space_of = |mask: u128| -> RowSpace {
        let mut sp = RowSpace::new(n + 1);
        for (i, r) in rows.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sp.insert(r);
            }
        }
        sp
    };

    let start = closure(&RowSpace::new(n + 1));
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(mask) = queue.pop_front() {
        out.push(mask);
        let base = space_of(mask);
        for (i, r) in rows.iter().enumerate() {
            if mask & (1 << i) != 0 {
                continue;
            }
            let mut sp = base.clone();
            sp.insert(r);
            if sp.contains(&bad) {
                continue;
            }
            let c = closure(&sp);
            if seen.insert(c) {
                queue.push_back(c);
            }
        }
    }
    out.sort_unstable();
    out.into_iter()
        .map(|mask| {
            let eqs = (0..all.len()).filter(|i| mask & (1 << i) != 0).map(|i| all[i]);
            LinSystem::new(n, eqs).expect("equations from W_n")
        })
        .inspect(|s| debug_assert!(encode(s).is_consistent()))
        .collect()
}
