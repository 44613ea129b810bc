use crate::combin::combinations_in_range;
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, QMatrix, QVector};
use crate::rational::Rational;

use super::checks::BoundVerdict;

/// Nonzero pattern of a row, read left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conj2Pattern {
    One,
    MinusOneTwo,
    TwoMinusOne,
    MinusOneOneOne,
    OneMinusOneOne,
    OneOneMinusOne,
}

impl Conj2Pattern {
    pub const ALL: [Conj2Pattern; 6] = [
        Conj2Pattern::One,
        Conj2Pattern::MinusOneTwo,
        Conj2Pattern::TwoMinusOne,
        Conj2Pattern::MinusOneOneOne,
        Conj2Pattern::OneMinusOneOne,
        Conj2Pattern::OneOneMinusOne,
    ];

    pub fn values(self) -> &'static [i64] {
        match self {
            Conj2Pattern::One => &[1],
            Conj2Pattern::MinusOneTwo => &[-1, 2],
            Conj2Pattern::TwoMinusOne => &[2, -1],
            Conj2Pattern::MinusOneOneOne => &[-1, 1, 1],
            Conj2Pattern::OneMinusOneOne => &[1, -1, 1],
            Conj2Pattern::OneOneMinusOne => &[1, 1, -1],
        }
    }
}

/// A pattern placed on strictly increasing 1-based columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conj2Row {
    pub pattern: Conj2Pattern,
    pub positions: Vec<usize>,
}

impl Conj2Row {
    pub fn to_vector(&self, n: usize) -> QVector {
        let mut v = vec![0i64; n];
        for (&p, &val) in self.positions.iter().zip(self.pattern.values()) {
            v[p - 1] = val;
        }
        QVector::from_ints(&v)
    }
}

/// Every row of width `n` whose nonzero entries form one of the six patterns,
/// ordered by pattern and then by column positions.
pub fn conj2_rows(n: usize) -> Vec<QVector> {
    conj2_row_specs(n).iter().map(|r| r.to_vector(n)).collect()
}

pub fn conj2_row_specs(n: usize) -> Vec<Conj2Row> {
    let mut out = Vec::new();
    for pattern in Conj2Pattern::ALL {
        let k = pattern.values().len();
        for (_, cols) in combinations_in_range(n, k, 0, u64::MAX) {
            out.push(Conj2Row {
                pattern,
                positions: cols.iter().map(|c| c + 1).collect(),
            });
        }
    }
    out
}

/// Largest `|det|` over the `n` square minors obtained by deleting one column
/// of the `(n-1) x n` matrix, and whether it stays within `2^{n-1}`.
pub fn conj2_check(rows: &[QVector], n: usize) -> Result<(Rational, BoundVerdict)> {
    if n < 2 || rows.len() != n - 1 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected {} rows of width {n}",
            n.saturating_sub(1)
        )));
    }
    let m = QMatrix::from_vectors(rows, n)?;
    let mut best = Rational::zero();
    let mut at = 0;
    for c in 0..n {
        let d = det_bareiss(&m.without_column(c))?.abs();
        if d > best {
            best = d;
            at = c + 1;
        }
    }
    let verdict = if best <= Rational::pow2(n as u32 - 1) {
        BoundVerdict::Pass
    } else {
        BoundVerdict::Violation { index: at }
    };
    Ok((best, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closed_form(n: u64) -> usize {
        use crate::combin::binomial;
        (n + 2 * binomial(n, 2) + 3 * binomial(n, 3)) as usize
    }

    #[test]
    fn row_counts() {
        let two: HashSet<QVector> = conj2_rows(2).into_iter().collect();
        let expect: HashSet<QVector> = [[1, 0], [0, 1], [-1, 2], [2, -1]]
            .iter()
            .map(|r| QVector::from_ints(r))
            .collect();
        assert_eq!(two, expect);
        for n in 2..=6u64 {
            let rows = conj2_rows(n as usize);
            let distinct: HashSet<_> = rows.iter().cloned().collect();
            assert_eq!(rows.len(), closed_form(n));
            assert_eq!(distinct.len(), rows.len());
        }
        assert_eq!(conj2_rows(4).len(), 28);
        assert_eq!(conj2_rows(5).len(), 55);
    }

    #[test]
    fn check_examples() {
        let rows = [QVector::from_ints(&[2, -1, 0]), QVector::from_ints(&[0, 2, -1])];
        let (m, v) = conj2_check(&rows, 3).unwrap();
        // minors: delete c1 -> det[[-1,0],[2,-1]] = 1; c2 -> det[[2,0],[0,-1]] = -2; c3 -> 4
        assert_eq!(m, Rational::from(4));
        assert!(v.passed());

        let chain = [
            QVector::from_ints(&[2, -1, 0, 0]),
            QVector::from_ints(&[0, 2, -1, 0]),
            QVector::from_ints(&[0, 0, 2, -1]),
        ];
        assert_eq!(conj2_check(&chain, 4).unwrap().0, Rational::from(8));

        let dup = [
            QVector::from_ints(&[1, 1, -1, 0]),
            QVector::from_ints(&[1, 1, -1, 0]),
            QVector::from_ints(&[0, 0, 0, 1]),
        ];
        let (m, v) = conj2_check(&dup, 4).unwrap();
        assert_eq!(m, Rational::zero());
        assert!(v.passed());

        assert!(matches!(
            conj2_check(&chain[..2], 4),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
