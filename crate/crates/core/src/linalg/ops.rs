use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{QMatrix, QVector};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: QMatrix,
    pub pivot_columns: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

pub fn rref(m: &QMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] *= &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let d = &f * &a[(r, j)];
                    a[(i, j)] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: a,
        pivot_columns: pivots,
    }
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank()
}

fn clear_row_denominators(m: &QMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let l = m
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let row = m
                .row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect();
            scale *= &l;
            row
        })
        .collect();
    (rows, scale)
}

/// Fraction-free Bareiss elimination on an integer matrix, in place.
fn bareiss_integer(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact determinant. Rows carrying fractions are scaled to integers first and
/// the result is divided back.
pub fn det_bareiss(m: &QMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let (ints, scale) = clear_row_denominators(m);
    Ok(Rational::new(bareiss_integer(ints), scale))
}

pub fn inverse(a: &QMatrix) -> Result<QMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut aug = QMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = Rational::one();
    }
    let red = rref(&aug);
    if red.pivot_columns.iter().take_while(|&&c| c < n).count() < n {
        return Err(Error::SingularMatrix);
    }
    let mut inv = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = red.reduced[(i, n + j)].clone();
        }
    }
    Ok(inv)
}

fn check_square_system(a: &QMatrix, b: &QVector) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    Ok(())
}

/// Cramer's rule: `x_i = det(A_i) / det(A)` with `A_i` = `A` whose column `i` is `b`.
pub fn solve_cramer(a: &QMatrix, b: &QVector) -> Result<QVector> {
    check_square_system(a, b)?;
    let n = a.rows();
    let (ints, _) = clear_row_denominators(a);
    let d = bareiss_integer(ints.clone());
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    // Row i of A was multiplied by s_i, so b_i must be as well.
    let row_scales: Vec<BigInt> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        })
        .collect();
    let b_denoms = b.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rhs: Vec<BigInt> = (0..n)
        .map(|i| b[i].numer() * (&b_denoms / b[i].denom()) * &row_scales[i])
        .collect();
    Ok((0..n)
        .map(|col| {
            let mut m = ints.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[col] = rhs[i].clone();
            }
            Rational::new(bareiss_integer(m), &d * &b_denoms)
        })
        .collect())
}

pub fn solve_inverse(a: &QMatrix, b: &QVector) -> Result<QVector> {
    check_square_system(a, b)?;
    inverse(a)?.mul_vec(b)
}

/// Unique solution of a square invertible system, by Cramer's rule.
pub fn solve_unique(a: &QMatrix, b: &QVector) -> Result<QVector> {
    solve_cramer(a, b)
}

/// `a = f * g` with `f` the pivot columns of `a` and `g` the nonzero rows of its RREF.
pub fn rank_factorization(a: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    let red = rref(a);
    let r = red.rank();
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    let f = a.select_columns(&red.pivot_columns);
    let mut g = QMatrix::zeros(r, a.cols());
    for i in 0..r {
        for j in 0..a.cols() {
            g[(i, j)] = red.reduced[(i, j)].clone();
        }
    }
    Ok((f, g))
}

/// Moore-Penrose pseudoinverse `g^T (g g^T)^-1 (f^T f)^-1 f^T`. The zero
/// matrix maps to the zero matrix of transposed shape.
pub fn pseudoinverse(a: &QMatrix) -> QMatrix {
    let (f, g) = match rank_factorization(a) {
        Ok(fg) => fg,
        Err(_) => return QMatrix::zeros(a.cols(), a.rows()),
    };
    let ft = f.transpose();
    let gt = g.transpose();
    // Both Gram matrices are r x r and invertible by construction.
    let ggt_inv = inverse(&g.mul(&gt).unwrap()).expect("g has full row rank");
    let ftf_inv = inverse(&ft.mul(&f).unwrap()).expect("f has full column rank");
    gt.mul(&ggt_inv)
        .and_then(|m| m.mul(&ftf_inv))
        .and_then(|m| m.mul(&ft))
        .unwrap()
}

/// Least-squares solution of minimal Euclidean norm, `a^+ b`.
pub fn min_norm_solution(a: &QMatrix, b: &QVector) -> Result<QVector> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    pseudoinverse(a).mul_vec(b)
}

/// `rank(a) == rank([a | b])`. An empty row set is consistent.
pub fn is_consistent(a: &QMatrix, b: &QVector) -> bool {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    if a.rows() == 0 {
        return true;
    }
    rank(a) == rank(&a.augment(b).unwrap())
}

/// Basis of `{x : a x = 0}`, one vector per non-pivot column.
pub fn nullspace(a: &QMatrix) -> Vec<QVector> {
    let red = rref(a);
    let free: Vec<usize> = (0..a.cols())
        .filter(|c| !red.pivot_columns.contains(c))
        .collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); a.cols()];
            v[f] = Rational::one();
            for (r, &p) in red.pivot_columns.iter().enumerate() {
                v[p] = -red.reduced[(r, f)].clone();
            }
            QVector::new(v)
        })
        .collect()
}

/// The four Penrose identities for a candidate pseudoinverse `x` of `a`.
pub fn satisfies_penrose(a: &QMatrix, x: &QMatrix) -> bool {
    let (Ok(ax), Ok(xa)) = (a.mul(x), x.mul(a)) else {
        return false;
    };
    ax.mul(a).map(|m| m == *a).unwrap_or(false)
        && xa.mul(x).map(|m| m == *x).unwrap_or(false)
        && ax.transpose() == ax
        && xa.transpose() == xa
}

pub fn norm_sq(v: &QVector) -> Rational {
    v.iter().map(Rational::square).sum()
}

/// Maximum of `|x_i|`, zero for the empty vector.
pub fn max_abs(v: &QVector) -> Rational {
    v.iter().map(Rational::abs).max().unwrap_or_else(Rational::zero)
}
