//! Reference computations used as independent oracles. Everything here is
//! deliberately naive: cofactor expansion, minors, plain loops.

#![allow(dead_code)]

use boundsol::Rational;

pub type Mat = Vec<Vec<Rational>>;

pub fn int_mat(rows: &[Vec<i64>]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
        .collect()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &Mat) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Mat = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * &cofactor_det(&minor);
        if c % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank as the size of the largest nonzero minor.
pub fn minor_rank(m: &Mat) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for r in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, r) {
            for cs in subsets(cols, r) {
                let sub: Mat = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                if !cofactor_det(&sub).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

/// Cramer's rule with cofactor determinants; `None` when singular.
pub fn cramer(a: &Mat, b: &[Rational]) -> Option<Vec<Rational>> {
    let d = cofactor_det(a);
    if d.is_zero() {
        return None;
    }
    let n = a.len();
    Some(
        (0..n)
            .map(|c| {
                let mut m = a.clone();
                for (r, row) in m.iter_mut().enumerate() {
                    row[c] = b[r].clone();
                }
                &cofactor_det(&m) / &d
            })
            .collect(),
    )
}

pub fn mat_vec(a: &Mat, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|r| r.iter().zip(x).fold(Rational::zero(), |acc, (p, q)| &acc + &(p * q)))
        .collect()
}

pub fn transpose(a: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (p, q)| &acc + &(p * q))
}

/// Certifies `x` as the minimal-norm least-squares solution of `A x = b`:
/// the normal equations hold and `x` lies in the row space of `A`.
pub fn is_min_norm_least_squares(a: &Mat, b: &[Rational], x: &[Rational]) -> bool {
    let cols = x.len();
    let at = transpose(a, cols);
    let ax = mat_vec(a, x);
    let lhs = mat_vec(&at, &ax);
    let rhs = mat_vec(&at, b);
    if lhs != rhs {
        return false;
    }
    let mut with_x = a.clone();
    with_x.push(x.to_vec());
    minor_rank(&with_x) == minor_rank(a)
}

/// Small deterministic generator independent of the library's.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn pick(&mut self, values: &[i64]) -> i64 {
        values[(self.next() % values.len() as u64) as usize]
    }

    pub fn below(&mut self, m: usize) -> usize {
        (self.next() % m as u64) as usize
    }
}
