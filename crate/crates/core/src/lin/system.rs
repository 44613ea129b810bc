use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{is_consistent, rref, QMatrix, QVector};
use crate::rational::Rational;

/// One equation of W_n. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinEquation {
    /// `x_i = 1`
    Unit(usize),
    /// `x_i + x_j = x_k`, always stored with `i <= j`
    Add(usize, usize, usize),
}

impl LinEquation {
    /// `x_i + x_j = x_k` with the summands put in canonical order.
    pub fn add(i: usize, j: usize, k: usize) -> Self {
        LinEquation::Add(i.min(j), i.max(j), k)
    }

    pub fn max_index(&self) -> usize {
        match *self {
            LinEquation::Unit(i) => i,
            LinEquation::Add(i, j, k) => i.max(j).max(k),
        }
    }

    fn canonical(self) -> Self {
        match self {
            LinEquation::Add(i, j, k) => LinEquation::add(i, j, k),
            u => u,
        }
    }

    /// Coefficient row and right-hand side over `n` variables.
    pub fn row(&self, n: usize) -> (Vec<Rational>, Rational) {
        let mut row = vec![Rational::zero(); n];
        match *self {
            LinEquation::Unit(i) => {
                row[i - 1] = Rational::one();
                (row, Rational::one())
            }
            LinEquation::Add(i, j, k) => {
                row[i - 1] += &Rational::one();
                row[j - 1] += &Rational::one();
                row[k - 1] -= &Rational::one();
                (row, Rational::zero())
            }
        }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        match *self {
            LinEquation::Unit(i) => x[i - 1].is_one(),
            LinEquation::Add(i, j, k) => &x[i - 1] + &x[j - 1] == x[k - 1],
        }
    }

    fn remap(self, f: impl Fn(usize) -> usize) -> Self {
        match self {
            LinEquation::Unit(i) => LinEquation::Unit(f(i)),
            LinEquation::Add(i, j, k) => LinEquation::add(f(i), f(j), f(k)),
        }
    }
}

impl fmt::Display for LinEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LinEquation::Unit(i) => write!(f, "x{i} = 1"),
            LinEquation::Add(i, j, k) => write!(f, "x{i} + x{j} = x{k}"),
        }
    }
}

/// All of W_n: the unit equations first, then `x_i + x_j = x_k` for
/// `i <= j` in lexicographic `(i, j, k)` order.
pub fn w_n(n: usize) -> Vec<LinEquation> {
    let mut out: Vec<LinEquation> = (1..=n).map(LinEquation::Unit).collect();
    for i in 1..=n {
        for j in i..=n {
            for k in 1..=n {
                out.push(LinEquation::Add(i, j, k));
            }
        }
    }
    out
}

/// A duplicate-free subset of W_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinSystem {
    n: usize,
    equations: Vec<LinEquation>,
}

impl LinSystem {
    /// Canonicalizes and de-duplicates `equations`, keeping first occurrences.
    pub fn new(n: usize, equations: impl IntoIterator<Item = LinEquation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::PreconditionViolated("a system needs n >= 1".into()));
        }
        let mut seen = HashSet::new();
        let mut eqs = Vec::new();
        for e in equations {
            let e = e.canonical();
            let ok = match e {
                LinEquation::Unit(i) => (1..=n).contains(&i),
                LinEquation::Add(i, j, k) => [i, j, k].iter().all(|v| (1..=n).contains(v)),
            };
            if !ok {
                return Err(Error::PreconditionViolated(format!(
                    "equation {e} uses an index outside 1..={n}"
                )));
            }
            if seen.insert(e) {
                eqs.push(e);
            }
        }
        Ok(LinSystem { n, equations: eqs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[LinEquation] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn has_unit(&self) -> bool {
        self.equations.iter().any(|e| matches!(e, LinEquation::Unit(_)))
    }

    /// Exact check that `x` satisfies every equation.
    pub fn is_solved_by(&self, x: &QVector) -> bool {
        x.len() == self.n && self.equations.iter().all(|e| e.holds(x.entries()))
    }

    /// The `x_1 + ... = ...` form: `n - 1` chain equations `x_i + x_i = x_{i+1}`
    /// preceded by `x_1 = 1`. Its only solution is `(1, 2, 4, ..., 2^{n-1})`.
    pub fn doubling_chain(n: usize) -> Self {
        let eqs = std::iter::once(LinEquation::Unit(1))
            .chain((1..n).map(|i| LinEquation::Add(i, i, i + 1)));
        LinSystem::new(n, eqs).expect("valid chain")
    }
}

impl fmt::Display for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Matrix form `a x = b` of a system, one row per equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedSystem {
    pub a: QMatrix,
    pub b: QVector,
    pub provenance: Vec<LinEquation>,
}

impl EncodedSystem {
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn is_consistent(&self) -> bool {
        is_consistent(&self.a, &self.b)
    }

    /// Exact `a x == b`.
    pub fn is_solved_by(&self, x: &QVector) -> bool {
        self.a.mul_vec(x).map(|ax| ax == self.b).unwrap_or(false)
    }
}

pub fn encode(s: &LinSystem) -> EncodedSystem {
    let mut a = QMatrix::zeros(0, s.n);
    let mut b = Vec::with_capacity(s.equations.len());
    for e in &s.equations {
        let (row, rhs) = e.row(s.n);
        a.push_row(&row);
        b.push(rhs);
    }
    EncodedSystem {
        a,
        b: QVector::new(b),
        provenance: s.equations.clone(),
    }
}

/// Substitution produced by [`normalize_units`]: original variable `j`
/// (1-based) becomes reduced variable `target[j - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMap {
    pub target: Vec<usize>,
    pub reduced_n: usize,
}

impl VariableMap {
    pub fn identity(n: usize) -> Self {
        VariableMap {
            target: (1..=n).collect(),
            reduced_n: n,
        }
    }

    /// Lifts a tuple for the reduced system back to the original variables.
    pub fn expand(&self, x: &QVector) -> QVector {
        assert_eq!(x.len(), self.reduced_n);
        self.target.iter().map(|&t| x[t - 1].clone()).collect()
    }
}

/// Merges every variable carrying `x_j = 1` into the smallest such variable,
/// renumbers so that variable becomes `x_1`, and keeps the remaining
/// variables in their original relative order. Systems without a unit
/// equation are returned unchanged (the zero tuple solves them).
pub fn normalize_units(s: &LinSystem) -> (LinSystem, VariableMap) {
    let units: Vec<usize> = s
        .equations
        .iter()
        .filter_map(|e| match e {
            LinEquation::Unit(i) => Some(*i),
            _ => None,
        })
        .collect();
    let Some(&min_unit) = units.iter().min() else {
        return (s.clone(), VariableMap::identity(s.n));
    };
    let merged = |j: usize| if units.contains(&j) { min_unit } else { j };
    let mut target = vec![0; s.n];
    target[min_unit - 1] = 1;
    let mut next = 2;
    for j in 1..=s.n {
        if j == min_unit {
            continue;
        }
        if units.contains(&j) {
            target[j - 1] = 1;
        } else {
            target[j - 1] = next;
            next += 1;
        }
    }
    let reduced_n = next - 1;
    let eqs = s
        .equations
        .iter()
        .map(|e| e.remap(|v| target[merged(v) - 1]));
    let reduced = LinSystem::new(reduced_n, eqs).expect("renumbered indices stay in range");
    (reduced, VariableMap { target, reduced_n })
}

/// Adds `x_i + x_i = x_i` (that is `x_i = 0`) for every free column of the
/// encoded system so the result has rank n.
pub fn enlarge_to_unique(s: &LinSystem) -> Result<LinSystem> {
    let enc = encode(s);
    if !enc.is_consistent() {
        return Err(Error::InconsistentSystem);
    }
    let pivots = rref(&enc.a).pivot_columns;
    let extra = (1..=s.n)
        .filter(|c| !pivots.contains(&(c - 1)))
        .map(|i| LinEquation::Add(i, i, i));
    LinSystem::new(s.n, s.equations.iter().copied().chain(extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, solve_unique};
    use LinEquation::{Add, Unit};

    #[test]
    fn encode_examples() {
        let s = LinSystem::new(2, [Unit(1), Add(1, 1, 2)]).unwrap();
        let e = encode(&s);
        assert_eq!(e.a, QMatrix::from_ints(&[&[1, 0], &[2, -1]]));
        assert_eq!(e.b, QVector::from_ints(&[1, 0]));

        let e = encode(&LinSystem::new(2, [Add(1, 2, 1)]).unwrap());
        assert_eq!(e.a, QMatrix::from_ints(&[&[0, 1]]));
        assert_eq!(e.b, QVector::from_ints(&[0]));

        let e = encode(&LinSystem::new(1, [Add(1, 1, 1)]).unwrap());
        assert_eq!(e.a, QMatrix::from_ints(&[&[1]]));
        assert_eq!(e.b, QVector::from_ints(&[0]));
    }

    #[test]
    fn canonical_order_and_dedup() {
        let s = LinSystem::new(3, [LinEquation::Add(3, 1, 2), Add(1, 3, 2), Unit(1)]).unwrap();
        assert_eq!(s.equations(), &[Add(1, 3, 2), Unit(1)]);
        assert!(LinSystem::new(2, [Unit(3)]).is_err());
    }

    #[test]
    fn normalize_examples() {
        let s = LinSystem::new(3, [Unit(2), Unit(3), Add(2, 3, 1)]).unwrap();
        let (r, map) = normalize_units(&s);
        assert_eq!(r, LinSystem::new(2, [Unit(1), Add(1, 1, 2)]).unwrap());
        // (x1, x2, x3) = (2, 1, 1)
        let lifted = map.expand(&QVector::from_ints(&[1, 2]));
        assert_eq!(lifted, QVector::from_ints(&[2, 1, 1]));
        assert!(s.is_solved_by(&lifted));

        let s = LinSystem::new(2, [Add(1, 1, 2)]).unwrap();
        assert_eq!(normalize_units(&s).0, s);
        let s = LinSystem::new(1, [Unit(1)]).unwrap();
        assert_eq!(normalize_units(&s).0, s);
    }

    #[test]
    fn enlarge_examples() {
        let s = LinSystem::new(2, [Unit(1)]).unwrap();
        let e = enlarge_to_unique(&s).unwrap();
        assert_eq!(e.equations(), &[Unit(1), Add(2, 2, 2)]);
        let enc = encode(&e);
        assert_eq!(solve_unique(&enc.a, &enc.b).unwrap(), QVector::from_ints(&[1, 0]));

        let chain = LinSystem::doubling_chain(3);
        assert_eq!(enlarge_to_unique(&chain).unwrap(), chain);

        let empty = LinSystem::new(1, []).unwrap();
        let e = enlarge_to_unique(&empty).unwrap();
        assert_eq!(e.equations(), &[Add(1, 1, 1)]);
        let enc = encode(&e);
        assert_eq!(rank(&enc.a), 1);
        assert_eq!(solve_unique(&enc.a, &enc.b).unwrap(), QVector::zeros(1));

        let bad = LinSystem::new(1, [Unit(1), Add(1, 1, 1)]).unwrap();
        assert_eq!(enlarge_to_unique(&bad), Err(Error::InconsistentSystem));
    }

    #[test]
    fn w_n_size() {
        // n units + C(n+1, 2) * n additions
        assert_eq!(w_n(1).len(), 2);
        assert_eq!(w_n(3).len(), 3 + 6 * 3);
    }
}
