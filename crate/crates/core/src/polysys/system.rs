use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{residual, Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

/// One equation of E_n. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyEquation {
    /// `x_i = 1`
    Unit(usize),
    /// `x_i + x_j = x_k`, `i <= j`
    Add(usize, usize, usize),
    /// `x_i * x_j = x_k`, `i <= j`
    Mul(usize, usize, usize),
}

impl PolyEquation {
    pub fn add(i: usize, j: usize, k: usize) -> Self {
        PolyEquation::Add(i.min(j), i.max(j), k)
    }

    pub fn mul(i: usize, j: usize, k: usize) -> Self {
        PolyEquation::Mul(i.min(j), i.max(j), k)
    }

    fn canonical(self) -> Self {
        match self {
            PolyEquation::Add(i, j, k) => PolyEquation::add(i, j, k),
            PolyEquation::Mul(i, j, k) => PolyEquation::mul(i, j, k),
            u => u,
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        match *self {
            PolyEquation::Unit(i) => vec![i],
            PolyEquation::Add(i, j, k) | PolyEquation::Mul(i, j, k) => vec![i, j, k],
        }
    }

    pub fn max_index(&self) -> usize {
        self.indices().into_iter().max().unwrap_or(0)
    }

    /// Generator `lhs - rhs`. With `fix_x1`, `x_1` is the constant 1 and the
    /// remaining variables are shifted down by one.
    pub fn polynomial(&self, order: MonomialOrder, fix_x1: bool) -> Polynomial {
        let m = order.nvars();
        let var = |i: usize| -> Polynomial {
            if fix_x1 && i == 1 {
                Polynomial::constant(order, Rational::one())
            } else {
                let v = if fix_x1 { i - 2 } else { i - 1 };
                Polynomial::from_terms(order, vec![(Monomial::var_power(m, v, 1), Rational::one())])
            }
        };
        let one = Polynomial::constant(order, Rational::one());
        match *self {
            PolyEquation::Unit(i) => var(i).sub(&one),
            PolyEquation::Add(i, j, k) => var(i).add(&var(j)).sub(&var(k)),
            PolyEquation::Mul(i, j, k) => var(i).mul(&var(j)).sub(&var(k)),
        }
    }

    /// Residual `|lhs - rhs|` at a full n-tuple.
    pub fn eval(&self, x: &[Complex64]) -> f64 {
        let g = |i: usize| x[i - 1];
        match *self {
            PolyEquation::Unit(i) => (g(i) - 1.0).norm(),
            PolyEquation::Add(i, j, k) => (g(i) + g(j) - g(k)).norm(),
            PolyEquation::Mul(i, j, k) => (g(i) * g(j) - g(k)).norm(),
        }
    }
}

impl fmt::Display for PolyEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PolyEquation::Unit(i) => write!(f, "x{i} = 1"),
            PolyEquation::Add(i, j, k) => write!(f, "x{i} + x{j} = x{k}"),
            PolyEquation::Mul(i, j, k) => write!(f, "x{i} * x{j} = x{k}"),
        }
    }
}

/// All of E_n: units, then for `i <= j` and every `k` the sum and the
/// product equation, in lexicographic `(i, j, k)` order.
pub fn e_n(n: usize) -> Vec<PolyEquation> {
    let mut out: Vec<PolyEquation> = (1..=n).map(PolyEquation::Unit).collect();
    for i in 1..=n {
        for j in i..=n {
            for k in 1..=n {
                out.push(PolyEquation::Add(i, j, k));
                out.push(PolyEquation::Mul(i, j, k));
            }
        }
    }
    out
}

/// A subset of E_n. With `fix_x1` the equation `x_1 = 1` is implicit and
/// `x_1` is not an unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySystem {
    n: usize,
    equations: Vec<PolyEquation>,
    fix_x1: bool,
}

impl PolySystem {
    pub fn new(
        n: usize,
        equations: impl IntoIterator<Item = PolyEquation>,
        fix_x1: bool,
    ) -> Result<Self> {
        if n == 0 || n > crate::poly::MAX_VARS {
            return Err(Error::PreconditionViolated(format!(
                "n must lie in 1..={}, got {n}",
                crate::poly::MAX_VARS
            )));
        }
        let mut seen = HashSet::new();
        let mut eqs = Vec::new();
        for e in equations {
            let e = e.canonical();
            if e.indices().iter().any(|i| !(1..=n).contains(i)) {
                return Err(Error::PreconditionViolated(format!(
                    "equation {e} uses an index outside 1..={n}"
                )));
            }
            if fix_x1 && e == PolyEquation::Unit(1) {
                continue;
            }
            if seen.insert(e) {
                eqs.push(e);
            }
        }
        Ok(PolySystem {
            n,
            equations: eqs,
            fix_x1,
        })
    }

    /// `x_1 + x_1 = x_2`, `x_1 * x_1 = x_2`, `x_i * x_i = x_{i+1}` for `2 <= i < n`.
    /// Solutions: the zero tuple and `(2, 4, 16, ..., 2^{2^{n-1}})`.
    pub fn squaring_chain(n: usize) -> Self {
        assert!(n >= 2, "the chain needs n >= 2");
        let eqs = [PolyEquation::Add(1, 1, 2), PolyEquation::Mul(1, 1, 2)]
            .into_iter()
            .chain((2..n).map(|i| PolyEquation::Mul(i, i, i + 1)));
        PolySystem::new(n, eqs, false).expect("valid chain")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[PolyEquation] {
        &self.equations
    }

    pub fn fix_x1(&self) -> bool {
        self.fix_x1
    }

    /// Number of unknowns.
    pub fn unknowns(&self) -> usize {
        if self.fix_x1 {
            self.n - 1
        } else {
            self.n
        }
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::grevlex(self.unknowns())
    }

    pub fn with_equation(&self, e: PolyEquation) -> Result<PolySystem> {
        PolySystem::new(
            self.n,
            self.equations.iter().copied().chain(std::iter::once(e)),
            self.fix_x1,
        )
    }

    /// The same system over all n variables with `x_1 = 1` made explicit.
    pub fn unfixed(&self) -> PolySystem {
        if !self.fix_x1 {
            return self.clone();
        }
        let eqs = std::iter::once(PolyEquation::Unit(1)).chain(self.equations.iter().copied());
        PolySystem::new(self.n, eqs, false).expect("same indices")
    }

    /// Full n-tuple from a point over the unknowns.
    pub fn expand(&self, unknowns: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.n);
        if self.fix_x1 {
            out.push(Complex64::new(1.0, 0.0));
        }
        out.extend_from_slice(unknowns);
        out
    }

    /// Max residual of the generators at a full n-tuple.
    pub fn residual(&self, full: &[Complex64]) -> f64 {
        let mut r = residual(&to_polynomials(self), self.strip(full));
        if self.fix_x1 {
            r = r.max((full[0] - 1.0).norm());
        }
        r
    }

    fn strip<'a>(&self, full: &'a [Complex64]) -> &'a [Complex64] {
        if self.fix_x1 {
            &full[1..]
        } else {
            full
        }
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fix_x1 {
            writeln!(f, "x1 = 1")?;
        }
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Generators of `s` over its unknowns, without duplicates or zero
/// polynomials (which impose nothing).
pub fn to_polynomials(s: &PolySystem) -> Vec<Polynomial> {
    let order = s.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in s.equations() {
        let p = e.polynomial(order, s.fix_x1());
        if !p.is_zero() && seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// Which candidate pool a saturation trial draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoolVariant {
    /// `x_1 = 1` fixed, units on the other variables, sums and products over `(1, x_2, ..., x_n)`.
    WithUnitsFixedX1,
    /// No unit equations, sums and products over all variables.
    NoUnitsAllVars,
    /// All of E_n.
    FullEn,
}

impl PoolVariant {
    pub fn fix_x1(self) -> bool {
        self == PoolVariant::WithUnitsFixedX1
    }

    pub fn name(self) -> &'static str {
        match self {
            PoolVariant::WithUnitsFixedX1 => "with_units_fixed_x1",
            PoolVariant::NoUnitsAllVars => "no_units_all_vars",
            PoolVariant::FullEn => "full_En",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolEntry {
    /// First equation (in pool construction order) producing `poly`.
    pub equation: PolyEquation,
    pub poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pool {
    pub n: usize,
    pub variant: PoolVariant,
    pub entries: Vec<PoolEntry>,
}

impl Pool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn fix_x1(&self) -> bool {
        self.variant.fix_x1()
    }

    pub fn unknowns(&self) -> usize {
        if self.fix_x1() {
            self.n - 1
        } else {
            self.n
        }
    }

    pub fn system(&self, picked: &[usize]) -> PolySystem {
        PolySystem::new(
            self.n,
            picked.iter().map(|&i| self.entries[i].equation),
            self.fix_x1(),
        )
        .expect("pool equations are in range")
    }
}

/// Duplicate-free pool of candidate generators. Zero polynomials are left out.
pub fn full_pool(n: usize, variant: PoolVariant) -> Result<Pool> {
    if n == 0 || n > crate::poly::MAX_VARS {
        return Err(Error::PreconditionViolated(format!("unsupported n = {n}")));
    }
    let fix = variant.fix_x1();
    let order = MonomialOrder::grevlex(if fix { n - 1 } else { n });
    let mut eqs: Vec<PolyEquation> = match variant {
        PoolVariant::WithUnitsFixedX1 => (2..=n).map(PolyEquation::Unit).collect(),
        PoolVariant::NoUnitsAllVars => Vec::new(),
        PoolVariant::FullEn => (1..=n).map(PolyEquation::Unit).collect(),
    };
    for i in 1..=n {
        for j in i..=n {
            for k in 1..=n {
                eqs.push(PolyEquation::Add(i, j, k));
                eqs.push(PolyEquation::Mul(i, j, k));
            }
        }
    }
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for e in eqs {
        let p = e.polynomial(order, fix);
        if !p.is_zero() && seen.insert(p.clone()) {
            entries.push(PoolEntry {
                equation: e,
                poly: p,
            });
        }
    }
    Ok(Pool {
        n,
        variant,
        entries,
    })
}
