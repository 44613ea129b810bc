use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Multivariate polynomial over Q. Terms are kept sorted in descending
/// order under `order` and never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(order: MonomialOrder) -> Self {
        Polynomial {
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(order: MonomialOrder, c: Rational) -> Self {
        Polynomial::from_terms(order, vec![(Monomial::one(order.nvars()), c)])
    }

    /// `x_v` (0-based `v`).
    pub fn var(order: MonomialOrder, v: usize) -> Self {
        Polynomial::from_terms(
            order,
            vec![(Monomial::var_power(order.nvars(), v, 1), Rational::one())],
        )
    }

    /// Combines like terms and drops zeros.
    pub fn from_terms(order: MonomialOrder, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { order, terms: out }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        assert_eq!(order.nvars(), self.nvars());
        if order == self.order {
            return self.clone();
        }
        Polynomial::from_terms(order, self.terms.clone())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.order);
        }
        Polynomial {
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// `self - c * m * other`, merging the two sorted term lists.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, other: &Polynomial) -> Polynomial {
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(om, oc)| (om.mul(m), oc * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (ym, yc) = b.next().unwrap();
                        out.push((ym, -yc));
                    }
                    Ordering::Equal => {
                        let (xm, xc) = a.next().unwrap();
                        let (_, yc) = b.next().unwrap();
                        let d = xc - &yc;
                        if !d.is_zero() {
                            out.push((*xm, d));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (ym, yc) = b.next().unwrap();
                    out.push((ym, -yc));
                }
                (None, None) => break,
            }
        }
        Polynomial {
            order: ord,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.sub_scaled(&-Rational::one(), &Monomial::one(self.nvars()), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.sub_scaled(&Rational::one(), &Monomial::one(self.nvars()), other)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                terms.push((m.mul(n), c * d));
            }
        }
        Polynomial::from_terms(self.order, terms)
    }

    /// Substitutes the rational `value` for variable `v`, keeping the variable count.
    pub fn substitute(&self, v: usize, value: &Rational) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(v);
                let mut exps = m.exponents().to_vec();
                exps[v] = 0;
                let mut k = c.clone();
                for _ in 0..e {
                    k *= value;
                }
                (Monomial::from_exponents(&exps), k)
            })
            .collect();
        Polynomial::from_terms(self.order, terms)
    }

    /// Drops variable `v`, which must not occur in any term.
    pub fn remove_variable(&self, v: usize, order: MonomialOrder) -> Polynomial {
        assert_eq!(order.nvars() + 1, self.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert_eq!(m.exp(v), 0, "variable still present");
                let mut exps = m.exponents().to_vec();
                exps.remove(v);
                (Monomial::from_exponents(&exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(order, terms)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = Complex64::new(c.to_f64(), 0.0);
                for v in m.support() {
                    t *= point[v].powu(m.exp(v) as u32);
                }
                t
            })
            .sum()
    }

    /// `sum |c| * |monomial(point)|`, a scale for relative residuals.
    pub fn eval_magnitude(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().abs();
                for v in m.support() {
                    t *= point[v].norm().powi(m.exp(v) as i32);
                }
                t
            })
            .sum()
    }

    /// Partial derivative with respect to `v`, evaluated numerically.
    pub fn eval_partial(&self, v: usize, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .filter(|(m, _)| m.exp(v) > 0)
            .map(|(m, c)| {
                let e = m.exp(v);
                let mut t = Complex64::new(c.to_f64() * e as f64, 0.0);
                for w in m.support() {
                    let p = if w == v { e as u32 - 1 } else { m.exp(w) as u32 };
                    t *= point[w].powu(p);
                }
                t
            })
            .sum()
    }

    /// Variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars()];
        for (m, _) in &self.terms {
            for v in m.support() {
                used[v] = true;
            }
        }
        (0..self.nvars()).filter(|&v| used[v]).collect()
    }

    /// Parses the `c*x1^a1*...*xn^an` sum notation over `order.nvars()` variables.
    pub fn parse(s: &str, order: MonomialOrder) -> Result<Polynomial> {
        let err = |col: usize, msg: &str| Error::Parse {
            line: 1,
            column: col + 1,
            message: msg.to_string(),
        };
        let src: Vec<char> = s.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < src.len() && src[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<String> {
            let start = *pos;
            while *pos < src.len() && src[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (*pos > start).then(|| src[start..*pos].iter().collect())
        };
        let mut terms = Vec::new();
        skip_ws(&mut pos);
        if pos == src.len() {
            return Err(err(0, "empty polynomial"));
        }
        let mut first = true;
        while pos < src.len() {
            let mut sign = Rational::one();
            skip_ws(&mut pos);
            if pos < src.len() && (src[pos] == '+' || src[pos] == '-') {
                if src[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;
            skip_ws(&mut pos);
            let mut coeff = Rational::one();
            let mut exps = vec![0u16; order.nvars()];
            let mut factors = 0;
            loop {
                skip_ws(&mut pos);
                if pos >= src.len() {
                    return Err(err(pos, "expected a factor"));
                }
                if src[pos] == 'x' {
                    pos += 1;
                    let idx = read_int(&mut pos).ok_or_else(|| err(pos, "expected variable index"))?;
                    let v: usize = idx.parse().map_err(|_| err(pos, "bad variable index"))?;
                    if v == 0 || v > order.nvars() {
                        return Err(err(pos, "variable index out of range"));
                    }
                    let mut e = 1u16;
                    if pos < src.len() && src[pos] == '^' {
                        pos += 1;
                        let d = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                        e = d.parse().map_err(|_| err(pos, "bad exponent"))?;
                    }
                    exps[v - 1] += e;
                } else if src[pos].is_ascii_digit() {
                    let num = read_int(&mut pos).unwrap();
                    let mut text = num;
                    if pos < src.len() && src[pos] == '/' {
                        pos += 1;
                        let den = read_int(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                        text = format!("{text}/{den}");
                    }
                    let c: Rational = text.parse().map_err(|_| err(pos, "bad coefficient"))?;
                    coeff *= &c;
                } else {
                    return Err(err(pos, "unexpected character"));
                }
                factors += 1;
                skip_ws(&mut pos);
                if pos < src.len() && src[pos] == '*' {
                    pos += 1;
                    continue;
                }
                break;
            }
            debug_assert!(factors > 0);
            terms.push((Monomial::from_exponents(&exps), sign * coeff));
            skip_ws(&mut pos);
        }
        Ok(Polynomial::from_terms(order, terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
