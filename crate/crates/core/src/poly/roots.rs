use num_complex::Complex64;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense univariate polynomial over Q, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    /// Coefficients of `p`, which may only involve variable `v`.
    pub fn from_polynomial(p: &Polynomial, v: usize) -> Result<Self> {
        let mut c = Vec::new();
        for (m, a) in p.terms() {
            if m.support().any(|w| w != v) {
                return Err(Error::PreconditionViolated(format!(
                    "{p} is not univariate in x{}",
                    v + 1
                )));
            }
            let e = m.exp(v) as usize;
            if c.len() <= e {
                c.resize(e + 1, Rational::zero());
            }
            c[e] = a.clone();
        }
        Ok(UniPoly::new(c))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i as i64))
                .collect(),
        )
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree();
        let lc = d.0[dd].clone();
        if r.len() <= dd {
            return (UniPoly::new(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (i, di) in d.0.iter().enumerate() {
                    let t = &c * di;
                    r[k + i] -= &t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn monic(&self) -> UniPoly {
        match self.0.last() {
            Some(lc) => {
                let inv = lc.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0.iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect()
    }
}

/// Roots of a univariate polynomial with a convergence flag.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tolerance: 1e-12,
            max_iterations: 200,
        }
    }
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let az = z.norm();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        mag = mag * az + a.norm();
    }
    (p, dp, mag)
}

/// All complex roots (with multiplicity) of the polynomial with ascending
/// coefficients `coeffs`, by Aberth iteration.
pub fn complex_roots(coeffs: &[Complex64], opts: &RootOptions) -> RootSet {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| *z == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    let mut roots = Vec::new();
    let zeros = c.iter().take_while(|z| z.norm() == 0.0).count();
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros));
    let c: Vec<Complex64> = c[zeros..].to_vec();
    if c.len() <= 1 {
        return RootSet {
            roots,
            converged: true,
            iterations: 0,
        };
    }
    let d = c.len() - 1;
    let lead = c[d];
    let c: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    if d == 1 {
        roots.push(-c[0]);
        return RootSet {
            roots,
            converged: true,
            iterations: 0,
        };
    }

    // Rescale z = s*w so the constant term has unit modulus.
    let s = c[0].norm().powf(1.0 / d as f64);
    let w: Vec<Complex64> = c
        .iter()
        .enumerate()
        .map(|(i, a)| a * s.powi(i as i32))
        .collect();
    let maxc = w.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(1.0, th)
        })
        .collect();
    let mut done = vec![false; d];
    let mut iterations = 0;
    while iterations < opts.max_iterations && done.iter().any(|x| !x) {
        iterations += 1;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (p, dp, mag) = horner(&w, z[k]);
            if p.norm() < opts.tolerance * maxc || p.norm() <= 8.0 * f64::EPSILON * mag {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
            }
        }
    }
    roots.extend(z.iter().map(|r| r * s));
    RootSet {
        roots,
        converged: done.iter().all(|&x| x),
        iterations,
    }
}

/// Complex roots of a polynomial in a single variable, with multiplicity.
pub fn univariate_roots(p: &Polynomial, opts: &RootOptions) -> Result<RootSet> {
    let vars = p.variables();
    if vars.len() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "{p} is not a polynomial of degree >= 1 in one variable"
        )));
    }
    let u = UniPoly::from_polynomial(p, vars[0])?;
    Ok(complex_roots(&u.to_complex(), opts))
}
