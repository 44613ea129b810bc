use std::cmp::Ordering;
use std::collections::HashMap;

use num_complex::Complex64;

use super::groebner::{buchberger, classify_dimension, normal_form, standard_monomials, Dimension};
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use super::roots::{complex_roots, RootOptions, UniPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Numeric solution point and its residual against the generators it solves.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    pub entries: Vec<Complex64>,
    pub residual: f64,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>, gens: &[Polynomial]) -> Self {
        let residual = residual(gens, &entries);
        ComplexVector { entries, residual }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.entries.iter().all(|z| z.im.abs() < tol)
    }
}

pub fn residual(gens: &[Polynomial], point: &[Complex64]) -> f64 {
    gens.iter()
        .map(|g| g.eval_complex(point).norm())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub residual_tol: f64,
    pub dedup_tol: f64,
    pub filter_tol: f64,
    pub newton_steps: usize,
    pub roots: RootOptions,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            residual_tol: 1e-8,
            dedup_tol: 1e-6,
            filter_tol: 1e-8,
            newton_steps: 50,
            roots: RootOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solutions {
    /// Canonically sorted points.
    pub points: Vec<ComplexVector>,
    /// Number of distinct complex solutions according to the radical ideal.
    pub expected: usize,
    /// False when some univariate root iteration hit its iteration limit.
    pub converged: bool,
}

/// Minimal polynomial of `x_v` modulo a zero-dimensional basis, from the
/// first linear dependency among the normal forms of `1, x_v, x_v^2, ...`.
fn minimal_polynomial(g: &super::GroebnerBasis, std: &[Monomial], v: usize) -> Result<UniPoly> {
    let order = g.order();
    let index: HashMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let xv = Polynomial::var(order, v);
    let mut cur = normal_form(&Polynomial::constant(order, Rational::one()), g)?;
    let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    for k in 0..=std.len() {
        let mut u = vec![Rational::zero(); std.len()];
        for (m, c) in cur.terms() {
            u[index[m]] = c.clone();
        }
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (piv, rv, rc) in &rows {
            if u[*piv].is_zero() {
                continue;
            }
            let f = &u[*piv] / &rv[*piv];
            for (a, b) in u.iter_mut().zip(rv) {
                *a -= &(&f * b);
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                *a -= &(&f * b);
            }
        }
        match u.iter().position(|c| !c.is_zero()) {
            None => return Ok(UniPoly::new(combo)),
            Some(p) => rows.push((p, u, combo)),
        }
        cur = normal_form(&xv.mul(&cur), g)?;
    }
    unreachable!("normal forms of {} powers must be dependent", std.len() + 1)
}

fn uni_to_poly(u: &UniPoly, order: MonomialOrder, v: usize) -> Polynomial {
    Polynomial::from_terms(
        order,
        u.coeffs()
            .iter()
            .enumerate()
            .map(|(e, c)| (Monomial::var_power(order.nvars(), v, e as u16), c.clone()))
            .collect(),
    )
}

fn scaled_abs(p: &Polynomial, pt: &[Complex64]) -> f64 {
    p.eval_complex(pt).norm() / p.eval_magnitude(pt).max(1.0)
}

/// Coefficients (ascending) of `p` as a polynomial in `x_v` after fixing
/// the variables in `pt` other than `v`.
fn specialize(p: &Polynomial, v: usize, pt: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = Vec::new();
    for (m, a) in p.terms() {
        let e = m.exp(v) as usize;
        if c.len() <= e {
            c.resize(e + 1, Complex64::new(0.0, 0.0));
        }
        let mut t = Complex64::new(a.to_f64(), 0.0);
        for w in m.support().filter(|&w| w != v) {
            t *= pt[w].powu(m.exp(w) as u32);
        }
        c[e] += t;
    }
    c
}

fn merge_clusters(roots: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match groups
            .iter_mut()
            .find(|(c, k)| (c / *k as f64 - r).norm() <= tol * r.norm().max(1.0))
        {
            Some((c, k)) => {
                *c += r;
                *k += 1;
            }
            None => groups.push((r, 1)),
        }
    }
    groups.into_iter().map(|(c, k)| c / k as f64).collect()
}

/// Back-substitution through a lex basis (x1 > ... > xm), last variable first.
fn back_substitute(
    lex: &[Polynomial],
    m: usize,
    tol: f64,
    opts: &SolveOptions,
    converged: &mut bool,
) -> Result<Vec<Vec<Complex64>>> {
    let top = |p: &Polynomial| p.leading_monomial().unwrap().support().next();
    let mut partial = vec![vec![Complex64::new(0.0, 0.0); m]];
    for v in (0..m).rev() {
        let level: Vec<&Polynomial> = lex.iter().filter(|p| top(p) == Some(v)).collect();
        let pivot = level
            .iter()
            .filter(|p| p.leading_monomial().unwrap().pure_power_var() == Some(v))
            .min_by_key(|p| p.leading_monomial().unwrap().degree())
            .ok_or(Error::NotZeroDimensional)?;
        let mut next = Vec::new();
        for pt in &partial {
            let coeffs = specialize(pivot, v, pt);
            if coeffs.iter().skip(1).all(|c| c.norm() == 0.0) {
                let shown: Vec<String> = pt[v + 1..].iter().map(|z| format!("{z}")).collect();
                return Err(Error::DegenerateBackSubstitution(format!(
                    "x{}..: ({})",
                    v + 2,
                    shown.join(", ")
                )));
            }
            let rs = complex_roots(&coeffs, &opts.roots);
            *converged &= rs.converged;
            for z in merge_clusters(&rs.roots, opts.dedup_tol) {
                let mut q = pt.clone();
                q[v] = z;
                if level.iter().all(|p| scaled_abs(p, &q) <= tol) {
                    next.push(q);
                }
            }
        }
        partial = next;
    }
    Ok(partial)
}

fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f.norm() == 0.0 {
                continue;
            }
            let (top, bottom) = a.split_at_mut(r);
            for (x, &p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * p;
            }
            let t = b[col];
            b[r] -= f * t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    x.iter().all(|z| z.is_finite()).then_some(x)
}

/// Gauss-Newton on the normal equations, accepting only improving steps.
fn refine(gens: &[Polynomial], start: Vec<Complex64>, steps: usize) -> Vec<Complex64> {
    let m = start.len();
    let fnorm = |x: &[Complex64]| gens.iter().map(|g| g.eval_complex(x).norm_sqr()).sum::<f64>();
    let mut x = start;
    let mut cur = fnorm(&x);
    for _ in 0..steps {
        if cur == 0.0 {
            break;
        }
        let f: Vec<Complex64> = gens.iter().map(|g| g.eval_complex(&x)).collect();
        let jac: Vec<Vec<Complex64>> = gens
            .iter()
            .map(|g| (0..m).map(|v| g.eval_partial(v, &x)).collect())
            .collect();
        let mut ata = vec![vec![Complex64::new(0.0, 0.0); m]; m];
        let mut atb = vec![Complex64::new(0.0, 0.0); m];
        for (row, fi) in jac.iter().zip(&f) {
            for i in 0..m {
                let ci = row[i].conj();
                atb[i] -= ci * fi;
                for j in 0..m {
                    ata[i][j] += ci * row[j];
                }
            }
        }
        let Some(dx) = solve_linear(ata, atb) else { break };
        let cand: Vec<Complex64> = x.iter().zip(&dx).map(|(a, d)| a + d).collect();
        let val = fnorm(&cand);
        if val < cur {
            x = cand;
            cur = val;
        } else {
            break;
        }
    }
    x
}

fn cmp_points(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

fn clean(z: Complex64) -> Complex64 {
    let scale = z.norm().max(1.0);
    let snap = |t: f64| if t.abs() < 1e-14 * scale { 0.0 } else { t };
    Complex64::new(snap(z.re), snap(z.im))
}

/// All complex solutions of a zero-dimensional system. An inconsistent
/// system has no solutions and yields an empty list.
pub fn solve_zero_dim(gens: &[Polynomial], opts: &SolveOptions) -> Result<Solutions> {
    let Some(first) = gens.first() else {
        return Err(Error::NotZeroDimensional);
    };
    let m = first.nvars();
    let grl = MonomialOrder::grevlex(m);
    let g = buchberger(gens, grl);
    match classify_dimension(&g) {
        Dimension::Inconsistent => {
            return Ok(Solutions {
                points: vec![],
                expected: 0,
                converged: true,
            })
        }
        Dimension::PositiveDimensional => return Err(Error::NotZeroDimensional),
        Dimension::ZeroDimensional => {}
    }
    let lex_order = MonomialOrder::lex(m);
    let std = standard_monomials(&g)?;
    let mut radical: Vec<Polynomial> = gens.iter().map(|p| p.with_order(lex_order)).collect();
    for v in 0..m {
        let mp = minimal_polynomial(&g, &std, v)?.squarefree();
        radical.push(uni_to_poly(&mp, lex_order, v));
    }
    let lex = buchberger(&radical, lex_order);
    let expected = standard_monomials(&lex)?.len();

    let mut converged = true;
    let mut raw = Vec::new();
    for tol in [opts.filter_tol, opts.filter_tol * 1e2, opts.filter_tol * 1e4] {
        raw = back_substitute(lex.generators(), m, tol, opts, &mut converged)?;
        if raw.len() >= expected {
            break;
        }
    }

    let mut points: Vec<ComplexVector> = Vec::new();
    for start in raw {
        let x: Vec<Complex64> = refine(gens, start, opts.newton_steps)
            .into_iter()
            .map(clean)
            .collect();
        let cv = ComplexVector::new(x, gens);
        if cv.residual >= opts.residual_tol {
            continue;
        }
        let dup = points.iter().any(|p| {
            p.entries
                .iter()
                .zip(&cv.entries)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt()
                < opts.dedup_tol
        });
        if !dup {
            points.push(cv);
        }
    }
    points.sort_by(|a, b| cmp_points(&a.entries, &b.entries));
    Ok(Solutions {
        points,
        expected,
        converged,
    })
}
