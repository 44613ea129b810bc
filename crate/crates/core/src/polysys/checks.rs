use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{buchberger, classify_dimension, ComplexVector, Dimension};

use super::saturate::TrialOutcome;
use super::system::{e_n, to_polynomials, PolyEquation, PolySystem};

/// Absolute tolerance on moduli in bound checks.
pub const BOUND_TOL: f64 = 1e-6;
/// Imaginary parts below this count as real.
pub const REAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundExponent {
    /// `2^{2^{n-2}}`
    NMinus2,
    /// `2^{2^{n-1}}`
    NMinus1,
}

/// `2^{2^{n-2}}` or `2^{2^{n-1}}`; 1 when `n = 1`.
pub fn double_exp_bound(n: usize, e: BoundExponent) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let k = match e {
        BoundExponent::NMinus2 => n - 2,
        BoundExponent::NMinus1 => n - 1,
    };
    2f64.powi(1 << k)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleExpVerdict {
    pub max_abs: f64,
    pub bound: f64,
    pub passed: bool,
}

pub fn check_bound_double_exp(o: &TrialOutcome, n: usize, e: BoundExponent) -> DoubleExpVerdict {
    check_points(&o.solutions, n, e)
}

pub fn check_points(points: &[ComplexVector], n: usize, e: BoundExponent) -> DoubleExpVerdict {
    let bound = double_exp_bound(n, e);
    let max_abs = points.iter().map(ComplexVector::max_abs).fold(0.0, f64::max);
    DoubleExpVerdict {
        max_abs,
        bound,
        passed: max_abs <= bound + BOUND_TOL,
    }
}

/// Indices of the solutions of least Euclidean norm, ties within 1e-9.
pub fn minimal_norm_indices(points: &[ComplexVector]) -> Vec<usize> {
    let norms: Vec<f64> = points.iter().map(ComplexVector::norm).collect();
    let Some(best) = norms.iter().copied().reduce(f64::min) else {
        return Vec::new();
    };
    (0..norms.len()).filter(|&i| norms[i] - best <= 1e-9).collect()
}

pub fn minimal_norm_solution(o: &TrialOutcome) -> Vec<usize> {
    minimal_norm_indices(&o.solutions)
}

/// Points whose coordinates all have `|Im| < 1e-8`.
pub fn real_solutions(points: &[ComplexVector]) -> Vec<ComplexVector> {
    points.iter().filter(|p| p.is_real(REAL_TOL)).cloned().collect()
}

/// Whether no equation of E_n outside `s` can be added without losing
/// consistency; otherwise the consistent extensions are listed.
pub fn is_maximal_consistent(s: &PolySystem) -> Result<(bool, Vec<PolyEquation>)> {
    let order = s.order();
    let gb = buchberger(&to_polynomials(s), order);
    if classify_dimension(&gb) == Dimension::Inconsistent {
        return Err(Error::InconsistentInput);
    }
    let mut ext = Vec::new();
    for e in e_n(s.n()) {
        if s.equations().contains(&e) || (s.fix_x1() && e == PolyEquation::Unit(1)) {
            continue;
        }
        let p = e.polynomial(order, s.fix_x1());
        if classify_dimension(&gb.extend(&[p])) != Dimension::Inconsistent {
            ext.push(e);
        }
    }
    Ok((ext.is_empty(), ext))
}

fn grid_candidates(x: Complex64, cap: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(5);
    for v in [
        x,
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.5, 0.0),
    ] {
        if v.norm() <= cap && !out.iter().any(|w| (w - v).norm() < 1e-12) {
            out.push(v);
        }
    }
    out
}

/// Searches `{x_i, 0, 1, 2, 1/2}` capped at `|z| <= 2^{2^{n-2}}` for a tuple
/// solving `s`, preferring kept values with `x_1` most significant. `x` is a
/// full n-tuple that must solve `s`; requires `n <= 4`.
pub fn observation2_hat_search(s: &PolySystem, x: &[Complex64]) -> Result<Option<Vec<Complex64>>> {
    let n = s.n();
    if n > 4 {
        return Err(Error::PreconditionViolated(format!(
            "replacement search is defined for n <= 4, got {n}"
        )));
    }
    if x.len() != n || s.residual(x) >= 1e-8 {
        return Err(Error::PreconditionViolated(
            "the given tuple does not solve the system".into(),
        ));
    }
    let full = s.unfixed();
    let cap = 2f64.powf(2f64.powi(n as i32 - 2)) + BOUND_TOL;
    let grid: Vec<Vec<Complex64>> = x.iter().map(|&z| grid_candidates(z, cap)).collect();
    if grid.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut idx = vec![0usize; n];
    loop {
        let y: Vec<Complex64> = idx.iter().zip(&grid).map(|(&i, g)| g[i]).collect();
        if full.equations().iter().all(|e| e.eval(&y) < 1e-8) {
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
