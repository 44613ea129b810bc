use crate::error::Result;
use crate::poly::{buchberger, classify_dimension, solve_zero_dim, ComplexVector, Dimension, SolveOptions};
use crate::rng::SplitMix64;

use super::checks::minimal_norm_indices;
use super::system::{Pool, PolySystem};

/// When a saturation pass stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Saturation {
    /// Stop as soon as the system becomes zero-dimensional.
    UntilZeroDimensional,
    /// Scan the whole pool once; the result is maximal with respect to the pool.
    Maximal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub system: PolySystem,
    /// Pool indices in the order they were appended.
    pub appended: Vec<usize>,
    pub classification: Dimension,
    /// Full n-tuples (including `x_1 = 1` for fixed pools), canonically sorted.
    pub solutions: Vec<ComplexVector>,
    pub max_abs_coordinate: f64,
    /// All minimal-norm solution indices (ties included).
    pub min_norm_solution_index: Vec<usize>,
    /// Distinct-solution count predicted by the radical ideal.
    pub expected_solutions: usize,
    /// False when a univariate root iteration hit its limit.
    pub roots_converged: bool,
}

impl TrialOutcome {
    pub fn real_solutions(&self) -> Vec<ComplexVector> {
        super::checks::real_solutions(&self.solutions)
    }
}

/// Saturates from the empty system, scanning pool entries in `scan` order and
/// keeping an entry iff the enlarged system stays consistent.
pub fn saturate_in_order(
    pool: &Pool,
    scan: &[usize],
    mode: Saturation,
    opts: &SolveOptions,
) -> Result<TrialOutcome> {
    let order = crate::poly::MonomialOrder::grevlex(pool.unknowns());
    let mut gb = buchberger(&[], order);
    let mut dim = classify_dimension(&gb);
    let mut appended = Vec::new();
    for &idx in scan {
        if mode == Saturation::UntilZeroDimensional && dim == Dimension::ZeroDimensional {
            break;
        }
        let next = gb.extend(std::slice::from_ref(&pool.entries[idx].poly));
        let d = classify_dimension(&next);
        if d != Dimension::Inconsistent {
            gb = next;
            dim = d;
            appended.push(idx);
        }
    }
    let system = pool.system(&appended);
    let mut outcome = TrialOutcome {
        system,
        appended,
        classification: dim,
        solutions: Vec::new(),
        max_abs_coordinate: 0.0,
        min_norm_solution_index: Vec::new(),
        expected_solutions: 0,
        roots_converged: true,
    };
    if dim == Dimension::ZeroDimensional {
        fill_solutions(&mut outcome, pool, opts)?;
    }
    Ok(outcome)
}

fn fill_solutions(outcome: &mut TrialOutcome, pool: &Pool, opts: &SolveOptions) -> Result<()> {
    let gens: Vec<_> = outcome.appended.iter().map(|&i| pool.entries[i].poly.clone()).collect();
    let s = &outcome.system;
    let points: Vec<ComplexVector> = if pool.unknowns() == 0 {
        outcome.expected_solutions = 1;
        vec![ComplexVector {
            entries: s.expand(&[]),
            residual: 0.0,
        }]
    } else {
        let sol = solve_zero_dim(&gens, opts)?;
        outcome.expected_solutions = sol.expected;
        outcome.roots_converged = sol.converged;
        sol.points
            .into_iter()
            .map(|p| ComplexVector {
                entries: s.expand(&p.entries),
                residual: p.residual,
            })
            .collect()
    };
    outcome.max_abs_coordinate = points.iter().map(ComplexVector::max_abs).fold(0.0, f64::max);
    outcome.min_norm_solution_index = minimal_norm_indices(&points);
    outcome.solutions = points;
    Ok(())
}

/// One randomized trial: shuffle the pool, then saturate.
pub fn greedy_saturate(
    pool: &Pool,
    rng: &mut SplitMix64,
    mode: Saturation,
    opts: &SolveOptions,
) -> Result<TrialOutcome> {
    let mut scan: Vec<usize> = (0..pool.len()).collect();
    rng.shuffle(&mut scan);
    saturate_in_order(pool, &scan, mode, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{full_pool, PolyEquation, PoolVariant};

    #[test]
    fn single_unit_pool() {
        let pool = full_pool(1, PoolVariant::FullEn).unwrap();
        // x1 - 1 first
        let out = saturate_in_order(&pool, &[0, 1, 2], Saturation::UntilZeroDimensional, &SolveOptions::default()).unwrap();
        assert_eq!(out.system.equations(), &[PolyEquation::Unit(1)]);
        assert_eq!(out.solutions.len(), 1);
        assert_eq!(out.max_abs_coordinate, 1.0);
        let out = saturate_in_order(&pool, &[0, 1, 2], Saturation::Maximal, &SolveOptions::default()).unwrap();
        assert_eq!(out.system.equations(), &[PolyEquation::Unit(1), PolyEquation::Mul(1, 1, 1)]);
    }

    #[test]
    fn forced_extremal_order() {
        let pool = full_pool(4, PoolVariant::NoUnitsAllVars).unwrap();
        let chain = PolySystem::squaring_chain(4);
        let mut scan: Vec<usize> = chain
            .equations()
            .iter()
            .map(|e| pool.entries.iter().position(|p| p.equation == *e).unwrap())
            .collect();
        let rest: Vec<usize> = (0..pool.len()).filter(|i| !scan.contains(i)).collect();
        scan.extend(rest);
        let out = saturate_in_order(&pool, &scan, Saturation::UntilZeroDimensional, &SolveOptions::default()).unwrap();
        assert_eq!(out.system, chain);
        assert_eq!(out.max_abs_coordinate, 256.0);
        assert_eq!(out.min_norm_solution_index, vec![0]);
    }

    #[test]
    fn seeded_trials_repeat() {
        let pool = full_pool(3, PoolVariant::WithUnitsFixedX1).unwrap();
        let run = || {
            let mut rng = SplitMix64::for_trial(7, 3);
            greedy_saturate(&pool, &mut rng, Saturation::UntilZeroDimensional, &SolveOptions::default()).unwrap()
        };
        let a = run();
        assert_eq!(a, run());
        assert_eq!(a.classification, Dimension::ZeroDimensional);
        assert!(a.solutions.iter().all(|p| p.entries[0] == 1.0.into()));
    }
}
