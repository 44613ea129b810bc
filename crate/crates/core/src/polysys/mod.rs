//! Systems drawn from E_n, candidate pools, greedy saturation and checkers.

mod checks;
mod saturate;
mod system;

pub use checks::{
    check_bound_double_exp, check_points, double_exp_bound, is_maximal_consistent,
    minimal_norm_indices, minimal_norm_solution, observation2_hat_search, real_solutions,
    BoundExponent, DoubleExpVerdict, BOUND_TOL, REAL_TOL,
};
pub use saturate::{greedy_saturate, saturate_in_order, Saturation, TrialOutcome};
pub use system::{
    e_n, full_pool, to_polynomials, Pool, PoolEntry, PoolVariant, PolyEquation, PolySystem,
};
