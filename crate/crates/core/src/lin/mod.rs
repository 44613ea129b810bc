//! Systems drawn from W_n: `x_i = 1` and `x_i + x_j = x_k`.

mod checks;
mod conj2;
mod generate;
mod hat;
mod system;

pub use checks::{
    check_bound_pow2, check_bound_sqrt5, conj3_stats, conj4_check, BoundVerdict, Conj3Stats,
    Conj4Result,
};
pub use conj2::{conj2_check, conj2_row_specs, conj2_rows, Conj2Pattern, Conj2Row};
pub use generate::{
    exhaustive_pool, random_card_le_n_system, random_unique_system, ExhaustiveUnique, RhsRule,
    UniqueSystem, DEFAULT_EXHAUSTIVE_CAP,
};
pub use hat::{consistent_closures, observation1_hat_search};
pub use system::{
    encode, enlarge_to_unique, normalize_units, w_n, EncodedSystem, LinEquation, LinSystem,
    VariableMap,
};
