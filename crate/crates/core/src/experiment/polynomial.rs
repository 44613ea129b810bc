use std::collections::BTreeMap;

use serde_json::Value;

use super::config::{RunConfig, Variant};
use super::report::{build_report, Report};
use super::tally::{fold_range, Tally, Witness};
use crate::error::Result;
use crate::poly::{ComplexVector, Dimension, SolveOptions};
use crate::polysys::{
    check_points, double_exp_bound, full_pool, is_maximal_consistent, minimal_norm_indices,
    observation2_hat_search, real_solutions, saturate_in_order, BoundExponent, Pool, PoolVariant,
    PolySystem, Saturation, TrialOutcome,
};
use crate::rng::SplitMix64;
use crate::text::poly_witness;

fn bound_string(b: f64) -> String {
    format!("{b}")
}

fn headline(t: &mut Tally, name: &'static str) -> (&'static str, String) {
    let v = t.maxima.remove(name).map(|s| s.render()).unwrap_or_else(|| "0".into());
    (name, v)
}

fn witness(trial: u64, suffix: &str, title: &str, o: &TrialOutcome) -> Witness {
    Witness {
        key: trial,
        stem: format!("trial-{trial:09}{suffix}"),
        text: poly_witness(title, &o.system, &o.solutions),
    }
}

/// Pool indices of the squaring-chain equations followed by the remaining
/// indices in shuffled order.
fn extremal_scan(pool: &Pool, rng: &mut SplitMix64) -> Vec<usize> {
    let chain = PolySystem::squaring_chain(pool.n);
    let mut scan: Vec<usize> = chain
        .equations()
        .iter()
        .filter_map(|e| pool.entries.iter().position(|p| p.equation == *e))
        .collect();
    let mut rest: Vec<usize> = (0..pool.len()).filter(|i| !scan.contains(i)).collect();
    rng.shuffle(&mut rest);
    scan.extend(rest);
    scan
}

fn shuffled_scan(pool: &Pool, rng: &mut SplitMix64) -> Vec<usize> {
    let mut scan: Vec<usize> = (0..pool.len()).collect();
    rng.shuffle(&mut scan);
    scan
}

/// Runs one saturation per trial index and hands each outcome to `visit`.
fn saturation_batch<F>(
    cfg: &RunConfig,
    pool: &Pool,
    mode: Saturation,
    extremal: bool,
    visit: F,
) -> Tally
where
    F: Fn(&mut Tally, u64, &TrialOutcome) + Sync,
{
    let opts = SolveOptions::default();
    let (lo, hi) = cfg.trial_range();
    fold_range(lo, hi, cfg.threads, |a, b| {
        let mut t = Tally::default();
        for trial in a..b {
            t.attempted += 1;
            let mut rng = SplitMix64::for_trial(cfg.seed, trial);
            let scan = if extremal {
                extremal_scan(pool, &mut rng)
            } else {
                shuffled_scan(pool, &mut rng)
            };
            match saturate_in_order(pool, &scan, mode, &opts) {
                Ok(o) => {
                    t.completed += 1;
                    if !o.roots_converged {
                        t.count("root_iterations_not_converged");
                    }
                    if o.classification == Dimension::ZeroDimensional {
                        t.count("zero_dimensional");
                        if o.solutions.len() != o.expected_solutions {
                            t.count("solution_count_below_expected");
                        }
                    }
                    visit(&mut t, trial, &o);
                }
                Err(e) => t.error(&e),
            }
        }
        t
    })
}

fn record_bound(t: &mut Tally, trial: u64, o: &TrialOutcome, n: usize, e: BoundExponent, title: &str) {
    let v = check_points(&o.solutions, n, e);
    t.max_float("max_abs_solution", v.max_abs);
    let real = o.real_solutions();
    if !real.is_empty() {
        t.max_float("max_abs_real_solution", check_points(&real, n, e).max_abs);
    }
    if !v.passed {
        t.counterexample(witness(trial, "", title, o));
    }
}

/// Positive-dimensional end state of a non-maximal saturation: counted, and a
/// counterexample only when no equation of E_n can still be added.
fn record_candidate(t: &mut Tally, trial: u64, o: &TrialOutcome, counterexample: bool) {
    t.count("5b_candidates");
    match is_maximal_consistent(&o.system) {
        Ok((true, _)) => {
            t.count("5b_candidates_maximal");
            if counterexample {
                t.counterexample(witness(
                    trial,
                    "-positive-dimensional",
                    "maximal consistent system with infinitely many solutions",
                    o,
                ));
            }
        }
        Ok((false, _)) => t.count("5b_candidates_not_maximal"),
        Err(e) => t.error(&e),
    }
}

pub fn conj5(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let variant = cfg.variant.expect("validated");
    let (pool_variant, mode, exponent) = match variant {
        Variant::A => (PoolVariant::FullEn, Saturation::Maximal, BoundExponent::NMinus2),
        Variant::B | Variant::C => (
            PoolVariant::WithUnitsFixedX1,
            Saturation::UntilZeroDimensional,
            BoundExponent::NMinus2,
        ),
        Variant::D => (
            PoolVariant::NoUnitsAllVars,
            Saturation::UntilZeroDimensional,
            BoundExponent::NMinus1,
        ),
    };
    let pool = full_pool(n, pool_variant)?;
    let title = match exponent {
        BoundExponent::NMinus2 => "solution modulus above 2^(2^(n-2))",
        BoundExponent::NMinus1 => "solution modulus above 2^(2^(n-1))",
    };
    let mut t = saturation_batch(cfg, &pool, mode, cfg.extremal, |t, trial, o| {
        match o.classification {
            Dimension::ZeroDimensional => {
                if variant != Variant::A {
                    match is_maximal_consistent(&o.system) {
                        Ok((true, _)) => t.count("maximal_end_states"),
                        Ok((false, _)) => {}
                        Err(e) => t.error(&e),
                    }
                }
                if variant != Variant::B {
                    record_bound(t, trial, o, n, exponent, title);
                } else {
                    let v = check_points(&o.solutions, n, exponent);
                    t.max_float("max_abs_solution", v.max_abs);
                }
            }
            Dimension::PositiveDimensional => match variant {
                Variant::A => {
                    t.count("5b_candidates");
                    t.count("5b_candidates_maximal");
                    t.counterexample(witness(
                        trial,
                        "-positive-dimensional",
                        "maximal consistent system with infinitely many solutions",
                        o,
                    ));
                }
                Variant::B => record_candidate(t, trial, o, true),
                _ => record_candidate(t, trial, o, false),
            },
            Dimension::Inconsistent => t.count("inconsistent"),
        }
    });
    t.counts.entry("5b_candidates").or_insert(0);
    if variant != Variant::A {
        t.counts.entry("maximal_end_states").or_insert(0);
    }
    let mut details = BTreeMap::new();
    details.insert("pool".into(), Value::String(pool_variant.name().into()));
    details.insert("pool_size".into(), Value::from(pool.len() as u64));
    let (stat, bound) = if variant == Variant::B {
        let maximal = t.counts.get("5b_candidates_maximal").copied().unwrap_or(0);
        if let Some(s) = t.maxima.get("max_abs_solution") {
            details.insert("max_abs_solution".into(), Value::String(s.render()));
        }
        t.maxima.remove("max_abs_solution");
        (("maximal_positive_dimensional_systems", maximal.to_string()), "0".to_string())
    } else {
        (headline(&mut t, "max_abs_solution"), bound_string(double_exp_bound(n, exponent)))
    };
    build_report(cfg, t, stat, bound, details)
}

fn all_bounded(points: &[ComplexVector], idx: &[usize], bound: f64) -> bool {
    idx.iter().all(|&i| points[i].max_abs() <= bound)
}

pub fn conj_ii(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let pool = full_pool(n, PoolVariant::FullEn)?;
    let bound = double_exp_bound(n, BoundExponent::NMinus2);
    let limit = bound + crate::polysys::BOUND_TOL;
    let mut t = saturation_batch(cfg, &pool, Saturation::UntilZeroDimensional, false, |t, trial, o| {
        if o.classification != Dimension::ZeroDimensional {
            t.count("not_zero_dimensional");
            return;
        }
        let pts = &o.solutions;
        let smallest = pts.iter().map(ComplexVector::max_abs).fold(f64::INFINITY, f64::min);
        let min_norm = minimal_norm_indices(pts);
        for &i in &min_norm {
            t.max_float("max_abs_min_norm_solution", pts[i].max_abs());
        }
        t.max_float("max_abs_solution", o.max_abs_coordinate);
        if smallest > limit {
            t.counterexample(witness(trial, "-none-bounded", "no solution within 2^(2^(n-2))", o));
        } else if !all_bounded(pts, &min_norm, limit) {
            t.counterexample(witness(trial, "-min-norm", "minimal-norm solution outside 2^(2^(n-2))", o));
        }
        let real = real_solutions(pts);
        if real.is_empty() {
            t.count("no_real_solution");
            return;
        }
        let real_min = minimal_norm_indices(&real);
        for &i in &real_min {
            t.max_float("max_abs_real_min_norm_solution", real[i].max_abs());
        }
        let real_smallest = real.iter().map(ComplexVector::max_abs).fold(f64::INFINITY, f64::min);
        if real_smallest > limit || !all_bounded(&real, &real_min, limit) {
            t.counterexample(witness(trial, "-real", "real solutions outside 2^(2^(n-2))", o));
        }
    });
    let stat = headline(&mut t, "max_abs_min_norm_solution");
    build_report(cfg, t, stat, bound_string(bound), BTreeMap::new())
}

pub fn obs2(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let variants: Vec<PoolVariant> = match cfg.variant {
        None => vec![PoolVariant::WithUnitsFixedX1, PoolVariant::NoUnitsAllVars, PoolVariant::FullEn],
        Some(Variant::A) => vec![PoolVariant::FullEn],
        Some(Variant::B | Variant::C) => vec![PoolVariant::WithUnitsFixedX1],
        Some(Variant::D) => vec![PoolVariant::NoUnitsAllVars],
    };
    let pools = variants
        .iter()
        .map(|&v| full_pool(n, v))
        .collect::<Result<Vec<_>>>()?;
    let opts = SolveOptions::default();
    let (lo, hi) = cfg.trial_range();
    let mut t = fold_range(lo, hi, cfg.threads, |a, b| {
        let mut t = Tally::default();
        for trial in a..b {
            t.attempted += 1;
            let mut ok = true;
            for (p, pool) in pools.iter().enumerate() {
                let mut rng = SplitMix64::for_trial(cfg.seed, trial);
                let scan = shuffled_scan(pool, &mut rng);
                let o = match saturate_in_order(pool, &scan, Saturation::UntilZeroDimensional, &opts) {
                    Ok(o) => o,
                    Err(e) => {
                        t.error(&e);
                        ok = false;
                        continue;
                    }
                };
                if o.classification != Dimension::ZeroDimensional {
                    t.count("not_zero_dimensional");
                    continue;
                }
                t.count("systems_checked");
                for (k, x) in o.solutions.iter().enumerate() {
                    t.count("points_checked");
                    match observation2_hat_search(&o.system, &x.entries) {
                        Ok(Some(_)) => {}
                        Ok(None) => {
                            t.count("hat_failures");
                            let suffix = format!("-{}-point-{}", variants[p].name(), k + 1);
                            t.counterexample(witness(trial, &suffix, "no replacement tuple solves the system", &o));
                        }
                        Err(e) => t.error(&e),
                    }
                }
            }
            if ok {
                t.completed += 1;
            }
        }
        t
    });
    let failures = t.counts.remove("hat_failures").unwrap_or(0);
    let mut details = BTreeMap::new();
    details.insert(
        "pools".into(),
        Value::from(variants.iter().map(|v| v.name()).collect::<Vec<_>>()),
    );
    build_report(cfg, t, ("hat_failures", failures.to_string()), "0".into(), details)
}
