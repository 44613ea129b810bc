use std::collections::BTreeMap;

use serde_json::Value;

use super::config::{Mode, RunConfig};
use super::report::{build_report, Report};
use super::tally::{fold_range, Tally, Witness};
use crate::combin::{binomial, combinations_in_range};
use crate::error::Result;
use crate::lin::{
    check_bound_pow2, check_bound_sqrt5, conj2_check, conj2_rows, conj3_stats, conj4_check,
    consistent_closures, encode, observation1_hat_search, random_card_le_n_system,
    random_unique_system, w_n, ExhaustiveUnique, LinEquation, LinSystem, RhsRule,
    DEFAULT_EXHAUSTIVE_CAP,
};
use crate::linalg::{
    is_consistent, max_abs, min_norm_solution, nullspace, pseudoinverse, satisfies_penrose,
    solve_unique, QMatrix, QVector,
};
use crate::rational::Rational;
use crate::rng::SplitMix64;
use crate::text::linear_witness;

fn stem(cfg: &RunConfig, key: u64) -> String {
    match cfg.mode {
        Mode::Exhaustive => format!("rank-{key:09}"),
        Mode::Random => format!("trial-{key:09}"),
    }
}

fn witness(cfg: &RunConfig, key: u64, title: &str, eqs: &[LinEquation], x: &QVector) -> Witness {
    let s = LinSystem::new(cfg.n(), eqs.iter().copied()).expect("equations in range");
    Witness {
        key,
        stem: stem(cfg, key),
        text: linear_witness(title, &s, x),
    }
}

fn commented(title: &str, m: &QMatrix) -> String {
    let mut out = format!("# {title}:\n");
    for line in m.to_string().lines() {
        out.push_str("#   ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

fn pow2(n: usize) -> Rational {
    Rational::pow2(n as u32 - 1)
}

/// Removes a maximum from the tally and renders it as the headline statistic.
fn headline(t: &mut Tally, name: &'static str) -> (&'static str, String) {
    let v = t.maxima.remove(name).map(|s| s.render()).unwrap_or_else(|| "0".into());
    (name, v)
}

/// Clips the configured interval to `[0, total)`.
fn clip(cfg: &RunConfig, total: u64) -> (u64, u64) {
    let (a, b) = cfg.range.unwrap_or((0, total));
    (a.min(total), b.min(total))
}

/// Feeds every unique-solution system of a run to `visit`: the seeded random
/// generator in random mode, the lexicographic enumerator in exhaustive mode.
fn unique_systems<F>(cfg: &RunConfig, visit: F) -> Result<Tally>
where
    F: Fn(&mut Tally, u64, &[LinEquation], &QVector) + Sync,
{
    let n = cfg.n();
    match cfg.mode {
        Mode::Random => {
            let (lo, hi) = cfg.trial_range();
            Ok(fold_range(lo, hi, cfg.threads, |a, b| {
                let mut t = Tally::default();
                for trial in a..b {
                    t.attempted += 1;
                    let mut rng = SplitMix64::for_trial(cfg.seed, trial);
                    let s = random_unique_system(n, &mut rng);
                    let enc = encode(&s);
                    match solve_unique(&enc.a, &enc.b) {
                        Ok(x) => {
                            t.completed += 1;
                            visit(&mut t, trial, s.equations(), &x);
                        }
                        Err(e) => t.error(&e),
                    }
                }
                t
            }))
        }
        Mode::Exhaustive => {
            let ex = ExhaustiveUnique::new(n, DEFAULT_EXHAUSTIVE_CAP)?;
            let (lo, hi) = clip(cfg, ex.total());
            let mut t = fold_range(lo, hi, cfg.threads, |a, b| {
                let mut t = Tally {
                    attempted: b - a,
                    completed: b - a,
                    ..Tally::default()
                };
                for u in ex.iter_range(a, b) {
                    t.count("unique_systems");
                    visit(&mut t, u.rank, &u.system.provenance, &u.solution);
                }
                t
            });
            t.counts.insert("pool_rows", ex.pool().len() as u64);
            t.counts.insert("subsets_total", ex.total());
            Ok(t)
        }
    }
}

fn check_sqrt5(t: &mut Tally, x: &QVector, n: usize) {
    if !check_bound_sqrt5(x, n).passed() {
        t.error_named("proven_bound_violation");
    }
}

pub fn conj_i(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let mut t = unique_systems(cfg, |t, key, eqs, x| {
        t.max_exact("max_abs_entry", max_abs(x));
        t.max_exact("max_square", max_abs(x).square());
        check_sqrt5(t, x, n);
        if !check_bound_pow2(x, n).passed() {
            t.counterexample(witness(cfg, key, "unique solution outside [-2^(n-1), 2^(n-1)]", eqs, x));
        }
    })?;
    let stat = headline(&mut t, "max_abs_entry");
    let mut details = BTreeMap::new();
    let five = num_traits::pow(num_bigint::BigInt::from(5), n - 1);
    details.insert("square_bound".into(), Value::String(five.to_string()));
    build_report(cfg, t, stat, pow2(n).to_string(), details)
}

pub fn conj3(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let mut t = unique_systems(cfg, |t, key, eqs, x| {
        let s = conj3_stats(x);
        t.max_exact("max_abs_numerator", Rational::from(s.max_abs_numerator.clone()));
        t.max_exact("max_denominator", Rational::from(s.max_denominator.clone()));
        t.max_exact("max_numerator_or_denominator", Rational::from(s.max()));
        check_sqrt5(t, x, n);
        if !s.within(n) {
            t.counterexample(witness(cfg, key, "numerator or denominator outside [-2^(n-1), 2^(n-1)]", eqs, x));
        }
    })?;
    let stat = headline(&mut t, "max_numerator_or_denominator");
    build_report(cfg, t, stat, pow2(n).to_string(), BTreeMap::new())
}

pub fn conj4(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let mut t = unique_systems(cfg, |t, key, eqs, x| {
        let r = conj4_check(x);
        t.max_exact("max_clamped_ratio", r.max_ratio.clone());
        check_sqrt5(t, x, n);
        if !r.verdict.passed() {
            t.counterexample(witness(cfg, key, "clamped consecutive ratio above 2", eqs, x));
        }
    })?;
    let stat = headline(&mut t, "max_clamped_ratio");
    build_report(cfg, t, stat, "2".into(), BTreeMap::new())
}

fn prefix(a: &QMatrix, b: &QVector, k: usize) -> (QMatrix, QVector) {
    let mut m = QMatrix::zeros(0, a.cols());
    for i in 0..k {
        m.push_row(a.row(i));
    }
    (m, QVector::new(b.entries()[..k].to_vec()))
}

pub fn conj1(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let rule = if cfg.strict_semantics {
        RhsRule::Strict
    } else {
        RhsRule::Listing
    };
    let (lo, hi) = cfg.trial_range();
    let mut t = fold_range(lo, hi, cfg.threads, |a, b| {
        let mut t = Tally::default();
        for trial in a..b {
            t.attempted += 1;
            let mut rng = SplitMix64::for_trial(cfg.seed, trial);
            let enc = random_card_le_n_system(n, rule, &mut rng);
            let mut ok = true;
            for k in 1..=n {
                let (ak, bk) = prefix(&enc.a, &enc.b, k);
                let pinv = pseudoinverse(&ak);
                t.count("prefixes");
                if !satisfies_penrose(&ak, &pinv) {
                    t.error_named("penrose_identity_failure");
                    ok = false;
                    continue;
                }
                let x = match pinv.mul_vec(&bk) {
                    Ok(x) => x,
                    Err(e) => {
                        t.error(&e);
                        ok = false;
                        continue;
                    }
                };
                if !is_consistent(&ak, &bk) {
                    t.count("least_squares_prefixes");
                }
                t.max_exact("max_abs_entry", max_abs(&x));
                if !check_bound_pow2(&x, n).passed() {
                    let key = trial * (n as u64 + 1) + k as u64;
                    let mut w = witness(cfg, key, "minimal-norm solution outside [-2^(n-1), 2^(n-1)]", &enc.provenance[..k], &x);
                    w.stem = format!("trial-{trial:09}-rows-{k}");
                    w.text.push_str(&commented("rows of the encoding", &ak));
                    w.text.push_str(&format!("# rhs: {bk}\n"));
                    t.counterexample(w);
                }
            }
            if ok {
                t.completed += 1;
            }
        }
        t
    });
    let stat = headline(&mut t, "max_abs_entry");
    let mut details = BTreeMap::new();
    details.insert(
        "rhs_rule".into(),
        Value::String(if cfg.strict_semantics { "strict" } else { "listing" }.into()),
    );
    build_report(cfg, t, stat, pow2(n).to_string(), details)
}

pub fn conj2(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let rows = conj2_rows(n);
    let k = n - 1;
    let check = |t: &mut Tally, key: u64, chosen: &[QVector]| match conj2_check(chosen, n) {
        Ok((det, verdict)) => {
            t.completed += 1;
            t.max_exact("max_abs_minor_det", det);
            if !verdict.passed() {
                let m = QMatrix::from_vectors(chosen, n).expect("rows of width n");
                t.counterexample(Witness {
                    key,
                    stem: stem(cfg, key),
                    text: format!("# minor determinant above 2^(n-1)\n# n = {n}\n{}", commented("rows", &m)),
                });
            }
        }
        Err(e) => t.error(&e),
    };
    let mut t = match cfg.mode {
        Mode::Exhaustive => {
            let total = binomial(rows.len() as u64, k as u64);
            let (lo, hi) = clip(cfg, total);
            let mut t = fold_range(lo, hi, cfg.threads, |a, b| {
                let mut t = Tally::default();
                for (rank, c) in combinations_in_range(rows.len(), k, a, b) {
                    t.attempted += 1;
                    let chosen: Vec<QVector> = c.iter().map(|&i| rows[i].clone()).collect();
                    check(&mut t, rank, &chosen);
                }
                t
            });
            t.counts.insert("combinations_total", total);
            t
        }
        Mode::Random => {
            let (lo, hi) = cfg.trial_range();
            fold_range(lo, hi, cfg.threads, |a, b| {
                let mut t = Tally::default();
                for trial in a..b {
                    t.attempted += 1;
                    let mut rng = SplitMix64::for_trial(cfg.seed, trial);
                    let chosen: Vec<QVector> = (0..k)
                        .map(|_| rows[rng.below(rows.len() as u64) as usize].clone())
                        .collect();
                    check(&mut t, trial, &chosen);
                }
                t
            })
        }
    };
    t.counts.insert("pattern_rows", rows.len() as u64);
    let stat = headline(&mut t, "max_abs_minor_det");
    build_report(cfg, t, stat, pow2(n).to_string(), BTreeMap::new())
}

/// Extra solutions per system besides the minimal-norm one.
const OBS1_EXTRA_POINTS: usize = 3;

fn kernel_coefficient(rng: &mut SplitMix64) -> Rational {
    const C: [(i64, i64); 7] = [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1), (3, 1)];
    let (p, q) = C[rng.below(C.len() as u64) as usize];
    Rational::new(p, q)
}

fn obs1_system(cfg: &RunConfig, t: &mut Tally, key: u64, s: &LinSystem, rng: &mut SplitMix64) {
    let enc = encode(s);
    let x0 = match min_norm_solution(&enc.a, &enc.b) {
        Ok(x) => x,
        Err(e) => {
            t.error(&e);
            return;
        }
    };
    let kernel = nullspace(&enc.a);
    let mut points = vec![x0.clone()];
    if !kernel.is_empty() {
        for _ in 0..OBS1_EXTRA_POINTS {
            let mut x = x0.clone();
            for k in &kernel {
                let c = kernel_coefficient(rng);
                x = x.add(&QVector::new(k.iter().map(|v| v * &c).collect()));
            }
            points.push(x);
        }
    }
    t.completed += 1;
    for x in points {
        t.count("points_checked");
        match observation1_hat_search(s, &x) {
            Ok(Some(_)) => {}
            Ok(None) => {
                t.count("hat_failures");
                t.counterexample(witness(cfg, key, "no replacement tuple solves the system", s.equations(), &x));
            }
            Err(e) => t.error(&e),
        }
    }
}

pub fn obs1(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n();
    let mut t = match cfg.mode {
        Mode::Exhaustive => {
            let closures = consistent_closures(n);
            let (lo, hi) = clip(cfg, closures.len() as u64);
            let mut t = fold_range(lo, hi, cfg.threads, |a, b| {
                let mut t = Tally::default();
                for i in a..b {
                    t.attempted += 1;
                    let mut rng = SplitMix64::for_trial(cfg.seed, i);
                    obs1_system(cfg, &mut t, i, &closures[i as usize], &mut rng);
                }
                t
            });
            t.counts.insert("closed_systems_total", closures.len() as u64);
            t
        }
        Mode::Random => {
            let all = w_n(n);
            let (lo, hi) = cfg.trial_range();
            fold_range(lo, hi, cfg.threads, |a, b| {
                let mut t = Tally::default();
                for trial in a..b {
                    t.attempted += 1;
                    let mut rng = SplitMix64::for_trial(cfg.seed, trial);
                    let m = rng.range_inclusive(1, n + 1);
                    let eqs: Vec<LinEquation> =
                        (0..m).map(|_| all[rng.below(all.len() as u64) as usize]).collect();
                    let s = LinSystem::new(n, eqs).expect("equations from W_n");
                    if !encode(&s).is_consistent() {
                        t.completed += 1;
                        t.count("inconsistent_skipped");
                        continue;
                    }
                    obs1_system(cfg, &mut t, trial, &s, &mut rng);
                }
                t
            })
        }
    };
    let failures = t.counts.remove("hat_failures").unwrap_or(0);
    build_report(cfg, t, ("hat_failures", failures.to_string()), "0".into(), BTreeMap::new())
}
