//! Acceptance suite. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; the process fails if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use boundsol::experiment::{run, Command, Mode, Report, RunConfig, Variant, Verdict};
use boundsol::lin::{
    check_bound_pow2, check_bound_sqrt5, conj2_check, conj2_rows, conj4_check, encode,
    random_card_le_n_system, random_unique_system, w_n, LinEquation, LinSystem, RhsRule,
};
use boundsol::linalg::{min_norm_solution, pseudoinverse, satisfies_penrose, solve_cramer, solve_inverse, solve_unique};
use boundsol::poly::{buchberger, solve_zero_dim, standard_monomial_count, Dimension, SolveOptions};
use boundsol::polysys::{
    full_pool, greedy_saturate, observation2_hat_search, to_polynomials, PolySystem, PoolVariant,
    Saturation,
};
use boundsol::{QMatrix, QVector, Rational, SplitMix64};
use num_complex::Complex64;
use serde_json::Value;

use common::{cofactor_det, cramer, int_mat, is_min_norm_least_squares, minor_rank, Lcg, Mat};

/// Per-coordinate tolerance for the extremal E_4 solutions.
const EXTREMAL_TOL: f64 = 1e-9;
/// Slack on the double-exponential modulus bounds.
const MODULUS_SLACK: f64 = 1e-6;
/// Residual every numeric solution must meet.
const RESIDUAL_TOL: f64 = 1e-8;
const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn(&Path) -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn config(cmd: Command, n: usize, dir: &Path) -> RunConfig {
    RunConfig {
        n: Some(n),
        seed: SEED,
        witness_dir: Some(dir.to_path_buf()),
        ..RunConfig::new(cmd)
    }
}

fn exec(cfg: &RunConfig) -> Result<Report, String> {
    run(cfg).map_err(|e| format!("{} failed: {e}", cfg.command.name()))
}

fn confirmed(r: &Report) -> Result<(), String> {
    ensure(
        r.verdict == Verdict::ConfirmedAtScale && r.errors.is_empty() && r.witnesses.is_empty(),
        format!("{} verdict {:?}, errors {:?}, witnesses {:?}", r.command, r.verdict, r.errors, r.witnesses),
    )
}

fn detail_u64(r: &Report, key: &str) -> u64 {
    r.details.get(key).and_then(Value::as_u64).unwrap_or(0)
}

fn stat_rational(r: &Report) -> Result<Rational, String> {
    r.statistic.value.parse().map_err(|_| format!("statistic {} is not exact", r.statistic.value))
}

fn stat_f64(r: &Report) -> Result<f64, String> {
    r.statistic.value.parse().map_err(|_| format!("statistic {} is not numeric", r.statistic.value))
}

fn to_mat(a: &QMatrix) -> Mat {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

fn criterion_1(dir: &Path) -> Outcome {
    let mut cfg = config(Command::Conj3, 5, dir);
    cfg.mode = Mode::Exhaustive;
    let full = exec(&cfg)?;
    confirmed(&full)?;
    ensure(detail_u64(&full, "pool_rows") == 54, "pool is not 54 rows")?;
    ensure(full.trials_attempted == 316_251, format!("{} subsets", full.trials_attempted))?;
    let num: Rational = full.details["max_abs_numerator"].as_str().unwrap_or("").parse().map_err(|_| "numerator")?;
    let den: Rational = full.details["max_denominator"].as_str().unwrap_or("").parse().map_err(|_| "denominator")?;
    let bound = Rational::from_integer(16);
    ensure(num <= bound && den <= bound, format!("numerator {num}, denominator {den}"))?;
    // 16 is attained by the doubling chain, which is one of the subsets.
    ensure(num == bound, format!("max numerator {num}, expected 16"))?;

    // Disjoint ranges merge to the same statistics.
    let mut parts = Vec::new();
    for r in [(0, 100_000), (100_000, 316_251)] {
        cfg.range = Some(r);
        parts.push(exec(&cfg)?);
    }
    let uniq: u64 = parts.iter().map(|p| detail_u64(p, "unique_systems")).sum();
    ensure(uniq == detail_u64(&full, "unique_systems"), "range split changes the count")?;
    let best = parts.iter().map(stat_rational).collect::<Result<Vec<_>, _>>()?.into_iter().max().unwrap();
    ensure(best == stat_rational(&full)?, "range split changes the maximum")?;
    Ok(format!(
        "{} subsets, {} of rank 5, max |numerator| {num}, max denominator {den}",
        full.trials_attempted,
        detail_u64(&full, "unique_systems")
    ))
}

fn criterion_2(_: &Path) -> Outcome {
    let s = LinSystem::doubling_chain(8);
    let enc = encode(&s);
    let x = solve_unique(&enc.a, &enc.b).map_err(|e| e.to_string())?;
    let expected: Vec<Rational> = (0..8).map(Rational::pow2).collect();
    ensure(x.entries() == expected.as_slice(), format!("solution {x}"))?;
    let oracle = cramer(&to_mat(&enc.a), enc.b.entries()).ok_or("oracle: singular")?;
    ensure(oracle == expected, "cofactor Cramer disagrees")?;
    ensure(check_bound_pow2(&x, 8).passed(), "bound check fails at the boundary")?;
    Ok(format!("unique solution {x}, max 128 = 2^7"))
}

fn criterion_3(_: &Path) -> Outcome {
    let s = PolySystem::squaring_chain(4);
    let sol = solve_zero_dim(&to_polynomials(&s), &SolveOptions::default()).map_err(|e| e.to_string())?;
    let want = [[0.0, 0.0, 0.0, 0.0], [2.0, 4.0, 16.0, 256.0]];
    ensure(sol.points.len() == 2, format!("{} solutions", sol.points.len()))?;
    for (p, w) in sol.points.iter().zip(want) {
        for (z, &v) in p.entries.iter().zip(&w) {
            ensure((z - Complex64::new(v, 0.0)).norm() <= EXTREMAL_TOL, format!("coordinate {z} vs {v}"))?;
        }
        let direct = s.residual(&p.entries);
        ensure(direct < RESIDUAL_TOL, format!("residual {direct}"))?;
    }
    Ok("solutions (0,0,0,0) and (2,4,16,256)".into())
}

fn criterion_4(dir: &Path) -> Outcome {
    let mut cfg = config(Command::ConjI, 5, dir);
    cfg.iterations = 1000;
    let r = exec(&cfg)?;
    confirmed(&r)?;
    ensure(r.trials_completed == 1000, "not all trials completed")?;
    let max = stat_rational(&r)?;
    ensure(max <= Rational::from_integer(16), format!("max {max}"))?;
    // Regenerate every system and solve it with the cofactor oracle.
    let mut oracle_max = Rational::zero();
    for t in 0..1000 {
        let mut rng = SplitMix64::for_trial(SEED, t);
        let enc = encode(&random_unique_system(5, &mut rng));
        let x = cramer(&to_mat(&enc.a), enc.b.entries()).ok_or("oracle: singular system")?;
        for v in &x {
            ensure(v.square() <= Rational::from_integer(625), format!("trial {t}: {v}^2 > 625"))?;
            oracle_max = oracle_max.max(v.abs());
        }
        let x = QVector::new(x);
        ensure(check_bound_sqrt5(&x, 5).passed() && check_bound_pow2(&x, 5).passed(), format!("trial {t}"))?;
    }
    ensure(oracle_max == max, format!("oracle max {oracle_max} vs {max}"))?;
    Ok(format!("1000 unique solutions, max |x_i| = {max} <= 16, all x_i^2 <= 625"))
}

fn criterion_5(dir: &Path) -> Outcome {
    let mut summary = Vec::new();
    for strict in [false, true] {
        let mut cfg = config(Command::Conj1, 5, dir);
        cfg.iterations = 1000;
        cfg.strict_semantics = strict;
        let r = exec(&cfg)?;
        confirmed(&r)?;
        ensure(r.trials_completed == 1000, "not all trials completed")?;
        let max = stat_rational(&r)?;
        ensure(max <= Rational::from_integer(16), format!("max {max}"))?;
        let rule = if strict { RhsRule::Strict } else { RhsRule::Listing };
        let mut checked = 0;
        for t in 0..1000 {
            let mut rng = SplitMix64::for_trial(SEED, t);
            let enc = random_card_le_n_system(5, rule, &mut rng);
            for k in 1..=5 {
                let mut a = QMatrix::zeros(0, 5);
                for i in 0..k {
                    a.push_row(enc.a.row(i));
                }
                let b = QVector::new(enc.b.entries()[..k].to_vec());
                let pinv = pseudoinverse(&a);
                ensure(satisfies_penrose(&a, &pinv), format!("trial {t}: Penrose identities fail"))?;
                let x = pinv.mul_vec(&b).map_err(|e| e.to_string())?;
                ensure(
                    is_min_norm_least_squares(&to_mat(&a), b.entries(), x.entries()),
                    format!("trial {t}, {k} rows: oracle rejects x0 = {x}"),
                )?;
                ensure(check_bound_pow2(&x, 5).passed(), format!("trial {t}: {x}"))?;
                checked += 1;
            }
        }
        summary.push(format!("{} semantics: {checked} prefixes, max {max}", if strict { "strict" } else { "listing" }));
    }
    Ok(summary.join("; "))
}

fn criterion_6(dir: &Path) -> Outcome {
    let mut cfg = config(Command::Conj2, 4, dir);
    cfg.mode = Mode::Exhaustive;
    let r4 = exec(&cfg)?;
    confirmed(&r4)?;
    ensure(r4.trials_attempted == 3276, format!("{} combinations at n = 4", r4.trials_attempted))?;
    let m4 = stat_rational(&r4)?;
    ensure(m4 == Rational::from_integer(8), format!("n = 4 max {m4}"))?;

    let chain = int_mat(&[vec![2, -1, 0, 0], vec![0, 2, -1, 0], vec![0, 0, 2, -1]]);
    let rows: Vec<QVector> = chain.iter().map(|r| QVector::new(r.clone())).collect();
    let pool = conj2_rows(4);
    ensure(rows.iter().all(|r| pool.contains(r)), "chain rows missing from the pool")?;
    let (det, _) = conj2_check(&rows, 4).map_err(|e| e.to_string())?;
    let minor: Mat = chain.iter().map(|r| r[..3].to_vec()).collect();
    ensure(det == Rational::from_integer(8) && cofactor_det(&minor).abs() == det, format!("chain |det| {det}"))?;

    cfg.n = Some(5);
    let r5 = exec(&cfg)?;
    confirmed(&r5)?;
    ensure(r5.trials_attempted == 341_055, format!("{} combinations at n = 5", r5.trials_attempted))?;
    let m5 = stat_rational(&r5)?;
    ensure(m5 <= Rational::from_integer(16), format!("n = 5 max {m5}"))?;
    Ok(format!("n = 4: 3276 combinations, max 8 (attained by the 2,-1 chain); n = 5: 341055 combinations, max {m5}"))
}

fn criterion_7(dir: &Path) -> Outcome {
    let mut cfg = config(Command::Conj4, 5, dir);
    cfg.iterations = 1000;
    let r = exec(&cfg)?;
    confirmed(&r)?;
    let max = stat_rational(&r)?;
    ensure(max <= Rational::from_integer(2), format!("max ratio {max}"))?;
    let tuple = QVector::new(vec![
        Rational::new(1, 4),
        Rational::new(3, 4),
        Rational::one(),
        Rational::new(3, 2),
        Rational::from_integer(2),
        Rational::from_integer(3),
    ]);
    let c = conj4_check(&tuple);
    ensure(c.max_ratio == Rational::new(3, 2), format!("tuple ratio {}", c.max_ratio))?;
    Ok(format!("max clamped ratio {max} <= 2; (1/4, 3/4, 1, 3/2, 2, 3) gives 3/2"))
}

fn criterion_8(dir: &Path) -> Outcome {
    let mut summary = Vec::new();
    for (n, trials, bound) in [(4, 200, 16.0), (5, 50, 256.0)] {
        for variant in [Variant::B, Variant::C] {
            let mut cfg = config(Command::Conj5, n, dir);
            cfg.iterations = trials;
            cfg.variant = Some(variant);
            let r = exec(&cfg)?;
            confirmed(&r)?;
            ensure(detail_u64(&r, "zero_dimensional") == trials, format!("n = {n}: not every trial reached dimension 0"))?;
            ensure(detail_u64(&r, "5b_candidates") == 0, format!("n = {n}: positive-dimensional end state"))?;
            let max = match variant {
                Variant::B => r.details["max_abs_solution"].as_str().unwrap_or("inf").parse::<f64>().map_err(|e| e.to_string())?,
                _ => stat_f64(&r)?,
            };
            ensure(max <= bound + MODULUS_SLACK, format!("n = {n}: modulus {max} > {bound}"))?;
            if variant == Variant::C {
                summary.push(format!("n = {n}: {trials} trials, max modulus {max} <= {bound}"));
            }
        }
        // Residuals re-evaluated directly on the equations.
        let pool = full_pool(n, PoolVariant::WithUnitsFixedX1).map_err(|e| e.to_string())?;
        for t in 0..trials {
            let mut rng = SplitMix64::for_trial(SEED, t);
            let o = greedy_saturate(&pool, &mut rng, Saturation::UntilZeroDimensional, &SolveOptions::default())
                .map_err(|e| e.to_string())?;
            for p in &o.solutions {
                ensure(o.system.residual(&p.entries) < RESIDUAL_TOL, format!("n = {n}, trial {t}: residual"))?;
            }
        }
    }
    Ok(summary.join("; "))
}

fn criterion_9(_: &Path) -> Outcome {
    let mut rng = Lcg(0x9e37_79b9_7f4a_7c15);
    let vals = [-1, 0, 1, 2];
    // (a) Bareiss against cofactor expansion.
    for _ in 0..1000 {
        let n = 1 + rng.below(4);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.pick(&vals)).collect()).collect();
        let m = int_mat(&rows);
        let q = QMatrix::from_rows(m.clone(), n).map_err(|e| e.to_string())?;
        let d = boundsol::linalg::det_bareiss(&q).map_err(|e| e.to_string())?;
        ensure(d == cofactor_det(&m), format!("(a) {rows:?}"))?;
    }
    // (b) Cramer against inverse-multiply on invertible encodings.
    let mut done = 0;
    while done < 500 {
        let n = 1 + rng.below(5);
        let eqs: Vec<LinEquation> = {
            let all = w_n(n);
            (0..n).map(|_| all[rng.below(all.len())]).collect()
        };
        let s = LinSystem::new(n, eqs).map_err(|e| e.to_string())?;
        let enc = encode(&s);
        if enc.a.rows() != n || cofactor_det(&to_mat(&enc.a)).is_zero() {
            continue;
        }
        let c = solve_cramer(&enc.a, &enc.b).map_err(|e| e.to_string())?;
        let i = solve_inverse(&enc.a, &enc.b).map_err(|e| e.to_string())?;
        ensure(c == i, format!("(b) {s}"))?;
        done += 1;
    }
    // (c) Numeric solver on zero-dimensional E_3 / E_4 systems.
    let mut solved = 0;
    let mut t = 0;
    let variants = [PoolVariant::FullEn, PoolVariant::NoUnitsAllVars, PoolVariant::WithUnitsFixedX1];
    while solved < 100 {
        let n = 3 + (t % 2) as usize;
        let pool = full_pool(n, variants[(t / 2 % 3) as usize]).map_err(|e| e.to_string())?;
        let mut srng = SplitMix64::for_trial(SEED, t);
        t += 1;
        let o = greedy_saturate(&pool, &mut srng, Saturation::UntilZeroDimensional, &SolveOptions::default())
            .map_err(|e| e.to_string())?;
        if o.classification != Dimension::ZeroDimensional || pool.unknowns() == 0 {
            continue;
        }
        let gens = to_polynomials(&o.system);
        let gb = buchberger(&gens, o.system.order());
        let count = standard_monomial_count(&gb).map_err(|e| e.to_string())?;
        let sol = solve_zero_dim(&gens, &SolveOptions::default()).map_err(|e| e.to_string())?;
        ensure(sol.points.len() <= count, format!("(c) {} points > {count}", sol.points.len()))?;
        for p in &sol.points {
            let full = o.system.expand(&p.entries);
            ensure(o.system.residual(&full) < RESIDUAL_TOL, format!("(c) residual on {}", o.system))?;
        }
        solved += 1;
    }
    // (d) Minimal-norm solutions lie in the row space.
    for _ in 0..500 {
        let rows = 1 + rng.below(4);
        let cols = 1 + rng.below(4);
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.pick(&[-2, -1, 0, 1, 2])).collect()).collect();
        let b: Vec<i64> = (0..rows).map(|_| rng.pick(&[-3, -1, 0, 1, 2])).collect();
        let am = int_mat(&a);
        let q = QMatrix::from_rows(am.clone(), cols).map_err(|e| e.to_string())?;
        let bv = QVector::from_ints(&b);
        let x = min_norm_solution(&q, &bv).map_err(|e| e.to_string())?;
        let mut stacked = am.clone();
        stacked.push(x.entries().to_vec());
        ensure(minor_rank(&stacked) == minor_rank(&am), format!("(d) {a:?} {b:?}"))?;
        ensure(is_min_norm_least_squares(&am, bv.entries(), x.entries()), format!("(d) normal equations {a:?}"))?;
    }
    Ok("(a) 1000 determinants, (b) 500 encodings, (c) 100 systems, (d) 500 least-squares problems".into())
}

/// Every subset of W_n, solved exactly, minimal-norm point hat-searched.
fn obs1_all_subsets(n: usize) -> Result<u64, String> {
    let all = w_n(n);
    let mut checked = 0;
    for mask in 1u64..(1 << all.len()) {
        let eqs = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]);
        let s = LinSystem::new(n, eqs).map_err(|e| e.to_string())?;
        let enc = encode(&s);
        if !enc.is_consistent() {
            continue;
        }
        let x = min_norm_solution(&enc.a, &enc.b).map_err(|e| e.to_string())?;
        let found = boundsol::lin::observation1_hat_search(&s, &x).map_err(|e| e.to_string())?;
        ensure(found.is_some(), format!("no replacement for {s}"))?;
        checked += 1;
    }
    Ok(checked)
}

fn criterion_10(dir: &Path) -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=2 {
        summary.push(format!("n = {n}: {} consistent subsets", obs1_all_subsets(n)?));
    }
    for n in 1..=3 {
        let mut cfg = config(Command::Obs1, n, dir);
        cfg.mode = Mode::Exhaustive;
        let r = exec(&cfg)?;
        confirmed(&r)?;
        ensure(r.statistic.value == "0", format!("obs1 n = {n}: {} failures", r.statistic.value))?;
        summary.push(format!("obs1 n = {n}: {} closed systems", r.trials_attempted));
    }
    let mut systems = 0;
    for n in 1..=3 {
        let mut cfg = config(Command::Obs2, n, dir);
        cfg.iterations = 100;
        let r = exec(&cfg)?;
        confirmed(&r)?;
        ensure(r.statistic.value == "0", format!("obs2 n = {n}: {} failures", r.statistic.value))?;
        systems += detail_u64(&r, "systems_checked");
    }
    // The extremal E_4 system: the replacement keeps nothing above 16.
    let s = PolySystem::squaring_chain(4);
    let x: Vec<Complex64> = [2.0, 4.0, 16.0, 256.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let hat = observation2_hat_search(&s, &x).map_err(|e| e.to_string())?.ok_or("extremal: none")?;
    ensure(hat.iter().all(|z| z.norm() == 0.0), "extremal replacement is not the zero tuple")?;
    summary.push(format!("obs2 n <= 3: {systems} zero-dimensional systems from 100 seeds per pool"));
    Ok(summary.join("; "))
}

fn criterion_11(dir: &Path) -> Outcome {
    let mut cases = Vec::new();
    for (cmd, n, iters, variant, strict) in [
        (Command::ConjI, 5, 1000, None, false),
        (Command::Conj1, 5, 1000, None, false),
        (Command::Conj1, 5, 1000, None, true),
        (Command::Conj4, 5, 1000, None, false),
        (Command::Conj5, 4, 200, Some(Variant::B), false),
        (Command::Conj5, 4, 200, Some(Variant::C), false),
        (Command::Conj5, 5, 50, Some(Variant::C), false),
    ] {
        let mut cfg = config(cmd, n, dir);
        cfg.iterations = iters;
        cfg.variant = variant;
        cfg.strict_semantics = strict;
        let mut outputs = Vec::new();
        for threads in [1, 8, 1] {
            cfg.threads = threads;
            outputs.push(exec(&cfg)?.to_json());
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), format!("{} n = {n}: JSON differs", cmd.name()))?;
        cases.push(cmd.name());
    }
    Ok(format!("{} runs byte-identical across reruns and 1 vs 8 threads", cases.len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary witness directory");
    let criteria: [Criterion; 11] = [
        (1, "conjecture 3, exhaustive n = 5", criterion_1),
        (2, "doubling chain n = 8 is tight", criterion_2),
        (3, "extremal E_4 system has two solutions", criterion_3),
        (4, "conjecture (I) randomized replay", criterion_4),
        (5, "conjecture 1 randomized replay", criterion_5),
        (6, "conjecture 2 exhaustive n = 4, 5", criterion_6),
        (7, "conjecture 4 randomized", criterion_7),
        (8, "conjectures 5b/5c randomized", criterion_8),
        (9, "solver correctness properties", criterion_9),
        (10, "observations 1 and 2", criterion_10),
        (11, "determinism across threads", criterion_11),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(dir.path())))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{secs:.1}s]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} [{secs:.1}s]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
