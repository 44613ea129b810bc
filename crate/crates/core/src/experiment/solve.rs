use std::collections::BTreeMap;

use serde_json::Value;

use super::config::RunConfig;
use super::report::{build_report, Report};
use super::tally::{Tally, Witness};
use crate::error::Result;
use crate::lin::{check_bound_pow2, check_bound_sqrt5, conj3_stats, conj4_check, encode, LinSystem};
use crate::linalg::{max_abs, min_norm_solution, rank};
use crate::poly::{buchberger, classify_dimension, solve_zero_dim, Dimension, SolveOptions};
use crate::polysys::{
    check_points, minimal_norm_indices, to_polynomials, BoundExponent, PolySystem,
};
use crate::rational::Rational;
use crate::text::{fmt_complex, fmt_f64, linear_witness, poly_witness, read_system_file, ParsedSystem};

pub fn solve(cfg: &RunConfig) -> Result<Report> {
    let path = cfg.input.as_deref().expect("validated");
    match read_system_file(path, cfg.n)? {
        ParsedSystem::Linear(s) => solve_linear(cfg, &s),
        ParsedSystem::Poly(s) => solve_poly(cfg, &s),
    }
}

fn flag(details: &mut BTreeMap<String, Value>, key: &str, v: bool) {
    details.insert(key.into(), Value::Bool(v));
}

fn solve_linear(cfg: &RunConfig, s: &LinSystem) -> Result<Report> {
    let n = s.n();
    let enc = encode(s);
    let consistent = enc.is_consistent();
    let r = rank(&enc.a);
    let unique = consistent && r == n;
    let x = min_norm_solution(&enc.a, &enc.b)?;
    let mut t = Tally {
        attempted: 1,
        completed: 1,
        ..Tally::default()
    };
    let mut details = BTreeMap::new();
    let mut notes = vec![
        format!("system: linear, n = {n}, {} equations", s.equations().len()),
        format!("consistent: {consistent}"),
        format!("rank: {r}"),
    ];
    flag(&mut details, "consistent", consistent);
    flag(&mut details, "unique_solution", unique);
    details.insert("rank".into(), Value::from(r as u64));
    details.insert("minimal_norm_solution".into(), Value::String(x.to_string()));
    let pow2_ok = check_bound_pow2(&x, n).passed();
    if unique {
        notes.push(format!("unique solution: {x}"));
        let c3 = conj3_stats(&x);
        let c4 = conj4_check(&x);
        flag(&mut details, "conjecture_i_bound", pow2_ok);
        flag(&mut details, "square_bound", check_bound_sqrt5(&x, n).passed());
        details.insert("max_abs_numerator".into(), Value::String(c3.max_abs_numerator.to_string()));
        details.insert("max_denominator".into(), Value::String(c3.max_denominator.to_string()));
        flag(&mut details, "conjecture_3_bound", c3.within(n));
        details.insert("max_clamped_ratio".into(), Value::String(c4.max_ratio.to_string()));
        flag(&mut details, "conjecture_4_bound", c4.verdict.passed());
        if !pow2_ok || !c3.within(n) || !c4.verdict.passed() {
            t.counterexample(Witness {
                key: 0,
                stem: "input".into(),
                text: linear_witness("unique solution violating a linear bound", s, &x),
            });
        }
    } else {
        let label = if consistent { "minimal-norm solution" } else { "minimal-norm least-squares solution" };
        notes.push(format!("{label}: {x}"));
        flag(&mut details, "conjecture_1_bound", pow2_ok);
        if !pow2_ok {
            t.counterexample(Witness {
                key: 0,
                stem: "input".into(),
                text: linear_witness("minimal-norm solution outside [-2^(n-1), 2^(n-1)]", s, &x),
            });
        }
    }
    let stat = ("max_abs_entry", max_abs(&x).to_string());
    let bound = Rational::pow2(n as u32 - 1).to_string();
    let mut report = build_report(cfg, t, stat, bound, details)?;
    report.notes = notes;
    Ok(report)
}

fn solve_poly(cfg: &RunConfig, s: &PolySystem) -> Result<Report> {
    let n = s.n();
    let gens = to_polynomials(s);
    let dim = classify_dimension(&buchberger(&gens, s.order()));
    let mut t = Tally {
        attempted: 1,
        completed: 1,
        ..Tally::default()
    };
    let mut details = BTreeMap::new();
    let name = match dim {
        Dimension::Inconsistent => "inconsistent",
        Dimension::ZeroDimensional => "zero-dimensional",
        Dimension::PositiveDimensional => "positive-dimensional",
    };
    let mut notes = vec![
        format!("system: polynomial, n = {n}, {} equations", s.equations().len()),
        format!("classification: {name}"),
    ];
    details.insert("classification".into(), Value::String(name.into()));
    let mut stat = ("max_abs_solution", "none".to_string());
    if dim == Dimension::ZeroDimensional {
        let sol = solve_zero_dim(&gens, &SolveOptions::default())?;
        let pts = sol.points;
        details.insert("solutions".into(), Value::from(pts.len() as u64));
        details.insert("expected_solutions".into(), Value::from(sol.expected as u64));
        if !sol.converged {
            t.error_named("root_iteration_limit");
        }
        for (k, p) in pts.iter().enumerate() {
            let coords: Vec<String> = p.entries.iter().map(|z| fmt_complex(*z)).collect();
            notes.push(format!("solution {}: {}", k + 1, coords.join("  ")));
        }
        let min_norm = minimal_norm_indices(&pts);
        notes.push(format!(
            "minimal-norm solution: {}",
            min_norm.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ")
        ));
        details.insert(
            "minimal_norm_solutions".into(),
            Value::from(min_norm.iter().map(|&i| (i + 1) as u64).collect::<Vec<_>>()),
        );
        let d = check_points(&pts, n, BoundExponent::NMinus1);
        flag(&mut details, "conjecture_5d_bound", d.passed);
        let narrow = check_points(&[], n, BoundExponent::NMinus2).bound + crate::polysys::BOUND_TOL;
        let some = pts.iter().any(|p| p.max_abs() <= narrow);
        let all_min = min_norm.iter().all(|&i| pts[i].max_abs() <= narrow);
        flag(&mut details, "conjecture_ii_some_solution", some);
        flag(&mut details, "conjecture_ii_minimal_norm", all_min);
        stat.1 = format!("{}", d.max_abs);
        if !d.passed || !some || !all_min {
            t.counterexample(Witness {
                key: 0,
                stem: "input".into(),
                text: poly_witness("solutions violating a double-exponential bound", s, &pts),
            });
        }
        details.insert("max_abs_solution_decimal".into(), Value::String(fmt_f64(d.max_abs)));
    }
    let bound = format!("{}", check_points(&[], n, BoundExponent::NMinus1).bound);
    let mut report = build_report(cfg, t, stat, bound, details)?;
    report.notes = notes;
    Ok(report)
}
