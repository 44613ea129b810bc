//! Plain-text system format: one equation per line, `x<i> = 1`,
//! `x<i> + x<j> = x<k>` or `x<i> * x<j> = x<k>`, with `#` comments.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lin::{LinEquation, LinSystem};
use crate::linalg::QVector;
use crate::poly::ComplexVector;
use crate::polysys::{PolyEquation, PolySystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedSystem {
    Linear(LinSystem),
    Poly(PolySystem),
}

impl ParsedSystem {
    pub fn n(&self) -> usize {
        match self {
            ParsedSystem::Linear(s) => s.n(),
            ParsedSystem::Poly(s) => s.n(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(usize),
    One,
    Plus,
    Star,
    Eq,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '=' => {
                out.push((Tok::Eq, col));
                i += 1;
            }
            'x' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(perr(line, col, "expected a variable index after 'x'"));
                }
                let digits: String = chars[start..j].iter().collect();
                let idx: usize = digits
                    .parse()
                    .map_err(|_| perr(line, col, "variable index too large"))?;
                if idx == 0 {
                    return Err(perr(line, col, "variable indices start at 1"));
                }
                out.push((Tok::Var(idx), col));
                i = j;
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i..j].iter().collect();
                if digits != "1" {
                    return Err(perr(line, col, format!("only the constant 1 is allowed, found {digits}")));
                }
                out.push((Tok::One, col));
                i = j;
            }
            other => return Err(perr(line, col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

fn parse_line(toks: &[(Tok, usize)], line: usize, end_col: usize) -> Result<PolyEquation> {
    let at = |k: usize| toks.get(k).map(|t| t.1).unwrap_or(end_col);
    let want_var = |k: usize| -> Result<usize> {
        match toks.get(k) {
            Some((Tok::Var(v), _)) => Ok(*v),
            _ => Err(perr(line, at(k), "expected a variable")),
        }
    };
    let i = want_var(0)?;
    let eq = match toks.get(1) {
        Some((Tok::Eq, _)) => match toks.get(2) {
            Some((Tok::One, _)) => PolyEquation::Unit(i),
            _ => return Err(perr(line, at(2), "expected 1 after 'x = '")),
        },
        Some((op @ (Tok::Plus | Tok::Star), _)) => {
            let j = want_var(2)?;
            if !matches!(toks.get(3), Some((Tok::Eq, _))) {
                return Err(perr(line, at(3), "expected '='"));
            }
            let k = want_var(4)?;
            if *op == Tok::Plus {
                PolyEquation::add(i, j, k)
            } else {
                PolyEquation::mul(i, j, k)
            }
        }
        _ => return Err(perr(line, at(1), "expected '=', '+' or '*'")),
    };
    let used = if matches!(eq, PolyEquation::Unit(_)) { 3 } else { 5 };
    if toks.len() > used {
        return Err(perr(line, toks[used].1, "unexpected trailing input"));
    }
    Ok(eq)
}

/// Parses a system. Without `n_override`, `n` is the largest variable
/// index. A file with any product equation is polynomial.
pub fn parse_system(text: &str, n_override: Option<usize>) -> Result<ParsedSystem> {
    let mut eqs = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let toks = lex(raw, ln + 1)?;
        if toks.is_empty() {
            continue;
        }
        let end = raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
        eqs.push(parse_line(&toks, ln + 1, end)?);
    }
    let max = eqs.iter().map(PolyEquation::max_index).max().unwrap_or(0);
    let n = match n_override {
        Some(n) if n < max => {
            return Err(Error::Config(format!(
                "--n {n} is smaller than the largest variable index {max}"
            )))
        }
        Some(n) => n,
        None if max == 0 => return Err(perr(1, 1, "no equations found")),
        None => max,
    };
    if eqs.iter().any(|e| matches!(e, PolyEquation::Mul(..))) {
        return Ok(ParsedSystem::Poly(PolySystem::new(n, eqs, false)?));
    }
    let lin = eqs.into_iter().map(|e| match e {
        PolyEquation::Unit(i) => LinEquation::Unit(i),
        PolyEquation::Add(i, j, k) => LinEquation::Add(i, j, k),
        PolyEquation::Mul(..) => unreachable!(),
    });
    Ok(ParsedSystem::Linear(LinSystem::new(n, lin)?))
}

pub fn read_system_file(path: &std::path::Path, n_override: Option<usize>) -> Result<ParsedSystem> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_system(&text, n_override)
}

/// Shortest round-trip-exact text for a double, 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("{} {}", fmt_f64(z.re), fmt_f64(z.im))
}

/// Witness text for a linear system and its exact solution.
pub fn linear_witness(title: &str, s: &LinSystem, solution: &QVector) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    let _ = writeln!(out, "# n = {}", s.n());
    out.push_str(&s.to_string());
    let _ = writeln!(out, "# solution: {solution}");
    out
}

/// Witness text for a polynomial system and its numeric solutions
/// (real and imaginary part per coordinate).
pub fn poly_witness(title: &str, s: &PolySystem, solutions: &[ComplexVector]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    let _ = writeln!(out, "# n = {}", s.n());
    out.push_str(&s.to_string());
    for (k, p) in solutions.iter().enumerate() {
        let coords: Vec<String> = p.entries.iter().map(|z| fmt_complex(*z)).collect();
        let _ = writeln!(out, "# solution {}: {}", k + 1, coords.join("  "));
        let _ = writeln!(out, "# residual {}: {}", k + 1, fmt_f64(p.residual));
    }
    out
}
