use std::collections::BTreeMap;

use crate::error::Error;
use crate::rational::Rational;

/// Counterexamples kept per run; the total is counted separately.
pub const WITNESS_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    /// Combination rank or trial index.
    pub key: u64,
    pub stem: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stat {
    Exact(Rational),
    Float(f64),
}

impl Stat {
    fn merge(&mut self, other: Stat) {
        match (self, other) {
            (Stat::Exact(a), Stat::Exact(b)) => {
                if b > *a {
                    *a = b;
                }
            }
            (Stat::Float(a), Stat::Float(b)) => *a = a.max(b),
            _ => panic!("statistic kinds differ"),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Stat::Exact(q) => q.to_string(),
            Stat::Float(x) => format!("{x}"),
        }
    }
}

/// Per-partition accumulator. Every field merges by max, sum or sorted
/// union, so the merged result does not depend on how work was split.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub attempted: u64,
    pub completed: u64,
    pub maxima: BTreeMap<&'static str, Stat>,
    pub counts: BTreeMap<&'static str, u64>,
    pub errors: BTreeMap<String, u64>,
    pub witnesses: Vec<Witness>,
    pub counterexamples: u64,
}

impl Tally {
    pub fn max_exact(&mut self, name: &'static str, q: Rational) {
        self.maxima
            .entry(name)
            .or_insert_with(|| Stat::Exact(q.clone()))
            .merge(Stat::Exact(q));
    }

    pub fn max_float(&mut self, name: &'static str, x: f64) {
        self.maxima.entry(name).or_insert(Stat::Float(x)).merge(Stat::Float(x));
    }

    pub fn count(&mut self, name: &'static str) {
        self.add(name, 1);
    }

    pub fn add(&mut self, name: &'static str, k: u64) {
        *self.counts.entry(name).or_insert(0) += k;
    }

    pub fn error(&mut self, e: &Error) {
        *self.errors.entry(error_kind(e).to_string()).or_insert(0) += 1;
    }

    pub fn error_named(&mut self, name: &str) {
        *self.errors.entry(name.to_string()).or_insert(0) += 1;
    }

    pub fn counterexample(&mut self, w: Witness) {
        self.counterexamples += 1;
        self.witnesses.push(w);
        self.trim();
    }

    fn trim(&mut self) {
        self.witnesses.sort();
        self.witnesses.truncate(WITNESS_LIMIT);
    }

    pub fn merge(&mut self, other: Tally) {
        self.attempted += other.attempted;
        self.completed += other.completed;
        for (k, v) in other.maxima {
            match self.maxima.get_mut(k) {
                Some(s) => s.merge(v),
                None => {
                    self.maxima.insert(k, v);
                }
            }
        }
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.errors {
            *self.errors.entry(k).or_insert(0) += v;
        }
        self.counterexamples += other.counterexamples;
        self.witnesses.extend(other.witnesses);
        self.trim();
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonSquare { .. } => "non_square",
        Error::SingularMatrix => "singular_matrix",
        Error::ZeroMatrix => "zero_matrix",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::InconsistentSystem => "inconsistent_system",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::PreconditionViolated(_) => "precondition_violated",
        Error::OrderMismatch => "order_mismatch",
        Error::NotZeroDimensional => "not_zero_dimensional",
        Error::IterationLimit(_) => "iteration_limit",
        Error::DegenerateBackSubstitution(_) => "degenerate_back_substitution",
        Error::InconsistentInput => "inconsistent_input",
        Error::Parse { .. } => "parse",
        Error::Config(_) => "config",
        Error::Io(_) => "io",
    }
}

/// Splits `[start, end)` into at most `threads` contiguous chunks, runs
/// `work` on each in its own thread and returns the results in chunk order.
pub fn run_chunks<A, F>(start: u64, end: u64, threads: usize, work: F) -> Vec<A>
where
    A: Send,
    F: Fn(u64, u64) -> A + Sync,
{
    let len = end.saturating_sub(start);
    let parts = (threads.max(1) as u64).min(len.max(1));
    let bounds: Vec<(u64, u64)> = (0..parts)
        .map(|p| (start + len * p / parts, start + len * (p + 1) / parts))
        .collect();
    if parts == 1 {
        return vec![work(bounds[0].0, bounds[0].1)];
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(a, b)| {
                let w = &work;
                s.spawn(move || w(a, b))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// `run_chunks` followed by an in-order merge.
pub fn fold_range<F>(start: u64, end: u64, threads: usize, work: F) -> Tally
where
    F: Fn(u64, u64) -> Tally + Sync,
{
    let mut acc = Tally::default();
    for t in run_chunks(start, end, threads, work) {
        acc.merge(t);
    }
    acc
}
