use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::QVector;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundVerdict {
    Pass,
    /// First offending coordinate, 1-based.
    Violation { index: usize },
}

impl BoundVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BoundVerdict::Pass)
    }
}

fn first_violation(x: &QVector, ok: impl Fn(&Rational) -> bool) -> BoundVerdict {
    match x.iter().position(|v| !ok(v)) {
        Some(i) => BoundVerdict::Violation { index: i + 1 },
        None => BoundVerdict::Pass,
    }
}

/// `|x_i| <= 2^{n-1}` for every coordinate.
pub fn check_bound_pow2(x: &QVector, n: usize) -> BoundVerdict {
    let bound = Rational::pow2(n.saturating_sub(1) as u32);
    first_violation(x, |v| v.abs() <= bound)
}

/// `x_i^2 <= 5^{n-1}`, the squared form of `|x_i| <= sqrt(5)^{n-1}`.
pub fn check_bound_sqrt5(x: &QVector, n: usize) -> BoundVerdict {
    let bound = Rational::from_integer(num_traits::pow(BigInt::from(5), n.saturating_sub(1)));
    first_violation(x, |v| v.square() <= bound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conj3Stats {
    pub max_abs_numerator: BigInt,
    pub max_denominator: BigInt,
}

impl Conj3Stats {
    /// Both maxima at most `2^{n-1}`.
    pub fn within(&self, n: usize) -> bool {
        let bound = BigInt::one() << n.saturating_sub(1);
        self.max_abs_numerator <= bound && self.max_denominator <= bound
    }

    /// The larger of the two maxima.
    pub fn max(&self) -> BigInt {
        self.max_abs_numerator.clone().max(self.max_denominator.clone())
    }

    pub fn merge(&self, other: &Conj3Stats) -> Conj3Stats {
        Conj3Stats {
            max_abs_numerator: self.max_abs_numerator.clone().max(other.max_abs_numerator.clone()),
            max_denominator: self.max_denominator.clone().max(other.max_denominator.clone()),
        }
    }
}

impl Default for Conj3Stats {
    fn default() -> Self {
        Conj3Stats {
            max_abs_numerator: BigInt::zero(),
            max_denominator: BigInt::one(),
        }
    }
}

pub fn conj3_stats(x: &QVector) -> Conj3Stats {
    x.iter().fold(Conj3Stats::default(), |acc, v| Conj3Stats {
        max_abs_numerator: acc.max_abs_numerator.max(v.numer().abs()),
        max_denominator: acc.max_denominator.max(v.denom().clone()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conj4Result {
    pub max_ratio: Rational,
    pub verdict: BoundVerdict,
}

/// Clamps every coordinate to `max(1, |x_i|)`, sorts, and takes the largest
/// ratio of neighbours; the verdict passes when that ratio is at most 2.
/// With fewer than two coordinates the ratio is 1.
pub fn conj4_check(x: &QVector) -> Conj4Result {
    let one = Rational::one();
    let mut c: Vec<Rational> = x.iter().map(|v| v.abs().max(one.clone())).collect();
    c.sort();
    let mut best = Rational::one();
    let mut at = 0;
    for (i, w) in c.windows(2).enumerate() {
        let r = &w[1] / &w[0];
        if r > best {
            best = r;
            at = i + 2;
        }
    }
    let verdict = if best <= Rational::from(2) {
        BoundVerdict::Pass
    } else {
        BoundVerdict::Violation { index: at }
    };
    Conj4Result {
        max_ratio: best,
        verdict,
    }
}
