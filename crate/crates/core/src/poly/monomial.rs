use std::cmp::Ordering;
use std::fmt;

/// Largest number of variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 8;

/// Power product `x_1^{a_1} ... x_m^{a_m}` over at most [`MAX_VARS`] variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut m = Monomial::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        m
    }

    /// `x_v^e`, with `v` 0-based.
    pub fn var_power(nvars: usize, v: usize, e: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[v] = e;
        m.degree = e as u32;
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.exps[v]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut m = *self;
        for i in 0..self.nvars() {
            m.exps[i] += other.exps[i];
        }
        m.degree += other.degree;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut m = *other;
        for i in 0..self.nvars() {
            m.exps[i] -= self.exps[i];
        }
        m.degree -= self.degree;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut d = 0;
        for i in 0..self.nvars() {
            m.exps[i] = m.exps[i].max(other.exps[i]);
            d += m.exps[i] as u32;
        }
        m.degree = d;
        m
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// The variable this monomial is a pure positive power of, if any.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for i in 0..self.nvars() {
            if self.exps[i] > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nvars()).filter(|&i| self.exps[i] > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in 0..self.nvars() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
}

/// Monomial order with a variable ranking. `rank[0]` is the most significant
/// variable; the identity ranking puts `x_1 > x_2 > ... > x_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    rank: [u8; MAX_VARS],
    nvars: u8,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        let mut rank = [0u8; MAX_VARS];
        for (i, r) in rank.iter_mut().enumerate() {
            *r = i as u8;
        }
        MonomialOrder {
            kind,
            rank,
            nvars: nvars as u8,
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::Lex, nvars)
    }

    /// Same kind with a custom ranking of variables (most significant first).
    pub fn with_ranking(kind: OrderKind, ranking: &[usize]) -> Self {
        let mut o = MonomialOrder::new(kind, ranking.len());
        let mut seen = [false; MAX_VARS];
        for (i, &v) in ranking.iter().enumerate() {
            assert!(v < ranking.len() && !seen[v], "ranking must be a permutation");
            seen[v] = true;
            o.rank[i] = v as u8;
        }
        o
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn ranking(&self) -> &[u8] {
        &self.rank[..self.nvars as usize]
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let r = self.ranking();
        match self.kind {
            OrderKind::Lex => {
                for &v in r {
                    match a.exps[v as usize].cmp(&b.exps[v as usize]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for &v in r.iter().rev() {
                        match a.exps[v as usize].cmp(&b.exps[v as usize]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }
}
