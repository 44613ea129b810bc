use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Reduced, monic Gröbner basis. The unit ideal is stored as `{1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    generators: Vec<Polynomial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Inconsistent,
    ZeroDimensional,
    PositiveDimensional,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Polynomial::is_unit)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| *g.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    /// Basis of the ideal generated by `self` and `extra`. The existing
    /// generators are already closed under S-pairs, so only pairs touching
    /// the new elements are formed.
    pub fn extend(&self, extra: &[Polynomial]) -> GroebnerBasis {
        if self.is_unit() {
            return self.clone();
        }
        let extra: Vec<Polynomial> = extra.iter().map(|p| p.with_order(self.order)).collect();
        run(self.order, &self.generators, &extra)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }
}

fn divide_out(p: &Polynomial, basis: &[&Polynomial], full: bool) -> Polynomial {
    let order = p.order();
    let mut rem = Vec::new();
    let mut cur = p.clone();
    while let Some((lm, lc)) = cur.terms().first().cloned() {
        let reducer = basis
            .iter()
            .find(|g| g.leading_monomial().unwrap().divides(&lm));
        match reducer {
            Some(g) => {
                let q = g.leading_monomial().unwrap().quotient_of(&lm);
                let c = &lc / g.leading_coefficient().unwrap();
                cur = cur.sub_scaled(&c, &q, g);
            }
            None => {
                if !full {
                    return cur;
                }
                rem.push((lm, lc));
                cur = Polynomial::from_terms(order, cur.terms()[1..].to_vec());
            }
        }
    }
    if rem.is_empty() {
        Polynomial::zero(order)
    } else {
        Polynomial::from_terms(order, rem)
    }
}

/// Remainder of `p` on division by `g`.
pub fn normal_form(p: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    if p.order() != g.order {
        return Err(Error::OrderMismatch);
    }
    let refs: Vec<&Polynomial> = g.generators.iter().collect();
    Ok(divide_out(p, &refs, true))
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l);
    let b = gm.quotient_of(&l);
    let fa = Polynomial::zero(f.order()).sub_scaled(
        &-f.leading_coefficient().unwrap().recip(),
        &a,
        f,
    );
    fa.sub_scaled(&g.leading_coefficient().unwrap().recip(), &b, g)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn reduce(&self, p: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.active.iter().map(|&i| &self.polys[i]).collect();
        divide_out(p, &refs, false)
    }

    /// Gebauer-Möller update with the product and chain criteria.
    fn update(&mut self, h: Polynomial) {
        let h = h.monic();
        let hm = *h.leading_monomial().unwrap();
        let hi = self.polys.len();
        self.polys.push(h);
        self.lms.push(hm);

        let cands: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair {
                i: g,
                j: hi,
                lcm: self.lms[g].lcm(&hm),
            })
            .collect();
        let lms = &self.lms;
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in cands.iter().enumerate() {
            let coprime = lms[p.i].coprime(&hm);
            let dominated = cands[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(*p);
            }
        }
        kept.retain(|p| !lms[p.i].coprime(&hm));

        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && lms[p.i].lcm(&hm) != p.lcm
                && lms[p.j].lcm(&hm) != p.lcm)
        });
        self.pairs.extend(kept);
        self.active.retain(|&g| !hm.divides(&lms[g]));
        self.active.push(hi);
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.lcm
                .degree()
                .cmp(&q.lcm.degree())
                .then_with(|| order.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
        })?;
        Some(self.pairs.remove(best))
    }

    fn unit(&self) -> GroebnerBasis {
        GroebnerBasis {
            order: self.order,
            generators: vec![Polynomial::constant(self.order, Rational::one())],
        }
    }

    /// Adds `p` after reducing it; returns false when the ideal became the unit ideal.
    fn absorb(&mut self, p: &Polynomial) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return true;
        }
        if r.is_unit() {
            return false;
        }
        self.update(r);
        true
    }
}

fn run(order: MonomialOrder, basis: &[Polynomial], extra: &[Polynomial]) -> GroebnerBasis {
    let mut st = State {
        order,
        polys: basis.to_vec(),
        lms: basis.iter().map(|g| *g.leading_monomial().unwrap()).collect(),
        active: (0..basis.len()).collect(),
        pairs: Vec::new(),
    };
    for p in extra {
        if !st.absorb(p) {
            return st.unit();
        }
    }
    while let Some(pair) = st.select() {
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j]);
        if !st.absorb(&s) {
            return st.unit();
        }
    }
    finish(order, st.active.iter().map(|&i| st.polys[i].clone()).collect())
}

/// Interreduces a minimal basis and sorts it by ascending leading monomial.
fn finish(order: MonomialOrder, mut gens: Vec<Polynomial>) -> GroebnerBasis {
    gens.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
    for i in 0..gens.len() {
        let others: Vec<&Polynomial> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g)
            .collect();
        let lead = Polynomial::from_terms(order, vec![gens[i].terms()[0].clone()]);
        let tail = Polynomial::from_terms(order, gens[i].terms()[1..].to_vec());
        let r = lead.add(&divide_out(&tail, &others, true));
        out.push(r.monic());
    }
    GroebnerBasis {
        order,
        generators: out,
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let gens: Vec<Polynomial> = gens.iter().map(|p| p.with_order(order)).collect();
    run(order, &[], &gens)
}

pub fn classify_dimension(g: &GroebnerBasis) -> Dimension {
    if g.is_unit() {
        return Dimension::Inconsistent;
    }
    let lms = g.leading_monomials();
    let covered =
        (0..g.nvars()).all(|v| lms.iter().any(|m| m.pure_power_var() == Some(v)));
    if covered {
        Dimension::ZeroDimensional
    } else {
        Dimension::PositiveDimensional
    }
}

/// Monomials outside the leading-term ideal, in the order they are enumerated.
pub fn standard_monomials(g: &GroebnerBasis) -> Result<Vec<Monomial>> {
    if classify_dimension(g) != Dimension::ZeroDimensional {
        return Err(Error::NotZeroDimensional);
    }
    let lms = g.leading_monomials();
    let n = g.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fn walk(v: usize, exps: &mut Vec<u16>, lms: &[Monomial], out: &mut Vec<Monomial>) {
        if v == exps.len() {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        loop {
            let m = Monomial::from_exponents(exps);
            if lms.iter().any(|l| l.divides(&m)) {
                break;
            }
            walk(v + 1, exps, lms, out);
            exps[v] += 1;
        }
        exps[v] = 0;
    }
    walk(0, &mut exps, &lms, &mut out);
    Ok(out)
}

pub fn standard_monomial_count(g: &GroebnerBasis) -> Result<usize> {
    Ok(standard_monomials(g)?.len())
}
