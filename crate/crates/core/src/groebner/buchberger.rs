//! Buchberger's algorithm with the Gebauer-Moeller pair criteria and sugar selection.
//!
//! Every element can optionally carry a cofactor row expressing it in the input
//! generators; this is what membership witnesses and lift matrices are built from.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::poly::terms::{self, Terms};
use crate::poly::{Monomial, MonomialOrder};

/// Over QQ, the factor clearing denominators and content of `coeffs` (sign kept);
/// `None` when it is 1 or the field is finite.
fn content_factor<'a>(coeffs: impl Iterator<Item = &'a Coeff>) -> Option<Coeff> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        let Coeff::Rational(r) = c else { return None };
        num = num.gcd(r.numer());
        den = den.lcm(r.denom());
    }
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return None;
    }
    Some(Coeff::Rational(BigRational::new(den, num)))
}

/// Multipliers `(a, b)` with `a * c - b * l = 0`; integral and coprime over QQ when
/// `c` and `l` are integers, `(1, c / l)` otherwise.
fn cancel_factors(c: &Coeff, l: &Coeff) -> (Coeff, Coeff) {
    if let (Coeff::Rational(c), Coeff::Rational(l)) = (c, l) {
        if c.is_integer() && l.is_integer() {
            let h = c.numer().gcd(l.numer());
            let (mut a, mut b) = (l.numer() / &h, c.numer() / &h);
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            return (
                Coeff::Rational(BigRational::from_integer(a)),
                Coeff::Rational(BigRational::from_integer(b)),
            );
        }
    }
    (c.field().one(), c.div(l))
}

fn scale_all(p: &mut Terms, rem: &mut Terms, cof: &mut Option<Vec<Terms>>, f: &Coeff) {
    *p = terms::scale(p, f);
    *rem = terms::scale(rem, f);
    if let Some(rows) = cof {
        for row in rows.iter_mut() {
            *row = terms::scale(row, f);
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct EngineConfig {
    pub field: FieldSpec,
    pub nvars: usize,
    pub order: MonomialOrder,
    pub budget: u64,
}

#[derive(Clone, Debug)]
struct Element {
    terms: Terms,
    lm: Monomial,
    mask: u64,
    sugar: u64,
    cof: Option<Vec<Terms>>,
}

impl Element {
    fn new(terms: Terms, sugar: u64, cof: Option<Vec<Terms>>) -> Self {
        let lm = terms[0].0.clone();
        let mask = lm.divmask();
        Element {
            terms,
            lm,
            mask,
            sugar,
            cof,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// A reduced Groebner basis, elements monic and sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub cfg: EngineConfig,
    pub elems: Vec<Terms>,
    /// Per element, coefficients expressing it in the input generators.
    pub cofactors: Option<Vec<Vec<Terms>>>,
    pub ngens: usize,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
}

struct Engine {
    cfg: EngineConfig,
    polys: Vec<Element>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    steps: u64,
    ngens: usize,
    track: bool,
}

impl Engine {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.cfg.budget {
            Err(Error::BudgetExceeded(self.cfg.budget))
        } else {
            Ok(())
        }
    }

    fn find_reducer(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = m.divmask();
        self.active.iter().copied().find(|&k| {
            Some(k) != skip && self.polys[k].mask & !mask == 0 && self.polys[k].lm.divides(m)
        })
    }

    /// Reduce `p` (sorted, nonzero or zero) by the active set. `full` also reduces tail terms.
    /// Over QQ the reduction is fraction-free, so the result is `p`'s normal form up to a
    /// nonzero constant, and the cofactors are scaled to match.
    fn reduce(
        &mut self,
        mut p: Terms,
        mut sugar: u64,
        mut cof: Option<Vec<Terms>>,
        full: bool,
        skip: Option<usize>,
    ) -> Result<(Terms, u64, Option<Vec<Terms>>)> {
        let order = self.cfg.order;
        let mut rem: Terms = Vec::new();
        let mut start = 0;
        let mut steps = 0u32;
        while start < p.len() {
            let m = &p[start].0;
            match self.find_reducer(m, skip) {
                Some(k) => {
                    self.tick()?;
                    let g = &self.polys[k];
                    let q = g.lm.quotient_of(m);
                    let (mul, factor) = cancel_factors(&p[start].1, &g.terms[0].1);
                    sugar = sugar.max(g.sugar + q.degree());
                    let mut rest: Terms = p.split_off(start);
                    if !mul.is_one() {
                        scale_all(&mut rest, &mut rem, &mut cof, &mul);
                    }
                    let factor = factor.neg();
                    if let (Some(cp), Some(cg)) = (cof.as_mut(), g.cof.as_ref()) {
                        for (a, b) in cp.iter_mut().zip(cg) {
                            *a = terms::add_scaled(a, b, &factor, Some(&q), order);
                        }
                    }
                    p = terms::add_scaled(&rest, &g.terms, &factor, Some(&q), order);
                    start = 0;
                    steps += 1;
                    if steps % 16 == 0 {
                        if let Some(f) = content_factor(p.iter().chain(&rem).map(|(_, c)| c)) {
                            scale_all(&mut p, &mut rem, &mut cof, &f);
                        }
                    }
                }
                None => {
                    if !full {
                        rem.extend(p.drain(start..));
                        break;
                    }
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        if let Some(f) = content_factor(rem.iter().map(|(_, c)| c)) {
            scale_all(&mut p, &mut rem, &mut cof, &f);
        }
        Ok((rem, sugar, cof))
    }

    fn make_monic(terms: &mut Terms, cof: &mut Option<Vec<Terms>>) {
        let lc = terms[0].1.clone();
        if lc.is_one() {
            return;
        }
        let inv = lc.inv();
        *terms = terms::scale(terms, &inv);
        if let Some(c) = cof {
            for row in c.iter_mut() {
                *row = terms::scale(row, &inv);
            }
        }
    }

    /// Monic over `F_p`; primitive integral with positive leading coefficient over QQ.
    fn normalize(terms: &mut Terms, cof: &mut Option<Vec<Terms>>) {
        match terms[0].1 {
            Coeff::Modular { .. } => Self::make_monic(terms, cof),
            Coeff::Rational(_) => {
                let mut f = content_factor(terms.iter().map(|(_, c)| c)).unwrap_or_else(|| terms[0].1.field().one());
                if terms[0].1.mul(&f).is_negative() {
                    f = f.neg();
                }
                if !f.is_one() {
                    let mut empty = Vec::new();
                    scale_all(terms, &mut empty, cof, &f);
                }
            }
        }
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u64 {
        let a = &self.polys[i];
        let b = &self.polys[j];
        let d = lcm.degree();
        (a.sugar + d - a.lm.degree()).max(b.sugar + d - b.lm.degree())
    }

    /// Gebauer-Moeller update with the new element `h`.
    fn update(&mut self, h: usize) {
        let h_lm = self.polys[h].lm.clone();
        let cands: Vec<usize> = self.active.clone();
        let lcms: Vec<Monomial> = cands.iter().map(|&g| h_lm.lcm(&self.polys[g].lm)).collect();
        let mut kept: Vec<usize> = Vec::new();
        for k in 0..cands.len() {
            let g = cands[k];
            if h_lm.is_coprime(&self.polys[g].lm) {
                kept.push(k);
                continue;
            }
            let dominated = (k + 1..cands.len()).any(|l| lcms[l].divides(&lcms[k]))
                || kept.iter().any(|&l| lcms[l].divides(&lcms[k]));
            if !dominated {
                kept.push(k);
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|&k| !h_lm.is_coprime(&self.polys[cands[k]].lm))
            .map(|k| {
                let g = cands[k];
                Pair {
                    i: g,
                    j: h,
                    sugar: self.pair_sugar(g, h, &lcms[k]),
                    lcm: lcms[k].clone(),
                }
            })
            .collect();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(h_lm.divides(&p.lcm)
                && polys[p.i].lm.lcm(&h_lm) != p.lcm
                && h_lm.lcm(&polys[p.j].lm) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !h_lm.divides(&polys[g].lm));
        self.active.push(h);
    }

    fn insert(&mut self, mut terms: Terms, sugar: u64, mut cof: Option<Vec<Terms>>) {
        Self::normalize(&mut terms, &mut cof);
        self.polys.push(Element::new(terms, sugar, cof));
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.cfg.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> (Terms, Option<Vec<Terms>>) {
        let order = self.cfg.order;
        let a = &self.polys[p.i];
        let b = &self.polys[p.j];
        let qa = a.lm.quotient_of(&p.lcm);
        let qb = b.lm.quotient_of(&p.lcm);
        let (ma, mb) = cancel_factors(&b.terms[0].1, &a.terms[0].1);
        let minus = mb.neg();
        let left = terms::mul_term(&a.terms, &qa, &ma);
        let s = terms::add_scaled(&left, &b.terms, &minus, Some(&qb), order);
        let cof = match (&a.cof, &b.cof) {
            (Some(ca), Some(cb)) => Some(
                ca.iter()
                    .zip(cb)
                    .map(|(x, y)| {
                        let l = terms::mul_term(x, &qa, &ma);
                        terms::add_scaled(&l, y, &minus, Some(&qb), order)
                    })
                    .collect(),
            ),
            _ => None,
        };
        (s, cof)
    }

    fn run(&mut self, gens: Vec<Terms>) -> Result<()> {
        let order = self.cfg.order;
        let mut inputs: Vec<(usize, Terms)> = gens.into_iter().enumerate().filter(|(_, g)| !g.is_empty()).collect();
        inputs.sort_by(|a, b| order.cmp(&a.1[0].0, &b.1[0].0));
        for (idx, g) in inputs {
            let sugar = g.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
            let cof = self.track.then(|| {
                let mut row = vec![Vec::new(); self.ngens];
                row[idx] = vec![(Monomial::one(self.cfg.nvars), self.cfg.field.one())];
                row
            });
            let (r, sugar, cof) = self.reduce(g, sugar, cof, true, None)?;
            if !r.is_empty() {
                self.insert(r, sugar, cof);
            }
        }
        while let Some(pair) = self.select_pair() {
            self.tick()?;
            let (s, cof) = self.spoly(&pair);
            if s.is_empty() {
                continue;
            }
            let (r, sugar, cof) = self.reduce(s, pair.sugar, cof, true, None)?;
            if !r.is_empty() {
                self.insert(r, sugar, cof);
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Basis> {
        let order = self.cfg.order;
        // minimalize
        let mut act = self.active.clone();
        act.sort_by(|&a, &b| order.cmp(&self.polys[a].lm, &self.polys[b].lm));
        let mut minimal: Vec<usize> = Vec::new();
        for &k in &act {
            if !minimal.iter().any(|&j| self.polys[j].lm.divides(&self.polys[k].lm)) {
                minimal.push(k);
            }
        }
        self.active = minimal.clone();
        let mut elems = Vec::with_capacity(minimal.len());
        let mut cofs = Vec::new();
        for &k in &minimal {
            let e = self.polys[k].clone();
            let (mut r, _, mut cof) = self.reduce(e.terms, e.sugar, e.cof, true, Some(k))?;
            Self::make_monic(&mut r, &mut cof);
            elems.push(r);
            if let Some(c) = cof {
                cofs.push(c);
            }
        }
        let lms: Vec<Monomial> = elems.iter().map(|t| t[0].0.clone()).collect();
        let masks = lms.iter().map(|m| m.divmask()).collect();
        Ok(Basis {
            cfg: self.cfg,
            elems,
            cofactors: self.track.then_some(cofs),
            ngens: self.ngens,
            lms,
            masks,
        })
    }
}

/// Reduced Groebner basis of `gens` (each sorted under `cfg.order`).
pub(crate) fn groebner(gens: Vec<Terms>, cfg: EngineConfig, track: bool) -> Result<Basis> {
    let ngens = gens.len();
    let mut engine = Engine {
        cfg,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        steps: 0,
        ngens,
        track,
    };
    engine.run(gens)?;
    engine.finish()
}

impl Basis {
    pub fn is_unit(&self) -> bool {
        self.lms.iter().any(|m| m.is_one())
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    fn reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.divmask();
        (0..self.lms.len()).find(|&k| self.masks[k] & !mask == 0 && self.lms[k].divides(m))
    }

    /// Fully reduced normal form of `p` (sorted under this basis' order).
    pub fn reduce(&self, p: Terms) -> Terms {
        self.reduce_impl(p, None).0
    }

    /// Normal form together with coefficients `w` such that `p - rem = sum w_i * gen_i`.
    /// Requires a tracked basis.
    pub fn reduce_tracked(&self, p: Terms) -> (Terms, Vec<Terms>) {
        let cof = self.cofactors.as_ref().expect("tracked basis");
        let mut acc = vec![Vec::new(); self.ngens];
        let (rem, _) = self.reduce_impl(p, Some((&mut acc, cof)));
        (rem, acc)
    }

    fn reduce_impl(&self, mut p: Terms, mut track: Option<(&mut Vec<Terms>, &Vec<Vec<Terms>>)>) -> (Terms, ()) {
        let order = self.cfg.order;
        let mut rem = Vec::new();
        let mut start = 0;
        while start < p.len() {
            let m = &p[start].0;
            match self.reducer(m) {
                Some(k) => {
                    let q = self.lms[k].quotient_of(m);
                    let c: Coeff = p[start].1.clone();
                    if let Some((acc, cof)) = track.as_mut() {
                        for (a, row) in acc.iter_mut().zip(&cof[k]) {
                            *a = terms::add_scaled(a, row, &c, Some(&q), order);
                        }
                    }
                    p = terms::add_scaled(&p[start..], &self.elems[k], &c.neg(), Some(&q), order);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        (rem, ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, PolyRing};
    use std::sync::Arc;

    fn setup(vars: &[&str], p: u64) -> Arc<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldSpec::from_characteristic(p).unwrap(),
        )
    }

    fn gb(r: &Arc<PolyRing>, gens: &[&str], order: MonomialOrder, track: bool) -> Basis {
        let g: Vec<Terms> = gens
            .iter()
            .map(|s| terms::reorder(parse_polynomial(s, r).unwrap().terms().to_vec(), order))
            .collect();
        let cfg = EngineConfig {
            field: r.field(),
            nvars: r.nvars(),
            order,
            budget: 1_000_000,
        };
        groebner(g, cfg, track).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = setup(&["a", "b", "c", "d"], 0);
        let b = gb(&r, &["a*c", "a*d", "b*c", "b*d"], MonomialOrder::Grevlex, false);
        assert_eq!(b.elems.len(), 4);
        assert!(b.elems.iter().all(|t| t.len() == 1));
    }

    #[test]
    fn lex_basis_of_line_and_circle() {
        let r = setup(&["x", "y"], 0);
        let b = gb(&r, &["x^2 + y^2 - 1", "x - y"], MonomialOrder::Lex, false);
        // reduced lex basis: { y^2 - 1/2, x - y }
        assert_eq!(b.elems.len(), 2);
        let rendered: Vec<String> = b
            .elems
            .iter()
            .map(|t| crate::poly::Polynomial::from_terms(&r, t.clone()).to_string())
            .collect();
        assert_eq!(rendered, vec!["y^2 - 1/2", "x - y"]);
    }

    #[test]
    fn tracked_cofactors_reconstruct_elements() {
        let r = setup(&["x", "y", "z"], 0);
        let gens = ["x*y - z", "y^2 - x", "x*z + y"];
        let b = gb(&r, &gens, MonomialOrder::Grevlex, true);
        let polys: Vec<_> = gens.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        for (e, cof) in b.elems.iter().zip(b.cofactors.as_ref().unwrap()) {
            let mut acc = crate::poly::Polynomial::zero(&r);
            for (c, g) in cof.iter().zip(&polys) {
                acc = &acc + &(&crate::poly::Polynomial::from_terms(&r, c.clone()) * g);
            }
            assert_eq!(acc, crate::poly::Polynomial::from_terms(&r, e.clone()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let r = setup(&["x", "y", "z"], 0);
        let g: Vec<Terms> = ["x^2 - y*z + 1", "y^2 - x*z", "z^2 - x*y"]
            .iter()
            .map(|s| parse_polynomial(s, &r).unwrap().terms().to_vec())
            .collect();
        let cfg = EngineConfig {
            field: r.field(),
            nvars: 3,
            order: MonomialOrder::Grevlex,
            budget: 2,
        };
        assert_eq!(groebner(g, cfg, false).unwrap_err(), Error::BudgetExceeded(2));
    }
}
