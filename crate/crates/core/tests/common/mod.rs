#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use paramkit::{Coeff, FieldSpec, Monomial, PolyRing, Polynomial, RingPresentation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(vars: &[&str], p: u64, quotient: &[&str]) -> Arc<RingPresentation> {
    RingPresentation::parse(vars, p, quotient).unwrap()
}

pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in exponents_of_degree(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

pub fn monomial(ring: &Arc<PolyRing>, exps: &[u32]) -> Polynomial {
    Polynomial::monomial(ring, Monomial::from_exponents(exps), ring.field().one())
}

pub fn coeff(rng: &mut ChaCha8Rng, field: FieldSpec) -> Coeff {
    match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

/// Random homogeneous polynomial of degree `d` using at most `terms` monomials; may be zero.
pub fn homogeneous(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, d: u32, terms: usize) -> Polynomial {
    let mut mons = exponents_of_degree(ring.nvars(), d);
    mons.shuffle(rng);
    let mut out = Polynomial::zero(ring);
    for e in mons.into_iter().take(terms) {
        let c = coeff(rng, ring.field());
        out = &out + &Polynomial::monomial(ring, Monomial::from_exponents(&e), c);
    }
    out
}

/// Random polynomial with terms of degree `lo..=hi`.
pub fn polynomial(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, lo: u32, hi: u32, terms: usize) -> Polynomial {
    let mut out = Polynomial::zero(ring);
    for d in lo..=hi {
        out = &out + &homogeneous(rng, ring, d, terms);
    }
    out
}

/// Membership of `f` in `(gens)` inside `k[vars]`, decided by linear algebra on the span of
/// `m * g` with `deg(m g) <= bound`. Exact for homogeneous `f` and `gens` with `bound >= deg f`;
/// otherwise a `true` answer is always correct and `false` may be a truncation artifact.
pub fn truncated_member(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let ring = f.ring().clone();
    let mut echelon: BTreeMap<Monomial, BTreeMap<Monomial, Coeff>> = BTreeMap::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > bound as u64 {
            continue;
        }
        for d in 0..=(bound - dg as u32) {
            for e in exponents_of_degree(ring.nvars(), d) {
                let row = to_vector(&(&monomial(&ring, &e) * g));
                insert(&mut echelon, row);
            }
        }
    }
    reduce(&echelon, to_vector(f)).is_empty()
}

fn to_vector(p: &Polynomial) -> BTreeMap<Monomial, Coeff> {
    p.terms().iter().cloned().collect()
}

fn reduce(echelon: &BTreeMap<Monomial, BTreeMap<Monomial, Coeff>>, mut v: BTreeMap<Monomial, Coeff>) -> BTreeMap<Monomial, Coeff> {
    loop {
        let pivot = v.keys().rev().find(|m| echelon.contains_key(*m)).cloned();
        let Some(m) = pivot else { return v };
        let row = &echelon[&m];
        let factor = v[&m].div(&row[&m]);
        for (k, c) in row {
            let entry = v.remove(k).unwrap_or_else(|| c.field().zero());
            let next = entry.sub(&factor.mul(c));
            if !next.is_zero() {
                v.insert(k.clone(), next);
            }
        }
    }
}

fn insert(echelon: &mut BTreeMap<Monomial, BTreeMap<Monomial, Coeff>>, row: BTreeMap<Monomial, Coeff>) {
    let r = reduce(echelon, row);
    if let Some(m) = r.keys().next_back().cloned() {
        echelon.insert(m, r);
    }
}

/// One-dimensional monomial and binomial quotients in two or three variables.
pub fn one_dimensional_corpus() -> Vec<(&'static str, Arc<RingPresentation>)> {
    vec![
        ("nodal", ring(&["a", "b"], 0, &["a*b"])),
        ("double-line", ring(&["a", "b"], 0, &["a^2"])),
        ("embedded-point", ring(&["x", "z"], 0, &["x^2*z", "z^2"])),
        ("fat-node", ring(&["a", "b"], 0, &["a^2*b", "a*b^2"])),
        ("cusp", ring(&["a", "b"], 0, &["a^3 - b^2"])),
        ("tacnode", ring(&["a", "b"], 0, &["a^2 - b^4"])),
        ("three-axes", ring(&["a", "b", "c"], 0, &["a*b", "b*c", "a*c"])),
        ("two-axes-embedded", ring(&["a", "b", "c"], 0, &["a*b", "b*c", "c^2"])),
        ("monomial-curve", ring(&["a", "b", "c"], 0, &["b^2 - a*c", "a^3 - b*c", "c^2 - a^2*b"])),
        ("nodal-f3", ring(&["a", "b"], 3, &["a*b"])),
        ("axes-plane-f2", ring(&["a", "b", "c"], 2, &["a*c", "b*c", "c^2 - a*b"])),
        ("heitmann", ring(&["x", "u"], 2, &["((x+u)*u)^3", "x*(x+u)^2*u^2"])),
    ]
}

/// Rings of dimension one and two in equal characteristic used for sampled systems of parameters.
pub fn sop_corpus() -> Vec<(&'static str, Arc<RingPresentation>)> {
    let mut out = vec![
        ("plane", ring(&["x", "z"], 0, &[])),
        ("plane-f5", ring(&["x", "z"], 5, &[])),
        ("highpower", ring(&["a", "b", "c", "d"], 0, &["a*c", "a*d", "b*c", "b*d"])),
        ("highpower-f2", ring(&["a", "b", "c", "d"], 2, &["a*c", "a*d", "b*c", "b*d"])),
        ("cone-f7", ring(&["a", "b", "c"], 7, &["a*c - b^2"])),
        ("plane-with-line", ring(&["a", "b", "c"], 0, &["a*c", "b*c"])),
    ];
    out.extend(one_dimensional_corpus().into_iter().take(9));
    out
}
