//! Colon, intersection, saturation, bracket powers, dimension, length and socle.
//!
//! Eliminations run in a free polynomial ring with one tag variable `_t` placed first, under
//! the block order that eliminates it. The quotient `J` is passed as explicit generators.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{Ideal, RingPresentation};
use crate::poly::{Monomial, MonomialOrder, Polynomial, CANONICAL};

/// Ordered list of elements of `S`. Order matters for bracket powers and Koszul signs.
#[derive(Clone, Debug)]
pub struct ElementSequence {
    ring: Arc<RingPresentation>,
    elems: Vec<Polynomial>,
}

impl ElementSequence {
    pub fn new(ring: &Arc<RingPresentation>, elems: Vec<Polynomial>) -> Result<Self> {
        for e in &elems {
            ring.check(e)?;
        }
        Ok(ElementSequence {
            ring: ring.clone(),
            elems,
        })
    }

    pub fn parse(ring: &Arc<RingPresentation>, elems: &[&str]) -> Result<Self> {
        let e = elems.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, e)
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn elems(&self) -> &[Polynomial] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::from_parts(&self.ring, self.elems.clone())
    }

    /// The ideal of the first `k` entries.
    pub fn prefix_ideal(&self, k: usize) -> Ideal {
        Ideal::from_parts(&self.ring, self.elems[..k].to_vec())
    }

    /// `x_1 * ... * x_d`, reduced modulo `J`.
    pub fn product(&self) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.ring.ambient());
        for e in &self.elems {
            acc = self.ring.reduce(&(&acc * e))?;
        }
        Ok(acc)
    }

    /// Entrywise `t`-th powers, reduced modulo `J`.
    pub fn powers(&self, t: u32) -> Result<ElementSequence> {
        let elems = self
            .elems
            .iter()
            .map(|e| pow_reduced(&self.ring, e, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementSequence {
            ring: self.ring.clone(),
            elems,
        })
    }

    pub(crate) fn check_same(&self, other: &ElementSequence) -> Result<()> {
        self.ideal().check_same(&other.ideal())
    }

    pub fn render(&self) -> String {
        format!(
            "({})",
            self.elems.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
        )
    }
}

/// `f^e` reduced modulo `J` after every multiplication.
pub fn pow_reduced(ring: &Arc<RingPresentation>, f: &Polynomial, e: u32) -> Result<Polynomial> {
    if ring.quotient_gens().is_empty() {
        return f.pow(e);
    }
    let mut acc = Polynomial::one(ring.ambient());
    let mut base = ring.reduce(f)?;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.reduce(&(&acc * &base))?;
        }
        e >>= 1;
        if e > 0 {
            base = ring.reduce(&(&base * &base))?;
        }
    }
    Ok(acc)
}

/// `(x)^[t]`: the ideal of entrywise `t`-th powers.
#[derive(Clone, Debug)]
pub struct BracketPower {
    pub base: ElementSequence,
    pub exponent: u32,
    pub ideal: Ideal,
}

pub fn bracket_power(seq: &ElementSequence, t: u32) -> Result<BracketPower> {
    if t == 0 {
        return Err(Error::Shape("bracket power exponent must be positive".into()));
    }
    let gens = seq
        .elems
        .iter()
        .map(|e| e.pow(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(BracketPower {
        base: seq.clone(),
        exponent: t,
        ideal: Ideal::from_parts(&seq.ring, gens),
    })
}

/// Run an elimination in the tagged ring and return the tag-free basis elements.
fn eliminate(ring: &Arc<RingPresentation>, gens: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let tagged = ring.tagged();
    let ideal = Ideal::from_parts(tagged, gens);
    let gb = ideal.groebner(MonomialOrder::Elimination { block: 1 })?;
    Ok(gb
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| g.drop_leading(ring.ambient(), 1))
        .collect())
}

fn tag(ring: &Arc<RingPresentation>) -> (Polynomial, Polynomial) {
    let tagged = ring.tagged();
    let t = Polynomial::variable(tagged.ambient(), 0);
    let one_minus_t = &Polynomial::one(tagged.ambient()) - &t;
    (t, one_minus_t)
}

fn lift(ring: &Arc<RingPresentation>, f: &Polynomial) -> Polynomial {
    f.embed_with_leading(ring.tagged().ambient(), 1)
}

/// `I : f`. Fails with `ZeroDivisorQuery` when `f` is zero in `S`.
pub fn colon(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = i.ring();
    ring.check(f)?;
    let f = ring.reduce(f)?;
    if f.is_zero() {
        return Err(Error::ZeroDivisorQuery);
    }
    if i.contains(&f)? {
        return Ok(ring.unit_ideal());
    }
    if f.is_constant() {
        return Ok(i.clone());
    }
    // (I + J) cap (f) in k[vars], then divide by f
    let (t, one_minus_t) = tag(ring);
    let mut gens: Vec<Polynomial> = i
        .gens()
        .iter()
        .chain(ring.quotient_gens())
        .map(|g| &t * &lift(ring, g))
        .collect();
    gens.push(&one_minus_t * &lift(ring, &f));
    let inter = eliminate(ring, gens)?;
    let quotients = inter
        .iter()
        .map(|g| {
            g.exact_div(&f)
                .ok_or_else(|| Error::Invariant("intersection element not divisible by f".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::from_parts(ring, quotients))
}

/// `I : K`, the intersection of the element colons `I : k` over generators `k` of `K`.
pub fn colon_ideal(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.check_same(k)?;
    let ring = i.ring();
    let mut acc: Option<Ideal> = None;
    for g in k.gens() {
        if ring.is_zero_in(g)? {
            continue;
        }
        let c = colon(i, g)?;
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c)?,
        });
    }
    Ok(acc.unwrap_or_else(|| ring.unit_ideal()))
}

/// `I cap K` via `t I + (1 - t) K + J`.
pub fn intersect(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.check_same(k)?;
    let ring = i.ring();
    if i.contains_ideal(k)? {
        return Ok(k.clone());
    }
    if k.contains_ideal(i)? {
        return Ok(i.clone());
    }
    let (t, one_minus_t) = tag(ring);
    let mut gens: Vec<Polynomial> = i.gens().iter().map(|g| &t * &lift(ring, g)).collect();
    gens.extend(k.gens().iter().map(|g| &one_minus_t * &lift(ring, g)));
    gens.extend(ring.quotient_gens().iter().map(|g| lift(ring, g)));
    Ok(Ideal::from_parts(ring, eliminate(ring, gens)?))
}

/// `I : f^infinity` via `I + J + (1 - t f)`.
pub fn saturate(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = i.ring();
    ring.check(f)?;
    if ring.is_zero_in(f)? {
        return Err(Error::ZeroDivisorQuery);
    }
    let (t, _) = tag(ring);
    let mut gens: Vec<Polynomial> = i
        .gens()
        .iter()
        .chain(ring.quotient_gens())
        .map(|g| lift(ring, g))
        .collect();
    gens.push(&Polynomial::one(t.ring()) - &(&t * &lift(ring, f)));
    Ok(Ideal::from_parts(ring, eliminate(ring, gens)?))
}

/// Whether `f` lies in the radical of `I`.
pub fn radical_member(f: &Polynomial, i: &Ideal) -> Result<bool> {
    let ring = i.ring();
    ring.check(f)?;
    if f.is_zero() {
        return Ok(true);
    }
    let (t, _) = tag(ring);
    let mut gens: Vec<Polynomial> = i
        .gens()
        .iter()
        .chain(ring.quotient_gens())
        .map(|g| lift(ring, g))
        .collect();
    gens.push(&Polynomial::one(t.ring()) - &(&t * &lift(ring, f)));
    Ideal::from_parts(ring.tagged(), gens).is_unit()
}

/// `I : m`, reported as an ideal.
pub fn socle(i: &Ideal) -> Result<Ideal> {
    colon_ideal(i, &i.ring().maximal_ideal())
}

/// `m^n`, generated by all monomials of degree `n`.
pub fn maximal_power(ring: &Arc<RingPresentation>, n: u32) -> Ideal {
    let nv = ring.nvars();
    let mut gens = Vec::new();
    let mut exps = vec![0u32; nv];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut monos = Vec::new();
    if nv > 0 {
        rec(0, n, &mut exps, &mut monos);
    }
    let one = ring.field().one();
    for m in monos {
        gens.push(Polynomial::monomial(ring.ambient(), m, one.clone()));
    }
    Ideal::from_parts(ring, gens)
}

/// Krull dimension of `S/I` with a maximal independent set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub dim: usize,
    /// Indices of the independent variables, ascending.
    pub witness: Vec<usize>,
}

fn independent(lead: &[Monomial], set: &[usize]) -> bool {
    lead.iter().all(|m| m.support().any(|v| !set.contains(&v)))
}

fn subsets_of_size(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == k {
        return visit(cur);
    }
    for v in start..n {
        if n - v < k - cur.len() {
            break;
        }
        cur.push(v);
        if subsets_of_size(n, k, v + 1, cur, visit) {
            return true;
        }
        cur.pop();
    }
    false
}

pub fn dimension(i: &Ideal) -> Result<DimensionReport> {
    let basis = i.basis(CANONICAL)?;
    if basis.is_unit() {
        return Err(Error::EmptyVariety);
    }
    let lead = basis.leading_monomials();
    let n = i.ring().nvars();
    for k in (0..=n).rev() {
        let mut found = None;
        subsets_of_size(n, k, 0, &mut Vec::new(), &mut |s| {
            if independent(lead, s) {
                found = Some(s.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(witness) = found {
            return Ok(DimensionReport { dim: k, witness });
        }
    }
    unreachable!("the empty set is always independent for a proper ideal")
}

/// `dim S`, computed once per presentation.
pub fn ring_dimension(ring: &Arc<RingPresentation>) -> Result<usize> {
    ring.dim
        .get_or_init(|| dimension(&ring.zero_ideal()))
        .clone()
        .map(|r| r.dim)
}

/// Default cap on the number of enumerated standard monomials.
pub const LENGTH_CAP: u64 = 1_000_000;

/// `lambda(S/I)`: the number of standard monomials of `I + J`.
pub fn length(i: &Ideal) -> Result<u64> {
    length_capped(i, LENGTH_CAP)
}

pub fn length_capped(i: &Ideal, cap: u64) -> Result<u64> {
    let basis = i.basis(CANONICAL)?;
    if basis.is_unit() {
        return Ok(0);
    }
    if dimension(i)?.dim > 0 {
        return Err(Error::NotFiniteLength);
    }
    let lead = basis.leading_monomials();
    let n = i.ring().nvars();
    let mut count = 0u64;
    let mut stack = vec![(Monomial::one(n), 0usize)];
    while let Some((m, first)) = stack.pop() {
        count += 1;
        if count > cap {
            return Err(Error::BudgetExceeded(cap));
        }
        for v in first..n {
            let next = m.mul_unchecked(&Monomial::variable(n, v));
            if !lead.iter().any(|l| l.divides(&next)) {
                stack.push((next, v));
            }
        }
    }
    Ok(count)
}

/// `lambda(K / L)` for ideals `L` contained in `K` with `K / L` of finite length.
pub fn relative_length(k: &Ideal, l: &Ideal) -> Result<u64> {
    if !k.contains_ideal(l)? {
        return Err(Error::Shape("relative length needs L contained in K".into()));
    }
    if l.contains_ideal(k)? {
        return Ok(0);
    }
    let ring = k.ring();
    for n in 1..=64 {
        let mn = maximal_power(ring, n);
        if l.contains_ideal(&intersect(k, &mn)?)? {
            let lo = length(&l.sum(&mn)?)?;
            let hi = length(&k.sum(&mn)?)?;
            return Ok(lo - hi);
        }
    }
    Err(Error::NotFiniteLength)
}
