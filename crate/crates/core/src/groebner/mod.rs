//! Quotient-ring presentations, ideals, Groebner bases, normal forms and membership.

pub(crate) mod buchberger;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use buchberger::{Basis, EngineConfig};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::terms::{self, Terms};
use crate::poly::{parse_polynomial, same_ring, MonomialOrder, PolyRing, Polynomial, CANONICAL};

/// Default Groebner work budget, counted in reduction steps.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

const CACHE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CacheKey {
    order: MonomialOrder,
    tracked: bool,
    gens: Vec<Terms>,
}

#[derive(Default)]
struct GbCache {
    map: RwLock<HashMap<CacheKey, Arc<Basis>>>,
}

impl GbCache {
    fn get(&self, key: &CacheKey) -> Option<Arc<Basis>> {
        self.map.read().ok()?.get(key).cloned()
    }

    fn put(&self, key: CacheKey, basis: Arc<Basis>) {
        if let Ok(mut map) = self.map.write() {
            if map.len() >= CACHE_LIMIT {
                map.clear();
            }
            map.insert(key, basis);
        }
    }
}

/// `S = k[vars] / J`. Shared behind an `Arc`; ideals hold a reference to it.
pub struct RingPresentation {
    ambient: Arc<PolyRing>,
    quotient: Vec<Polynomial>,
    budget: u64,
    cache: GbCache,
    pub(crate) dim: OnceLock<Result<crate::idealops::DimensionReport>>,
    tagged: OnceLock<Arc<RingPresentation>>,
}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingPresentation")
            .field("vars", &self.ambient.vars())
            .field("field", &self.ambient.field())
            .field("quotient", &self.quotient.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl RingPresentation {
    pub fn new(vars: Vec<String>, field: FieldSpec, quotient: Vec<Polynomial>) -> Result<Arc<Self>> {
        let ambient = PolyRing::new(vars, field);
        let quotient = quotient
            .into_iter()
            .map(|q| {
                if q.ring().as_ref() != ambient.as_ref() {
                    return Err(Error::RingMismatch);
                }
                Ok(Polynomial::from_terms(&ambient, q.terms().to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::build(ambient, quotient, DEFAULT_BUDGET))
    }

    fn build(ambient: Arc<PolyRing>, quotient: Vec<Polynomial>, budget: u64) -> Arc<Self> {
        let quotient = quotient.into_iter().filter(|q| !q.is_zero()).collect();
        Arc::new(RingPresentation {
            ambient,
            quotient,
            budget,
            cache: GbCache::default(),
            dim: OnceLock::new(),
            tagged: OnceLock::new(),
        })
    }

    /// Build from source text: variable names, characteristic (0 or a prime) and quotient generators.
    pub fn parse(vars: &[&str], characteristic: u64, quotient: &[&str]) -> Result<Arc<Self>> {
        let field = FieldSpec::from_characteristic(characteristic)?;
        let ambient = PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), field);
        let q = quotient
            .iter()
            .map(|s| parse_polynomial(s, &ambient))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::build(ambient, q, DEFAULT_BUDGET))
    }

    /// Same presentation with another Groebner work budget (fresh cache).
    pub fn with_budget(&self, budget: u64) -> Arc<Self> {
        Self::build(self.ambient.clone(), self.quotient.clone(), budget)
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn vars(&self) -> &[String] {
        self.ambient.vars()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn field(&self) -> FieldSpec {
        self.ambient.field()
    }

    pub fn quotient_gens(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.ambient)
    }

    pub fn var(&self, index: usize) -> Polynomial {
        Polynomial::variable(&self.ambient, index)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.quotient.iter().all(Polynomial::is_homogeneous)
    }

    pub(crate) fn check(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ambient) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The maximal ideal generated by all variables.
    pub fn maximal_ideal(self: &Arc<Self>) -> Ideal {
        let gens = (0..self.nvars()).map(|i| self.var(i)).collect();
        Ideal::from_parts(self, gens)
    }

    pub fn zero_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::from_parts(self, Vec::new())
    }

    pub fn unit_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::from_parts(self, vec![Polynomial::one(&self.ambient)])
    }

    /// Normal form modulo `J` under grevlex.
    pub fn reduce(self: &Arc<Self>, f: &Polynomial) -> Result<Polynomial> {
        self.zero_ideal().normal_form(f, CANONICAL)
    }

    /// Whether `f` is zero in `S`.
    pub fn is_zero_in(self: &Arc<Self>, f: &Polynomial) -> Result<bool> {
        self.zero_ideal().contains(f)
    }

    /// The free polynomial ring with one extra tag variable placed first.
    pub(crate) fn tagged(&self) -> &Arc<RingPresentation> {
        self.tagged.get_or_init(|| {
            let mut vars = vec!["_t".to_string()];
            vars.extend(self.vars().iter().cloned());
            Self::build(PolyRing::new(vars, self.field()), Vec::new(), self.budget)
        })
    }

    fn basis_for(&self, gens: &[Polynomial], order: MonomialOrder, tracked: bool) -> Result<Arc<Basis>> {
        let mut key_gens: Vec<Terms> = if tracked {
            gens.iter().map(|g| g.terms().to_vec()).collect()
        } else {
            gens.iter()
                .filter(|g| !g.is_zero())
                .map(|g| g.primitive().terms().to_vec())
                .collect()
        };
        if !tracked {
            key_gens.sort();
            key_gens.dedup();
        }
        let key = CacheKey {
            order,
            tracked,
            gens: key_gens,
        };
        if let Some(b) = self.cache.get(&key) {
            return Ok(b);
        }
        let mut input: Vec<Terms> = key.gens.iter().map(|t| terms::reorder(t.clone(), order)).collect();
        input.extend(self.quotient.iter().map(|q| terms::reorder(q.terms().to_vec(), order)));
        let cfg = EngineConfig {
            field: self.field(),
            nvars: self.nvars(),
            order,
            budget: self.budget,
        };
        let basis = Arc::new(buchberger::groebner(input, cfg, tracked)?);
        self.cache.put(key, basis.clone());
        Ok(basis)
    }
}

/// Coefficients `c` with `f = sum c_i g_i`, where `g` runs over the ideal generators followed
/// by the quotient generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub coefficients: Vec<Polynomial>,
}

impl MembershipWitness {
    /// Expand the witness against `ideal`'s generators and the quotient generators.
    pub fn expand(&self, ideal: &Ideal) -> Polynomial {
        let ring = ideal.ring.ambient();
        let gens = ideal.gens.iter().chain(ideal.ring.quotient_gens());
        let mut acc = Polynomial::zero(ring);
        for (c, g) in self.coefficients.iter().zip(gens) {
            acc = &acc + &(c * g);
        }
        acc
    }

    /// The coefficients of the ideal's own generators (quotient part dropped).
    pub fn ideal_part(&self, ideal: &Ideal) -> Vec<Polynomial> {
        self.coefficients[..ideal.gens.len()].to_vec()
    }
}

/// An ideal of `S`, given by generators in the ambient ring (the quotient is implicit).
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<RingPresentation>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<RingPresentation>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Ideal::from_parts(ring, gens))
    }

    pub(crate) fn from_parts(ring: &Arc<RingPresentation>, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens,
        }
    }

    /// Parse generators from text in `ring`.
    pub fn parse(ring: &Arc<RingPresentation>, gens: &[&str]) -> Result<Ideal> {
        let g = gens.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::from_parts(ring, g))
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub(crate) fn check_same(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring)
            || (same_ring(&self.ring.ambient, &other.ring.ambient) && self.ring.quotient == other.ring.quotient)
        {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub(crate) fn basis(&self, order: MonomialOrder) -> Result<Arc<Basis>> {
        self.ring.basis_for(&self.gens, order, false)
    }

    /// Reduced Groebner basis of `gens + J`, sorted by ascending leading monomial.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Vec<Polynomial>> {
        let b = self.basis(order)?;
        let ring = self.ring.ambient();
        Ok(b.elems.iter().map(|t| Polynomial::from_terms(ring, t.clone())).collect())
    }

    pub fn normal_form(&self, f: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        self.ring.check(f)?;
        let b = self.basis(order)?;
        let r = b.reduce(terms::reorder(f.terms().to_vec(), order));
        Ok(Polynomial::from_terms(self.ring.ambient(), r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.contains_in(f, CANONICAL)
    }

    pub fn contains_in(&self, f: &Polynomial, order: MonomialOrder) -> Result<bool> {
        Ok(self.normal_form(f, order)?.is_zero())
    }

    /// Membership with an explicit witness when `f` lies in the ideal.
    pub fn member_with_witness(&self, f: &Polynomial) -> Result<Option<MembershipWitness>> {
        self.member_with_witness_in(f, CANONICAL)
    }

    pub fn member_with_witness_in(&self, f: &Polynomial, order: MonomialOrder) -> Result<Option<MembershipWitness>> {
        self.ring.check(f)?;
        if !self.contains_in(f, order)? {
            return Ok(None);
        }
        let b = self.ring.basis_for(&self.gens, order, true)?;
        let (rem, w) = b.reduce_tracked(terms::reorder(f.terms().to_vec(), order));
        if !rem.is_empty() {
            return Err(Error::Invariant("tracked reduction disagrees with membership".into()));
        }
        let ring = self.ring.ambient();
        Ok(Some(MembershipWitness {
            coefficients: w.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect(),
        }))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis(CANONICAL)?.is_unit())
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals of `S` (reduced Groebner bases of `gens + J` coincide).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.basis(CANONICAL)?.elems == other.basis(CANONICAL)?.elems)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::from_parts(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(Ideal::from_parts(&self.ring, gens))
    }

    pub fn scale_by(&self, f: &Polynomial) -> Result<Ideal> {
        self.ring.check(f)?;
        Ok(Ideal::from_parts(&self.ring, self.gens.iter().map(|g| g * f).collect()))
    }

    pub fn with_gen(&self, f: Polynomial) -> Result<Ideal> {
        self.ring.check(&f)?;
        let mut gens = self.gens.clone();
        gens.push(f);
        Ok(Ideal::from_parts(&self.ring, gens))
    }

    /// Generators for display: the reduced grevlex basis without elements of `J`.
    pub fn display_gens(&self) -> Result<Vec<Polynomial>> {
        let gb = self.groebner(CANONICAL)?;
        let zero = self.ring.zero_ideal();
        let mut out = Vec::new();
        for g in gb {
            if !zero.contains(&g)? {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// `(g1, g2, ...)` from [`Self::display_gens`]; `(0)` for the zero ideal.
    pub fn render(&self) -> Result<String> {
        let gens = self.display_gens()?;
        if gens.is_empty() {
            return Ok("(0)".into());
        }
        Ok(format!(
            "({})",
            gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
        ))
    }
}

/// Reduced Groebner basis of `gens + J` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<Vec<Polynomial>> {
    ideal.groebner(order)
}

pub fn normal_form(f: &Polynomial, ideal: &Ideal, order: MonomialOrder) -> Result<Polynomial> {
    ideal.normal_form(f, order)
}

/// Membership in `S`, with a witness when the answer is yes.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<(bool, Option<MembershipWitness>)> {
    let w = ideal.member_with_witness(f)?;
    Ok((w.is_some(), w))
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}
