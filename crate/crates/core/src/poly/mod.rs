//! Exact sparse multivariate polynomials over `QQ` or `F_p`.

mod monomial;
mod parse;
pub(crate) mod terms;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use monomial::{monomial_compare, Monomial, MonomialOrder};
pub use parse::parse_polynomial;
use terms::Terms;

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};

/// An ambient polynomial ring `k[vars]`. Variables are ranked by declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: FieldSpec,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: FieldSpec) -> Arc<Self> {
        Arc::new(PolyRing { vars, field })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A polynomial with terms stored in grevlex-descending order, no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Terms,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub const CANONICAL: MonomialOrder = MonomialOrder::Grevlex;

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn variable(ring: &Arc<PolyRing>, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::variable(ring.nvars(), index), ring.field().one())],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Build from arbitrary terms (unsorted, possibly with repeats or zeros).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Terms) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: terms::normalize(terms, CANONICAL),
        }
    }

    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Terms) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Homogeneous in the standard grading (the zero polynomial counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .cloned()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let one = self.ring.field().one();
        Ok(Polynomial::from_sorted(
            &self.ring,
            terms::add_scaled(&self.terms, &other.terms, &one, None, CANONICAL),
        ))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let m1 = self.ring.field().from_i64(-1);
        Ok(Polynomial::from_sorted(
            &self.ring,
            terms::add_scaled(&self.terms, &other.terms, &m1, None, CANONICAL),
        ))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(Polynomial::from_sorted(
            &self.ring,
            terms::mul(&self.terms, &other.terms, CANONICAL),
        ))
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        if let Some(d) = self.terms.iter().flat_map(|(m, _)| m.exponents().iter()).max() {
            if (*d as u64) * (e as u64) > u32::MAX as u64 {
                return Err(Error::ExponentOverflow);
            }
        }
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        Polynomial::from_sorted(&self.ring, terms::scale(&self.terms, c))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        Polynomial::from_sorted(&self.ring, terms::mul_term(&self.terms, m, c))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.terms.first()?;
        let inv = dc.inv();
        let mut rem = self.terms.clone();
        let mut quot: Terms = Vec::new();
        while let Some((m, c)) = rem.first() {
            if !dm.divides(m) {
                return None;
            }
            let q = dm.quotient_of(m);
            let qc = c.mul(&inv);
            rem = terms::add_scaled(&rem, &d.terms, &qc.neg(), Some(&q), CANONICAL);
            quot.push((q, qc));
        }
        Some(Polynomial::from_sorted(&self.ring, quot))
    }

    /// Same polynomial viewed in a ring with `k` extra variables placed first.
    pub(crate) fn embed_with_leading(&self, ring: &Arc<PolyRing>, k: usize) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.with_leading_zeros(k), c.clone()))
                .collect(),
        )
    }

    /// Inverse of [`Self::embed_with_leading`]; the polynomial must not involve the first `k` variables.
    pub(crate) fn drop_leading(&self, ring: &Arc<PolyRing>, k: usize) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (m.drop_leading(k), c.clone())).collect(),
        )
    }

    /// Scale so the result has integer coefficients with content 1 (over `QQ`) or is monic
    /// (over `F_p`), with positive grevlex-leading coefficient. Generates the same ideal.
    pub fn primitive(&self) -> Polynomial {
        let Some((_, lc)) = self.terms.first() else {
            return self.clone();
        };
        match self.ring.field() {
            FieldSpec::Prime(_) => self.scale(&lc.inv()),
            FieldSpec::Rationals => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for (_, c) in &self.terms {
                    den = num_integer::lcm(den, c.denominator());
                }
                for (_, c) in &self.terms {
                    let n = c.numerator() * (&den / c.denominator());
                    num = num_integer::gcd(num, n);
                }
                let mut factor = self.ring.field().fraction(&den, &num).expect("nonzero content");
                if lc.is_negative() {
                    factor = factor.neg();
                }
                self.scale(&factor)
            }
        }
    }

    /// Render with the given variable names (the expression grammar of the CLI).
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Operators for [`poly_arith`]; `Pow` ignores the second operand's value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// Checked polynomial arithmetic selected by operator.
pub fn poly_arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
        ArithOp::Pow(e) => {
            if !same_ring(f.ring(), g.ring()) {
                return Err(Error::RingMismatch);
            }
            f.pow(e)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different rings; use the `try_` form to check.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$call(rhs).expect("polynomials from different rings")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field().from_i64(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", vars[i])?;
        } else {
            write!(f, "{}^{}", vars[i], e)?;
        }
    }
    Ok(())
}

fn write_term(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial, c: &Coeff) -> fmt::Result {
    if m.is_one() {
        write!(f, "{c}")
    } else if c.is_one() {
        write_monomial(f, vars, m)
    } else {
        write!(f, "{c}*")?;
        write_monomial(f, vars, m)
    }
}

impl fmt::Display for Polynomial {
    /// Positive terms come first so the output never needs a leading unary minus.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        let (pos, neg): (Vec<_>, Vec<_>) = self.terms.iter().partition(|(_, c)| !c.is_negative());
        let mut first = true;
        for (m, c) in &pos {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, vars, m, c)?;
        }
        if first {
            write!(f, "0")?;
        }
        for (m, c) in &neg {
            write!(f, " - ")?;
            write_term(f, vars, m, &c.abs())?;
        }
        Ok(())
    }
}
