//! Sparse term vectors sorted descending under a monomial order.
//!
//! These are the order-parametric kernels shared by [`super::Polynomial`] (always kept in
//! grevlex) and the Groebner engine (which works in whatever order it was asked for).

use std::cmp::Ordering;

use super::monomial::{Monomial, MonomialOrder};
use crate::field::Coeff;

pub type Term = (Monomial, Coeff);
pub type Terms = Vec<Term>;

/// Sort descending, merge equal monomials, drop zero coefficients.
pub fn normalize(mut terms: Terms, order: MonomialOrder) -> Terms {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Terms = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if matches!(out.last(), Some((_, c)) if c.is_zero()) {
        out.pop();
    }
    out
}

/// Re-sort terms that are already merged (no duplicate monomials) under another order.
pub fn reorder(mut terms: Terms, order: MonomialOrder) -> Terms {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

/// `a + scale * mono * b`, both inputs sorted under `order`.
pub fn add_scaled(a: &[Term], b: &[Term], scale: &Coeff, mono: Option<&Monomial>, order: MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| -> Term {
        let m = match mono {
            Some(m) => t.0.mul_unchecked(m),
            None => t.0.clone(),
        };
        (m, t.1.mul(scale))
    };
    let mut pending: Option<Term> = b.first().map(shifted);
    while i < a.len() || pending.is_some() {
        match (a.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = b.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let c = x.1.add(&y.1);
                    if !c.is_zero() {
                        out.push((x.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(shifted);
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = b.get(j).map(shifted);
            }
            (None, None) => break,
        }
    }
    out
}

pub fn scale(a: &[Term], c: &Coeff) -> Terms {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect()
}

pub fn mul_term(a: &[Term], mono: &Monomial, c: &Coeff) -> Terms {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(m, x)| (m.mul_unchecked(mono), x.mul(c))).collect()
}

pub fn mul(a: &[Term], b: &[Term], order: MonomialOrder) -> Terms {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return mul_term(b, &a[0].0, &a[0].1);
    }
    if b.len() == 1 {
        return mul_term(a, &b[0].0, &b[0].1);
    }
    let mut all = Vec::with_capacity(a.len() * b.len());
    for (m, c) in a {
        for (n, d) in b {
            all.push((m.mul_unchecked(n), c.mul(d)));
        }
    }
    normalize(all, order)
}
