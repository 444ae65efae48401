use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Product without overflow checks; exponents inside Groebner computations stay small.
    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for a in &self.exps {
            exps.push(a.checked_mul(e).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` is set when variable `i` (mod 64) occurs.
    pub(crate) fn divmask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | 1 << (i % 64))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Prepend `k` zero exponents (tag variables placed first).
    pub(crate) fn with_leading_zeros(&self, k: usize) -> Monomial {
        let mut exps = SmallVec::from_elem(0, k);
        exps.extend_from_slice(&self.exps);
        Monomial { exps }
    }

    pub(crate) fn drop_leading(&self, k: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_slice(&self.exps[k..]),
        }
    }
}

/// Monomial orders. `Elimination { block }` compares the first `block` variables by
/// graded reverse lexicographic order first, then the remaining ones the same way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => grevlex(&a.exps, &b.exps),
            MonomialOrder::Elimination { block } => {
                let k = (*block).min(a.exps.len());
                grevlex(&a.exps[..k], &b.exps[..k]).then_with(|| grevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Compare two monomials under `order`, rejecting vectors of different lengths.
pub fn monomial_compare(order: MonomialOrder, m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
    if m1.nvars() != m2.nvars() {
        return Err(Error::LengthMismatch(m1.nvars(), m2.nvars()));
    }
    Ok(order.cmp(m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_degree_tie() {
        // a^2 vs ab on [a, b]
        assert_eq!(
            monomial_compare(MonomialOrder::Grevlex, &m(&[2, 0]), &m(&[1, 1])).unwrap(),
            Ordering::Greater
        );
        // revlex tie break: on [a,b,c], ac < b^2
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_dominance() {
        // x vs u^5 on [x, u]
        assert_eq!(
            monomial_compare(MonomialOrder::Lex, &m(&[1, 0]), &m(&[0, 5])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn reflexive_and_length_checked() {
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination { block: 1 }] {
            assert_eq!(monomial_compare(order, &m(&[3, 1]), &m(&[3, 1])).unwrap(), Ordering::Equal);
        }
        assert_eq!(
            monomial_compare(MonomialOrder::Lex, &m(&[1]), &m(&[1, 0])),
            Err(Error::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn elimination_block_dominates() {
        let order = MonomialOrder::Elimination { block: 1 };
        assert_eq!(order.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(order.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn exponent_overflow_reported() {
        assert_eq!(m(&[u32::MAX]).mul(&m(&[1])), Err(Error::ExponentOverflow));
        assert_eq!(m(&[1 << 20]).pow(1 << 20), Err(Error::ExponentOverflow));
    }

    fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..=3).prop_map(|block| MonomialOrder::Elimination { block }),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn total_order(order in order_strategy(), a in mono(), b in mono(), c in mono()) {
            let ab = order.cmp(&a, &b);
            prop_assert_eq!(ab, order.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab != Ordering::Greater && order.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(order.cmp(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn multiplicative(order in order_strategy(), a in mono(), b in mono(), n in mono()) {
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&n).unwrap(), &b.mul(&n).unwrap()));
            prop_assert_ne!(order.cmp(&Monomial::one(3), &a), Ordering::Greater);
        }
    }
}
