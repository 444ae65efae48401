use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::groebner::RingPresentation;
use crate::idealops::{ring_dimension, ElementSequence};
use crate::poly::{Monomial, Polynomial};

use super::is_sop;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleOptions {
    /// Rejection-sampling attempts per requested system of parameters.
    pub attempts: usize,
    /// Entries are combinations of monomials of this degree, so they lie in `m^degree`.
    pub degree: u32,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            attempts: 200,
            degree: 1,
            seed: 0,
        }
    }
}

/// Seeded source of random elements and systems of parameters of one ring.
pub struct SopSampler {
    ring: Arc<RingPresentation>,
    opts: SampleOptions,
    rng: ChaCha8Rng,
}

impl SopSampler {
    pub fn new(ring: &Arc<RingPresentation>, opts: SampleOptions) -> Self {
        SopSampler {
            ring: ring.clone(),
            opts,
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
        }
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    /// Coefficients from `-2..=2` over the rationals, from all of `F_p` otherwise.
    pub fn coefficient(&mut self) -> Coeff {
        let field = self.ring.field();
        match field {
            FieldSpec::Rationals => field.from_i64(self.rng.gen_range(-2..=2)),
            FieldSpec::Prime(p) => field.from_i64(self.rng.gen_range(0..p as i64)),
        }
    }

    /// Random combination of the monomials of degree exactly `degree`.
    pub fn homogeneous(&mut self, degree: u32) -> Polynomial {
        let n = self.ring.nvars();
        let ambient = self.ring.ambient().clone();
        let mut out = Polynomial::zero(&ambient);
        for exps in monomials_of_degree(n, degree) {
            let c = self.coefficient();
            if !c.is_zero() {
                out = &out + &Polynomial::monomial(&ambient, Monomial::from_exponents(&exps), c);
            }
        }
        out
    }

    /// Random element of the maximal ideal with terms of degree `1..=max_degree`.
    pub fn element(&mut self, max_degree: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.ring.ambient());
        for d in 1..=max_degree.max(1) {
            out = &out + &self.homogeneous(d);
        }
        out
    }

    /// A random system of parameters, rejection-filtered by [`is_sop`].
    pub fn sop(&mut self) -> Result<ElementSequence> {
        let d = ring_dimension(&self.ring)?;
        for _ in 0..self.opts.attempts {
            let elems = (0..d).map(|_| self.homogeneous(self.opts.degree)).collect();
            let seq = ElementSequence::new(&self.ring, elems)?;
            if is_sop(&seq)? {
                return Ok(seq);
            }
        }
        Err(Error::NoSopFound {
            attempts: self.opts.attempts,
        })
    }

    /// Uniform index below `n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(0, d, &mut vec![0; n], &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn sampling_is_reproducible() {
        let r = RingPresentation::parse(&["a", "b", "c", "d"], 0, &["a*c", "a*d", "b*c", "b*d"]).unwrap();
        let opts = SampleOptions { seed: 7, ..Default::default() };
        let s1 = SopSampler::new(&r, opts).sop().unwrap();
        let s2 = SopSampler::new(&r, opts).sop().unwrap();
        assert_eq!(s1.render(), s2.render());
        assert!(is_sop(&s1).unwrap());
    }

    #[test]
    fn zero_dimensional_ring_has_empty_sop() {
        let r = RingPresentation::parse(&["x"], 0, &["x"]).unwrap();
        let opts = SampleOptions { attempts: 3, ..Default::default() };
        // S = k has dimension 0 and the empty sequence is a system of parameters
        assert_eq!(SopSampler::new(&r, opts).sop().unwrap().len(), 0);
    }
}
