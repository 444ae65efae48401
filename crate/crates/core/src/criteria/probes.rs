use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::RingPresentation;
use crate::idealops::{colon, pow_reduced, ElementSequence};
use crate::koszul::CoeffMatrix;
use crate::limitclosure::{limit_closure, LimitOptions};
use crate::poly::Polynomial;

use super::checked_det;
use super::sampling::{SampleOptions, SopSampler};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum CmVerdict {
    /// Every sampled system of parameters was lim-closed. Evidence, not a proof.
    Consistent,
    /// `witness` lies in `(sop)^lim` but not in `(sop)`.
    NotCm { sop: Vec<String>, witness: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmProbeReport {
    pub verdict: CmVerdict,
    pub tested: usize,
}

/// Sample systems of parameters and compare each with its limit closure.
pub fn cm_probe(
    ring: &Arc<RingPresentation>,
    trials: usize,
    sample: SampleOptions,
    limit: LimitOptions,
) -> Result<CmProbeReport> {
    if trials == 0 {
        return Err(Error::Shape("cm_probe needs at least one trial".into()));
    }
    let mut sampler = SopSampler::new(ring, sample);
    for tested in 1..=trials {
        let sop = sampler.sop()?;
        let closure = limit_closure(&sop, limit)?.closure;
        let ideal = sop.ideal();
        for g in closure.display_gens()? {
            if !ideal.contains(&g)? {
                return Ok(CmProbeReport {
                    verdict: CmVerdict::NotCm {
                        sop: sop.elems().iter().map(Polynomial::render).collect(),
                        witness: g.render(),
                    },
                    tested,
                });
            }
        }
    }
    Ok(CmProbeReport {
        verdict: CmVerdict::Consistent,
        tested: trials,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusRow {
    pub q: u64,
    /// `c z^q` lies in `(x)^[q]`.
    pub hypothesis: bool,
    /// `c (det A)^q z^q` lies in `(y)^[q]`; checked only under the hypothesis.
    pub conclusion: Option<bool>,
    /// `det(A^[q]) = (det A)^q` in `S`.
    pub det_of_bracket: bool,
}

/// For each `q`, test `c z^q` in `(x)^[q]` and, when it holds, assert
/// `c (det A)^q z^q` in `(y)^[q]`.
pub fn frobenius_certificate_check(
    c: &Polynomial,
    z: &Polynomial,
    x: &ElementSequence,
    y: &ElementSequence,
    a: &CoeffMatrix,
    qs: &[u64],
) -> Result<Vec<FrobeniusRow>> {
    let ring = x.ring();
    ring.check(c)?;
    ring.check(z)?;
    let p = ring.field().characteristic();
    if p == 0 {
        return Err(Error::WrongCharacteristic(0));
    }
    for &q in qs {
        if !is_power_of(q, p as u64) {
            return Err(Error::NotPrimePower { q, p });
        }
    }
    let det = checked_det(x, y, a)?;
    let mut rows = Vec::with_capacity(qs.len());
    for &q in qs {
        let e = u32::try_from(q).map_err(|_| Error::ExponentOverflow)?;
        let zq = pow_reduced(ring, z, e)?;
        let czq = ring.reduce(&(c * &zq))?;
        let det_q = pow_reduced(ring, &det, e)?;
        let det_of_bracket = ring.is_zero_in(&(&a.bracket(e)?.determinant()? - &det_q))?;
        if !det_of_bracket {
            return Err(Error::Invariant(format!("det(A^[{q}]) differs from (det A)^{q}")));
        }
        let hypothesis = x.powers(e)?.ideal().contains(&czq)?;
        let conclusion = if hypothesis {
            let held = y.powers(e)?.ideal().contains(&(&det_q * &czq))?;
            if !held {
                return Err(Error::Invariant(format!(
                    "c z^{q} is in (x)^[{q}] but c (det A)^{q} z^{q} is not in (y)^[{q}]"
                )));
            }
            Some(true)
        } else {
            None
        };
        rows.push(FrobeniusRow {
            q,
            hypothesis,
            conclusion,
            det_of_bracket,
        });
    }
    Ok(rows)
}

fn is_power_of(mut q: u64, p: u64) -> bool {
    if q == 0 {
        return false;
    }
    while q % p == 0 {
        q /= p;
    }
    q == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroColonReport {
    /// Generators of `0 : u`.
    pub annihilator: Vec<String>,
    /// A sampled system of parameters whose ideal contains `0 : u`.
    pub found: Option<Vec<String>>,
    pub tested: usize,
    /// The caller vouches that `u` lies in a minimal prime of maximal dimension.
    pub hypothesis_asserted: bool,
}

/// Search sampled systems of parameters for one whose ideal contains `0 : u`.
pub fn zero_colon_probe(
    ring: &Arc<RingPresentation>,
    u: &Polynomial,
    trials: usize,
    sample: SampleOptions,
    hypothesis_asserted: bool,
) -> Result<ZeroColonReport> {
    let ann = colon(&ring.zero_ideal(), u)?;
    let annihilator = ann.display_gens()?;
    if annihilator.is_empty() {
        return Err(Error::ZeroAnnihilator);
    }
    let mut sampler = SopSampler::new(ring, sample);
    let mut found = None;
    let mut tested = 0;
    for _ in 0..trials {
        let sop = sampler.sop()?;
        tested += 1;
        if sop.ideal().contains_ideal(&ann)? {
            found = Some(sop.elems().iter().map(Polynomial::render).collect());
            break;
        }
    }
    Ok(ZeroColonReport {
        annihilator: annihilator.iter().map(Polynomial::render).collect(),
        found,
        tested,
        hypothesis_asserted,
    })
}
