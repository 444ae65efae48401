//! Limit closures `(x)^lim = union over t of (x^[t]) : (x_1 ... x_d)^(t-1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::idealops::{colon, pow_reduced, ElementSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LimitOptions {
    pub t_max: u32,
    pub window: u32,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions { t_max: 16, window: 2 }
    }
}

#[derive(Clone, Debug)]
pub struct LimitClosureResult {
    pub closure: Ideal,
    /// First stage of the constant window.
    pub stabilized_at: u32,
    pub stages_checked: u32,
    pub verified_window: u32,
}

/// Stage `t`: `(x_1^t, ..., x_d^t) : (x_1 ... x_d)^(t-1)`.
pub fn lim_stage(seq: &ElementSequence, t: u32) -> Result<Ideal> {
    if t == 0 {
        return Err(Error::Shape("stage index must be positive".into()));
    }
    if t == 1 {
        return Ok(seq.ideal());
    }
    let ring = seq.ring();
    let bracket = seq.powers(t)?.ideal();
    let p = pow_reduced(ring, &seq.product()?, t - 1)?;
    if p.is_zero() {
        return Ok(ring.unit_ideal());
    }
    colon(&bracket, &p)
}

/// Ascend through the stages until `window` further stages repeat the current one.
pub fn limit_closure(seq: &ElementSequence, opts: LimitOptions) -> Result<LimitClosureResult> {
    if opts.window == 0 || opts.t_max < 1 + opts.window {
        return Err(Error::Shape(format!(
            "t_max ({}) must be at least 1 + window ({})",
            opts.t_max, opts.window
        )));
    }
    let mut current = lim_stage(seq, 1)?;
    let mut start = 1;
    let mut repeats = 0;
    for t in 2..=opts.t_max {
        let next = lim_stage(seq, t)?;
        if !next.contains_ideal(&current)? {
            return Err(Error::Invariant(format!("stage {} is not contained in stage {t}", t - 1)));
        }
        if next.equals(&current)? {
            repeats += 1;
            if repeats == opts.window {
                return Ok(LimitClosureResult {
                    closure: current,
                    stabilized_at: start,
                    stages_checked: t,
                    verified_window: opts.window,
                });
            }
        } else {
            current = next;
            start = t;
            repeats = 0;
        }
    }
    Err(Error::Unstabilized { stages: opts.t_max })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialConjectureReport {
    /// Largest `t` such that no violation occurs at stages `1..=t`.
    pub holds_up_to: u32,
    pub violated_at: Option<u32>,
}

/// Check `(x_1 ... x_d)^(t-1)` is outside `(x)^[t]` for `t = 1..=t_max`.
pub fn monomial_conjecture_check(seq: &ElementSequence, opts: LimitOptions) -> Result<MonomialConjectureReport> {
    if !crate::criteria::is_sop(seq)? {
        return Err(Error::NotSop);
    }
    let ring = seq.ring();
    let product = seq.product()?;
    let mut power = crate::poly::Polynomial::one(ring.ambient());
    for t in 1..=opts.t_max {
        if t > 1 {
            power = ring.reduce(&(&power * &product))?;
        }
        if seq.powers(t)?.ideal().contains(&power)? {
            return Ok(MonomialConjectureReport {
                holds_up_to: t - 1,
                violated_at: Some(t),
            });
        }
    }
    Ok(MonomialConjectureReport {
        holds_up_to: opts.t_max,
        violated_at: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::RingPresentation;
    use std::sync::Arc;

    fn highpower(p: u64) -> Arc<RingPresentation> {
        RingPresentation::parse(&["a", "b", "c", "d"], p, &["a*c", "a*d", "b*c", "b*d"]).unwrap()
    }

    #[test]
    fn highpower_closures() {
        for p in [0, 2] {
            let r = highpower(p);
            let x = ElementSequence::parse(&r, &["a+c", "b+d"]).unwrap();
            assert!(lim_stage(&x, 2).unwrap().equals(&r.maximal_ideal()).unwrap());
            let res = limit_closure(&x, LimitOptions::default()).unwrap();
            assert!(res.closure.equals(&r.maximal_ideal()).unwrap());
            assert_eq!(res.stabilized_at, 2);
            let y = ElementSequence::parse(&r, &["a^2", "b^2"]).unwrap();
            let res = limit_closure(&y, LimitOptions::default()).unwrap();
            assert!(res.closure.equals(&Ideal::parse(&r, &["a^2", "b^2", "c", "d"]).unwrap()).unwrap());
        }
    }

    #[test]
    fn regular_sequence_is_closed() {
        let r = RingPresentation::parse(&["x", "z"], 0, &[]).unwrap();
        let s = ElementSequence::parse(&r, &["x", "z"]).unwrap();
        let res = limit_closure(&s, LimitOptions::default()).unwrap();
        assert_eq!(res.stabilized_at, 1);
        assert_eq!(res.stages_checked, 3);
        assert!(res.closure.equals(&s.ideal()).unwrap());
    }

    #[test]
    fn xz_ring_stage_three_contains_z() {
        let r = RingPresentation::parse(&["x", "z"], 0, &["x^2*z", "z^2"]).unwrap();
        let s = ElementSequence::parse(&r, &["x"]).unwrap();
        assert!(lim_stage(&s, 3).unwrap().contains(&r.parse_element("z").unwrap()).unwrap());
        let res = limit_closure(&s, LimitOptions::default()).unwrap();
        assert_eq!(res.closure.render().unwrap(), "(z, x)");
        assert_eq!(res.stabilized_at, 3);
    }

    #[test]
    fn window_precondition() {
        let r = RingPresentation::parse(&["x"], 0, &[]).unwrap();
        let s = ElementSequence::parse(&r, &["x"]).unwrap();
        let opts = LimitOptions { t_max: 2, window: 2 };
        assert!(matches!(limit_closure(&s, opts), Err(Error::Shape(_))));
    }

    #[test]
    fn monomial_conjecture_on_principal_and_highpower() {
        let q = RingPresentation::parse(&["x"], 0, &[]).unwrap();
        let s = ElementSequence::parse(&q, &["x"]).unwrap();
        let rep = monomial_conjecture_check(&s, LimitOptions::default()).unwrap();
        assert_eq!(rep, MonomialConjectureReport { holds_up_to: 16, violated_at: None });
        let r = highpower(0);
        let x = ElementSequence::parse(&r, &["a+c", "b+d"]).unwrap();
        assert_eq!(monomial_conjecture_check(&x, LimitOptions::default()).unwrap().violated_at, None);
        let y = ElementSequence::parse(&r, &["a^2", "b^2"]).unwrap();
        assert_eq!(monomial_conjecture_check(&y, LimitOptions::default()), Err(Error::NotSop));
    }
}
