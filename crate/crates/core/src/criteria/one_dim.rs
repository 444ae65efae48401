use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::RingPresentation;
use crate::idealops::{colon, colon_ideal, relative_length, ring_dimension, ElementSequence};
use crate::koszul::CoeffMatrix;
use crate::limitclosure::LimitOptions;
use crate::poly::Polynomial;

use super::{is_sop, map1_lim_test, map5_test, NamedCheck};

/// Verdicts for `y = u x` in a one-dimensional ring with `x` a parameter.
#[derive(Clone, Debug, Serialize)]
pub struct OneDimReport {
    pub x: String,
    pub u: String,
    pub y: String,
    /// `S/(x) -> S/(y)` by `u` is injective.
    pub map5_x_to_y: bool,
    /// `S/(u) -> S/(y)` by `x` is injective.
    pub map5_u_to_y: bool,
    pub map1_injective: bool,
    pub y_is_parameter: bool,
    pub u_is_parameter: bool,
    /// `y` is a parameter although `S/(x) -> S/(y)` is not injective.
    pub converse_fails: bool,
    /// `(length((0:x) / u(0:x)), length(0:(x,u)))`.
    pub lengths: (u64, u64),
    pub checks: Vec<NamedCheck>,
}

impl OneDimReport {
    pub fn all_consistent(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn one_dim_theorems(
    ring: &Arc<RingPresentation>,
    x_param: &Polynomial,
    u: &Polynomial,
    opts: LimitOptions,
) -> Result<OneDimReport> {
    let found = ring_dimension(ring)?;
    if found != 1 {
        return Err(Error::WrongDimension { expected: 1, found });
    }
    ring.check(u)?;
    let xs = ElementSequence::new(ring, vec![x_param.clone()])?;
    if !is_sop(&xs)? {
        return Err(Error::NotParameter);
    }
    let y = ring.reduce(&(u * x_param))?;
    let ys = ElementSequence::new(ring, vec![y.clone()])?;
    let us = ElementSequence::new(ring, vec![u.clone()])?;
    let by_u = CoeffMatrix::new(ring, vec![vec![u.clone()]])?;
    let by_x = CoeffMatrix::new(ring, vec![vec![x_param.clone()]])?;

    let map5_x_to_y = map5_test(&xs, &ys, &by_u)?;
    let map5_u_to_y = map5_test(&us, &ys, &by_x)?;
    let map1_injective = map1_lim_test(&xs, &ys, &by_u, opts)?;
    let y_is_parameter = is_sop(&ys)?;
    let u_is_parameter = is_sop(&us)?;

    let zero = ring.zero_ideal();
    let ann_x = colon(&zero, x_param)?;
    let lhs = relative_length(&ann_x, &ann_x.scale_by(u)?)?;
    let ann_xu = colon_ideal(&zero, &xs.ideal().with_gen(u.clone())?)?;
    let rhs = relative_length(&ann_xu, &zero)?;

    let checks = vec![
        NamedCheck::new(
            "map5_injective_implies_parameter",
            !map5_x_to_y || y_is_parameter,
            "S/(x) -> S/(y) injective forces y to be a parameter",
        ),
        NamedCheck::new(
            "map5_forward_implies_converse",
            !map5_x_to_y || map5_u_to_y,
            "S/(x) -> S/(y) injective forces S/(u) -> S/(y) injective",
        ),
        NamedCheck::new(
            "map5_symmetry",
            map5_x_to_y == map5_u_to_y,
            if u_is_parameter {
                "both maps agree, u a parameter"
            } else {
                "both maps agree; u is not a parameter, so only the forward direction is guaranteed"
            },
        ),
        NamedCheck::new(
            "map1_iff_parameter",
            map1_injective == y_is_parameter,
            "S/(x)^lim -> S/(y)^lim injective exactly when y is a parameter",
        ),
        NamedCheck::new(
            "length_identity",
            lhs == rhs,
            format!("length((0:x)/u(0:x)) = {lhs}, length(0:(x,u)) = {rhs}"),
        ),
    ];

    Ok(OneDimReport {
        x: x_param.render(),
        u: u.render(),
        y: y.render(),
        map5_x_to_y,
        map5_u_to_y,
        map1_injective,
        y_is_parameter,
        u_is_parameter,
        converse_fails: y_is_parameter && !map5_x_to_y,
        lengths: (lhs, rhs),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(r: &Arc<RingPresentation>, x: &str, u: &str) -> Result<OneDimReport> {
        let x = r.parse_element(x).unwrap();
        let u = r.parse_element(u).unwrap();
        one_dim_theorems(r, &x, &u, LimitOptions::default())
    }

    #[test]
    fn heitmann_converse_fails() {
        let r = RingPresentation::parse(&["x", "u"], 2, &["((x+u)*u)^3", "x*(x+u)^2*u^2"]).unwrap();
        let rep = run(&r, "x", "x").unwrap();
        assert!(!rep.map5_x_to_y && rep.y_is_parameter && rep.converse_fails);
        assert!(rep.all_consistent(), "{:?}", rep.checks);
    }

    #[test]
    fn nodal_non_parameter_multiplier() {
        let r = RingPresentation::parse(&["a", "b"], 0, &["a*b"]).unwrap();
        let rep = run(&r, "a+b", "a").unwrap();
        assert_eq!(rep.y, "a^2");
        assert!(!rep.map1_injective && !rep.y_is_parameter && !rep.u_is_parameter);
        // 0:u = (b) is not in (x) while 0:x = 0 is in (u): the two map5 verdicts differ
        assert!(!rep.map5_x_to_y && rep.map5_u_to_y);
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["map5_symmetry"]);
        assert_eq!(rep.lengths, (0, 0));
    }

    #[test]
    fn unit_multiplier() {
        let r = RingPresentation::parse(&["a", "b"], 0, &["a*b"]).unwrap();
        let rep = run(&r, "a+b", "1").unwrap();
        assert!(rep.map5_x_to_y && rep.map5_u_to_y && rep.map1_injective && rep.y_is_parameter);
        assert!(rep.all_consistent());
    }

    #[test]
    fn preconditions() {
        let r = RingPresentation::parse(&["a", "b"], 0, &["a*b"]).unwrap();
        assert_eq!(run(&r, "a", "b").unwrap_err(), Error::NotParameter);
        let plane = RingPresentation::parse(&["a", "b"], 0, &[]).unwrap();
        assert_eq!(
            run(&plane, "a", "b").unwrap_err(),
            Error::WrongDimension { expected: 1, found: 2 }
        );
    }

    #[test]
    fn length_identity_with_embedded_component() {
        let r = RingPresentation::parse(&["x", "z"], 0, &["x^2*z", "z^2"]).unwrap();
        let rep = run(&r, "x", "x+z").unwrap();
        assert_eq!(rep.lengths.0, rep.lengths.1);
        assert!(rep.lengths.0 > 0);
    }
}
