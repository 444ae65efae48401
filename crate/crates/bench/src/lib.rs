//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use paramkit::{ElementSequence, Ideal, RingPresentation};

pub fn highpower() -> Arc<RingPresentation> {
    RingPresentation::parse(&["a", "b", "c", "d"], 0, &["a*c", "a*d", "b*c", "b*d"]).unwrap()
}

pub fn cone(p: u64) -> Arc<RingPresentation> {
    RingPresentation::parse(&["a", "b", "c"], p, &["a*c - b^2"]).unwrap()
}

/// A dense ideal in three variables whose Groebner basis takes a few dozen S-pairs.
pub fn dense_ideal(p: u64) -> Ideal {
    let r = RingPresentation::parse(&["x", "y", "z"], p, &[]).unwrap();
    Ideal::parse(&r, &["x^2 + y*z - 2*z^2", "x*y - 3*y^2 + z", "x*z^2 + y^3 - x"]).unwrap()
}

pub fn sequence(ring: &Arc<RingPresentation>, elems: &[&str]) -> ElementSequence {
    ElementSequence::parse(ring, elems).unwrap()
}
