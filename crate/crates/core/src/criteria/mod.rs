//! Decision procedures: systems of parameters, lifting matrices, and the injectivity tests
//! for multiplication by `det A` on `S/(x)`, on `S/(x)^lim`, and on the stages of the top
//! local cohomology map.

mod one_dim;
mod probes;
mod sampling;

use serde::Serialize;

pub use one_dim::{one_dim_theorems, OneDimReport};
pub use probes::{
    cm_probe, frobenius_certificate_check, zero_colon_probe, CmProbeReport, CmVerdict, FrobeniusRow,
    ZeroColonReport,
};
pub use sampling::{SampleOptions, SopSampler};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::idealops::{colon, dimension, ring_dimension, ElementSequence};
use crate::koszul::{verify_lift, CoeffMatrix};
use crate::limitclosure::{limit_closure, LimitClosureResult, LimitOptions};
use crate::poly::{MonomialOrder, Polynomial, CANONICAL};

/// Outcome of a system-of-parameters check with the data behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SopCheck {
    pub is_sop: bool,
    pub ring_dim: usize,
    pub length: usize,
    /// `dim S/(seq)`, absent when `(seq)` is the unit ideal.
    pub quotient_dim: Option<usize>,
    pub reason: Option<String>,
}

pub fn sop_check(seq: &ElementSequence) -> Result<SopCheck> {
    let ring = seq.ring();
    let ring_dim = ring_dimension(ring)?;
    let mut out = SopCheck {
        is_sop: false,
        ring_dim,
        length: seq.len(),
        quotient_dim: None,
        reason: None,
    };
    for (i, e) in seq.elems().iter().enumerate() {
        if !ring.reduce(e)?.constant_term().is_zero() {
            out.reason = Some(format!("entry {} is not in the maximal ideal", i + 1));
            return Ok(out);
        }
    }
    match dimension(&seq.ideal()) {
        Ok(rep) => out.quotient_dim = Some(rep.dim),
        Err(Error::EmptyVariety) => {
            out.reason = Some("the sequence generates the unit ideal".into());
            return Ok(out);
        }
        Err(e) => return Err(e),
    }
    if seq.len() != ring_dim {
        out.reason = Some(format!("length {} differs from dim S = {ring_dim}", seq.len()));
    } else if out.quotient_dim != Some(0) {
        out.reason = Some(format!("dim S/(seq) = {}", out.quotient_dim.unwrap_or(0)));
    } else {
        out.is_sop = true;
    }
    Ok(out)
}

/// `seq` has `dim S` entries in the maximal ideal and `S/(seq)` has dimension zero.
pub fn is_sop(seq: &ElementSequence) -> Result<bool> {
    Ok(sop_check(seq)?.is_sop)
}

/// A matrix `A` with `y = A x` in `S`, read off membership witnesses.
pub fn lift_matrix(y: &ElementSequence, x: &ElementSequence) -> Result<CoeffMatrix> {
    lift_matrix_in(y, x, CANONICAL)
}

/// [`lift_matrix`] with witnesses taken from a Groebner basis in `order`.
pub fn lift_matrix_in(y: &ElementSequence, x: &ElementSequence, order: MonomialOrder) -> Result<CoeffMatrix> {
    y.check_same(x)?;
    let ring = x.ring();
    let xi = x.ideal();
    let mut rows = Vec::with_capacity(y.len());
    for (i, yi) in y.elems().iter().enumerate() {
        let w = xi
            .member_with_witness_in(yi, order)?
            .ok_or(Error::NotContained { index: i })?;
        let row = w
            .ideal_part(&xi)
            .iter()
            .map(|c| ring.reduce(c))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let a = CoeffMatrix::new(ring, rows)?;
    verify_lift(x, y, &a)?;
    Ok(a)
}

/// `det A` modulo `J`, after checking `A` is a square lift.
fn checked_det(x: &ElementSequence, y: &ElementSequence, a: &CoeffMatrix) -> Result<Polynomial> {
    verify_lift(x, y, a)?;
    if !a.is_square() {
        return Err(Error::Shape("the lifting matrix must be square".into()));
    }
    x.ring().reduce(&a.determinant()?)
}

/// `(I : f)`, with multiplication by zero handled as the unit ideal.
fn colon_or_unit(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        Ok(i.ring().unit_ideal())
    } else {
        colon(i, f)
    }
}

/// Multiplication by `det A` from `S/(x)` to `S/(y)` is injective: `(y) : det A` lies in `(x)`.
pub fn map5_test(x: &ElementSequence, y: &ElementSequence, a: &CoeffMatrix) -> Result<bool> {
    let det = checked_det(x, y, a)?;
    let yi = y.ideal();
    for (j, xj) in x.elems().iter().enumerate() {
        if !yi.contains(&(&det * xj))? {
            return Err(Error::Invariant(format!("det A * x_{} is not in (y)", j + 1)));
        }
    }
    x.ideal().contains_ideal(&colon_or_unit(&yi, &det)?)
}

#[derive(Clone, Debug)]
pub struct Map1Outcome {
    pub injective: bool,
    pub det: Polynomial,
    pub x_closure: LimitClosureResult,
    pub y_closure: LimitClosureResult,
}

/// Multiplication by `det A` from `S/(x)^lim` to `S/(y)^lim`, with the closures used.
pub fn map1_lim_detail(
    x: &ElementSequence,
    y: &ElementSequence,
    a: &CoeffMatrix,
    opts: LimitOptions,
) -> Result<Map1Outcome> {
    let det = checked_det(x, y, a)?;
    let x_closure = limit_closure(x, opts)?;
    let y_closure = limit_closure(y, opts)?;
    let injective = x_closure
        .closure
        .contains_ideal(&colon_or_unit(&y_closure.closure, &det)?)?;
    Ok(Map1Outcome {
        injective,
        det,
        x_closure,
        y_closure,
    })
}

pub fn map1_lim_test(x: &ElementSequence, y: &ElementSequence, a: &CoeffMatrix, opts: LimitOptions) -> Result<bool> {
    Ok(map1_lim_detail(x, y, a, opts)?.injective)
}

/// `(y)^[s] = B (x)^[n]` with `s` minimal.
#[derive(Clone, Debug)]
pub struct StageLift {
    pub n: u32,
    pub s: u32,
    pub b: CoeffMatrix,
}

#[derive(Clone, Debug)]
pub struct StageResult {
    pub lift: StageLift,
    pub injective: bool,
}

/// Smallest `s` with every `y_i^s` in `(x)^[n]`, searched upward from 1. Since `(y)` lies in
/// `(x)`, `s = d (n - 1) + 1` always works.
pub fn stage_lift(x: &ElementSequence, y: &ElementSequence, n: u32) -> Result<StageLift> {
    let xn = x.powers(n)?;
    let target = xn.ideal();
    let bound = x.len() as u32 * (n - 1) + 1;
    for s in 1..=bound {
        let ys = y.powers(s)?;
        let mut all = true;
        for e in ys.elems() {
            if !target.contains(e)? {
                all = false;
                break;
            }
        }
        if all {
            let b = lift_matrix(&ys, &xn)?;
            return Ok(StageLift { n, s, b });
        }
    }
    Err(Error::Invariant(format!("no s <= {bound} puts (y)^[s] inside (x)^[{n}]")))
}

/// Stage-wise injectivity of the local cohomology map through stage `stages`.
pub fn map2_stage_test(
    x: &ElementSequence,
    y: &ElementSequence,
    stages: u32,
    opts: LimitOptions,
) -> Result<Vec<StageResult>> {
    y.check_same(x)?;
    if !is_sop(x)? {
        return Err(Error::NotSop);
    }
    let xi = x.ideal();
    for (i, e) in y.elems().iter().enumerate() {
        if !xi.contains(e)? {
            return Err(Error::NotContained { index: i });
        }
    }
    let mut out = Vec::new();
    for n in 1..=stages {
        let lift = stage_lift(x, y, n)?;
        let ys = y.powers(lift.s)?;
        let xn = x.powers(n)?;
        let det = x.ring().reduce(&lift.b.determinant()?)?;
        let yl = limit_closure(&ys, opts)?.closure;
        let xl = limit_closure(&xn, opts)?.closure;
        let injective = xl.contains_ideal(&colon_or_unit(&yl, &det)?)?;
        out.push(StageResult { lift, injective });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl NamedCheck {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        NamedCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Full comparison of `x` and `y` under the lift `A`.
#[derive(Clone, Debug)]
pub struct DRReport {
    pub x_is_sop: bool,
    pub y_is_sop: bool,
    pub lift: CoeffMatrix,
    pub det_a: Polynomial,
    pub map5_injective: bool,
    pub map1_injective: bool,
    /// `(n, s(n), injective)`; empty when `x` is not a system of parameters.
    pub map2_stage_results: Vec<(u32, u32, bool)>,
    pub x_closure: Ideal,
    pub y_closure: Ideal,
    pub consistent_with_theorems: Vec<NamedCheck>,
}

impl DRReport {
    pub fn all_consistent(&self) -> bool {
        self.consistent_with_theorems.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DrOptions {
    pub limit: LimitOptions,
    pub stages: u32,
}

impl Default for DrOptions {
    fn default() -> Self {
        DrOptions {
            limit: LimitOptions::default(),
            stages: 3,
        }
    }
}

/// Run every test on `(x, y)`; `a` defaults to [`lift_matrix`].
pub fn dr_report(x: &ElementSequence, y: &ElementSequence, a: Option<&CoeffMatrix>, opts: DrOptions) -> Result<DRReport> {
    let lift = match a {
        Some(a) => {
            verify_lift(x, y, a)?;
            a.clone()
        }
        None => lift_matrix(y, x)?,
    };
    let x_is_sop = is_sop(x)?;
    let y_is_sop = is_sop(y)?;
    let map5_injective = map5_test(x, y, &lift)?;
    let m1 = map1_lim_detail(x, y, &lift, opts.limit)?;
    let mut checks = Vec::new();

    let yi = y.ideal();
    let mut cramer = true;
    for xj in x.elems() {
        cramer &= yi.contains(&(&m1.det * xj))?;
    }
    checks.push(NamedCheck::new("cramer", cramer, "det A * (x) is contained in (y)"));

    let mut cramer_lim = true;
    for g in m1.x_closure.closure.gens() {
        cramer_lim &= m1.y_closure.closure.contains(&(&m1.det * g))?;
    }
    checks.push(NamedCheck::new(
        "cramer_lim",
        cramer_lim,
        "det A * (x)^lim is contained in (y)^lim",
    ));

    checks.push(NamedCheck::new(
        "sop_implies_map1",
        !y_is_sop || m1.injective,
        "y a system of parameters forces the limit-closure map to be injective",
    ));

    let second = lift_matrix_in(y, x, MonomialOrder::Lex)?;
    let m1b = map1_lim_test(x, y, &second, opts.limit)?;
    checks.push(NamedCheck::new(
        "lift_independence",
        m1b == m1.injective,
        format!("second lift {} gives the same verdict", second.render()),
    ));
    checks.push(NamedCheck::new(
        "determinant_identity",
        crate::koszul::detcor_check(y, &lift, &second, x)?,
        "(y_1...y_d)^d (det A - det B) lies in (y)^[d+1] for the two lifts",
    ));

    let mut stages = Vec::new();
    if x_is_sop && opts.stages > 0 {
        let res = map2_stage_test(x, y, opts.stages, opts.limit)?;
        stages = res.iter().map(|r| (r.lift.n, r.lift.s, r.injective)).collect();
        let all = stages.iter().all(|s| s.2);
        checks.push(NamedCheck::new(
            "sop_implies_map2",
            !y_is_sop || all,
            "y a system of parameters forces every computed stage to be injective",
        ));
        checks.push(NamedCheck::new(
            "stage_one_matches_map1",
            stages[0].2 == m1.injective,
            "stage 1 uses the lift at s = 1 and must agree with the limit-closure map",
        ));
    }

    Ok(DRReport {
        x_is_sop,
        y_is_sop,
        lift,
        det_a: m1.det,
        map5_injective,
        map1_injective: m1.injective,
        map2_stage_results: stages,
        x_closure: m1.x_closure.closure,
        y_closure: m1.y_closure.closure,
        consistent_with_theorems: checks,
    })
}
