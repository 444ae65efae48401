//! Systems of parameters, limit closures and Koszul data over explicit quotient rings
//! `S = k[x_1..x_n] / J` with `k` either the rationals or a prime field.

pub mod corpus;
pub mod criteria;
pub mod error;
pub mod field;
pub mod groebner;
pub mod idealops;
pub mod koszul;
pub mod limitclosure;
pub mod poly;
pub mod session;

pub use corpus::{run_scenario, scenario_names, ScenarioReport};
pub use criteria::{
    cm_probe, dr_report, frobenius_certificate_check, is_sop, lift_matrix, map1_lim_test, map2_stage_test, map5_test,
    one_dim_theorems, sop_check, zero_colon_probe, CmProbeReport, CmVerdict, DRReport, DrOptions, NamedCheck,
    OneDimReport, SampleOptions, SopCheck, SopSampler, StageLift,
};
pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub use groebner::{buchberger, ideal_equal, ideal_member, normal_form, Ideal, MembershipWitness, RingPresentation};
pub use idealops::{BracketPower, DimensionReport, ElementSequence};
pub use koszul::{chain_map_check, detcor_check, exterior_power_map, koszul_complex, CoeffMatrix, KoszulComplex};
pub use limitclosure::{limit_closure, LimitClosureResult, LimitOptions};
pub use session::{Expectation, Provenance, SessionInput, SessionOptions};
pub use poly::{monomial_compare, parse_polynomial, poly_arith, ArithOp, Monomial, MonomialOrder, PolyRing, Polynomial};
