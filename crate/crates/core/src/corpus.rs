//! Bundled scenarios: session files whose `expect` lines are checked by [`run_scenario`].

use serde::Serialize;

use crate::criteria::{self, cm_probe, map2_stage_test, zero_colon_probe, CmVerdict, SampleOptions};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::idealops::{colon, dimension, length, ring_dimension, socle, ElementSequence};
use crate::koszul::{chain_map_check, detcor_check, koszul_complex, CoeffMatrix};
use crate::limitclosure::{limit_closure, monomial_conjecture_check};
use crate::poly::Polynomial;
use crate::session::{Expectation, Provenance, SessionInput};

const SCENARIOS: &[(&str, &str)] = &[
    ("heitmann", include_str!("../scenarios/heitmann.ring")),
    ("highpower", include_str!("../scenarios/highpower.ring")),
    ("highpower-f2", include_str!("../scenarios/highpower-f2.ring")),
    ("xz-noncm", include_str!("../scenarios/xz-noncm.ring")),
    ("nodal", include_str!("../scenarios/nodal.ring")),
];

pub fn scenario_names() -> Vec<&'static str> {
    SCENARIOS.iter().map(|(n, _)| *n).collect()
}

pub fn scenario_source(name: &str) -> Result<&'static str> {
    SCENARIOS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

pub fn load_scenario(name: &str) -> Result<SessionInput> {
    SessionInput::parse(scenario_source(name)?)
}

/// The result of an operation, compared against an expected value in the ring.
#[derive(Clone, Debug)]
pub enum Value {
    Bool(bool),
    Int(u64),
    Ideal(Ideal),
    Poly(Polynomial),
    Bools(Vec<bool>),
    Text(String),
}

impl Value {
    pub fn render(&self) -> Result<String> {
        Ok(match self {
            Value::Bool(b) => b.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Ideal(i) => i.render()?,
            Value::Poly(p) => p.render(),
            Value::Bools(v) => format!("[{}]", v.iter().map(bool::to_string).collect::<Vec<_>>().join(", ")),
            Value::Text(s) => s.clone(),
        })
    }

    /// Ideals compare by equality in `S`, polynomials modulo `J`, and a one-word
    /// expected text matches on its first word only.
    pub fn matches(&self, expected: &str, session: &SessionInput) -> Result<bool> {
        match self {
            Value::Ideal(i) => {
                let inner = expected
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Shape(format!("`{expected}` is not an ideal")))?;
                let gens: Vec<&str> = inner.split(',').map(str::trim).filter(|g| *g != "0").collect();
                i.equals(&Ideal::parse(session.ring(), &gens)?)
            }
            Value::Poly(p) => session.ring().is_zero_in(&(p - &session.ring().parse_element(expected)?)),
            Value::Text(s) if !expected.contains(char::is_whitespace) => {
                Ok(s.split_whitespace().next() == Some(expected))
            }
            other => Ok(other.render()? == expected),
        }
    }
}

fn arg<'a>(args: &'a [String], i: usize, op: &str) -> Result<&'a str> {
    args.get(i)
        .map(String::as_str)
        .ok_or_else(|| Error::Shape(format!("`{op}` is missing argument {}", i + 1)))
}

fn matrix_or_lift(s: &SessionInput, name: &str, x: &ElementSequence, y: &ElementSequence) -> Result<CoeffMatrix> {
    if name == "auto" {
        criteria::lift_matrix(y, x)
    } else {
        s.matrix(name)
    }
}

fn number(text: &str) -> Result<u64> {
    text.parse()
        .map_err(|_| Error::Shape(format!("expected a number, found `{text}`")))
}

/// Evaluate `op args...` against the session.
pub fn evaluate(s: &SessionInput, op: &str, args: &[String]) -> Result<Value> {
    let opts = s.options;
    let seq = |i: usize| s.sequence(arg(args, i, op)?);
    Ok(match op {
        "sopcheck" => Value::Bool(criteria::is_sop(&seq(0)?)?),
        "colon" => Value::Ideal(colon(&seq(0)?.ideal(), &s.element(arg(args, 1, op)?)?)?),
        "map5" | "map1" => {
            let (x, y) = (seq(0)?, seq(1)?);
            let a = matrix_or_lift(s, arg(args, 2, op)?, &x, &y)?;
            Value::Bool(if op == "map5" {
                criteria::map5_test(&x, &y, &a)?
            } else {
                criteria::map1_lim_test(&x, &y, &a, opts.limit)?
            })
        }
        "map2" => {
            let n = number(arg(args, 2, op)?)? as u32;
            let res = map2_stage_test(&seq(0)?, &seq(1)?, n, opts.limit)?;
            Value::Bools(res.iter().map(|r| r.injective).collect())
        }
        "limclose" => Value::Ideal(limit_closure(&seq(0)?, opts.limit)?.closure),
        "tstar" => Value::Int(limit_closure(&seq(0)?, opts.limit)?.stabilized_at as u64),
        "dim" => match args.first() {
            None => Value::Int(ring_dimension(s.ring())? as u64),
            Some(_) => Value::Int(dimension(&seq(0)?.ideal())?.dim as u64),
        },
        "length" => Value::Int(length(&seq(0)?.ideal())?),
        "socle" => Value::Ideal(socle(&seq(0)?.ideal())?),
        "regseq" => Value::Bool(crate::koszul::is_regular_sequence(&seq(0)?)?.0),
        "det" => Value::Poly(s.ring().reduce(&s.matrix(arg(args, 0, op)?)?.determinant()?)?),
        "koszul" => {
            koszul_complex(&seq(0)?)?;
            Value::Text("ok".into())
        }
        "chainmap" => {
            let (x, y) = (seq(0)?, seq(1)?);
            let a = matrix_or_lift(s, arg(args, 2, op)?, &x, &y)?;
            Value::Bool(chain_map_check(&x, &y, &a)?)
        }
        "detcor" => {
            let (y, x) = (seq(0)?, seq(3)?);
            let a = s.matrix(arg(args, 1, op)?)?;
            let b = s.matrix(arg(args, 2, op)?)?;
            Value::Bool(detcor_check(&y, &a, &b, &x)?)
        }
        "mc" => {
            let rep = monomial_conjecture_check(&seq(0)?, opts.limit)?;
            Value::Text(match rep.violated_at {
                None => "holds".into(),
                Some(t) => format!("violated {t}"),
            })
        }
        "cmprobe" => {
            let trials = number(arg(args, 0, op)?)? as usize;
            let sample = SampleOptions {
                seed: opts.seed,
                ..Default::default()
            };
            let rep = cm_probe(s.ring(), trials, sample, opts.limit)?;
            Value::Text(match rep.verdict {
                CmVerdict::Consistent => "Consistent".into(),
                CmVerdict::NotCm { witness, .. } => format!("NotCM {witness}"),
            })
        }
        "zerocolon" => {
            let u = s.element(arg(args, 0, op)?)?;
            let trials = number(arg(args, 1, op)?)? as usize;
            let sample = SampleOptions {
                seed: opts.seed,
                ..Default::default()
            };
            let rep = zero_colon_probe(s.ring(), &u, trials, sample, true)?;
            Value::Text(match rep.found {
                None => "none".into(),
                Some(sop) => format!("found ({})", sop.join(", ")),
            })
        }
        _ => return Err(Error::Shape(format!("unknown operation `{op}`"))),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioCheck {
    pub line: usize,
    pub op: String,
    pub args: Vec<String>,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub checks: Vec<ScenarioCheck>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(s: &SessionInput, e: &Expectation) -> ScenarioCheck {
    let outcome = evaluate(s, &e.op, &e.args).and_then(|v| Ok((v.render()?, v.matches(&e.expected, s)?)));
    let (actual, passed) = match outcome {
        Ok(r) => r,
        Err(err) => (format!("error {}: {err}", err.code()), false),
    };
    ScenarioCheck {
        line: e.line,
        op: e.op.clone(),
        args: e.args.clone(),
        expected: e.expected.clone(),
        actual,
        passed,
        provenance: e.provenance,
    }
}

/// Check every expectation in a parsed session.
pub fn run_session(name: &str, s: &SessionInput) -> ScenarioReport {
    ScenarioReport {
        name: name.to_string(),
        checks: s.expectations.iter().map(|e| check(s, e)).collect(),
    }
}

pub fn run_scenario(name: &str) -> Result<ScenarioReport> {
    Ok(run_session(name, &load_scenario(name)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario() {
        assert_eq!(
            run_scenario("nope").unwrap_err(),
            Error::UnknownScenario("nope".into())
        );
    }

    #[test]
    fn every_scenario_round_trips() {
        for name in scenario_names() {
            let s = load_scenario(name).unwrap();
            assert!(!s.expectations.is_empty(), "{name}");
            assert_eq!(SessionInput::parse(&s.render()).unwrap(), s, "{name}");
        }
    }

    #[test]
    fn value_matching() {
        let s = SessionInput::parse("ring r\nchar 0\nvars a b\nquotient a*b\n").unwrap();
        let i = Value::Ideal(Ideal::parse(s.ring(), &["a+b", "a^2", "b^3"]).unwrap());
        assert!(i.matches("(a + b, a^2)", &s).unwrap());
        assert!(!i.matches("(a, b)", &s).unwrap());
        assert!(run_scenario("nodal").unwrap().passed());
        assert!(Value::Ideal(s.ring().zero_ideal()).matches("(0)", &s).unwrap());
        assert!(Value::Poly(s.ring().parse_element("a^2*b + a").unwrap()).matches("a", &s).unwrap());
        let t = Value::Text("NotCM z".into());
        assert!(t.matches("NotCM", &s).unwrap());
        assert!(t.matches("NotCM z", &s).unwrap());
        assert!(!t.matches("NotCM x", &s).unwrap());
    }
}
