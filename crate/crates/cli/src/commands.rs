use std::path::Path;

use paramkit::corpus::{load_scenario, run_session};
use paramkit::criteria::{lift_matrix_in, map1_lim_detail};
use paramkit::idealops::{colon, dimension, intersect, length, ring_dimension, socle};
use paramkit::koszul::is_regular_sequence;
use paramkit::limitclosure::monomial_conjecture_check;
use paramkit::{
    cm_probe, detcor_check, dr_report, frobenius_certificate_check, koszul_complex, limit_closure, map2_stage_test,
    map5_test, scenario_names, sop_check, zero_colon_probe, CmVerdict, CoeffMatrix, DrOptions, ElementSequence, Ideal,
    SampleOptions, ScenarioReport, SessionInput, SessionOptions,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command, PairArgs};
use crate::output::{CliError, Report};

pub const BUDGET_VAR: &str = "PARAMKIT_BUDGET";

fn options(cli: &Cli) -> SessionOptions {
    let mut o = SessionOptions::default();
    o.order = cli.order.into();
    o.limit.t_max = cli.tmax;
    o.limit.window = cli.window;
    o.seed = cli.seed;
    o.warn_homogeneity = !cli.no_homogeneity_warning;
    o
}

fn budget() -> Result<Option<u64>, CliError> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{BUDGET_VAR} must be a non-negative integer, found `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn load(path: &Path, cli: &Cli) -> Result<SessionInput, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut s = SessionInput::parse(&text)?;
    s.options = options(cli);
    if let Some(b) = budget()? {
        s.set_budget(b);
    }
    Ok(s)
}

fn sample(s: &SessionInput) -> SampleOptions {
    SampleOptions {
        seed: s.options.seed,
        ..Default::default()
    }
}

fn render_ideal(i: &Ideal) -> Result<String, CliError> {
    Ok(i.render()?)
}

fn matrix_json(m: &CoeffMatrix) -> Value {
    json!((0..m.nrows()).map(|i| m.row(i).iter().map(|e| e.render()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn seq_json(seq: &ElementSequence) -> Value {
    json!(seq.elems().iter().map(|e| e.render()).collect::<Vec<_>>())
}

fn lift_for(s: &SessionInput, p: &PairArgs) -> Result<(ElementSequence, ElementSequence, CoeffMatrix), CliError> {
    let x = s.sequence(&p.x)?;
    let y = s.sequence(&p.y)?;
    let a = match &p.matrix {
        Some(name) => s.matrix(name)?,
        None => lift_matrix_in(&y, &x, s.options.order)?,
    };
    Ok((x, y, a))
}

fn yes_no(verdict: bool, what: &str, data: Value) -> Report {
    Report::verdict(verdict, vec![format!("{what}: {verdict}")], data)
}

fn mark(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut warnings = Vec::new();
    let mut session = |path: &Path| -> Result<SessionInput, CliError> {
        let s = load(path, cli)?;
        if s.options.warn_homogeneity {
            warnings.extend(s.homogeneity_warnings());
        }
        Ok(s)
    };
    let report = match &cli.command {
        Command::Sopcheck(a) => {
            let s = session(&a.file)?;
            let c = sop_check(&s.sequence(&a.seq)?)?;
            let mut text = vec![format!("{} is a system of parameters: {}", a.seq, c.is_sop)];
            if let Some(r) = &c.reason {
                text.push(format!("reason: {r}"));
            }
            Report::verdict(c.is_sop, text, json!(c))
        }
        Command::Limclose(a) => {
            let s = session(&a.file)?;
            let r = limit_closure(&s.sequence(&a.seq)?, s.options.limit)?;
            let closure = render_ideal(&r.closure)?;
            Report::info(
                vec![
                    format!("closure: {closure}"),
                    format!("stabilized at t = {}", r.stabilized_at),
                    format!("stages checked: {}, window: {}", r.stages_checked, r.verified_window),
                ],
                json!({
                    "closure": closure,
                    "stabilized_at": r.stabilized_at,
                    "stages_checked": r.stages_checked,
                    "verified_window": r.verified_window,
                }),
            )
        }
        Command::Mc(a) => {
            let s = session(&a.file)?;
            let r = monomial_conjecture_check(&s.sequence(&a.seq)?, s.options.limit)?;
            let text = match r.violated_at {
                None => format!("holds for t = 1..{}", r.holds_up_to),
                Some(t) => format!("violated at t = {t}"),
            };
            Report::verdict(r.violated_at.is_none(), vec![text], json!(r))
        }
        Command::Drtest { pair, stages } => {
            let s = session(&pair.file)?;
            let x = s.sequence(&pair.x)?;
            let y = s.sequence(&pair.y)?;
            let given = pair.matrix.as_ref().map(|m| s.matrix(m)).transpose()?;
            let opts = DrOptions {
                limit: s.options.limit,
                stages: *stages,
            };
            let r = dr_report(&x, &y, given.as_ref(), opts)?;
            let xc = render_ideal(&r.x_closure)?;
            let yc = render_ideal(&r.y_closure)?;
            let mut text = vec![
                format!("x is a system of parameters: {}", mark(r.x_is_sop)),
                format!("y is a system of parameters: {}", mark(r.y_is_sop)),
                format!("lift A = {}", r.lift.render()),
                format!("det A = {}", r.det_a.render()),
                format!("S/(x) -> S/(y) injective: {}", mark(r.map5_injective)),
                format!("S/(x)^lim -> S/(y)^lim injective: {}", mark(r.map1_injective)),
            ];
            for (n, sn, inj) in &r.map2_stage_results {
                text.push(format!("stage {n} (s = {sn}) injective: {}", mark(*inj)));
            }
            text.push(format!("(x)^lim = {xc}"));
            text.push(format!("(y)^lim = {yc}"));
            for c in &r.consistent_with_theorems {
                text.push(format!("check {}: {} ({})", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail));
            }
            let stages: Vec<Value> = r
                .map2_stage_results
                .iter()
                .map(|(n, sn, inj)| json!({"n": n, "s": sn, "injective": inj}))
                .collect();
            Report::info(
                text,
                json!({
                    "x_is_sop": r.x_is_sop,
                    "y_is_sop": r.y_is_sop,
                    "lift": matrix_json(&r.lift),
                    "det_a": r.det_a.render(),
                    "map5_injective": r.map5_injective,
                    "map1_injective": r.map1_injective,
                    "map2_stage_results": stages,
                    "x_closure": xc,
                    "y_closure": yc,
                    "consistent_with_theorems": r.consistent_with_theorems,
                    "all_consistent": r.all_consistent(),
                }),
            )
        }
        Command::Map5(p) => {
            let s = session(&p.file)?;
            let (x, y, a) = lift_for(&s, p)?;
            let v = map5_test(&x, &y, &a)?;
            yes_no(v, "S/(x) -> S/(y) injective", json!({"injective": v, "lift": matrix_json(&a)}))
        }
        Command::Map1(p) => {
            let s = session(&p.file)?;
            let (x, y, a) = lift_for(&s, p)?;
            let d = map1_lim_detail(&x, &y, &a, s.options.limit)?;
            yes_no(
                d.injective,
                "S/(x)^lim -> S/(y)^lim injective",
                json!({
                    "injective": d.injective,
                    "lift": matrix_json(&a),
                    "det_a": d.det.render(),
                    "x_closure": render_ideal(&d.x_closure.closure)?,
                    "y_closure": render_ideal(&d.y_closure.closure)?,
                }),
            )
        }
        Command::Map2 { x, y, stages, file } => {
            let s = session(file)?;
            let res = map2_stage_test(&s.sequence(x)?, &s.sequence(y)?, *stages, s.options.limit)?;
            let all = res.iter().all(|r| r.injective);
            let text = res
                .iter()
                .map(|r| format!("stage {} (s = {}) injective: {}", r.lift.n, r.lift.s, mark(r.injective)))
                .collect();
            let rows: Vec<Value> = res
                .iter()
                .map(|r| json!({"n": r.lift.n, "s": r.lift.s, "injective": r.injective, "lift": matrix_json(&r.lift.b)}))
                .collect();
            Report::verdict(all, text, json!({"injective": all, "stages": rows}))
        }
        Command::Koszul(a) => {
            let s = session(&a.file)?;
            let k = koszul_complex(&s.sequence(&a.seq)?)?;
            let text = k
                .differentials
                .iter()
                .enumerate()
                .map(|(i, m)| format!("d_{} = {}", i + 1, m.render()))
                .collect();
            let ds: Vec<Value> = k.differentials.iter().map(matrix_json).collect();
            Report::info(text, json!({"sequence": seq_json(&k.seq), "differentials": ds}))
        }
        Command::Detcor { x, y, a, b, file } => {
            let s = session(file)?;
            let v = detcor_check(&s.sequence(y)?, &s.matrix(a)?, &s.matrix(b)?, &s.sequence(x)?)?;
            yes_no(v, "det A - det B lies in stage d+1 of (y)^lim", json!({"holds": v}))
        }
        Command::Lift { x, y, file } => {
            let s = session(file)?;
            let a = lift_matrix_in(&s.sequence(y)?, &s.sequence(x)?, s.options.order)?;
            Report::info(vec![format!("A = {}", a.render())], json!({"lift": matrix_json(&a)}))
        }
        Command::Colon { seq, by, file } => {
            let s = session(file)?;
            let c = render_ideal(&colon(&s.sequence(seq)?.ideal(), &s.element(by)?)?)?;
            Report::info(vec![c.clone()], json!({"ideal": c}))
        }
        Command::Intersect { left, right, file } => {
            let s = session(file)?;
            let c = render_ideal(&intersect(&s.sequence(left)?.ideal(), &s.sequence(right)?.ideal())?)?;
            Report::info(vec![c.clone()], json!({"ideal": c}))
        }
        Command::Dim { seq, file } => {
            let s = session(file)?;
            match seq {
                None => {
                    let d = ring_dimension(s.ring())?;
                    Report::info(vec![d.to_string()], json!({"dim": d}))
                }
                Some(name) => {
                    let r = dimension(&s.sequence(name)?.ideal())?;
                    let vars: Vec<&str> = r.witness.iter().map(|&i| s.vars[i].as_str()).collect();
                    Report::info(
                        vec![r.dim.to_string(), format!("independent variables: {}", vars.join(" "))],
                        json!({"dim": r.dim, "witness": vars}),
                    )
                }
            }
        }
        Command::Length(a) => {
            let s = session(&a.file)?;
            let n = length(&s.sequence(&a.seq)?.ideal())?;
            Report::info(vec![n.to_string()], json!({"length": n}))
        }
        Command::Socle(a) => {
            let s = session(&a.file)?;
            let c = render_ideal(&socle(&s.sequence(&a.seq)?.ideal())?)?;
            Report::info(vec![c.clone()], json!({"ideal": c}))
        }
        Command::Regseq(a) => {
            let s = session(&a.file)?;
            let (v, at) = is_regular_sequence(&s.sequence(&a.seq)?)?;
            let mut text = vec![format!("{} is a regular sequence: {v}", a.seq)];
            if let Some(i) = at {
                text.push(format!("fails at entry {i}"));
            }
            Report::verdict(v, text, json!({"regular": v, "failed_at": at}))
        }
        Command::Cmprobe { trials, file } => {
            let s = session(file)?;
            let r = cm_probe(s.ring(), *trials, sample(&s), s.options.limit)?;
            let (ok, text) = match &r.verdict {
                CmVerdict::Consistent => (true, format!("Consistent after {} systems of parameters", r.tested)),
                CmVerdict::NotCm { sop, witness } => {
                    (false, format!("NotCM: {witness} lies in ({})^lim but not in ({})", sop.join(", "), sop.join(", ")))
                }
            };
            Report::verdict(ok, vec![text], json!(r))
        }
        Command::Frobcert { c, z, pair, q } => {
            let s = session(&pair.file)?;
            let (x, y, a) = lift_for(&s, pair)?;
            let rows = frobenius_certificate_check(&s.element(c)?, &s.element(z)?, &x, &y, &a, q)?;
            let text = rows
                .iter()
                .map(|r| {
                    format!(
                        "q = {}: hypothesis {}, conclusion {}",
                        r.q,
                        mark(r.hypothesis),
                        match r.conclusion {
                            Some(b) => mark(b),
                            None => "not applicable",
                        }
                    )
                })
                .collect();
            Report::info(text, json!({"rows": rows}))
        }
        Command::Zerocolon { u, trials, file } => {
            let s = session(file)?;
            let r = zero_colon_probe(s.ring(), &s.element(u)?, *trials, sample(&s), true)?;
            let text = vec![
                format!("0 : u = ({})", r.annihilator.join(", ")),
                match &r.found {
                    Some(sop) => format!("found ({}) after {} samples", sop.join(", "), r.tested),
                    None => format!("none among {} samples", r.tested),
                },
            ];
            Report::verdict(r.found.is_some(), text, json!(r))
        }
        Command::Scenario { name, file, list } => {
            if *list {
                let names = scenario_names();
                return Ok(Report::info(names.iter().map(|n| n.to_string()).collect(), json!({"scenarios": names})));
            }
            let rep = match (name, file) {
                (Some(n), None) => {
                    let mut s = load_scenario(n)?;
                    if let Some(b) = budget()? {
                        s.set_budget(b);
                    }
                    run_session(n, &s)
                }
                (None, Some(path)) => {
                    let s = session(path)?;
                    run_session(&path.display().to_string(), &s)
                }
                _ => return Err(CliError::Usage("scenario needs a name, --file or --list".into())),
            };
            scenario_report(&rep)
        }
    };
    Ok(report.with_warnings(warnings))
}

fn scenario_report(rep: &ScenarioReport) -> Report {
    let mut text: Vec<String> = rep
        .checks
        .iter()
        .map(|c| {
            format!(
                "[{}] line {}: {} {} = {} (got {})",
                if c.passed { "PASS" } else { "FAIL" },
                c.line,
                c.op,
                c.args.join(" "),
                c.expected,
                c.actual
            )
        })
        .collect();
    let passed = rep.checks.iter().filter(|c| c.passed).count();
    text.push(format!("{}: {passed}/{} expectations hold", rep.name, rep.checks.len()));
    Report::verdict(rep.passed(), text, json!(rep))
}
