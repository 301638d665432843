use crate::config::{input_path, ElementRef, ElementsSpec, JobConfig, LambdaSpec, RawConfig};
use dynquant::orbit::{build_ag, bundle_module_check, invariant_basis, Element, LawReport, MatrixCoeffAlgebra, StarProduct};
use dynquant::repcat::{irrep, Rep};
use dynquant::twist::{
    dynamical_twist, required_depth, twist_shape, verify_cdybe, verify_equivariance, verify_normal_condition, verify_qdybe,
    verify_shifted_cocycle, LambdaMode, Report, TwistMatrix,
};
use dynquant::{Field, RatFunc, Q};
use dynquant_hopf::spec::HopfCheckSpec;
use serde_json::{json, Value};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Twist,
    VerifyCocycle,
    VerifyQdybe,
    VerifyCdybe,
    VerifyEquivariance,
    StarTable,
    BundleCheck,
    HopfCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Twist => "twist",
            Command::VerifyCocycle => "verify-cocycle",
            Command::VerifyQdybe => "verify-qdybe",
            Command::VerifyCdybe => "verify-cdybe",
            Command::VerifyEquivariance => "verify-equivariance",
            Command::StarTable => "star-table",
            Command::BundleCheck => "bundle-check",
            Command::HopfCheck => "hopf-check",
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    /// Summary lines for the terminal.
    pub lines: Vec<String>,
    /// Written to `<out>/<command>.json`.
    pub json: Value,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn reps(job: &JobConfig, count: usize) -> Result<Vec<Rep>, String> {
    job.reps(count)?
        .iter()
        .map(|w| irrep(&job.rs, w).map_err(|e| format!("field `reps`: {e}")))
        .collect()
}

fn header(job: &JobConfig, command: Command) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command.name()));
    m.insert("algebra".into(), json!(job.rs.name()));
    m.insert(
        "levi".into(),
        json!(job.levi.retained().iter().map(|k| k + 1).collect::<Vec<_>>()),
    );
    m
}

fn q_json(x: &[Q]) -> Value {
    json!(x.iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

fn report_json(r: &Report) -> Value {
    json!({
        "identity": r.identity,
        "passed": r.passed(),
        "violation": r.violation.map(|(i, j)| json!([i, j])),
        "points": r.points,
        "degree_bound": r.degree_bound,
        "message": r.describe(),
    })
}

fn verification(job: &JobConfig, command: Command, reps: &[Rep], mode: Value, reports: Vec<Report>) -> Outcome {
    let mut m = header(job, command);
    m.insert(
        "reps".into(),
        json!(reps.iter().map(|r| r.highest().unwrap_or(&[]).to_vec()).collect::<Vec<_>>()),
    );
    m.insert("lambda".into(), mode);
    let passed = reports.iter().all(Report::passed);
    m.insert("passed".into(), json!(passed));
    m.insert("checks".into(), Value::Array(reports.iter().map(report_json).collect()));
    Outcome {
        passed,
        lines: reports
            .iter()
            .map(|r| format!("{}: {}", if r.passed() { "PASS" } else { "FAIL" }, r.describe()))
            .collect(),
        json: Value::Object(m),
    }
}

fn lambda_mode(job: &JobConfig) -> Result<(LambdaMode, Value), String> {
    match job.lambda(LambdaSpec::Symbolic)? {
        LambdaSpec::Symbolic => Ok((LambdaMode::Symbolic, json!("symbolic"))),
        LambdaSpec::Samples => {
            let (n, seed) = (job.samples()?, job.seed()?);
            Ok((
                LambdaMode::Numeric { min_samples: n, seed },
                json!({"samples": n, "seed": seed}),
            ))
        }
        LambdaSpec::Point(_) => Err("field `lambda`: verification takes `symbolic` or `samples`".into()),
    }
}

fn twist(job: &JobConfig) -> Result<Outcome, String> {
    let r = reps(job, 2)?;
    let depth = match job.depth()? {
        Some(d) => d,
        None => required_depth(&job.levi, &r[0], &r[1]),
    };
    let t: TwistMatrix<RatFunc> = match job.lambda(LambdaSpec::Symbolic)? {
        LambdaSpec::Symbolic => {
            let lambda: Vec<RatFunc> = (0..job.levi.r()).map(RatFunc::var).collect();
            dynamical_twist(&job.levi, &r[0], &r[1], &lambda, depth).map_err(err)?
        }
        LambdaSpec::Point(p) => {
            job.levi.require_generic(&p).map_err(err)?;
            let t: TwistMatrix<Q> = dynamical_twist(&job.levi, &r[0], &r[1], &p, depth).map_err(err)?;
            TwistMatrix {
                algebra: t.algebra,
                levi: t.levi,
                v: t.v,
                w: t.w,
                lambda: t.lambda.iter().map(RatFunc::from_q).collect(),
                matrix: t.matrix.map(RatFunc::from_q),
                slot_weights: t.slot_weights,
                degree_bound: t.degree_bound,
            }
        }
        LambdaSpec::Samples => return Err("field `lambda`: `twist` takes `symbolic` or a point".into()),
    };
    let shape = twist_shape(&job.levi, &t);
    let mut out = t.to_json();
    out["shape"] = json!({
        "block_diagonal": shape.weight_violation.is_none(),
        "triangular": shape.triangularity_violation.is_none(),
        "nilpotency_index": shape.nilpotency_index,
        "weight_count": shape.weight_count,
    });
    out["depth"] = json!(depth);
    Ok(Outcome {
        passed: true,
        lines: vec![format!(
            "twist F^{{{},{}}} on {} ⊗ {}: {}×{} matrix, nilpotency index {:?}",
            t.v.name(),
            t.w.name(),
            t.v.name(),
            t.w.name(),
            t.matrix.rows(),
            t.matrix.cols(),
            shape.nilpotency_index
        )],
        json: out,
    })
}

/// Dominant weights with coordinate sum at most `max_sum`.
fn dominant_weights(rank: usize, max_sum: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                let used: i64 = w.iter().sum();
                (0..=max_sum - used).map(move |k| {
                    let mut x = w.clone();
                    x.push(k);
                    x
                })
            })
            .collect();
    }
    out
}

fn algebra(job: &JobConfig, used: &[Vec<i64>], factor: i64) -> Result<MatrixCoeffAlgebra, String> {
    let blocks = match job.blocks()? {
        Some(b) => b,
        None => dominant_weights(
            job.rs.rank(),
            factor * used.iter().map(|w| w.iter().sum::<i64>()).max().unwrap_or(0),
        ),
    };
    build_ag(&job.rs, &blocks).map_err(|e| format!("field `blocks`: {e}"))
}

fn element(alg: &MatrixCoeffAlgebra, e: &ElementRef) -> Result<Element<Q>, String> {
    alg.basis_element(&e.highest, e.row, e.col)
        .map_err(|x| format!("element [{:?}, {}, {}]: {x}", e.highest, e.row, e.col))
}

fn closure_hint(e: dynquant::Error) -> String {
    match e {
        dynquant::Error::NotClosed(w) => format!("{}; add it to `blocks`", dynquant::Error::NotClosed(w)),
        e => e.to_string(),
    }
}

fn star_table(job: &JobConfig) -> Result<Outcome, String> {
    let (l0, l1) = job.path()?;
    let order = job.t_order()?;
    let spec = job.elements()?;
    let used: Vec<Vec<i64>> = match &spec {
        ElementsSpec::Invariant(ws) => ws.clone(),
        ElementsSpec::List(es) => es.iter().map(|e| e.highest.clone()).collect(),
    };
    let alg = algebra(job, &used, 2)?;
    let elements = match &spec {
        ElementsSpec::Invariant(ws) => invariant_basis(&alg, &job.levi, ws).map_err(err)?,
        ElementsSpec::List(es) => es.iter().map(|e| element(&alg, e)).collect::<Result<_, _>>()?,
    };
    let st = StarProduct::new(&alg, &job.levi, &l0, &l1, order).map_err(err)?;
    let mut table = Vec::new();
    let mut classical = true;
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let s = st.star(a, b).map_err(closure_hint)?;
            classical &= s[0] == alg.classical_product(a, b).map_err(closure_hint)?;
            table.push(json!({"left": i, "right": j, "series": s.iter().map(Element::to_json).collect::<Vec<_>>()}));
        }
    }
    let mut m = header(job, Command::StarTable);
    m.insert("lambda0".into(), q_json(&l0));
    m.insert("lambda1".into(), q_json(&l1));
    m.insert("t_order".into(), json!(order));
    m.insert(
        "elements".into(),
        Value::Array(elements.iter().map(Element::to_json).collect()),
    );
    m.insert("table".into(), Value::Array(table));
    m.insert("order_zero_is_classical".into(), json!(classical));
    m.insert("passed".into(), json!(classical));
    let n = elements.len();
    Ok(Outcome {
        passed: classical,
        lines: vec![format!(
            "{}: {n}×{n} table to order t^{order}; order-zero term {} the classical product",
            if classical { "PASS" } else { "FAIL" },
            if classical { "equals" } else { "differs from" }
        )],
        json: Value::Object(m),
    })
}

fn law_json(r: &LawReport) -> Value {
    json!({
        "law": r.law,
        "cases": r.cases,
        "passed": r.passed(),
        "failure": r.failure.as_ref().map(|f| json!({
            "order": f.order,
            "block": f.block,
            "entry": [f.entry.0, f.entry.1],
        })),
        "residual": r.failure.as_ref().map_or_else(|| "0".to_string(), |f| f.residual.to_string()),
        "message": r.describe(),
    })
}

fn bundle_check(job: &JobConfig) -> Result<Outcome, String> {
    let (l0, l1) = job.path()?;
    let order = job.t_order()?;
    let (inv, sec) = (job.invariants()?, job.sections()?);
    let used: Vec<Vec<i64>> = inv.iter().chain(&sec).map(|e| e.highest.clone()).collect();
    let alg = algebra(job, &used, 3)?;
    let inv: Vec<Element<Q>> = inv.iter().map(|e| element(&alg, e)).collect::<Result<_, _>>()?;
    let sec: Vec<Element<Q>> = sec.iter().map(|e| element(&alg, e)).collect::<Result<_, _>>()?;
    let shift = job.shift()?;
    let st = StarProduct::new(&alg, &job.levi, &l0, &l1, order).map_err(err)?;
    let rep = bundle_module_check(&st, &inv, &sec, shift.as_deref()).map_err(closure_hint)?;
    let mut m = header(job, Command::BundleCheck);
    m.insert("lambda0".into(), q_json(&l0));
    m.insert("lambda1".into(), q_json(&l1));
    m.insert("t_order".into(), json!(order));
    m.insert("shift".into(), shift.as_deref().map_or(Value::Null, q_json));
    m.insert("left".into(), law_json(&rep.left));
    m.insert("right".into(), law_json(&rep.right));
    m.insert("passed".into(), json!(rep.passed()));
    let line = |r: &LawReport| format!("{}: {}", if r.passed() { "PASS" } else { "FAIL" }, r.describe());
    Ok(Outcome {
        passed: rep.passed(),
        lines: vec![line(&rep.left), line(&rep.right)],
        json: Value::Object(m),
    })
}

fn hopf_check(raw: &RawConfig, base_dir: &Path) -> Result<Outcome, String> {
    let input = input_path(raw)?;
    let path = base_dir.join(&input);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("field `input`: cannot read {}: {e}", path.display()))?;
    let rep = HopfCheckSpec::parse(&text)?.run()?;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|(n, f)| json!({"name": n, "passed": f.is_none(), "failure": f}))
        .collect();
    Ok(Outcome {
        passed: rep.passed(),
        lines: rep.lines(),
        json: json!({"command": "hopf-check", "input": input, "checks": checks, "passed": rep.passed()}),
    })
}

/// Runs a command. `Err` is an input or genericity problem (exit code 2).
pub fn run(command: Command, raw: RawConfig, base_dir: &Path) -> Result<Outcome, String> {
    if command == Command::HopfCheck {
        return hopf_check(&raw, base_dir);
    }
    let job = JobConfig::new(raw)?;
    match command {
        Command::Twist => twist(&job),
        Command::VerifyCocycle | Command::VerifyQdybe => {
            let r = reps(&job, 3)?;
            let (mode, mode_json) = lambda_mode(&job)?;
            let triple = [&r[0], &r[1], &r[2]];
            let report = if command == Command::VerifyCocycle {
                verify_shifted_cocycle(&job.levi, triple, &mode)
            } else {
                verify_qdybe(&job.levi, triple, &mode)
            }
            .map_err(err)?;
            Ok(verification(&job, command, &r, mode_json, vec![report]))
        }
        Command::VerifyCdybe => {
            let r = reps(&job, 1)?;
            let reports = vec![
                verify_cdybe(&job.levi, &r[0]).map_err(err)?,
                verify_normal_condition(&job.levi, &r[0]).map_err(err)?,
            ];
            Ok(verification(&job, command, &r, json!("symbolic"), reports))
        }
        Command::VerifyEquivariance => {
            let r = reps(&job, 2)?;
            let report = verify_equivariance(&job.levi, &r[0], &r[1]).map_err(err)?;
            Ok(verification(&job, command, &r, json!("symbolic"), vec![report]))
        }
        Command::StarTable => star_table(&job),
        Command::BundleCheck => bundle_check(&job),
        Command::HopfCheck => unreachable!("handled above"),
    }
}
