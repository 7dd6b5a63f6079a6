use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use avp_core::{
    compile, compile_rhs, convergence_condition, estimate_lipschitz_with, observed_order_with, stability_condition,
    table1, AnalysisReport, Interval, OdeSystem,
};

use crate::error::CliError;
use crate::problem::ProblemFile;
use crate::{ExecName, MethodArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Stability,
    Convergence,
    Lipschitz,
    Order,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[command(flatten)]
    pub method: MethodArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// Rate of the backward test model dy/dx = lambda*y (stability).
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Lipschitz constant (convergence).
    #[arg(long = "L", allow_negative_numbers = true)]
    pub lipschitz: Option<f64>,
    /// Right-hand side component (lipschitz); repeat per component.
    #[arg(long, allow_hyphen_values = true)]
    pub rhs: Vec<String>,
    /// `lo,hi` range of x (lipschitz).
    #[arg(long, allow_hyphen_values = true)]
    pub x_range: Option<String>,
    /// `lo,hi` range of one state component (lipschitz); repeat per component.
    #[arg(long, allow_hyphen_values = true)]
    pub y_box: Vec<String>,
    /// Lattice points per axis (lipschitz).
    #[arg(long, default_value_t = 21)]
    pub samples: usize,
    /// Problem file whose legs are measured (order); defaults to the reference problem.
    #[arg(long)]
    pub problem: Option<PathBuf>,
    /// Exact solution per component as an expression in x (order, with --problem).
    #[arg(long, allow_hyphen_values = true)]
    pub exact: Vec<String>,
    #[arg(long, value_enum, default_value = "parallel")]
    pub exec: ExecName,
}

fn required<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("--what {what} requires {flag}")))
}

fn parse_range(text: &str, flag: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Input(format!("{flag} expects `lo,hi`, got `{text}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn report_json(r: &AnalysisReport) -> Value {
    json!({
        "lhs": r.lhs,
        "relation": r.relation.symbol(),
        "rhs": r.rhs,
        "satisfied": r.satisfied,
        "inequality": r.inequality_text,
        "decrement_lipschitz": r.decrement_lipschitz,
    })
}

fn emit(human: &[String], json: Value) {
    for line in human {
        println!("{line}");
    }
    println!("{json}");
}

pub fn run(args: &AnalyzeArgs) -> Result<(), CliError> {
    match args.what {
        What::Stability => stability(args),
        What::Convergence => convergence(args),
        What::Lipschitz => lipschitz(args),
        What::Order => order(args),
    }
}

fn stability(args: &AnalyzeArgs) -> Result<(), CliError> {
    let spec = args.method.spec()?;
    let h = required(args.h, "--h", "stability")?;
    let lambda = required(args.lambda, "--lambda", "stability")?;
    let r = stability_condition(&spec.kind, h, lambda)?;
    let verdict = if r.satisfied { "STABLE" } else { "UNSTABLE" };
    let mut j = report_json(&r);
    j["what"] = json!("stability");
    j["method"] = json!(spec.name());
    j["h"] = json!(h);
    j["lambda"] = json!(lambda);
    j["verdict"] = json!(verdict);
    emit(
        &[
            format!("stability of backward {} on dy/dx = lambda*y, h = {h}, lambda = {lambda}", spec.name()),
            r.inequality_text.clone(),
            format!("verdict: {verdict}"),
        ],
        j,
    );
    Ok(())
}

fn convergence(args: &AnalyzeArgs) -> Result<(), CliError> {
    let spec = args.method.spec()?;
    let h = required(args.h, "--h", "convergence")?;
    let l = required(args.lipschitz, "--L", "convergence")?;
    let r = convergence_condition(&spec.kind, h, l)?;
    let verdict = if r.satisfied { "CONVERGENT" } else { "NOT CONVERGENT" };
    let mut human = vec![
        format!("convergence of backward {}, h = {h}, L = {l}", spec.name()),
        r.inequality_text.clone(),
    ];
    if let Some(ld) = r.decrement_lipschitz {
        human.push(format!("decrement-function Lipschitz constant: {ld}"));
    }
    human.push(format!("verdict: {verdict}"));
    let mut j = report_json(&r);
    j["what"] = json!("convergence");
    j["method"] = json!(spec.name());
    j["h"] = json!(h);
    j["L"] = json!(l);
    j["verdict"] = json!(verdict);
    emit(&human, j);
    Ok(())
}

fn lipschitz(args: &AnalyzeArgs) -> Result<(), CliError> {
    if args.rhs.is_empty() {
        return Err(CliError::Input("--what lipschitz requires --rhs (once per component)".into()));
    }
    let n = args.rhs.len();
    let system = OdeSystem::new(n, compile_rhs(&args.rhs, n).map_err(|e| CliError::input("--rhs", e))?)?;
    let (xlo, xhi) = parse_range(
        args.x_range.as_deref().ok_or_else(|| CliError::Input("--what lipschitz requires --x-range".into()))?,
        "--x-range",
    )?;
    if args.y_box.len() != n {
        return Err(CliError::Input(format!("--y-box given {} times; --rhs has {n} components", args.y_box.len())));
    }
    let y_box = args.y_box.iter().map(|t| parse_range(t, "--y-box")).collect::<Result<Vec<_>, _>>()?;
    let est = estimate_lipschitz_with(&system, Interval::new(xlo, xhi)?, &y_box, args.samples, args.exec.into())?;
    let mut human = vec![
        format!("Lipschitz estimate over x in [{xlo}, {xhi}], {} lattice points", est.sample_count),
        format!("L = {} (difference quotients {}, Jacobian norm {})", est.lipschitz, est.pairwise, est.jacobian),
    ];
    let mut j = json!({
        "what": "lipschitz",
        "lipschitz": est.lipschitz,
        "pairwise": est.pairwise,
        "jacobian": est.jacobian,
        "sample_count": est.sample_count,
    });
    if let Some(h) = args.h {
        let spec = args.method.spec()?;
        let r = convergence_condition(&spec.kind, h, est.lipschitz)?;
        let verdict = if r.satisfied { "CONVERGENT" } else { "NOT CONVERGENT" };
        human.push(format!("convergence of backward {} at h = {h}: {}", spec.name(), r.inequality_text));
        human.push(format!("verdict: {verdict}"));
        let mut c = report_json(&r);
        c["method"] = json!(spec.name());
        c["h"] = json!(h);
        c["verdict"] = json!(verdict);
        j["convergence"] = c;
    }
    emit(&human, j);
    Ok(())
}

type Leg = (String, f64, Vec<f64>, f64);
type ExactFn = Box<dyn Fn(f64) -> Vec<f64> + Sync>;

fn order(args: &AnalyzeArgs) -> Result<(), CliError> {
    let spec = args.method.spec()?;
    let h = required(args.h, "--h", "order")?;
    let (system, legs, exact): (OdeSystem, Vec<Leg>, ExactFn) = match &args.problem {
        None => {
            if !args.exact.is_empty() {
                return Err(CliError::Input("--exact needs --problem; the reference problem has its own".into()));
            }
            let legs = vec![
                ("backward".to_string(), 1.0, vec![table1::exact(1.0)], 0.0),
                ("forward".to_string(), 0.0, vec![table1::exact(0.0)], 1.0),
            ];
            (table1::system(), legs, Box::new(table1::exact_vec))
        }
        Some(path) => {
            let problem = ProblemFile::load(path)?.build()?;
            let n = problem.system().dimension();
            if args.exact.len() != n {
                return Err(CliError::Input(format!(
                    "--what order with --problem needs --exact once per component ({n})"
                )));
            }
            let exact = args
                .exact
                .iter()
                .map(|t| compile(t, 0).map_err(|e| CliError::input("--exact", e)))
                .collect::<Result<Vec<_>, _>>()?;
            let (a, c) = (problem.interval().lo(), problem.interval().hi());
            let b = problem.condition().x;
            let yb = problem.condition().y.clone();
            let mut legs = Vec::new();
            if b > a {
                legs.push(("backward".to_string(), b, yb.clone(), a));
            }
            if b < c {
                legs.push(("forward".to_string(), b, yb, c));
            }
            let f = move |x: f64| exact.iter().map(|e| e.eval(x, &[])).collect::<Vec<f64>>();
            (problem.system().clone(), legs, Box::new(f))
        }
    };

    let mut human = vec![format!("observed order of {} at h = {h} vs h/2", spec.name())];
    let mut orders = serde_json::Map::new();
    for (label, from, y, to) in &legs {
        let p = observed_order_with(&system, &exact, (*from, y, *to), &spec, h, args.exec.into())?;
        human.push(format!("{label} leg {from} -> {to}: {p:.4}"));
        orders.insert(label.clone(), json!(p));
    }
    emit(&human, json!({ "what": "order", "method": spec.name(), "h": h, "orders": orders }));
    Ok(())
}
