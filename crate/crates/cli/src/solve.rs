use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use avp_core::{compile, solve_avp_with, AvpSolution, CompiledExpr, Trajectory};

use crate::error::CliError;
use crate::problem::ProblemFile;
use crate::{ExecName, MethodArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Problem file (JSON).
    pub problem: PathBuf,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Requested step; each leg uses the nearest step that divides it evenly.
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Exact solution of one component as an expression in x; repeat once per component.
    #[arg(long, allow_hyphen_values = true)]
    pub exact: Vec<String>,
    #[arg(long, value_enum, default_value = "parallel")]
    pub exec: ExecName,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegMeta {
    pub direction: String,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub steps: usize,
    pub nonconverged_steps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub method: String,
    pub class: String,
    pub dimension: usize,
    pub requested_h: f64,
    pub legs: Vec<LegMeta>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub x: f64,
    pub y: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_error: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Output {
    pub meta: Meta,
    pub rows: Vec<Row>,
}

fn leg_meta(t: &Trajectory) -> LegMeta {
    LegMeta {
        direction: t.direction().to_string(),
        from: t.xs()[0],
        to: t.last().0,
        step: t.step(),
        steps: t.len() - 1,
        nonconverged_steps: t.nonconverged_steps().to_vec(),
    }
}

pub fn build_output(sol: &AvpSolution, method: &str, h: f64, exact: &[CompiledExpr]) -> Output {
    let rows = sol
        .iter()
        .map(|(x, y)| {
            let ex: Option<Vec<f64>> = (!exact.is_empty()).then(|| exact.iter().map(|e| e.eval(x, &[])).collect());
            let err = ex.as_ref().map(|ex| y.iter().zip(ex).map(|(a, b)| (a - b).abs()).collect());
            Row { x, y: y.to_vec(), exact: ex, abs_error: err }
        })
        .collect();
    Output {
        meta: Meta {
            method: method.to_string(),
            class: sol.class().to_string(),
            dimension: sol.ys()[0].len(),
            requested_h: h,
            legs: sol.legs().map(leg_meta).collect(),
        },
        rows,
    }
}

/// Fixed six-decimal formatting; never prints a negative zero.
pub fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn write_csv(out: &Output, w: &mut impl Write) -> std::io::Result<()> {
    let m = &out.meta;
    writeln!(w, "# method: {}", m.method)?;
    writeln!(w, "# class: {}", m.class)?;
    writeln!(w, "# requested h: {}", m.requested_h)?;
    for leg in &m.legs {
        writeln!(
            w,
            "# {} leg: {} -> {}, h = {}, {} steps",
            leg.direction, leg.from, leg.to, leg.step, leg.steps
        )?;
        if !leg.nonconverged_steps.is_empty() {
            writeln!(w, "# {} leg: corrector did not converge at steps {:?}", leg.direction, leg.nonconverged_steps)?;
        }
    }
    let n = m.dimension;
    let mut header = vec!["x".to_string()];
    header.extend((1..=n).map(|i| format!("y{i}")));
    if out.rows.first().is_some_and(|r| r.exact.is_some()) {
        header.extend((1..=n).map(|i| format!("exact{i}")));
        header.extend((1..=n).map(|i| format!("err{i}")));
    }
    writeln!(w, "{}", header.join(","))?;
    for row in &out.rows {
        let mut cells = vec![fixed6(row.x)];
        cells.extend(row.y.iter().map(|v| fixed6(*v)));
        for extra in [&row.exact, &row.abs_error].into_iter().flatten() {
            cells.extend(extra.iter().map(|v| fixed6(*v)));
        }
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn run(args: &SolveArgs) -> Result<(), CliError> {
    let file = ProblemFile::load(&args.problem)?;
    let problem = file.build()?;
    let method = args.method.spec()?;
    let n = problem.system().dimension();
    if !args.exact.is_empty() && args.exact.len() != n {
        return Err(CliError::Input(format!(
            "--exact given {} times; the problem has {n} components",
            args.exact.len()
        )));
    }
    let exact = args
        .exact
        .iter()
        .enumerate()
        .map(|(i, t)| compile(t, 0).map_err(|e| CliError::input(&format!("--exact #{}", i + 1), e)))
        .collect::<Result<Vec<_>, _>>()?;

    let sol = solve_avp_with(&problem, &method, args.h, args.exec.into())?;
    let out = build_output(&sol, method.name(), args.h, &exact);
    for leg in &out.meta.legs {
        if !leg.nonconverged_steps.is_empty() {
            eprintln!(
                "avp: warning: {} leg: corrector hit its iteration cap at {} step(s)",
                leg.direction,
                leg.nonconverged_steps.len()
            );
        }
    }

    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let written = match args.format {
        Format::Csv => write_csv(&out, &mut w),
        Format::Json => serde_json::to_writer(&mut w, &out)
            .map_err(std::io::Error::other)
            .and_then(|_| writeln!(w)),
    };
    match written {
        // Reader went away (e.g. piped into `head`); nothing left to do.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(|e| CliError::input("writing output", e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_decimals_without_negative_zero() {
        assert_eq!(fixed6(0.9999991), "0.999999");
        assert_eq!(fixed6(-1e-9), "0.000000");
        assert_eq!(fixed6(1.7320508075688772), "1.732051");
        assert_eq!(fixed6(-2.5), "-2.500000");
    }
}
