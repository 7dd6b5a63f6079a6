use std::fmt::Write as _;

use clap::{Args, ValueEnum};

use avp_core::table1::{self, Report, Row};

use crate::error::CliError;
use crate::solve::fixed6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, value_enum, default_value = "text")]
    pub format: TableFormat,
}

fn cells(r: &Row) -> String {
    format!("{:.1}  {}  {}", r.x, fixed6(r.y), fixed6(r.error))
}

/// Both blocks side by side, forward on the left.
pub fn render(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<32}Final Value Problem", "Initial Value Problem");
    let head = "x_n  y_n       |y_n - y(x_n)|";
    let _ = writeln!(s, "{head:<32}{head}");
    for (f, b) in report.forward.iter().zip(&report.backward) {
        let _ = writeln!(s, "{:<32}{}", cells(f), cells(b));
    }
    s
}

pub fn run(args: &Table1Args) -> Result<(), CliError> {
    let report = table1::run()?;
    match args.format {
        TableFormat::Text => print!("{}", render(&report)),
        TableFormat::Json => println!(
            "{}",
            serde_json::to_string(&report).map_err(|e| CliError::input("writing output", e))?
        ),
    }
    let bad = report.mismatches();
    if bad.is_empty() {
        return Ok(());
    }
    for (leg, r) in &bad {
        eprintln!(
            "avp: mismatch: {leg} x = {:.1}: y = {:.6} (published {:.6}), error = {:.2e}",
            r.x, r.y, r.published_y, r.error
        );
    }
    Err(CliError::Mismatch(format!("{} row(s) differ from the reference table", bad.len())))
}
