use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indsieve_core::actions::fixed_independent_sets;
use indsieve_core::family::{self, TableRow};
use indsieve_core::indep::enumerate_sets;
use indsieve_core::{csp, CspReport, Error, FamilySpec, VertexSet};
use serde::Serialize;

/// Exact cyclic sieving checks for independent sets.
#[derive(Parser, Debug)]
#[command(name = "indsieve", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the candidate sieving polynomial.
    Poly(Single),
    /// List the independent k-sets, optionally only those fixed by generator^t.
    Enumerate {
        #[command(flatten)]
        single: Single,
        /// Keep only sets fixed by generator^t.
        #[arg(long, value_name = "T", allow_negative_numbers = true)]
        fixed_by: Option<i64>,
    },
    /// Check the sieving phenomenon at every divisor of the group order.
    Verify(Single),
    /// Tabulate counts and verdicts over parameter ranges.
    Table {
        #[arg(long, value_enum)]
        family: FamilyName,
        /// Inclusive range `a..b`, or a single value.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        /// Inclusive range; defaults to every valid r.
        #[arg(long, value_parser = parse_range)]
        r: Option<(usize, usize)>,
        /// Inclusive range; defaults to 1 up to the largest possible set.
        #[arg(long, value_parser = parse_range)]
        k: Option<(usize, usize)>,
    },
}

#[derive(Args, Debug)]
struct Single {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    n: usize,
    /// Power of the cycle or path; required by cycle-power, path-power and whisker-cycle.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    CyclePower,
    PathPower,
    WhiskerCycle,
    Gear,
    Helm,
    Book,
}

impl FamilyName {
    fn as_str(self) -> &'static str {
        match self {
            FamilyName::CyclePower => "cycle-power",
            FamilyName::PathPower => "path-power",
            FamilyName::WhiskerCycle => "whisker-cycle",
            FamilyName::Gear => "gear",
            FamilyName::Helm => "helm",
            FamilyName::Book => "book",
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("{t:?} is not a nonnegative integer"))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?)),
        None => parse(s).map(|v| (v, v)),
    }
}

enum Failure {
    Usage(String),
    Csp,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Single {
    fn spec(&self) -> Result<FamilySpec, Failure> {
        let probe = FamilySpec::from_name(self.family.as_str(), self.n, 0)?;
        let r = match (probe.r(), self.r) {
            (Some(_), None) => {
                return Err(Failure::Usage(format!(
                    "--r is required for {}",
                    self.family.as_str()
                )))
            }
            (_, r) => r.unwrap_or(0),
        };
        let spec = FamilySpec::from_name(self.family.as_str(), self.n, r)?;
        spec.validate()?;
        Ok(spec)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

fn poly(format: Format, single: &Single) -> Result<String, Failure> {
    let spec = single.spec()?;
    let f = spec.candidate(single.k)?;
    Ok(match format {
        Format::Text => format!("{f}\n"),
        Format::Json => to_json(&f),
    })
}

fn enumerate(format: Format, single: &Single, fixed_by: Option<i64>) -> Result<String, Failure> {
    let spec = single.spec()?;
    let graph = Arc::new(spec.graph()?);
    let sets: Vec<VertexSet> = match fixed_by {
        None => enumerate_sets(&graph, single.k),
        Some(t) => {
            let action = spec.action(graph.clone())?;
            fixed_independent_sets(&graph, &action.element(t), single.k)?
        }
    };
    Ok(match format {
        Format::Text => sets.iter().map(|s| format!("{s}\n")).collect(),
        Format::Json => to_json(&sets),
    })
}

fn render_report(report: &CspReport) -> String {
    let mut out = format!(
        "{}: {} (group order {})\n",
        report.label,
        if report.pass { "PASS" } else { "FAIL" },
        report.group_order
    );
    for note in &report.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    writeln!(
        out,
        "{:>4} {:>8} {:>12} {:>12} {:>12}  result",
        "d", "element", "f(w)", "fixed", "quotient"
    )
    .unwrap();
    for row in &report.rows {
        let value = row
            .poly_value
            .as_ref()
            .map_or_else(|| "non-integer".to_string(), |v| v.to_string());
        let quotient = row
            .quotient_count
            .map_or_else(|| "-".to_string(), |q| q.to_string());
        writeln!(
            out,
            "{:>4} {:>8} {:>12} {:>12} {:>12}  {}",
            row.d,
            row.element,
            value,
            row.fixed_count,
            quotient,
            if row.pass { "pass" } else { "FAIL" }
        )
        .unwrap();
    }
    out
}

fn verify(format: Format, single: &Single) -> Result<(String, bool), Failure> {
    let report = csp::verify(&single.spec()?.instance(single.k)?);
    let text = match format {
        Format::Text => render_report(&report),
        Format::Json => to_json(&report),
    };
    Ok((text, report.pass))
}

fn render_table(rows: &[TableRow]) -> String {
    let mut out = format!(
        "{:>4} {:>4} {:>4} {:>14} {:>14}  verdict\n",
        "n", "r", "k", "closed-form", "enumerated"
    );
    for row in rows {
        let r = row.r.map_or_else(|| "-".to_string(), |r| r.to_string());
        let verdict = match row.pass {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "n/a",
        };
        writeln!(
            out,
            "{:>4} {:>4} {:>4} {:>14} {:>14}  {verdict}",
            row.n, r, row.k, row.closed_form, row.enumerated
        )
        .unwrap();
    }
    out
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Poly(single) => poly(cli.format, single),
        Command::Enumerate { single, fixed_by } => enumerate(cli.format, single, *fixed_by),
        Command::Verify(single) => {
            let (text, pass) = verify(cli.format, single)?;
            print!("{text}");
            if pass {
                Ok(String::new())
            } else {
                Err(Failure::Csp)
            }
        }
        Command::Table { family, n, r, k } => {
            let r = r.unwrap_or((0, n.1));
            let rows = family::table(family.as_str(), *n, r, *k)?;
            Ok(match cli.format {
                Format::Text => render_table(&rows),
                Format::Json => to_json(&rows),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Csp) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
