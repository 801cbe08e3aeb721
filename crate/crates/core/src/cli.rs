//! Command-line front end. `run` takes the argument list and two writers and
//! returns the process exit code, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage / parse /
//! precondition error, 3 resource limit.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::groupoid::{cardinality_explicit, realize, Limits};
use crate::hyper::{
    verify_species, verify_theorem, ExplicitStrategy, HyperParams, Interpretation, VerificationReport, VerifyOptions,
};
use crate::parse::{parse_groupoid, parse_params, parse_species};
use crate::series::{hypergeometric_series, EgfSeries};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hypergpd",
    version,
    about = "Exact groupoid cardinalities, species valuations and hypergeometric coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of the hypergeometric series h(upper; lower).
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check cardinalities of the hypergeometric species against the coefficients.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = InterpretationArg::Product)]
        interpretation: InterpretationArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Factors)]
        strategy: StrategyArg,
        /// Verify this species expression instead of H(upper; lower).
        #[arg(long)]
        species: Option<String>,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cardinality of a groupoid expression.
    Card {
        expression: String,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Valuation of a species expression.
    Species {
        expression: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Upper parameters, e.g. 1/2,3/4.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    upper: String,
    /// Lower parameters, e.g. 5/6.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    lower: String,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, default_value_t = 16)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Basis::Egf)]
    basis: Basis,
}

#[derive(Debug, Args)]
struct CapArgs {
    #[arg(long, env = "GPD_MAX_OBJECTS", default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_objects: u64,
    #[arg(long, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_morphisms: u64,
    #[arg(long, default_value_t = 4_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_compositions: u64,
}

impl CapArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_objects: self.max_objects,
            max_morphisms: self.max_morphisms,
            max_compositions: self.max_compositions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Egf,
    Ordinary,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Egf => "egf",
            Basis::Ordinary => "ordinary",
        }
    }

    fn render(self, s: &EgfSeries) -> Vec<String> {
        let coeffs = match self {
            Basis::Egf => s.coeffs().to_vec(),
            Basis::Ordinary => s.ordinary_coeffs(),
        };
        coeffs.iter().map(Rational::to_string).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InterpretationArg {
    Product,
    Alt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Whole,
    Factors,
    Blocks,
}

/// The JSON document printed with `--format json`. Every command fills every
/// field; `verified` and `per_n` are null outside `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: ParamsJson,
    pub order: usize,
    pub basis: String,
    pub coefficients: Vec<String>,
    pub verified: Option<bool>,
    pub per_n: Option<Vec<RowJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub n: usize,
    pub explicit: String,
    pub symbolic: String,
    pub analytic: String,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn params_json(upper: &[(u64, u64)], lower: &[(u64, u64)]) -> ParamsJson {
    let list = |v: &[(u64, u64)]| v.iter().map(|(p, q)| format!("{p}/{q}")).collect();
    ParamsJson {
        upper: list(upper),
        lower: list(lower),
    }
}

/// Failure of a command: an exit code plus the message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_limit() { EXIT_LIMIT } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Coeffs { params, output } => run_coeffs(&params, &output, out),
        Command::Verify {
            params,
            interpretation,
            strategy,
            species,
            caps,
            output,
        } => run_verify(
            &params,
            interpretation,
            strategy,
            species.as_deref(),
            &caps,
            &output,
            out,
            err,
        ),
        Command::Card {
            expression,
            mode,
            caps,
            format,
        } => run_card(&expression, mode, &caps, format, out),
        Command::Species { expression, output } => run_species(&expression, &output, out),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_param_args(p: &ParamArgs) -> Result<HyperParams> {
    HyperParams::new(parse_params(&p.upper)?, parse_params(&p.lower)?)
}

fn print_series(
    command: &str,
    params: ParamsJson,
    series: &EgfSeries,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Outcome {
    let coefficients = output.basis.render(series);
    match output.format {
        Format::Text => writeln!(out, "{}", coefficients.join(", "))?,
        Format::Json => {
            let report = Report {
                command: command.to_string(),
                params,
                order: output.order,
                basis: output.basis.name().to_string(),
                coefficients,
                verified: None,
                per_n: None,
            };
            writeln!(out, "{}", report.to_json())?;
        }
    }
    Ok(EXIT_OK)
}

fn run_coeffs(p: &ParamArgs, output: &OutputArgs, out: &mut dyn Write) -> Outcome {
    let params = parse_param_args(p)?;
    let series = hypergeometric_series(&params.upper_rationals(), &params.lower_rationals(), output.order)?;
    print_series(
        "coeffs",
        params_json(&params.upper, &params.lower),
        &series,
        output,
        out,
    )
}

fn run_species(expression: &str, output: &OutputArgs, out: &mut dyn Write) -> Outcome {
    let species = parse_species(expression)?;
    let series = species.valuation(output.order)?;
    print_series("species", params_json(&[], &[]), &series, output, out)
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    p: &ParamArgs,
    interpretation: InterpretationArg,
    strategy: StrategyArg,
    species: Option<&str>,
    caps: &CapArgs,
    output: &OutputArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let params = parse_param_args(p)?;
    let options = VerifyOptions {
        limits: caps.limits(),
        strategy: match strategy {
            StrategyArg::Whole => ExplicitStrategy::Whole,
            StrategyArg::Factors => ExplicitStrategy::HadamardFactors,
            StrategyArg::Blocks => ExplicitStrategy::Blocks,
        },
        ..Default::default()
    };
    let report = match species {
        Some(text) => {
            let species = parse_species(text)?;
            verify_species(
                &species,
                &params.upper_rationals(),
                &params.lower_rationals(),
                output.order,
                &options,
            )?
        }
        None => {
            let interpretation = match interpretation {
                InterpretationArg::Product => Interpretation::Product,
                InterpretationArg::Alt => Interpretation::Alternative,
            };
            verify_theorem(&params, output.order, interpretation, &options)?
        }
    };
    print_verification(&params, &report, output, out)?;

    if let Some(overflow) = &report.overflow {
        return Err(Failure {
            code: EXIT_LIMIT,
            message: format!("n={}: {}", overflow.n, overflow.error),
        });
    }
    if let Some(row) = report.first_failure() {
        writeln!(
            err,
            "mismatch at n={}: explicit {}, symbolic {}, analytic {}",
            row.n, row.explicit, row.symbolic, row.analytic
        )?;
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn print_verification(
    params: &HyperParams,
    report: &VerificationReport,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match output.format {
        Format::Text => {
            let mut table = vec![["n", "explicit", "symbolic", "analytic", "pass"].map(String::from)];
            for r in &report.rows {
                table.push([
                    r.n.to_string(),
                    r.explicit.to_string(),
                    r.symbolic.to_string(),
                    r.analytic.to_string(),
                    if r.pass { "ok" } else { "FAIL" }.to_string(),
                ]);
            }
            write_table(out, &table)
        }
        Format::Json => {
            let analytic = EgfSeries::from_fn(report.rows.len().saturating_sub(1), |n| report.rows[n].analytic.clone());
            let coefficients = if report.rows.is_empty() {
                Vec::new()
            } else {
                output.basis.render(&analytic)
            };
            let verified = if report.overflow.is_some() {
                None
            } else {
                Some(report.passed())
            };
            let per_n = report
                .rows
                .iter()
                .map(|r| RowJson {
                    n: r.n,
                    explicit: r.explicit.to_string(),
                    symbolic: r.symbolic.to_string(),
                    analytic: r.analytic.to_string(),
                    pass: r.pass,
                })
                .collect();
            let doc = Report {
                command: "verify".to_string(),
                params: params_json(&params.upper, &params.lower),
                order: output.order,
                basis: output.basis.name().to_string(),
                coefficients,
                verified,
                per_n: Some(per_n),
            };
            writeln!(out, "{}", doc.to_json())
        }
    }
}

fn write_table<const N: usize>(out: &mut dyn Write, rows: &[[String; N]]) -> std::io::Result<()> {
    let mut widths = [0usize; N];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    for row in rows {
        let line: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(())
}

fn run_card(expression: &str, mode: Mode, caps: &CapArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let e = parse_groupoid(expression)?;
    let (total, classes) = match mode {
        Mode::Symbolic => (e.cardinality(), None),
        Mode::Explicit => {
            let g = realize(&e, &caps.limits())?;
            let report = cardinality_explicit(&g)?;
            let rows: Vec<[String; 3]> = report
                .classes
                .iter()
                .map(|c| {
                    [
                        g.objects[c.representative as usize].to_string(),
                        c.members.to_string(),
                        c.automorphisms.to_string(),
                    ]
                })
                .collect();
            (report.total, Some(rows))
        }
    };
    match format {
        Format::Text => {
            writeln!(out, "{total}")?;
            if let Some(rows) = classes {
                writeln!(out, "{} iso classes", rows.len())?;
                let mut table = vec![["representative", "objects", "automorphisms"].map(String::from)];
                table.extend(rows);
                write_table(out, &table)?;
            }
        }
        Format::Json => {
            let doc = Report {
                command: "card".to_string(),
                params: params_json(&[], &[]),
                order: 0,
                basis: Basis::Egf.name().to_string(),
                coefficients: vec![total.to_string()],
                verified: None,
                per_n: None,
            };
            writeln!(out, "{}", doc.to_json())?;
        }
    }
    Ok(EXIT_OK)
}
