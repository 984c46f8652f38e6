//! `gl2c`: command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage, config or parse
//! error.

use clap::{Args, Parser, Subcommand};
use gl2c::analyzer::{casimir_check, classify, CasimirOptions};
use gl2c::dsl;
use gl2c::opalg::OperatorExpr;
use gl2c::param::{ExactParams, NumericParams, Param};
use gl2c::report::{
    render_casimir, render_classify, render_constraints, render_scan_csv, render_verify, render_verify_csv, run_scan,
    run_verify, ConstraintReport, Format, Range, RunConfig,
};
use gl2c::scalar::{from_rational, parse_rational};
use gl2c::sphere::Evaluator;
use num_rational::BigRational;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "gl2c", version, about = "Operator-algebra workbench for gl(2,C) closures on the sphere")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Truncation of the spherical-harmonics basis.
    #[arg(long, global = true, default_value_t = 16)]
    lmax: u32,
    /// Bound on numeric residuals.
    #[arg(long = "tol", global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Lower bound that [C, H] must exceed for C to count as not conserved.
    #[arg(long, global = true, default_value_t = 1e-6)]
    floor: f64,
    /// text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,
    /// Worker threads for scans.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Leave the timestamp out of reports.
    #[arg(long, global = true)]
    reproducible: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Input {
    /// A DSL expression.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "script", required_unless_present = "script")]
    expr: Option<String>,
    /// A DSL script file.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Parameter values, `a=1,b=0,c=-1,d=0`; decimals are read exactly.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
}

#[derive(Args, Debug)]
struct Point {
    #[arg(long = "a", allow_hyphen_values = true, default_value = "1")]
    a: String,
    #[arg(long = "b", allow_hyphen_values = true, default_value = "0")]
    b: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity suite.
    Verify,
    /// Derive the conjugacy constraints, closure conditions and cases.
    DeriveConstraints,
    /// Scan the closure conditions over an (a, b) grid.
    Scan {
        /// START:STOP:STEP, default -5:5:0.1.
        #[arg(long, allow_hyphen_values = true)]
        a_range: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b_range: Option<String>,
    },
    /// Classify the algebra at one point of the constrained family.
    Classify(Point),
    /// Check the Casimir candidates at one point.
    Casimir(Point),
    /// Print the matrix of an expression.
    Repr {
        #[command(flatten)]
        input: Input,
        /// Only rows and columns with l <= lmax - INTERIOR.
        #[arg(long, default_value_t = 0)]
        interior: u32,
    },
    /// Print the normal form of an expression.
    Eval {
        #[command(flatten)]
        input: Input,
    },
}

/// Outcome of a command that ran to completion.
struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|out| {
        match &cli.global.output {
            Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("cannot write {}: {e}", path.display()))?,
            None => print!("{}", out.text),
        }
        Ok(out.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("gl2c: {msg}");
            ExitCode::from(2)
        }
    }
}

fn config(cli: &Cli, name: &str) -> Result<RunConfig, String> {
    let g = &cli.global;
    let mut c = RunConfig {
        command: name.into(),
        lmax: g.lmax,
        tolerance: g.tolerance,
        casimir_floor: g.floor,
        format: g.format.parse().map_err(|e| format!("{e}"))?,
        seed: g.seed,
        jobs: g.jobs,
        reproducible: g.reproducible,
        ..RunConfig::default()
    };
    // repr and eval only need lmax to cover the expression's N-degree,
    // which evaluation checks itself.
    if matches!(cli.command, Command::Repr { .. } | Command::Eval { .. }) {
        c.lmax = c.lmax.max(2);
        c.validate().map_err(|e| e.to_string())?;
        c.lmax = g.lmax;
    } else {
        c.validate().map_err(|e| e.to_string())?;
    }
    Ok(c)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn no_csv(command: &str) -> String {
    format!("--format csv is not available for `{command}`")
}

fn rational(name: &str, text: &str) -> Result<BigRational, String> {
    parse_rational(text).ok_or_else(|| format!("{name}: `{text}` is not an exact number"))
}

fn parse_params(text: &str) -> Result<Vec<(Param, String)>, String> {
    let mut out: Vec<(Param, String)> = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| format!("--params: expected NAME=VALUE, got `{part}`"))?;
        let p = Param::from_name(name.trim()).ok_or_else(|| format!("--params: unknown parameter `{}`", name.trim()))?;
        if out.iter().any(|(q, _)| *q == p) {
            return Err(format!("--params: `{p}` given twice"));
        }
        out.push((p, value.trim().to_string()));
    }
    Ok(out)
}

fn exact_params(given: &[(Param, String)]) -> Result<ExactParams, String> {
    given
        .iter()
        .map(|(p, v)| Ok((*p, from_rational(rational(p.name(), v)?))))
        .collect()
}

fn load(input: &Input) -> Result<(OperatorExpr, ExactParams, Vec<(String, String)>), String> {
    let src = match (&input.expr, &input.script) {
        (Some(e), _) => e.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        (None, None) => return Err("give --expr or --script".into()),
    };
    let expr = dsl::compile(&src).map_err(|e| e.to_string())?;
    let given = parse_params(input.params.as_deref().unwrap_or(""))?;
    let echo = given.iter().map(|(p, v)| (p.to_string(), v.clone())).collect();
    Ok((expr, exact_params(&given)?, echo))
}

fn run(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Verify => {
            let c = config(cli, "verify")?;
            let r = run_verify(&c).map_err(|e| e.to_string())?;
            let text = match c.format {
                Format::Text => render_verify(&r),
                Format::Json => json(&r),
                Format::Csv => render_verify_csv(&r),
            };
            Ok(Output { text, passed: r.passed() })
        }
        Command::DeriveConstraints => {
            let c = config(cli, "derive-constraints")?;
            let r = ConstraintReport::build().map_err(|e| e.to_string())?;
            match c.format {
                Format::Text => Ok(Output::ok(render_constraints(&r))),
                Format::Json => Ok(Output::ok(json(&r))),
                Format::Csv => Err(no_csv("derive-constraints")),
            }
        }
        Command::Scan { a_range, b_range } => {
            let mut c = config(cli, "scan")?;
            let range = |s: &Option<String>| -> Result<Option<Range>, String> {
                s.as_deref().map(|t| t.parse::<Range>().map_err(|e| e.to_string())).transpose()
            };
            c.a_range = range(a_range)?;
            c.b_range = range(b_range)?;
            let r = run_scan(&c).map_err(|e| e.to_string())?;
            Ok(Output::ok(match c.format {
                Format::Json => json(&r),
                Format::Text | Format::Csv => render_scan_csv(&r),
            }))
        }
        Command::Classify(p) => {
            let c = config(cli, "classify")?;
            let r = classify(&rational("--a", &p.a)?, &rational("--b", &p.b)?, c.lmax).map_err(|e| e.to_string())?;
            match c.format {
                Format::Text => Ok(Output::ok(render_classify(&r))),
                Format::Json => Ok(Output::ok(json(&r))),
                Format::Csv => Err(no_csv("classify")),
            }
        }
        Command::Casimir(p) => {
            let c = config(cli, "casimir")?;
            let opts = CasimirOptions {
                lmax: c.lmax,
                hamiltonian_lmax: c.lmax.min(12),
                tolerance: c.tolerance,
                floor: c.casimir_floor,
            };
            let r = casimir_check(&rational("--a", &p.a)?, &rational("--b", &p.b)?, &opts).map_err(|e| e.to_string())?;
            let text = match c.format {
                Format::Text => render_casimir(&r),
                Format::Json => json(&r),
                Format::Csv => return Err(no_csv("casimir")),
            };
            Ok(Output { text, passed: r.passes() })
        }
        Command::Repr { input, interior } => {
            let c = config(cli, "repr")?;
            let (expr, values, _) = load(input)?;
            if *interior > c.lmax {
                return Err(format!("--interior {interior} exceeds lmax {}", c.lmax));
            }
            let m = Evaluator::new(c.lmax)
                .evaluate(&expr, &NumericParams::from_exact(&values))
                .map_err(|e| e.to_string())?;
            match c.format {
                Format::Text | Format::Csv => Ok(Output::ok(m.dump_block(c.lmax - interior))),
                Format::Json => Err("--format json is not available for `repr`".into()),
            }
        }
        Command::Eval { input } => {
            let c = config(cli, "eval")?;
            let (expr, values, echo) = load(input)?;
            let expr = if values.is_empty() { expr } else { expr.substitute_partial(&values) };
            match c.format {
                Format::Text => Ok(Output::ok(format!("{expr}\n"))),
                Format::Json => Ok(Output::ok(json(&serde_json::json!({
                    "params": echo,
                    "normal_form": expr.to_string(),
                    "n_degree": expr.degree_n(),
                })))),
                Format::Csv => Err(no_csv("eval")),
            }
        }
    }
}
