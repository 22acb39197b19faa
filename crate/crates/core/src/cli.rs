//! The `upq` command line.
//!
//! Block shapes in diagrams (top row is `U(p)`, bottom row is `U(q)`):
//!
//! ```text
//! par_down    par_up      rect     trap_top    trap_bottom
//! x x          x x        x x      x x x        x x
//!  x x        x x         x x       x x        x x x
//! ```
//!
//! Exit codes: 0 ok, 1 selftest failure, 2 parse error, 3 invalid input,
//! 4 size guard.

use std::ffi::OsString;
use std::io::{BufRead, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::datum::{enumerate_data, mu_from_datum};
use crate::diagram::render;
use crate::error::{Error, Result};
use crate::rational::HalfRational;
use crate::screening::{screen, ScreeningReport};
use crate::selftest;
use crate::theta::{NuVector, ThetaDatum};
use crate::weights::{KTypeWeight, Signature};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFTEST: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_GUARD: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "upq", version, about = "Block diagrams and unitarity screening for U(p,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Screen a request read from a file or stdin.
    Analyze(AnalyzeArgs),
    /// Derive the datum of a K-type, attach ν, and screen it.
    FromMu(FromMuArgs),
    /// Print every datum with contents bounded by --bound, one JSON line each.
    Enumerate(EnumerateArgs),
    /// Run the golden cases and oracle comparisons.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Request file; stdin when absent or "-".
    file: Option<PathBuf>,
    /// Also print an ASCII block diagram after the report.
    #[arg(long)]
    diagram: bool,
    /// Treat the input as JSON lines and emit one result per line.
    #[arg(long)]
    batch: bool,
}

#[derive(Args, Debug)]
struct FromMuArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    /// Highest weight as "a,b,...|c,d,...".
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// ν of one block with min(r,s) > 0, in content order, e.g. "5/2,3/2".
    /// Omit every --nu for ν = 0.
    #[arg(long, allow_hyphen_values = true)]
    nu: Vec<String>,
    #[arg(long)]
    diagram: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    /// Largest |content| allowed, e.g. "3/2".
    #[arg(long, allow_hyphen_values = true)]
    bound: String,
    /// Lift the p+q size guard.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Run only groups whose name contains this string.
    #[arg(long)]
    filter: Option<String>,
    /// Read golden files from this directory instead of the built-in set.
    #[arg(long)]
    golden_dir: Option<PathBuf>,
}

/// Input of `analyze`: a θ-stable datum, or a K-type with ν.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum AnalyzeRequest {
    Datum {
        theta_datum: ThetaDatum,
    },
    KType {
        p: usize,
        q: usize,
        mu: MuSpec,
        #[serde(default)]
        nu: Vec<NuVector>,
    },
    Bare(ThetaDatum),
}

/// A K-type written either as `"a,b|c"` or as `{"left": [...], "right": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum MuSpec {
    Text(String),
    Weight(KTypeWeight),
}

impl AnalyzeRequest {
    pub fn parse(text: &str) -> Result<AnalyzeRequest> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let has_datum = value.get("theta_datum").is_some();
        let has_mu = value.get("mu").is_some();
        if has_datum && has_mu {
            return Err(Error::Validation("give either theta_datum or p, q, mu, nu, not both".into()));
        }
        serde_json::from_value(value).map_err(|e| Error::Validation(format!("unrecognised request: {e}")))
    }

    pub fn into_theta_datum(self) -> Result<ThetaDatum> {
        match self {
            AnalyzeRequest::Datum { theta_datum: td } | AnalyzeRequest::Bare(td) => {
                td.check()?;
                Ok(td)
            }
            AnalyzeRequest::KType { p, q, mu, nu } => {
                let sig = Signature::new(p, q)?;
                let mu = match mu {
                    MuSpec::Text(s) => s.parse()?,
                    MuSpec::Weight(w) => w,
                };
                mu.check_signature(sig)?;
                ThetaDatum::from_mu(&mu, sig, &nu)
            }
        }
    }
}

/// Output of `from-mu`; `analyze` accepts it back as a request.
#[derive(Debug, Serialize)]
struct FromMuOutput<'a> {
    theta_datum: &'a ThetaDatum,
    report: &'a ScreeningReport,
}

#[derive(Debug, Serialize)]
struct EnumerateLine<'a> {
    datum: &'a crate::datum::LambdaDatum,
    mu: KTypeWeight,
    report: ScreeningReport,
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        "parse" => EXIT_PARSE,
        "guard" => EXIT_GUARD,
        _ => EXIT_VALIDATION,
    }
}

fn error_json(e: &Error) -> serde_json::Value {
    json!({"error": e.kind(), "message": e.to_string()})
}

fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

/// Screens one request and returns the report line.
pub fn analyze_text(text: &str) -> Result<(ThetaDatum, ScreeningReport)> {
    let td = AnalyzeRequest::parse(text)?.into_theta_datum()?;
    let report = screen(&td)?;
    Ok((td, report))
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let outcome = match cli.command {
        Command::Analyze(a) => cmd_analyze(a, stdin, stdout),
        Command::FromMu(a) => cmd_from_mu(a, stdout),
        Command::Enumerate(a) => cmd_enumerate(a, stdout),
        Command::Selftest(a) => return cmd_selftest(a, stdout, stderr),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(&e));
            exit_code(&e)
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

fn read_input(file: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match file {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(io_err)?;
        }
    }
    Ok(text)
}

fn cmd_analyze(a: AnalyzeArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let text = read_input(a.file.as_ref(), stdin)?;
    if !a.batch {
        let (td, report) = analyze_text(&text)?;
        writeln!(out, "{}", to_line(&report)).map_err(io_err)?;
        if a.diagram {
            writeln!(out, "{}", render(&td)).map_err(io_err)?;
        }
        return Ok(EXIT_OK);
    }
    let lines: Vec<(usize, String)> = text
        .as_bytes()
        .lines()
        .map(|l| l.expect("in-memory read"))
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let results: Vec<(usize, Result<ScreeningReport>)> =
        lines.par_iter().map(|(i, l)| (i + 1, analyze_text(l).map(|(_, r)| r))).collect();
    let mut code = EXIT_OK;
    for (line, res) in results {
        let text = match res {
            Ok(report) => to_line(&report),
            Err(e) => {
                if code == EXIT_OK {
                    code = exit_code(&e);
                }
                let mut v = error_json(&e);
                v["line"] = json!(line);
                v.to_string()
            }
        };
        writeln!(out, "{text}").map_err(io_err)?;
    }
    Ok(code)
}

fn cmd_from_mu(a: FromMuArgs, out: &mut dyn Write) -> Result<i32> {
    let sig = Signature::new(a.p, a.q)?;
    let mu: KTypeWeight = a.mu.parse()?;
    mu.check_signature(sig)?;
    let nus =
        a.nu.iter()
            .map(|s| {
                let mut v = s.split(',').map(|x| x.trim().parse::<HalfRational>()).collect::<Result<Vec<_>>>()?;
                v.sort_unstable_by(|x, y| y.cmp(x));
                Ok(NuVector(v))
            })
            .collect::<Result<Vec<_>>>()?;
    let td = ThetaDatum::from_mu(&mu, sig, &nus)?;
    let report = screen(&td)?;
    writeln!(out, "{}", to_line(&FromMuOutput { theta_datum: &td, report: &report })).map_err(io_err)?;
    if a.diagram {
        writeln!(out, "{}", render(&td)).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Result<i32> {
    let sig = Signature::new(a.p, a.q)?;
    let bound: HalfRational = a.bound.parse()?;
    for datum in enumerate_data(sig, bound, a.force)? {
        let mu = mu_from_datum(&datum)?;
        let report = screen(&ThetaDatum::tempered(datum.clone()))?;
        writeln!(out, "{}", to_line(&EnumerateLine { datum: &datum, mu, report })).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(a: SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let groups = match &a.golden_dir {
        Some(dir) => match selftest::load_dir(dir) {
            Ok(g) => g,
            Err(f) => {
                let _ = writeln!(err, "FAIL {f}");
                return EXIT_SELFTEST;
            }
        },
        None => selftest::embedded_groups(),
    };
    let summary = selftest::run(&groups, a.filter.as_deref());
    for (name, n) in &summary.passed {
        let _ = writeln!(out, "ok   {name} ({n} cases)");
    }
    match summary.failure {
        Some(f) => {
            let _ = writeln!(err, "FAIL {f}");
            EXIT_SELFTEST
        }
        None if summary.passed.is_empty() => {
            let _ = writeln!(err, "FAIL no group matches the filter");
            EXIT_SELFTEST
        }
        None => {
            let _ = writeln!(out, "all {} groups passed", summary.passed.len());
            EXIT_OK
        }
    }
}
