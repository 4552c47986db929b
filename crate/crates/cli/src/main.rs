//! Command-line front end: every evaluation and verification route in the
//! library behind one binary with a deterministic, machine-readable record
//! on stdout and diagnostics on stderr.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use harmonic_sums::bbp::{hex_digits, HexDigitRun, MAX_DIGIT_COUNT, MAX_POSITION};
use harmonic_sums::closed_form::{derived_quad_closed, s_closed, t_closed, u_closed};
use harmonic_sums::quadrature::identities::{s_integral, t_integral, u_integral, SIntegralForm};
use harmonic_sums::quadrature::QuadResult;
use harmonic_sums::series::{sum_accelerated, sum_direct, SeriesFamily};
use harmonic_sums::verify::{
    alpha_kernel_suite, cross_check_suite, functional_equation_suite, harmonic_gap_suite,
    harmonic_ratio_suite, root_set_suite, SuiteReport,
};
use harmonic_sums::Error;

const SUITES: &str = "functional-eq, gap-integral, ratio-integral, alpha-kernel, root-sets, cross";

const OUTPUT_HELP: &str = "\
OUTPUT:
  stdout carries exactly one result record per invocation; diagnostics go to
  stderr. With --format json the record is a single JSON object whose keys
  appear in this order: command, inputs, value, decomposition,
  error_estimate, method. Optional fields serialize as null. Decomposition
  entries are [coefficient, atom] pairs; coefficients are exact fractions
  (\"3/4\", \"-1/8\") and atoms use this grammar:
    pi^2             pi squared
    pi               pi
    log(m)           natural log of the integer m
    log(x)^2         a squared logarithm, x spelled out (e.g. log(5)^2)
    log2sin(j,m)^2   squared log of 2*sin(j*pi/m)
    pi*cot(j,m)      pi times cot(j*pi/m)

EXIT CODES:
  0  success
  1  verification failure
  2  usage or domain error
  3  convergence failure";

#[derive(Parser)]
#[command(
    name = "harmonic-sums",
    version,
    about = "Evaluate harmonic-number series, verify their integral identities, \
             and extract hexadecimal digits of pi^2",
    after_help = OUTPUT_HELP
)]
struct Cli {
    /// Output format for the result record on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate S(k), T(k), U(k), or the derived alternating combination.
    Sum {
        /// Series family: S, T, U, or derived.
        family: String,
        /// k (a positive integer) for S/T/U; for `derived`, the method
        /// takes this slot instead.
        #[arg(value_name = "K")]
        first: String,
        /// closed | direct | accel | integral.
        #[arg(value_name = "METHOD")]
        second: Option<String>,
        /// Target error for the accel method (default 1e-10).
        #[arg(long)]
        tol: Option<f64>,
        /// Term count for the direct method (default 1000).
        #[arg(long)]
        terms: Option<u64>,
    },
    /// Run a verification suite; exit 0 when every case passes, 1 otherwise.
    Verify {
        /// One of: functional-eq, gap-integral, ratio-integral,
        /// alpha-kernel, root-sets, cross.
        suite: String,
        /// Seed for the root-sets suite.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Case count for the root-sets suite.
        #[arg(long, default_value_t = 100)]
        cases: u32,
    },
    /// Hexadecimal digits of frac(pi^2), COUNT of them starting at START.
    Pi2 {
        /// 0-based digit position in the fractional part (at most 10^8).
        start: u64,
        /// Number of digits (1 through 16).
        count: u32,
        /// Split the run across this many threads; output order is by
        /// position either way.
        #[arg(long)]
        parallel: Option<u32>,
    },
}

/// The one record every successful invocation prints. Field order here is
/// the JSON key order; both optional fields always appear (as null when
/// absent) so the key set never varies.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct OutputRecord {
    command: String,
    inputs: BTreeMap<String, Json>,
    value: RecordValue,
    decomposition: Option<Vec<(String, String)>>,
    error_estimate: Option<f64>,
    method: String,
}

/// Numeric result for sums and verifications, digit string for pi2.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RecordValue {
    Number(f64),
    Digits(String),
}

struct Outcome {
    record: OutputRecord,
    plain: String,
    exit: u8,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Lib(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => match serde_json::to_string(&outcome.record) {
                    Ok(line) => println!("{line}"),
                    Err(err) => {
                        eprintln!("error: cannot serialize the result: {err}");
                        return ExitCode::from(3);
                    }
                },
                Format::Plain => println!("{}", outcome.plain),
            }
            ExitCode::from(outcome.exit)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(err)) => {
            eprintln!("{err}");
            match err {
                Error::Domain(_) => ExitCode::from(2),
                Error::Convergence(_) => ExitCode::from(3),
            }
        }
    }
}

fn dispatch(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Sum {
            family,
            first,
            second,
            tol,
            terms,
        } => cmd_sum(family, first, second.as_deref(), *tol, *terms),
        Command::Verify { suite, seed, cases } => cmd_verify(suite, *seed, *cases),
        Command::Pi2 {
            start,
            count,
            parallel,
        } => cmd_pi2(*start, *count, *parallel),
    }
}

fn cmd_sum(
    family_name: &str,
    first: &str,
    second: Option<&str>,
    tol: Option<f64>,
    terms: Option<u64>,
) -> Result<Outcome, Failure> {
    let (family, method) = match family_name {
        "derived" => match second {
            None => (SeriesFamily::DerivedQuad, first),
            Some(_) => {
                return Err(Failure::Usage(
                    "family `derived` takes no K; write `sum derived <METHOD>`".into(),
                ))
            }
        },
        "S" | "T" | "U" => {
            let method = second.ok_or_else(|| {
                Failure::Usage("missing METHOD; write `sum <FAMILY> <K> <METHOD>`".into())
            })?;
            let k: u64 = first.parse().map_err(|_| {
                Failure::Usage(format!("K must be a nonnegative integer, got `{first}`"))
            })?;
            let family = match family_name {
                "S" => SeriesFamily::S(k),
                "T" => SeriesFamily::T(k),
                _ => SeriesFamily::U(k),
            };
            (family, method)
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown family `{other}`; expected S, T, U, or derived"
            )))
        }
    };

    if tol.is_some() && method != "accel" {
        return Err(Failure::Usage("--tol applies only to the accel method".into()));
    }
    if terms.is_some() && method != "direct" {
        return Err(Failure::Usage(
            "--terms applies only to the direct method".into(),
        ));
    }

    let mut inputs = BTreeMap::new();
    inputs.insert("family".to_string(), Json::from(family_name));
    if let SeriesFamily::S(k) | SeriesFamily::T(k) | SeriesFamily::U(k) = family {
        inputs.insert("k".to_string(), Json::from(k));
    }
    inputs.insert("method".to_string(), Json::from(method));
    let label = family.to_string();

    let outcome = match method {
        "closed" => {
            let closed = match family {
                SeriesFamily::S(k) => s_closed(k)?,
                SeriesFamily::T(k) => t_closed(k)?,
                SeriesFamily::U(k) => u_closed(k)?,
                SeriesFamily::DerivedQuad => derived_quad_closed()?,
            };
            let decomposition: Vec<(String, String)> = closed
                .terms
                .iter()
                .map(|(coeff, atom)| (coeff.to_string(), atom.to_string()))
                .collect();
            let plain = if decomposition.is_empty() {
                format!("{label} = {}", closed.value)
            } else {
                format!("{label} = {} = {}", render_terms(&decomposition), closed.value)
            };
            Outcome {
                record: OutputRecord {
                    command: "sum".into(),
                    inputs,
                    value: RecordValue::Number(closed.value),
                    decomposition: Some(decomposition),
                    error_estimate: None,
                    method: method.into(),
                },
                plain,
                exit: 0,
            }
        }
        "direct" => {
            let count = terms.unwrap_or(1000);
            inputs.insert("terms".to_string(), Json::from(count));
            let sum = sum_direct(family, count)?;
            sum_outcome(&label, inputs, sum.value, sum.error_estimate, method)
        }
        "accel" => {
            let target = tol.unwrap_or(1e-10);
            inputs.insert("tol".to_string(), Json::from(target));
            let sum = sum_accelerated(family, target)?;
            sum_outcome(&label, inputs, sum.value, sum.error_estimate, method)
        }
        "integral" => {
            let quad = match family {
                SeriesFamily::S(k) => s_integral(k, SIntegralForm::LogDeriv)?,
                SeriesFamily::T(k) => t_integral(k)?,
                SeriesFamily::U(k) => u_integral(k)?,
                // The derived combination integrates as twice the k = 2
                // integral minus the k = 4 one.
                SeriesFamily::DerivedQuad => {
                    let two = s_integral(2, SIntegralForm::LogDeriv)?;
                    let four = s_integral(4, SIntegralForm::LogDeriv)?;
                    QuadResult {
                        value: 2.0 * two.value - four.value,
                        error_estimate: 2.0 * two.error_estimate + four.error_estimate,
                        evaluations: two.evaluations + four.evaluations,
                    }
                }
            };
            sum_outcome(&label, inputs, quad.value, quad.error_estimate, method)
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown method `{other}`; expected closed, direct, accel, or integral"
            )))
        }
    };
    Ok(outcome)
}

fn sum_outcome(
    label: &str,
    inputs: BTreeMap<String, Json>,
    value: f64,
    error_estimate: f64,
    method: &str,
) -> Outcome {
    Outcome {
        plain: format!("{label} = {value} [{method}, error estimate {error_estimate:e}]"),
        record: OutputRecord {
            command: "sum".into(),
            inputs,
            value: RecordValue::Number(value),
            decomposition: None,
            error_estimate: Some(error_estimate),
            method: method.into(),
        },
        exit: 0,
    }
}

/// Human form of a decomposition: `3/4·log(2) - 1/8·pi`.
fn render_terms(pairs: &[(String, String)]) -> String {
    let mut out = String::new();
    for (i, (coeff, atom)) in pairs.iter().enumerate() {
        let (negative, magnitude) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, coeff.as_str()),
        };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude == "1" {
            out.push_str(atom);
        } else {
            out.push_str(magnitude);
            out.push('·');
            out.push_str(atom);
        }
    }
    out
}

fn cmd_verify(suite: &str, seed: u64, cases: u32) -> Result<Outcome, Failure> {
    let mut inputs = BTreeMap::new();
    inputs.insert("suite".to_string(), Json::from(suite));
    let report: SuiteReport = match suite {
        "functional-eq" => functional_equation_suite()?,
        "gap-integral" => harmonic_gap_suite()?,
        "ratio-integral" => harmonic_ratio_suite()?,
        "alpha-kernel" => alpha_kernel_suite()?,
        "root-sets" => {
            inputs.insert("seed".to_string(), Json::from(seed));
            inputs.insert("cases".to_string(), Json::from(cases));
            root_set_suite(seed, cases)?
        }
        "cross" => cross_check_suite()?,
        other => {
            return Err(Failure::Usage(format!(
                "unknown suite `{other}`; expected one of {SUITES}"
            )))
        }
    };
    for case in report.cases.iter().filter(|case| !case.passed) {
        eprintln!(
            "failed: {} (residual {:e}, tolerance {:e})",
            case.label, case.residual, case.tolerance
        );
    }
    Ok(verify_outcome(suite, inputs, &report))
}

fn verify_outcome(suite: &str, inputs: BTreeMap<String, Json>, report: &SuiteReport) -> Outcome {
    let pass = report.passed();
    let max_residual = report.max_residual();
    Outcome {
        plain: format!(
            "verify {suite}: {} ({} cases, max residual {max_residual:e})",
            if pass { "pass" } else { "fail" },
            report.cases.len(),
        ),
        record: OutputRecord {
            command: "verify".into(),
            inputs,
            value: RecordValue::Number(max_residual),
            decomposition: None,
            error_estimate: None,
            method: suite.into(),
        },
        exit: if pass { 0 } else { 1 },
    }
}

fn cmd_pi2(start: u64, count: u32, parallel: Option<u32>) -> Result<Outcome, Failure> {
    let run = match parallel {
        None | Some(1) => hex_digits(start, count)?,
        Some(0) => {
            return Err(Failure::Usage(
                "--parallel needs at least one worker".into(),
            ))
        }
        Some(workers) => parallel_digits(start, count, workers)?,
    };
    if run.carry_warning {
        eprintln!("warning: the fraction sits near a digit-cell boundary; the trailing digit may carry");
    }
    let digits: String = run.digits.iter().map(|d| format!("{d:x}")).collect();
    let mut inputs = BTreeMap::new();
    inputs.insert("start".to_string(), Json::from(start));
    inputs.insert("count".to_string(), Json::from(count));
    if let Some(workers) = parallel {
        inputs.insert("parallel".to_string(), Json::from(workers));
    }
    let end = start + u64::from(count);
    Ok(Outcome {
        plain: format!("frac(pi^2) hex digits [{start}, {end}) = {digits}"),
        record: OutputRecord {
            command: "pi2".into(),
            inputs,
            value: RecordValue::Digits(digits),
            decomposition: None,
            error_estimate: None,
            method: "bbp".into(),
        },
        exit: 0,
    })
}

/// Split a digit run into contiguous chunks, one thread each, and stitch the
/// results back together in position order regardless of completion order.
fn parallel_digits(start: u64, count: u32, workers: u32) -> Result<HexDigitRun, Error> {
    // Out-of-range requests get the serial path's error verbatim; runs whose
    // later chunks would start past the position cap (legal only as the tail
    // of a run that starts below it) fall back to one serial call.
    if count < 1 || count > MAX_DIGIT_COUNT || start > MAX_POSITION {
        return hex_digits(start, count);
    }
    let lanes = workers.min(count);
    let base = count / lanes;
    let extra = count % lanes;
    let mut chunks = Vec::with_capacity(lanes as usize);
    let mut cursor = start;
    for i in 0..lanes {
        let len = base + u32::from(i < extra);
        chunks.push((cursor, len));
        cursor += u64::from(len);
    }
    if chunks.iter().any(|&(chunk_start, _)| chunk_start > MAX_POSITION) {
        return hex_digits(start, count);
    }
    let results: Vec<Result<HexDigitRun, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|&(chunk_start, len)| scope.spawn(move || hex_digits(chunk_start, len)))
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("digit worker panicked"))
            .collect()
    });
    let mut digits = Vec::with_capacity(count as usize);
    let mut carry_warning = false;
    for result in results {
        let chunk = result?;
        carry_warning |= chunk.carry_warning;
        digits.extend_from_slice(&chunk.digits);
    }
    Ok(HexDigitRun {
        start_position: start,
        digits,
        carry_warning,
    })
}
