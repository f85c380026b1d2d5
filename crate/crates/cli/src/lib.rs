//! Command-line front end: parse an expression, differentiate it at a point
//! and print the value, Jacobian and Hessian.
//!
//! Exit codes: `0` success, `1` invalid input (usage, expression or point
//! syntax), `2` point length does not match the expression, `3` domain
//! error at the point, `4` `--verify` deviation above the threshold.

pub mod point;
pub mod report;

use std::ffi::OsString;

use clap::Parser;
use hdiff::drivers::{self, DriverOptions};
use hdiff::oracle::{self, FdConfig};
use hdiff::{AdScalar, DomainMode, Error, Expr, Field, ParseDiagnostic};
use num_complex::Complex64;

pub use report::{serialize, Format, Report, VerifySummary};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_ARITY: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "hdiff", version, about = "Exact Jacobians and Hessians of expressions via hyper-dual numbers")]
pub struct Args {
    /// Expression over x1..xN, e.g. "x1 + x2^2*x3 - x1/x3 + x2^x1"
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,

    /// Comma-separated coordinates: a, bi, a+bi or a-bi
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub point: String,

    /// Report the Jacobian
    #[arg(long)]
    pub jacobian: bool,

    /// Report the Hessian (and the Jacobian, which comes for free)
    #[arg(long)]
    pub hessian: bool,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Cross-check against central finite differences
    #[arg(long)]
    pub verify: bool,

    /// Largest accepted relative deviation for --verify
    #[arg(long, default_value_t = 1e-4)]
    pub verify_threshold: f64,

    /// Fail on primitives evaluated outside their domain (default)
    #[arg(long, overrides_with = "no_strict")]
    pub strict: bool,

    /// Propagate NaN and infinities instead of failing
    #[arg(long = "no-strict", overrides_with = "strict")]
    pub no_strict: bool,

    /// Evaluate the seeds on a thread pool
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliRequest {
    pub expression: String,
    pub point: Vec<Complex64>,
    /// Evaluate over the complex field even if every coordinate is real.
    pub complex: bool,
    pub jacobian: bool,
    pub hessian: bool,
    pub verify: bool,
    pub verify_threshold: f64,
    pub format: Format,
    pub strict: bool,
    pub parallel: bool,
}

impl CliRequest {
    pub fn from_args(args: Args) -> Result<CliRequest, String> {
        let point = point::parse_point(&args.point)?;
        Ok(CliRequest {
            point: point.coords,
            complex: point.complex,
            expression: args.expr,
            jacobian: args.jacobian,
            hessian: args.hessian,
            verify: args.verify,
            verify_threshold: args.verify_threshold,
            format: args.format,
            strict: !args.no_strict,
            parallel: args.parallel,
        })
    }

    /// Neither flag given means a full report.
    fn wants_hessian(&self) -> bool {
        self.hessian || !self.jacobian
    }

    fn mode(&self) -> DomainMode {
        if self.strict {
            DomainMode::Strict
        } else {
            DomainMode::Propagate
        }
    }
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: u8, stderr: String) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn render_diagnostic(input: &str, d: &ParseDiagnostic) -> String {
    let column = input[..d.offset].chars().count();
    format!("error: {d}\n  {input}\n  {}^\n", " ".repeat(column))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) => EXIT_DOMAIN,
        Error::ArityMismatch { .. } | Error::EmptyPoint => EXIT_ARITY,
        _ => EXIT_INPUT,
    }
}

fn differentiate<F: Field + AdScalar<Field = F>>(
    expr: &Expr,
    point: &[F],
    req: &CliRequest,
) -> Result<(Report, Option<Error>), Error> {
    let f = expr.to_diff_function(req.mode());
    let opts = DriverOptions {
        parallel: req.parallel,
    };
    let derivatives = if req.wants_hessian() {
        drivers::jacobian_and_hessian_with(&f, point, opts)?
    } else {
        drivers::jacobian_with(&f, point, opts)?
    };
    let mut report = Report::from_derivatives(&derivatives);
    if !req.verify {
        return Ok((report, None));
    }

    let plain = |x: &[F]| expr.eval(x, req.mode());
    let cfg = FdConfig::default();
    let checked = oracle::fd_jacobian(plain, point, &cfg).and_then(|fd_jac| {
        let max_rel_dev_jacobian = oracle::max_rel_dev(&derivatives.jacobian, &fd_jac);
        let max_rel_dev_hessian = match &derivatives.hessian {
            Some(h) => {
                let fd_hess = oracle::fd_hessian(plain, point, &cfg)?;
                Some(oracle::max_rel_dev(h.iter().flatten(), fd_hess.iter().flatten()))
            }
            None => None,
        };
        Ok(VerifySummary {
            max_rel_dev_jacobian,
            max_rel_dev_hessian,
        })
    });
    match checked {
        Ok(summary) => {
            report.verify = Some(summary);
            Ok((report, None))
        }
        Err(e) => Ok((report, Some(e))),
    }
}

pub fn run(req: &CliRequest) -> Outcome {
    let expr = match Expr::parse(&req.expression) {
        Ok(e) => e,
        Err(d) => return Outcome::failure(EXIT_INPUT, render_diagnostic(&req.expression, &d)),
    };
    if req.point.is_empty() || req.point.len() != expr.arity() {
        return Outcome::failure(
            EXIT_ARITY,
            format!(
                "error: expression uses {} variable(s) but the point has {} coordinate(s)\n",
                expr.arity(),
                req.point.len()
            ),
        );
    }

    let real = !req.complex
        && !expr.has_imaginary_literal()
        && req.point.iter().all(|z| z.im == 0.0);
    let result = if real {
        let point: Vec<f64> = req.point.iter().map(|z| z.re).collect();
        differentiate(&expr, &point, req)
    } else {
        differentiate(&expr, &req.point, req)
    };
    let (report, verify_error) = match result {
        Ok(r) => r,
        Err(e) => return Outcome::failure(exit_code(&e), format!("error: {e}\n")),
    };

    let stdout = serialize(&report, req.format);
    let failed_check = match (&report.verify, verify_error) {
        (_, Some(e)) => Some(format!("error: verification could not evaluate the oracle: {e}\n")),
        (Some(v), None) => {
            let worst = [Some(v.max_rel_dev_jacobian), v.max_rel_dev_hessian]
                .into_iter()
                .flatten()
                .fold(0.0, |m: f64, d| if m.is_nan() || d.is_nan() { f64::NAN } else { m.max(d) });
            (worst.is_nan() || worst > req.verify_threshold).then(|| {
                format!(
                    "error: deviation {worst:e} from finite differences exceeds {:e}\n",
                    req.verify_threshold
                )
            })
        }
        (None, None) => None,
    };
    match failed_check {
        Some(stderr) => Outcome {
            code: EXIT_VERIFY,
            stdout,
            stderr,
        },
        None => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
    }
}

/// Parses command-line arguments and runs the request.
pub fn run_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::failure(EXIT_INPUT, text)
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match CliRequest::from_args(args) {
        Ok(req) => run(&req),
        Err(msg) => Outcome::failure(EXIT_INPUT, format!("error: {msg}\n")),
    }
}
