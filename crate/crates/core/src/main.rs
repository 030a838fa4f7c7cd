//! Command-line verification harness and evaluator for the dihedral
//! Dunkl/intertwining toolkit.
//!
//! `dunkl verify <suite>` reruns the identity suites and exits 0 only if
//! every check passes; `dunkl eval <target>` evaluates families, kernels and
//! the intertwining operator at given points as CSV or JSON rows.

use clap::{Args, Parser, Subcommand};
use dunkl::dihedral::DihedralGroup;
use dunkl::operators::{
    intertwine_ridge_exact, intertwine_ridge_monte_carlo, intertwine_ridge_quad, intertwine_z2,
    RidgeFunction, RidgeProfile,
};
use dunkl::polyring::UniPoly;
use dunkl::sieved::{poisson_closed, sieved_eval, sieved_norm, FamilyTag, WeightFamily};
use dunkl::verify::{run_verify, VerifyOptions};
use dunkl::{harmonics, Error};
use rand::SeedableRng;
use std::f64::consts::PI;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dunkl",
    about = "Dunkl operators, intertwining operators and orthogonal polynomials for dihedral groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report pass/fail per identity.
    Verify(VerifyArgs),
    /// Evaluate a family, kernel or the intertwining operator at points.
    Eval(EvalArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: intertwine, commute, harmonics, orthogonality, kernels,
    /// identities, products, all
    suite: String,
    /// Comma-separated polygon orders (default: the acceptance grid)
    #[arg(long = "k", value_delimiter = ',')]
    k: Option<Vec<usize>>,
    /// Comma-separated multiplicity values
    #[arg(long = "lambda", value_delimiter = ',')]
    lambda: Option<Vec<f64>>,
    /// Maximum profile / basis degree
    #[arg(long = "max-degree")]
    max_degree: Option<usize>,
    /// Random samples per stochastic check
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Deterministic quadrature order
    #[arg(long = "quad-order", default_value_t = 40)]
    quad_order: usize,
    /// Monte Carlo sample count
    #[arg(long = "mc-samples", default_value_t = 1_000_000)]
    mc_samples: usize,
    /// Master seed; drawn from entropy (and printed) when omitted
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override; may only tighten unless --allow-loose is given
    #[arg(long)]
    tol: Option<f64>,
    /// Acknowledge loosening tolerances past their defaults
    #[arg(long = "allow-loose", default_value_t = false)]
    allow_loose: bool,
    /// Emit the report as JSON instead of text
    #[arg(long, default_value_t = false)]
    json: bool,
    /// Write the report to a file instead of standard output
    #[arg(long = "out")]
    out: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    /// Target: sieved, modified, harmonic, poisson-circle, poisson-interval,
    /// intertwine
    target: String,
    /// Weight family for interval targets: minus, plus, mod-plus, mod-minus
    #[arg(long)]
    family: Option<String>,
    /// Modified-family sign (+1 or -1) for the `modified` target
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<i32>,
    #[arg(long = "k")]
    k: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Second multiplicity for the I_2 double-integral path
    #[arg(long)]
    mu: Option<f64>,
    /// Vertex index
    #[arg(long, default_value_t = 0)]
    p: usize,
    /// Degree
    #[arg(long)]
    n: Option<usize>,
    /// Basis index (1 or 2) for the `harmonic` target
    #[arg(long, default_value_t = 1)]
    i: usize,
    /// Kernel radius
    #[arg(long)]
    r: Option<f64>,
    /// Abscissas on [-1, 1], comma separated
    #[arg(long = "t", value_delimiter = ',', allow_hyphen_values = true)]
    t: Option<Vec<f64>>,
    /// Angles, comma separated (alternative to --t)
    #[arg(long = "theta", value_delimiter = ',', allow_hyphen_values = true)]
    theta: Option<Vec<f64>>,
    /// Ridge profile, e.g. "t^4" or "1 - 2*t^3"
    #[arg(long)]
    profile: Option<String>,
    /// Evaluation point coordinates, comma separated, zipped with --y
    #[arg(long = "x", value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<f64>>,
    #[arg(long = "y", value_delimiter = ',', allow_hyphen_values = true)]
    y: Option<Vec<f64>>,
    /// Intertwining path: exact, deterministic, monte-carlo, z2
    #[arg(long, default_value = "exact")]
    method: String,
    #[arg(long = "quad-order", default_value_t = 40)]
    quad_order: usize,
    #[arg(long = "mc-samples", default_value_t = 1_000_000)]
    mc_samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Emit JSON rows instead of CSV
    #[arg(long, default_value_t = false)]
    json: bool,
    #[arg(long = "out")]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => match verify_command(&args) {
            Ok(pass) => {
                if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(2)
            }
        },
        Command::Eval(args) => match eval_command(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(2)
            }
        },
    }
}

fn write_output(out: &Option<String>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {path}: {e}"))),
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn verify_command(args: &VerifyArgs) -> Result<bool, Error> {
    let seed = args.seed.unwrap_or_else(|| {
        let drawn = rand::random::<u64>();
        eprintln!("seed drawn from entropy: {drawn}");
        drawn
    });
    let opts = VerifyOptions {
        ks: args.k.clone(),
        lambdas: args.lambda.clone(),
        max_degree: args.max_degree,
        samples: args.samples,
        quad_order: args.quad_order,
        mc_samples: args.mc_samples,
        seed,
        tol_override: args.tol,
        allow_loose: args.allow_loose,
    };
    let report = run_verify(&args.suite, &opts)?;
    let content = if args.json {
        report.to_json() + "\n"
    } else {
        report.render_text()
    };
    write_output(&args.out, &content)?;
    Ok(report.pass)
}

struct Row {
    header: &'static [&'static str],
    values: Vec<String>,
}

fn render_rows(rows: &[Row], json: bool) -> String {
    let mut out = String::new();
    if rows.is_empty() {
        return out;
    }
    if json {
        for row in rows {
            let object: Vec<String> = row
                .header
                .iter()
                .zip(&row.values)
                .map(|(k, v)| {
                    if v.parse::<f64>().is_ok() {
                        format!("\"{k}\": {v}")
                    } else {
                        format!("\"{k}\": \"{v}\"")
                    }
                })
                .collect();
            out.push_str(&format!("{{{}}}\n", object.join(", ")));
        }
    } else {
        out.push_str(&rows[0].header.join(","));
        out.push('\n');
        for row in rows {
            out.push_str(&row.values.join(","));
            out.push('\n');
        }
    }
    out
}

fn require<T: Copy>(value: Option<T>, name: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::InvalidParameter(format!("missing required flag --{name}")))
}

fn abscissas(args: &EvalArgs) -> Result<Vec<f64>, Error> {
    if let Some(ts) = &args.t {
        return Ok(ts.clone());
    }
    if let Some(thetas) = &args.theta {
        return Ok(thetas.iter().map(|th| th.cos()).collect());
    }
    Err(Error::InvalidParameter(
        "missing evaluation points: pass --t or --theta".into(),
    ))
}

fn eval_command(args: &EvalArgs) -> Result<(), Error> {
    let rows = match args.target.as_str() {
        "sieved" | "modified" => {
            let tag = if args.target == "modified" {
                match args.sign {
                    Some(1) | None => FamilyTag::ModPlus,
                    Some(-1) => FamilyTag::ModMinus,
                    Some(other) => {
                        return Err(Error::InvalidParameter(format!(
                            "sign must be +1 or -1, got {other}"
                        )))
                    }
                }
            } else {
                FamilyTag::parse(
                    args.family
                        .as_deref()
                        .ok_or_else(|| Error::InvalidParameter("missing --family".into()))?,
                )?
            };
            let k = require(args.k, "k")?;
            let lambda = require(args.lambda, "lambda")?;
            let n = require(args.n, "n")?;
            let family = WeightFamily::new(tag, k, lambda)?;
            let norm = sieved_norm(&family, n);
            abscissas(args)?
                .into_iter()
                .map(|t| Row {
                    header: &["family", "k", "lambda", "n", "t", "value", "norm"],
                    values: vec![
                        tag.label().to_string(),
                        k.to_string(),
                        lambda.to_string(),
                        n.to_string(),
                        t.to_string(),
                        sieved_eval(&family, n, t).to_string(),
                        norm.to_string(),
                    ],
                })
                .collect::<Vec<_>>()
        }
        "harmonic" => {
            let k = require(args.k, "k")?;
            let lambda = require(args.lambda, "lambda")?;
            let n = require(args.n, "n")?;
            let thetas = args
                .theta
                .clone()
                .ok_or_else(|| Error::InvalidParameter("harmonic target needs --theta".into()))?;
            let basis = harmonics::y_basis(n, args.i, k, lambda)?;
            thetas
                .into_iter()
                .map(|theta| Row {
                    header: &["k", "lambda", "n", "i", "theta", "value"],
                    values: vec![
                        k.to_string(),
                        lambda.to_string(),
                        n.to_string(),
                        args.i.to_string(),
                        theta.to_string(),
                        basis.poly.eval([theta.cos(), theta.sin()]).to_string(),
                    ],
                })
                .collect()
        }
        "poisson-circle" => {
            let k = require(args.k, "k")?;
            let lambda = require(args.lambda, "lambda")?;
            let r = require(args.r, "r")?;
            let thetas = args
                .theta
                .clone()
                .ok_or_else(|| Error::InvalidParameter("poisson-circle needs --theta".into()))?;
            thetas
                .into_iter()
                .map(|theta| -> Result<Row, Error> {
                    let x = [theta.cos(), theta.sin()];
                    let value = harmonics::poisson_closed_vertex(k, lambda, args.p, x, r)?;
                    Ok(Row {
                        header: &["k", "lambda", "p", "r", "theta", "value"],
                        values: vec![
                            k.to_string(),
                            lambda.to_string(),
                            args.p.to_string(),
                            r.to_string(),
                            theta.to_string(),
                            value.to_string(),
                        ],
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        "poisson-interval" => {
            let tag = FamilyTag::parse(
                args.family
                    .as_deref()
                    .ok_or_else(|| Error::InvalidParameter("missing --family".into()))?,
            )?;
            let k = require(args.k, "k")?;
            let lambda = require(args.lambda, "lambda")?;
            let r = require(args.r, "r")?;
            let family = WeightFamily::new(tag, k, lambda)?;
            abscissas(args)?
                .into_iter()
                .map(|t| -> Result<Row, Error> {
                    let value = poisson_closed(&family, args.p, t, r)?;
                    Ok(Row {
                        header: &["family", "k", "lambda", "p", "r", "t", "value"],
                        values: vec![
                            tag.label().to_string(),
                            k.to_string(),
                            lambda.to_string(),
                            args.p.to_string(),
                            r.to_string(),
                            t.to_string(),
                            value.to_string(),
                        ],
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        "intertwine" => {
            let k = require(args.k, "k")?;
            let lambda = require(args.lambda, "lambda")?;
            let profile_text = args
                .profile
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("missing --profile".into()))?;
            let profile = UniPoly::parse(profile_text)?;
            let xs = args
                .x
                .clone()
                .ok_or_else(|| Error::InvalidParameter("missing --x".into()))?;
            let ys = args
                .y
                .clone()
                .ok_or_else(|| Error::InvalidParameter("missing --y".into()))?;
            if xs.len() != ys.len() {
                return Err(Error::InvalidParameter(
                    "--x and --y need the same number of entries".into(),
                ));
            }
            let group = DihedralGroup::new(k)?;
            let ridge = RidgeFunction::new(&group, args.p, RidgeProfile::poly(profile.clone()));
            let mut rows = Vec::new();
            for (&x1, &x2) in xs.iter().zip(&ys) {
                let point = [x1, x2];
                let (value, std_err) = match args.method.as_str() {
                    "exact" => (intertwine_ridge_exact(&ridge, lambda)?.eval(point), None),
                    "deterministic" => (
                        intertwine_ridge_quad(&ridge, lambda, point, args.quad_order)?,
                        None,
                    ),
                    "monte-carlo" => {
                        let seed = args.seed.unwrap_or_else(|| {
                            let drawn = rand::random::<u64>();
                            eprintln!("seed drawn from entropy: {drawn}");
                            drawn
                        });
                        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                        let mc = intertwine_ridge_monte_carlo(
                            &ridge,
                            lambda,
                            point,
                            args.mc_samples,
                            &mut rng,
                        )?;
                        (mc.value, Some(mc.std_err))
                    }
                    "z2" => {
                        let mu = args.mu.unwrap_or(lambda);
                        let angle = args.p as f64 * PI / k as f64;
                        let (c, s) = (angle.cos(), angle.sin());
                        let f = |a: f64, b: f64| profile.eval(c * a + s * b);
                        (intertwine_z2(f, lambda, mu, point, args.quad_order)?, None)
                    }
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "unknown method '{other}' (expected exact, deterministic, monte-carlo, z2)"
                        )))
                    }
                };
                rows.push(Row {
                    header: &[
                        "k", "lambda", "p", "profile", "x", "y", "method", "value", "std_err",
                    ],
                    values: vec![
                        k.to_string(),
                        lambda.to_string(),
                        args.p.to_string(),
                        profile_text.to_string(),
                        x1.to_string(),
                        x2.to_string(),
                        args.method.clone(),
                        value.to_string(),
                        std_err.map(|e| e.to_string()).unwrap_or_default(),
                    ],
                });
            }
            rows
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown eval target '{other}' (expected sieved, modified, harmonic, \
                 poisson-circle, poisson-interval, intertwine)"
            )))
        }
    };
    write_output(&args.out, &render_rows(&rows, args.json))
}
