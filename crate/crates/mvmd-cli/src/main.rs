//! Command-line frontend for the mvmd cross-dimensional matrix algebra
//! library: expression evaluation, law-check suites, spectra, inversion,
//! reduction, projection, and system simulation.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error,
//! 3 numeric error (non-invertible input, non-convergent series, ...).

mod checks;
mod expr;
mod matio;
mod sim;

use clap::{ArgAction, Parser, Subcommand};
use mvmd::equivalence::{reduce_mat, reduce_vec, reduce_vec_e, MatWeight};
use mvmd::geometry::{norm, project};
use mvmd::lie::{ext_invert, invert_criterion, ExtMat, InvertMethod};
use mvmd::maps::s_spectrum;
use mvmd::mat::Mat;
use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mvmd", version, about = "dimension-free matrix algebra toolkit")]
struct Cli {
    /// Numeric tolerance for checks and reductions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Use the normalized (E) bridge weighting (default)
    #[arg(long, global = true, action = ArgAction::SetTrue, conflicts_with = "unweighted")]
    weighted: bool,

    /// Use the all-ones bridge weighting
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    unweighted: bool,

    /// Seed for randomized check suites
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an infix expression over matrices bound from files
    Eval {
        /// Expression, e.g. "(A hadd B) pstp C" or "box(A dk B')"
        expr: String,
        /// Bindings NAME=FILE for the identifiers in the expression
        bindings: Vec<String>,
        /// Write the result as a matrix file instead of pretty-printing
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded law-check suite and report per-law max residuals
    Check {
        /// One of stp_laws, hyper_ring, perm, geometry, lie, all
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Simulate a linear (control) system from a key = value spec file
    Simulate {
        spec: PathBuf,
        /// Write the trajectory (time, dim, entries per row) to a file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the eigenvalues of the squaring map of a matrix
    Spectrum { file: PathBuf },
    /// Invert I + A0 in the extended matrix ring
    Invert {
        file: PathBuf,
        /// Scalar part a of a*I + A0
        #[arg(long, default_value_t = 1.0)]
        scalar: f64,
        /// closed-form | linear-solve
        #[arg(long, default_value = "closed-form")]
        method: String,
    },
    /// Reduce a vector or matrix to its irreducible representative
    Reduce {
        file: PathBuf,
        /// vec | vec-e | mat-i | mat-j | mat-e
        #[arg(long, default_value = "vec")]
        kind: String,
    },
    /// Project a vector onto a lower (or higher) dimension
    Project {
        file: PathBuf,
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let weighted = !cli.unweighted;
    match dispatch(&cli, weighted) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg.text);
            msg.code
        }
    }
}

struct Failure {
    text: String,
    code: ExitCode,
}

fn usage(text: impl Into<String>) -> Failure {
    Failure {
        text: text.into(),
        code: ExitCode::from(2),
    }
}

fn numeric(e: mvmd::Error) -> Failure {
    use mvmd::Error as E;
    let code = match e {
        E::NotInvertible { .. }
        | E::NonConvergent { .. }
        | E::NumericalBlowUp { .. }
        | E::DimensionNotInvariant { .. }
        | E::EigenFailure => 3,
        _ => 2,
    };
    Failure {
        text: e.to_string(),
        code: ExitCode::from(code),
    }
}

fn dispatch(cli: &Cli, weighted: bool) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Eval { expr, bindings, out } => cmd_eval(expr, bindings, out.as_deref(), weighted),
        Command::Check { suite, trials } => cmd_check(suite, cli.seed, *trials),
        Command::Simulate { spec, out } => cmd_simulate(spec, out.as_deref(), cli.tol),
        Command::Spectrum { file } => cmd_spectrum(file),
        Command::Invert { file, scalar, method } => cmd_invert(file, *scalar, method, weighted),
        Command::Reduce { file, kind } => cmd_reduce(file, kind, cli.tol),
        Command::Project { file, dim, out } => cmd_project(file, *dim, out.as_deref()),
    }
}

fn cmd_eval(
    src: &str,
    bindings: &[String],
    out: Option<&std::path::Path>,
    weighted: bool,
) -> Result<ExitCode, Failure> {
    let mut map = HashMap::new();
    for b in bindings {
        let (name, file) = b
            .split_once('=')
            .ok_or_else(|| usage(format!("binding '{}' is not NAME=FILE", b)))?;
        let m = matio::read_mat(std::path::Path::new(file)).map_err(usage)?;
        map.insert(name.to_owned(), m);
    }
    let ev = expr::Evaluator {
        bindings: &map,
        weighted,
    };
    let result = ev.eval(src).map_err(usage)?;
    match out {
        Some(path) => matio::write_mat(path, &result).map_err(usage)?,
        None => print!("{}", matio::render(&result)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(suite: &str, seed: u64, trials: usize) -> Result<ExitCode, Failure> {
    let laws = checks::run_suite(suite, seed, trials).map_err(usage)?;
    let mut failed = 0;
    for law in &laws {
        let status = if law.passed() { "ok" } else { "FAIL" };
        println!(
            "{:<44} max residual {:9.3e} (tol {:7.1e}) {}",
            law.name, law.max_residual, law.tol, status
        );
        if !law.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{} of {} laws failed", failed, laws.len());
        return Ok(ExitCode::from(1));
    }
    println!("{} laws passed", laws.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(
    spec: &std::path::Path,
    out: Option<&std::path::Path>,
    tol: f64,
) -> Result<ExitCode, Failure> {
    let sim = sim::parse_sim_file(spec, tol).map_err(usage)?;
    let traj = sim::run(&sim).map_err(numeric)?;
    let dims = traj.dims();
    let kind = if sim::is_discrete(&sim) { "discrete" } else { "continuous" };
    println!("{} run, {} states", kind, dims.len());
    let mut summary: Vec<String> = Vec::new();
    for (i, d) in dims.iter().enumerate() {
        if i == 0 || dims[i - 1] != *d {
            summary.push(format!("{}", d));
        }
    }
    println!("dimension sequence: {}", summary.join(" -> "));
    match out {
        Some(path) => std::fs::write(path, traj.export())
            .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?,
        None => print!("{}", traj.export()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(file: &std::path::Path) -> Result<ExitCode, Failure> {
    let m = matio::read_mat(file).map_err(usage)?;
    let pairs = s_spectrum(&m).map_err(numeric)?;
    for (lambda, _) in &pairs {
        println!("{:+.12e} {:+.12e}i", lambda.re, lambda.im);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_invert(
    file: &std::path::Path,
    scalar: f64,
    method: &str,
    weighted: bool,
) -> Result<ExitCode, Failure> {
    let body = matio::read_mat(file).map_err(usage)?;
    let method = match method {
        "closed-form" => InvertMethod::ClosedForm,
        "linear-solve" => InvertMethod::LinearSolve,
        other => return Err(usage(format!("unknown method '{}'", other))),
    };
    let criterion = invert_criterion(&body, weighted).map_err(numeric)?;
    println!("invertibility criterion: {:.6e}", criterion);
    let x = ExtMat::new(scalar, body.clone());
    let inv = ext_invert(&x, method, weighted).map_err(numeric)?;
    println!("inverse scalar: {:.17e}", inv.scalar);
    println!("inverse body:");
    print!("{}", matio::render(&inv.body));
    let residual = verify_inverse(&x, &inv, weighted).map_err(numeric)?;
    println!("verification residual: {:.3e}", residual);
    Ok(ExitCode::SUCCESS)
}

fn verify_inverse(x: &ExtMat, inv: &ExtMat, weighted: bool) -> mvmd::Result<f64> {
    let prod = mvmd::lie::ext_mul(x, inv, weighted)?;
    Ok(prod.body.norm_inf() + (prod.scalar - 1.0).abs())
}

fn cmd_reduce(file: &std::path::Path, kind: &str, tol: f64) -> Result<ExitCode, Failure> {
    let m = matio::read_mat(file).map_err(usage)?;
    match kind {
        "vec" | "vec-e" => {
            let x = expr::as_vec(&m).map_err(usage)?;
            let red = if kind == "vec" { reduce_vec(&x, tol) } else { reduce_vec_e(&x, tol) };
            println!("factor: {}", red.factor);
            print!("{}", matio::render(&red.representative.as_col()));
        }
        "mat-i" | "mat-j" | "mat-e" => {
            let weight = match kind {
                "mat-i" => MatWeight::I,
                "mat-j" => MatWeight::J,
                _ => MatWeight::E,
            };
            let red = reduce_mat(&m, weight, tol).map_err(numeric)?;
            println!("factors: {} x {}", red.row_factor, red.col_factor);
            print!("{}", matio::render(&red.representative));
        }
        other => return Err(usage(format!("unknown reduction kind '{}'", other))),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_project(
    file: &std::path::Path,
    dim: usize,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, Failure> {
    if dim == 0 {
        return Err(usage("target dimension must be positive"));
    }
    let m = matio::read_mat(file).map_err(usage)?;
    let x = expr::as_vec(&m).map_err(usage)?;
    let (x0, residual) = project(&x, dim).map_err(numeric)?;
    let rnorm = norm(&residual).map_err(numeric)?;
    println!("residual norm: {:.6e}", rnorm);
    let col: Mat = x0.as_col();
    match out {
        Some(path) => matio::write_mat(path, &col).map_err(usage)?,
        None => print!("{}", matio::render(&col)),
    }
    Ok(ExitCode::SUCCESS)
}
