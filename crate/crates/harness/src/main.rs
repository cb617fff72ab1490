use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracbessel::besselcore::{value, BesselKind};
use fracbessel::fracops::{expected, shift, Route, ShiftRequest};
use fracbessel::groupaction::{group_shift, lommel_series, Direction, GroupShift};
use fracbessel::intreps::{represent, Family, ReprRequest};
use fracbessel::{Error, C64};
use fracbessel_harness::{emit_report, run_suite, OutputFormat, Status, SuiteConfig};

#[derive(Parser)]
#[command(name = "fracbessel", version, about = "Fractional order shifts of Bessel functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a Bessel function.
    Eval {
        #[arg(long, value_parser = kind)]
        kind: BesselKind,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        nu: C64,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        x: C64,
    },
    /// Shift the order by a fractional amount along one of the contour routes.
    Shift {
        #[arg(long, value_parser = route)]
        route: Route,
        #[arg(long, value_parser = kind)]
        kind: BesselKind,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        nu: C64,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        mu: C64,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        z: C64,
    },
    /// Evaluate an integral representation.
    Represent {
        #[arg(long, value_parser = family)]
        family: Family,
        #[arg(long, value_parser = kind)]
        kind: BesselKind,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        order: C64,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        x: C64,
    },
    /// Run the identity suite.
    Verify {
        /// Comma-separated identity ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        identities: Vec<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        quad_tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        random_points: Option<usize>,
        #[arg(long, value_parser = format)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON suite configuration; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Compare a partial Lommel sum with the closed-form group action.
    Lommel {
        #[arg(long, value_parser = kind)]
        kind: BesselKind,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        nu: C64,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        x: C64,
        #[arg(long, value_parser = complex, allow_hyphen_values = true, default_value = "1")]
        t: C64,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        u: C64,
        #[arg(long, default_value_t = 40)]
        terms: usize,
        #[arg(long, value_parser = direction, default_value = "plus")]
        direction: Direction,
    },
}

fn complex(s: &str) -> Result<C64, String> {
    let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
    match s.split_once(',') {
        Some((re, im)) => Ok(C64::new(num(re)?, num(im)?)),
        None => Ok(C64::new(num(s)?, 0.0)),
    }
}

fn kind(s: &str) -> Result<BesselKind, String> {
    BesselKind::parse(s).ok_or_else(|| format!("unknown kind `{s}` (expected J, Y, H1, H2, I or K)"))
}

fn route(s: &str) -> Result<Route, String> {
    Route::parse(s).ok_or_else(|| format!("unknown route `{s}`"))
}

fn family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family `{s}`"))
}

fn format(s: &str) -> Result<OutputFormat, String> {
    OutputFormat::parse(s).ok_or_else(|| format!("unknown format `{s}` (expected json or csv)"))
}

fn direction(s: &str) -> Result<Direction, String> {
    Direction::parse(s).ok_or_else(|| format!("unknown direction `{s}`"))
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// Numerical failures exit with 3, everything else with 2.
fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::QuadratureNonConvergence { .. } | Error::Convergence(_) | Error::Tail(_) | Error::Inconsistent(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Eval { kind, nu, x } => {
            println!("{}", value(kind, nu, x)?);
        }
        Command::Shift { route, kind, nu, mu, z } => {
            let req = ShiftRequest::new(kind, route, nu, mu, z);
            let r = shift(&req)?;
            let want = expected(&req)?;
            println!("value     {}", r.value.value());
            println!("form      {}", r.form.name());
            println!("expected  {want}");
            println!("residual  {:e}", rel(r.value.value(), want));
        }
        Command::Represent { family, kind, order, x } => {
            let v = represent(&ReprRequest::new(family, kind, order, x))?.value();
            let want = value(kind, order, x)?;
            println!("value     {v}");
            println!("expected  {want}");
            println!("residual  {:e}", rel(v, want));
        }
        Command::Lommel { kind, nu, x, t, u, terms, direction } => {
            let g = GroupShift::new(kind, nu, x, t, u, direction);
            let (sum, last) = lommel_series(&g, terms)?;
            let closed = group_shift(&g)?.value();
            println!("partial_sum  {}", sum.value());
            println!("closed_form  {closed}");
            println!("last_term    {last:e}");
            println!("error        {:e}", rel(sum.value(), closed));
        }
        Command::Verify { .. } => unreachable!("handled by verify()"),
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    identities: Vec<String>,
    tol: Option<f64>,
    quad_tol: Option<f64>,
    seed: Option<u64>,
    random_points: Option<usize>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
    config: Option<PathBuf>,
) -> ExitCode {
    let mut cfg = match config {
        Some(p) => match SuiteConfig::load(&p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => SuiteConfig::default(),
    };
    if !identities.is_empty() {
        cfg.identities = identities;
    }
    cfg.tol = tol.unwrap_or(cfg.tol);
    cfg.quad_tol = quad_tol.unwrap_or(cfg.quad_tol);
    cfg.seed = seed.unwrap_or(cfg.seed);
    cfg.random_points = random_points.unwrap_or(cfg.random_points);
    cfg.output_format = format.unwrap_or(cfg.output_format);
    cfg.output_path = out.or(cfg.output_path);
    let reports = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &reports {
        eprintln!(
            "{:<28} {:<7} max {:.2e}  tol {:.0e}  points {}  skips {}  errors {}",
            r.identity_id,
            r.status.name(),
            r.max_rel_err,
            r.tol,
            r.grid_size,
            r.n_validity_skips,
            r.n_errors
        );
    }
    if let Err(e) = emit_report(&reports, cfg.output_format, cfg.output_path.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().any(|r| r.n_errors > 0) {
        ExitCode::from(3)
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { identities, tol, quad_tol, seed, random_points, format, out, config } => {
            verify(identities, tol, quad_tol, seed, random_points, format, out, config)
        }
        command => run(command).unwrap_or_else(fail),
    }
}
