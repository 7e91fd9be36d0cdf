//! `halfflat`: verify half-flat structures, compute cohomology and run the
//! obstruction tests from the command line.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 an
//! internal soundness violation.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use halfflat::parse::{parse_param_binding, FieldSpec, Params};

use commands::{Ctx, Failure, MethodArg, ObstructArgs};
use report::Report;

#[derive(Parser)]
#[command(name = "halfflat", version, about = "Exact checks for half-flat SU(3)-structures on Lie algebras")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for the floating-point G2 checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for the refutation search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bind a parameter, e.g. `--param a=1/2`. Repeatable.
    #[arg(long = "param", global = true, value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Coefficient field for forms: `q`, `qsqrt:<d>` or `auto`.
    #[arg(long, global = true, default_value = "auto")]
    field: FieldSpec,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers, centre and unimodularity.
    Invariants {
        /// Algebra file or `db:NAME`.
        source: String,
    },
    /// A basis of the closed k-forms.
    ClosedBasis {
        source: String,
        #[arg(long)]
        k: usize,
    },
    /// Check that (omega, rho) is half-flat.
    Verify {
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
        /// Also check the normalisation.
        #[arg(long)]
        normalized: bool,
        /// Also check the G2 lift on g + R.
        #[arg(long)]
        g2: bool,
    },
    /// Run a non-existence test.
    Obstruct {
        source: String,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// One-form for the one-form test; all basis covectors if omitted.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Contraction vector on g + R (default e3).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Comma-separated complement of x.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Comma-separated basis of a codimension-one Abelian ideal of g + R.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 12)]
        max_sample_radius: i64,
    },
    /// The G2-structure on g + R induced by (omega, rho).
    G2 {
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
    },
    /// The built-in table.
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
}

#[derive(Subcommand)]
enum DbAction {
    List,
    VerifyAll,
}

fn run(cli: &Cli, ctx: &Ctx, rep: &mut Report) -> Result<(), Failure> {
    match &cli.command {
        Command::Invariants { source } => commands::invariants(ctx, rep, source),
        Command::ClosedBasis { source, k } => commands::closed_basis(ctx, rep, source, *k),
        Command::Verify { source, omega, rho, normalized, g2 } => {
            commands::verify(ctx, rep, source, omega.as_deref(), rho.as_deref(), *normalized, *g2)
        }
        Command::Obstruct { source, method, alpha, x, w, ideal, max_sample_radius } => {
            let args = ObstructArgs {
                method: *method,
                alpha: alpha.as_deref(),
                x: x.as_deref(),
                w: w.as_deref(),
                ideal: ideal.as_deref(),
                max_sample_radius: *max_sample_radius,
            };
            commands::obstruct(ctx, rep, source, &args)
        }
        Command::G2 { source, alpha, omega, rho } => commands::g2(ctx, rep, source, alpha, omega.as_deref(), rho.as_deref()),
        Command::Db { action: DbAction::List } => commands::db_list(rep),
        Command::Db { action: DbAction::VerifyAll } => commands::db_verify_all(ctx, rep),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut rep = Report::new(command, cli.seed, cli.tol);

    let params: Result<Params, _> = cli.params.iter().map(|p| parse_param_binding(p)).collect();
    let outcome = match params {
        Ok(params) => {
            let ctx = Ctx { params, field: cli.field, tol: cli.tol, seed: cli.seed, json: cli.json };
            run(&cli, &ctx, &mut rep)
        }
        Err(e) => Err(Failure::Input(format!("--param: {e}"))),
    };
    match outcome {
        Ok(()) => rep.finish(),
        Err(f) => {
            rep.status = f.status();
            rep.error = Some(f.message().to_string());
        }
    }
    rep.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    if cli.json {
        println!("{}", rep.to_json());
    } else {
        print!("{}", rep.to_text());
    }
    ExitCode::from(rep.status.exit_code() as u8)
}
