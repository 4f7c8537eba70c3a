use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sigma_core::Character;
use sigma_cli::error::{CliError, CliResult};
use sigma_cli::format::parse_direction;
use sigma_cli::run::{self, CycleSpec, Outcome, RunConfig, MAX_RETRIES};

#[derive(Parser)]
#[command(name = "sigma", version, about = "Decide homological Sigma-invariants of free chain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Complex file, or the name of a builtin (see `sigma examples`)
    input: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Z, Q or F<p>
    #[arg(long)]
    coeff: Option<String>,
    #[arg(long, env = "SIGMA_DEFAULT_WINDOW")]
    window: Option<i64>,
    /// Window doublings after an undecided verdict (at most 4)
    #[arg(long, default_value_t = MAX_RETRIES)]
    retries: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the schema and that consecutive boundaries compose to zero
    Validate {
        input: String,
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Decide one direction
    Decide {
        #[command(flatten)]
        common: Common,
        /// Comma-separated integers or rationals, e.g. 3,5 or 1/2,1
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// Decide a list of directions and derive conclusions
    Scan {
        #[command(flatten)]
        common: Common,
        /// `auto`, or directions separated by `;`
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        directions: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Assert that the homotopical and homological invariants agree in degree 2
        #[arg(long)]
        assert_sigma2_pi1: bool,
    },
    /// Test whether a cycle can be pushed towards the direction
    Movable {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        degree: usize,
        /// Basis element to test
        #[arg(long, conflicts_with = "cycle")]
        cell: Option<usize>,
        /// JSON array of elements
        #[arg(long)]
        cycle: Option<String>,
    },
    /// Build a finite complex dominating the infinite cyclic cover
    Dominate {
        #[command(flatten)]
        common: Common,
    },
    /// Upper bound for the category in a direction
    CatBound {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        assert_sigma2_pi1: bool,
    },
    /// List the builtin complexes, or write them as JSON files
    Examples {
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Re-check every certificate and witness in a report
    Verify { report: PathBuf },
}

fn config(c: Common) -> CliResult<RunConfig> {
    Ok(RunConfig {
        ring: c.coeff.as_deref().map(run::parse_ring).transpose()?,
        k: c.k,
        window: c.window,
        retries: c.retries,
        out: c.out,
        ..RunConfig::new(c.input)
    })
}

fn directions(s: &str) -> CliResult<Vec<Character>> {
    s.split(';').map(str::trim).filter(|p| !p.is_empty()).map(parse_direction).collect()
}

fn dispatch(cmd: Command) -> CliResult<Outcome> {
    match cmd {
        Command::Validate { input, coeff } => {
            let cfg = RunConfig { ring: coeff.as_deref().map(run::parse_ring).transpose()?, ..RunConfig::new(input) };
            run::cmd_validate(&cfg)
        }
        Command::Decide { common, xi } => run::cmd_decide(&RunConfig { directions: Some(directions(&xi)?), ..config(common)? }),
        Command::Scan { common, directions: d, jobs, csv, assert_sigma2_pi1 } => {
            let dirs = if d == "auto" { None } else { Some(directions(&d)?) };
            run::cmd_scan(&RunConfig { directions: dirs, jobs, csv, sigma2_pi1: assert_sigma2_pi1, ..config(common)? })
        }
        Command::Movable { common, xi, degree, cell, cycle } => {
            let spec = match (cell, cycle) {
                (Some(j), None) => CycleSpec::Basis(j),
                (None, Some(s)) => CycleSpec::Json(s),
                _ => return Err(CliError::Usage("movable needs --cell or --cycle".into())),
            };
            run::cmd_movable(&RunConfig { directions: Some(directions(&xi)?), ..config(common)? }, degree, &spec)
        }
        Command::Dominate { common } => run::cmd_dominate(&config(common)?),
        Command::CatBound { common, xi, assert_sigma2_pi1 } => {
            run::cmd_cat_bound(&RunConfig { directions: Some(directions(&xi)?), sigma2_pi1: assert_sigma2_pi1, ..config(common)? })
        }
        Command::Examples { write } => run::cmd_examples(write.as_deref()),
        Command::Verify { report } => run::cmd_verify(&report),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("sigma: {e}");
            ExitCode::from(1)
        }
    }
}
