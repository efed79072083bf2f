use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use socover_core::oracle::{OracleConfig, RankMethod, SizeGuard};
use socover_core::polys::PrimeField;

mod commands;
mod report;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Hilbert series and h-vectors of K[Y^T Y] and K[Y^T Y, maxminors(Y)].
#[derive(Debug, Parser)]
#[command(name = "socover", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Odd prime used by the finite-field oracle.
    #[arg(long, global = true, default_value_t = socover_core::polys::DEFAULT_PRIME)]
    prime: u64,

    /// Seed for every random choice (Cayley samples, Jacobian points).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest ambient graded-piece dimension the oracle will touch.
    #[arg(long, global = true, default_value_t = 500_000)]
    guard_ambient: u128,

    /// Largest number of generator multisets per degree.
    #[arg(long, global = true, default_value_t = 200_000)]
    guard_multisets: u128,

    /// Highest (rescaled) degree the oracle may compute when reconstructing a series.
    #[arg(long, global = true, default_value_t = 6)]
    oracle_budget: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// h-vectors, a-invariants and Gorenstein data of R and its cover.
    Hvector {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        /// Degrees of the YGrading oracle table printed for odd t.
        #[arg(long, default_value_t = 4)]
        max_deg: u32,
    },
    /// The 2m x (2m+2) family: h-vector, gap h_m - h_(m+1) and unimodality.
    Scan {
        #[arg(long, default_value_t = 1)]
        m_min: u32,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        /// Also compare against oracle dimensions up to --max-deg.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
    },
    /// Oracle Hilbert function against the closed or reconstructed series, and
    /// Jacobian rank against the Krull dimension.
    Verify {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
        /// Random points for the Jacobian rank.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// SO_t invariance of the generators under sampled Cayley matrices and
    /// their reflections, plus the Delta^2 and Cauchy-Binet identities.
    Invariance {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// Run configuration shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub oracle: OracleConfig,
    pub format: Format,
    pub oracle_budget: u32,
}

impl RunConfig {
    pub fn prime(&self) -> u64 {
        self.oracle.field.modulus()
    }

    pub fn seed(&self) -> u64 {
        self.oracle.seed
    }
}

/// Exit status contract: 0 success, 1 verification mismatch, 2 invalid input.
pub enum Outcome {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field = match PrimeField::new(cli.prime) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        oracle: OracleConfig {
            field,
            guard: SizeGuard {
                ambient: cli.guard_ambient,
                multisets: cli.guard_multisets,
            },
            rank_method: RankMethod::Auto,
            seed: cli.seed,
        },
        format: cli.format,
        oracle_budget: cli.oracle_budget,
    };
    let result = match cli.command {
        Command::Hvector { t, n, max_deg } => commands::hvector(t, n, max_deg, &cfg),
        Command::Scan {
            m_min,
            m_max,
            with_oracle,
            max_deg,
        } => commands::scan(m_min, m_max, with_oracle.then_some(max_deg), &cfg),
        Command::Verify {
            t,
            n,
            max_deg,
            trials,
        } => commands::verify(t, n, max_deg, trials, &cfg),
        Command::Invariance { t, n, samples } => commands::invariance(t, n, samples, &cfg),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
