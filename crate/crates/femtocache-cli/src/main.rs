//! femtocache — optimal file placement for a caching helper cluster.
//!
//! Subcommands: `place` (greedy or multi-round placement), `classify`
//! (closed-form regime), `sweep` (figure-ready strategy comparison along
//! an SNR or popularity axis), `validate` (self-checks against exhaustive
//! search and Monte Carlo simulation).
//!
//! Exit codes: 0 success, 1 validation-suite failure, 2 invalid input,
//! 3 refused candidate budget.

mod classify;
mod config;
mod place;
mod sweep;
mod validate;

use clap::{Parser, Subcommand};

use crate::classify::cmd_classify;
use crate::config::{CliError, Overrides, RunConfig};
use crate::place::cmd_place;
use crate::sweep::{cmd_sweep, Axis};
use crate::validate::cmd_validate;

#[derive(Parser)]
#[command(
    name = "femtocache",
    version,
    about = "Optimal file caching placement for a wireless helper cluster",
    after_help = "Defaults: --helpers 10 --files 20 --gamma 0.6 --beta-db 5; \
                  --rho-db must be supplied (flag or config file)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a placement with the greedy algorithm (M-round when
    /// --per-helper exceeds 1) and report its average BER.
    Place {
        #[command(flatten)]
        overrides: Overrides,
        /// Include the greedy trace (iteration, file, gain, BER after);
        /// with --format csv the trace becomes the output table.
        #[arg(long)]
        trace: bool,
    },
    /// Decide the closed-form placement regime from the Zipf exponent.
    Classify {
        #[command(flatten)]
        overrides: Overrides,
        /// Assert or deny the high-SNR regime; default: true iff
        /// --rho-db >= 30.
        #[arg(long)]
        high_snr: Option<bool>,
    },
    /// Tabulate strategy BERs along an axis (figure data).
    Sweep {
        #[command(flatten)]
        overrides: Overrides,
        /// Sweep axis.
        #[arg(long, value_enum, default_value = "gamma")]
        axis: Axis,
        /// Axis start (default 0.1 for gamma, 0 for rho-db).
        #[arg(long)]
        from: Option<f64>,
        /// Axis end (default 3 for gamma, 40 for rho-db).
        #[arg(long)]
        to: Option<f64>,
        /// Number of evenly spaced points (default 30 for gamma, 9 for rho-db).
        #[arg(long)]
        points: Option<usize>,
        /// Comma-separated strategies: optimal, greedy, even, single,
        /// doubly (best k per point), doubly:<k>.
        #[arg(long)]
        strategies: Option<String>,
    },
    /// Run the built-in verification grid (greedy vs exhaustive search,
    /// Monte Carlo vs closed forms). --trials and --seed apply to the
    /// Monte Carlo checks.
    Validate {
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Place { overrides, trace } => {
            let cfg = RunConfig::resolve(&overrides)?;
            cmd_place(&cfg, trace)
        }
        Command::Classify {
            overrides,
            high_snr,
        } => {
            let cfg = RunConfig::resolve(&overrides)?;
            cmd_classify(&cfg, high_snr)
        }
        Command::Sweep {
            overrides,
            axis,
            from,
            to,
            points,
            strategies,
        } => {
            let cfg = RunConfig::resolve(&overrides)?;
            cmd_sweep(&cfg, axis, from, to, points, strategies.as_deref())
        }
        Command::Validate { overrides } => {
            let cfg = RunConfig::resolve(&overrides)?;
            cmd_validate(&cfg)
        }
    }
}

/// Restore default SIGPIPE handling so `femtocache ... | head` terminates
/// quietly instead of panicking on a closed pipe.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
