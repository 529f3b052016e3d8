//! Run configuration: defaults, JSON config file, flag overrides.
//!
//! Precedence is flags over config file over built-in defaults. The
//! defaults are the library's reference setting — F = 20, N = 10,
//! gamma = 0.6, beta = 5 dB — so most table reproductions need only
//! `--rho-db`, which has no default and must come from a flag or the
//! config file. Exactly one of beta_db / nu_db may be in effect; when a
//! flag supplies either one, the pair is taken from flags alone so a flag
//! can switch parameterization without editing the config file.

use std::error::Error;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use femtocache::channel::db_to_linear;
use femtocache::popularity::{zipf, Popularity};
use femtocache::ChannelParams;
use serde::{Deserialize, Serialize};

/// Failure modes that map onto the process exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Invalid input or configuration (exit code 2).
    Invalid(String),
    /// A search refused to start because its candidate budget would be
    /// exceeded (exit code 3).
    Budget(String),
    /// The validation suite ran and at least one check failed (exit 1).
    ChecksFailed { failed: usize },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "{msg}"),
            CliError::Budget(msg) => write!(f, "{msg}"),
            CliError::ChecksFailed { failed } => {
                write!(f, "{failed} validation check(s) failed")
            }
        }
    }
}

impl Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed { .. } => 1,
            CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Human-readable text.
    Table,
    /// Comma-separated values with a header row.
    Csv,
    /// A single JSON document.
    Json,
}

/// Shared command-line overrides; every subcommand accepts them.
#[derive(Debug, Clone, Args)]
pub struct Overrides {
    /// Number of helper stations N.
    #[arg(long)]
    pub helpers: Option<usize>,

    /// Library size F.
    #[arg(long)]
    pub files: Option<usize>,

    /// Zipf popularity exponent.
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Cluster mean SNR in dB (required here or in --config).
    #[arg(long)]
    pub rho_db: Option<f64>,

    /// Cluster-to-cellular SNR ratio beta in dB.
    #[arg(long, conflicts_with = "nu_db")]
    pub beta_db: Option<f64>,

    /// Cellular mean SNR in dB (alternative to --beta-db).
    #[arg(long)]
    pub nu_db: Option<f64>,

    /// Memory slots per helper M.
    #[arg(long)]
    pub per_helper: Option<usize>,

    /// Monte Carlo trial count.
    #[arg(long)]
    pub trials: Option<u64>,

    /// Seed for the deterministic random streams.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// JSON config file mirroring these field names; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Config-file counterpart of [`Overrides`]; unknown keys are rejected so
/// typos fail loudly.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    helpers: Option<usize>,
    files: Option<usize>,
    gamma: Option<f64>,
    rho_db: Option<f64>,
    beta_db: Option<f64>,
    nu_db: Option<f64>,
    per_helper: Option<usize>,
    trials: Option<u64>,
    seed: Option<u64>,
    format: Option<Format>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub helpers: usize,
    pub files: usize,
    pub gamma: f64,
    pub rho_db: f64,
    /// Exactly one of `beta_db` / `nu_db` is set.
    pub beta_db: Option<f64>,
    pub nu_db: Option<f64>,
    pub per_helper: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip)]
    pub format: Format,
}

impl RunConfig {
    /// Merges flags, optional config file, and defaults, then validates.
    pub fn resolve(flags: &Overrides) -> Result<RunConfig, CliError> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Invalid(format!("cannot read --config {}: {e}", path.display()))
                })?;
                serde_json::from_str::<FileConfig>(&text).map_err(|e| {
                    CliError::Invalid(format!("invalid --config {}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };

        let helpers = flags.helpers.or(file.helpers).unwrap_or(10);
        let files = flags.files.or(file.files).unwrap_or(20);
        let gamma = flags.gamma.or(file.gamma).unwrap_or(0.6);
        let rho_db = flags.rho_db.or(file.rho_db);
        let per_helper = flags.per_helper.or(file.per_helper).unwrap_or(1);
        let trials = flags.trials.or(file.trials).unwrap_or(1_000_000);
        let seed = flags.seed.or(file.seed).unwrap_or(42);
        let format = flags.format.or(file.format).unwrap_or(Format::Table);

        // The SNR-ratio pair is resolved as a unit: any flag takes the
        // whole pair from the command line.
        let (beta_db, nu_db) = if flags.beta_db.is_some() || flags.nu_db.is_some() {
            (flags.beta_db, flags.nu_db)
        } else {
            (file.beta_db, file.nu_db)
        };
        let (beta_db, nu_db) = match (beta_db, nu_db) {
            (Some(_), Some(_)) => {
                return Err(CliError::Invalid(
                    "supply exactly one of --beta-db / --nu-db (not both)".into(),
                ))
            }
            (None, None) => (Some(5.0), None),
            pair => pair,
        };

        if helpers < 1 {
            return Err(CliError::Invalid("--helpers must be at least 1".into()));
        }
        if files < 1 {
            return Err(CliError::Invalid("--files must be at least 1".into()));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(CliError::Invalid(
                "--gamma must be finite and non-negative".into(),
            ));
        }
        let rho_db = rho_db.ok_or_else(|| {
            CliError::Invalid("--rho-db is required (flag or config file)".into())
        })?;
        if !rho_db.is_finite() {
            return Err(CliError::Invalid("--rho-db must be finite".into()));
        }
        if let Some(b) = beta_db {
            if !b.is_finite() {
                return Err(CliError::Invalid("--beta-db must be finite".into()));
            }
        }
        if let Some(n) = nu_db {
            if !n.is_finite() {
                return Err(CliError::Invalid("--nu-db must be finite".into()));
            }
        }
        if per_helper < 1 {
            return Err(CliError::Invalid("--per-helper must be at least 1".into()));
        }
        if trials < 1 {
            return Err(CliError::Invalid("--trials must be at least 1".into()));
        }

        Ok(RunConfig {
            helpers,
            files,
            gamma,
            rho_db,
            beta_db,
            nu_db,
            per_helper,
            trials,
            seed,
            format,
        })
    }

    /// Channel parameters in linear scale.
    pub fn channel(&self) -> Result<ChannelParams, CliError> {
        let rho = db_to_linear(self.rho_db);
        let built = match (self.beta_db, self.nu_db) {
            (Some(beta_db), None) => ChannelParams::from_rho_beta(rho, db_to_linear(beta_db)),
            (None, Some(nu_db)) => ChannelParams::from_rho_nu(rho, db_to_linear(nu_db)),
            _ => unreachable!("resolve() leaves exactly one of beta_db / nu_db set"),
        };
        built.map_err(|e| CliError::Invalid(format!("invalid channel parameters: {e}")))
    }

    /// Zipf popularity over the configured library.
    pub fn popularity(&self) -> Result<Popularity, CliError> {
        zipf(self.files, self.gamma).map_err(|e| CliError::Invalid(format!("invalid --gamma: {e}")))
    }
}
