//! The `sweep` subcommand: closed-form average BER of several placement
//! strategies along an SNR or popularity-exponent axis, emitted in axis
//! order (figure-ready CSV).

use clap::ValueEnum;
use femtocache::channel::db_to_linear;
use femtocache::greedy::greedy_place;
use femtocache::oracle::{exhaustive_optimal, OracleError};
use femtocache::placement::{average_ber, doubly_placement, even_placement, single_file_placement};
use femtocache::popularity::{zipf, Popularity};
use femtocache::ChannelParams;
use serde_json::json;

use crate::config::{CliError, Format, RunConfig};

/// Sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// Cluster mean SNR in dB; popularity fixed.
    RhoDb,
    /// Zipf exponent; channel fixed.
    Gamma,
}

impl Axis {
    fn column(&self) -> &'static str {
        match self {
            Axis::RhoDb => "rho_db",
            Axis::Gamma => "gamma",
        }
    }

    fn default_range(&self) -> (f64, f64, usize) {
        match self {
            Axis::RhoDb => (0.0, 40.0, 9),
            Axis::Gamma => (0.1, 3.0, 30),
        }
    }
}

/// One placement strategy column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Strategy {
    Optimal,
    Greedy,
    Even,
    Single,
    /// Best doubly index per axis point.
    DoublyBest,
    /// Fixed doubly index.
    Doubly(usize),
}

impl Strategy {
    fn column(&self) -> String {
        match self {
            Strategy::Optimal => "optimal".into(),
            Strategy::Greedy => "greedy".into(),
            Strategy::Even => "even".into(),
            Strategy::Single => "single".into(),
            Strategy::DoublyBest => "doubly_best".into(),
            Strategy::Doubly(k) => format!("doubly_{k}"),
        }
    }
}

fn parse_strategies(list: &str) -> Result<Vec<Strategy>, CliError> {
    let mut out = Vec::new();
    for raw in list.split(',') {
        let name = raw.trim();
        let strategy = match name {
            "optimal" => Strategy::Optimal,
            "greedy" => Strategy::Greedy,
            "even" => Strategy::Even,
            "single" => Strategy::Single,
            "doubly" => Strategy::DoublyBest,
            _ => match name.strip_prefix("doubly:") {
                Some(k) => {
                    let k: usize = k.parse().map_err(|_| {
                        CliError::Invalid(format!(
                            "invalid --strategies entry '{name}': expected doubly:<k>"
                        ))
                    })?;
                    Strategy::Doubly(k)
                }
                None => {
                    return Err(CliError::Invalid(format!(
                        "unknown --strategies entry '{name}' \
                         (expected optimal, greedy, even, single, doubly, doubly:<k>)"
                    )))
                }
            },
        };
        if !out.contains(&strategy) {
            out.push(strategy);
        }
    }
    if out.is_empty() {
        return Err(CliError::Invalid(
            "--strategies must name at least one strategy".into(),
        ));
    }
    Ok(out)
}

pub fn cmd_sweep(
    cfg: &RunConfig,
    axis: Axis,
    from: Option<f64>,
    to: Option<f64>,
    points: Option<usize>,
    strategies: Option<&str>,
) -> Result<(), CliError> {
    let strategies = parse_strategies(strategies.unwrap_or("greedy,even,single,doubly"))?;
    validate_strategies(cfg, &strategies)?;

    let (d_from, d_to, d_points) = axis.default_range();
    let from = from.unwrap_or(d_from);
    let to = to.unwrap_or(d_to);
    let points = points.unwrap_or(d_points);
    if points < 1 {
        return Err(CliError::Invalid("--points must be at least 1".into()));
    }
    if !from.is_finite() || !to.is_finite() || from > to {
        return Err(CliError::Invalid(
            "--from and --to must be finite with --from <= --to".into(),
        ));
    }
    if axis == Axis::Gamma && from < 0.0 {
        return Err(CliError::Invalid(
            "--from must be non-negative on the gamma axis".into(),
        ));
    }

    let grid: Vec<f64> = if points == 1 {
        vec![from]
    } else {
        (0..points)
            .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
            .collect()
    };

    // Fixed-across-the-sweep pieces.
    let base_pop = cfg.popularity()?;
    let base_ch = cfg.channel()?;

    let mut rows: Vec<(f64, Vec<f64>, Option<bool>)> = Vec::with_capacity(grid.len());
    let mut fallbacks = 0usize;
    let wants_optimal = strategies.contains(&Strategy::Optimal);
    for &x in &grid {
        let (pop, ch) = match axis {
            Axis::Gamma => (
                zipf(cfg.files, x)
                    .map_err(|e| CliError::Invalid(format!("invalid gamma {x}: {e}")))?,
                base_ch,
            ),
            Axis::RhoDb => {
                let rho = db_to_linear(x);
                let ch = match (cfg.beta_db, cfg.nu_db) {
                    (Some(beta_db), _) => ChannelParams::from_rho_beta(rho, db_to_linear(beta_db)),
                    (_, Some(nu_db)) => ChannelParams::from_rho_nu(rho, db_to_linear(nu_db)),
                    _ => unreachable!("config holds one of beta_db / nu_db"),
                }
                .map_err(|e| CliError::Invalid(format!("invalid rho_db {x}: {e}")))?;
                (base_pop.clone(), ch)
            }
        };

        let mut values = Vec::with_capacity(strategies.len());
        let mut exhaustive = None;
        for strategy in &strategies {
            let ber = match strategy {
                Strategy::Greedy => greedy_ber(cfg, &pop, &ch),
                Strategy::Even => fixed_ber(even_placement(cfg.helpers, cfg.files), &pop, &ch)?,
                Strategy::Single => {
                    fixed_ber(single_file_placement(cfg.helpers, cfg.files), &pop, &ch)?
                }
                Strategy::Doubly(k) => {
                    fixed_ber(doubly_placement(*k, cfg.helpers, cfg.files), &pop, &ch)?
                }
                Strategy::DoublyBest => best_doubly_ber(cfg, &pop, &ch)?,
                Strategy::Optimal => match exhaustive_optimal(cfg.helpers, &pop, &ch, true) {
                    Ok(report) => {
                        exhaustive = Some(true);
                        report.best_ber
                    }
                    Err(OracleError::BudgetExceeded { .. }) => {
                        exhaustive = Some(false);
                        fallbacks += 1;
                        greedy_ber(cfg, &pop, &ch)
                    }
                    Err(e) => return Err(CliError::Invalid(format!("oracle failed: {e}"))),
                },
            };
            values.push(ber);
        }
        if wants_optimal && exhaustive.is_none() {
            exhaustive = Some(true);
        }
        rows.push((x, values, exhaustive));
    }

    if fallbacks > 0 {
        eprintln!(
            "note: oracle budget exceeded at {fallbacks} sweep point(s); \
             the optimal column reports the greedy result there (optimal_is_exhaustive = false)"
        );
    }

    render(cfg, axis, &strategies, &rows, wants_optimal);
    Ok(())
}

/// Strategy feasibility depends only on (N, F, k), not on the axis point;
/// reject impossible requests before sweeping.
fn validate_strategies(cfg: &RunConfig, strategies: &[Strategy]) -> Result<(), CliError> {
    for strategy in strategies {
        match strategy {
            Strategy::Even if cfg.helpers > cfg.files => {
                return Err(CliError::Invalid(format!(
                    "even placement needs --files >= --helpers (got F = {} < N = {})",
                    cfg.files, cfg.helpers
                )));
            }
            Strategy::Doubly(k) => {
                let limit = cfg.helpers / 2;
                if *k < 1 || *k > limit {
                    return Err(CliError::Invalid(format!(
                        "doubly:{k} is out of range; k must be in 1..={limit} for --helpers {}",
                        cfg.helpers
                    )));
                }
                if cfg.helpers - k > cfg.files {
                    return Err(CliError::Invalid(format!(
                        "doubly:{k} places {} distinct files but --files is {}",
                        cfg.helpers - k,
                        cfg.files
                    )));
                }
            }
            Strategy::DoublyBest if feasible_doubly_range(cfg).is_empty() => {
                return Err(CliError::Invalid(format!(
                    "no feasible doubly placement for --helpers {} --files {}",
                    cfg.helpers, cfg.files
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

fn feasible_doubly_range(cfg: &RunConfig) -> Vec<usize> {
    (1..=cfg.helpers / 2)
        .filter(|k| cfg.helpers - k <= cfg.files)
        .collect()
}

fn greedy_ber(cfg: &RunConfig, pop: &Popularity, ch: &ChannelParams) -> f64 {
    let result = greedy_place(cfg.helpers, pop, ch);
    average_ber(&result.placement, pop, ch).expect("greedy placement matches dimensions")
}

fn fixed_ber(
    placement: Result<femtocache::Placement, femtocache::PlacementError>,
    pop: &Popularity,
    ch: &ChannelParams,
) -> Result<f64, CliError> {
    let placement =
        placement.map_err(|e| CliError::Invalid(format!("infeasible strategy: {e}")))?;
    Ok(average_ber(&placement, pop, ch).expect("constructor matches dimensions"))
}

fn best_doubly_ber(cfg: &RunConfig, pop: &Popularity, ch: &ChannelParams) -> Result<f64, CliError> {
    let mut best = f64::INFINITY;
    for k in feasible_doubly_range(cfg) {
        let ber = fixed_ber(doubly_placement(k, cfg.helpers, cfg.files), pop, ch)?;
        if ber < best {
            best = ber;
        }
    }
    Ok(best)
}

fn render(
    cfg: &RunConfig,
    axis: Axis,
    strategies: &[Strategy],
    rows: &[(f64, Vec<f64>, Option<bool>)],
    wants_optimal: bool,
) {
    let columns: Vec<String> = strategies.iter().map(|s| s.column()).collect();
    match cfg.format {
        Format::Csv | Format::Table => {
            // The sweep is figure data; the human-readable form is the
            // same grid with aligned columns.
            let csv = cfg.format == Format::Csv;
            let mut header: Vec<String> = vec![axis.column().into()];
            header.extend(columns.iter().cloned());
            if wants_optimal {
                header.push("optimal_is_exhaustive".into());
            }
            if csv {
                println!("{}", header.join(","));
            } else {
                let padded: Vec<String> = header.iter().map(|h| format!("{h:<22}")).collect();
                println!("{}", padded.join(" "));
            }
            for (x, values, exhaustive) in rows {
                let mut cells: Vec<String> = vec![x.to_string()];
                cells.extend(values.iter().map(|v| {
                    if csv {
                        v.to_string()
                    } else {
                        format!("{v:.6e}")
                    }
                }));
                if wants_optimal {
                    cells.push(exhaustive.unwrap_or(true).to_string());
                }
                if csv {
                    println!("{}", cells.join(","));
                } else {
                    let padded: Vec<String> = cells.iter().map(|c| format!("{c:<22}")).collect();
                    println!("{}", padded.join(" "));
                }
            }
        }
        Format::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|(x, values, exhaustive)| {
                    let mut row = serde_json::Map::new();
                    row.insert(axis.column().into(), json!(x));
                    for (name, value) in columns.iter().zip(values) {
                        row.insert(name.clone(), json!(value));
                    }
                    if wants_optimal {
                        row.insert(
                            "optimal_is_exhaustive".into(),
                            json!(exhaustive.unwrap_or(true)),
                        );
                    }
                    serde_json::Value::Object(row)
                })
                .collect();
            let doc = json!({
                "config": cfg,
                "axis": axis.column(),
                "strategies": columns,
                "rows": rows_json,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable report")
            );
        }
    }
}
