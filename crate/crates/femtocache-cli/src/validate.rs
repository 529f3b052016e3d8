//! The `validate` subcommand: self-check the library against its own
//! ground truths — greedy versus exhaustive search on a small grid, and
//! Monte Carlo fading simulation versus the closed forms.

use femtocache::ber::file_ber;
use femtocache::channel::db_to_linear;
use femtocache::greedy::greedy_place;
use femtocache::montecarlo::simulate_file_ber;
use femtocache::oracle::{exhaustive_optimal, OracleError};
use femtocache::placement::average_ber;
use femtocache::popularity::zipf;
use femtocache::ChannelParams;
use serde_json::json;

use crate::config::{CliError, Format, RunConfig};

const GRID_FILES: usize = 8;
const ORACLE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

struct Check {
    status: Status,
    suite: &'static str,
    instance: String,
    detail: String,
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<(), CliError> {
    let mut checks: Vec<Check> = Vec::new();

    // Greedy equals the exhaustive optimum wherever its optimality proof
    // applies (beta >= 2), across a small but varied grid.
    for &beta in &[2.0, 3.1622776601683795, 10.0] {
        for &rho_db in &[0.0, 15.0, 40.0] {
            for &gamma in &[0.0, 0.6, 1.2, 3.0] {
                for helpers in 2..=6 {
                    checks.push(oracle_check(helpers, gamma, rho_db, beta, true)?);
                }
            }
        }
    }

    // Below beta = 2 no optimality theorem covers low SNR; report the
    // greedy-versus-oracle gap without asserting it away.
    for &rho_db in &[15.0, 40.0] {
        for &gamma in &[0.6, 1.2] {
            for &helpers in &[2usize, 4, 6] {
                checks.push(oracle_check(helpers, gamma, rho_db, 1.5, false)?);
            }
        }
    }

    // Monte Carlo fading simulation agrees with the closed forms to
    // within four standard errors.
    let mut mc_index = 0u64;
    for &rho in &[1.0, 3.1622776601683795, 31.622776601683793] {
        for copies in 0..=3usize {
            let ch = ChannelParams::from_rho_beta(rho, 2.0).expect("grid parameters are valid");
            let truth = file_ber(copies, &ch);
            let est = simulate_file_ber(copies, &ch, cfg.trials, cfg.seed.wrapping_add(mc_index));
            mc_index += 1;
            let diff = (est.mean - truth).abs();
            let bound = 4.0 * est.std_error;
            checks.push(Check {
                status: if diff <= bound {
                    Status::Pass
                } else {
                    Status::Fail
                },
                suite: "mc-vs-closed-form",
                instance: format!("n={copies} rho={rho:.4} beta=2 trials={}", cfg.trials),
                detail: format!(
                    "mc={:.6e} closed={:.6e} diff={:.2e} allowed={:.2e}",
                    est.mean, truth, diff, bound
                ),
            });
        }
    }

    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    render(cfg, &checks, failed);
    if failed > 0 {
        return Err(CliError::ChecksFailed { failed });
    }
    Ok(())
}

fn oracle_check(
    helpers: usize,
    gamma: f64,
    rho_db: f64,
    beta: f64,
    assert_equal: bool,
) -> Result<Check, CliError> {
    let pop = zipf(GRID_FILES, gamma).expect("grid parameters are valid");
    let ch = ChannelParams::from_rho_beta(db_to_linear(rho_db), beta)
        .expect("grid parameters are valid");
    let report = exhaustive_optimal(helpers, &pop, &ch, true).map_err(|e| match e {
        OracleError::BudgetExceeded { .. } => {
            CliError::Budget(format!("exhaustive search refused: {e}"))
        }
        other => CliError::Invalid(format!("exhaustive search failed: {other}")),
    })?;
    let greedy = greedy_place(helpers, &pop, &ch);
    let greedy_ber =
        average_ber(&greedy.placement, &pop, &ch).expect("greedy placement matches dimensions");
    let rel = (greedy_ber - report.best_ber).abs() / report.best_ber.max(f64::MIN_POSITIVE);
    let instance =
        format!("N={helpers} F={GRID_FILES} gamma={gamma} rho_db={rho_db} beta={beta:.4}");
    if assert_equal {
        Ok(Check {
            status: if rel <= ORACLE_REL_TOL {
                Status::Pass
            } else {
                Status::Fail
            },
            suite: "greedy-vs-oracle",
            instance,
            detail: format!(
                "greedy={:.6e} oracle={:.6e} rel_diff={rel:.2e} tol={ORACLE_REL_TOL:.0e}",
                greedy_ber, report.best_ber
            ),
        })
    } else {
        Ok(Check {
            status: Status::Info,
            suite: "greedy-low-beta",
            instance,
            detail: format!(
                "greedy={:.6e} oracle={:.6e} rel_gap={rel:.2e} (no optimality claim below beta = 2)",
                greedy_ber, report.best_ber
            ),
        })
    }
}

fn render(cfg: &RunConfig, checks: &[Check], failed: usize) {
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let info = checks.iter().filter(|c| c.status == Status::Info).count();
    match cfg.format {
        Format::Table => {
            for c in checks {
                println!(
                    "{}  {:<18} {:<46} {}",
                    c.status.label(),
                    c.suite,
                    c.instance,
                    c.detail
                );
            }
            println!();
            println!("{passed} passed, {failed} failed, {info} informational");
        }
        Format::Csv => {
            println!("status,suite,instance,detail");
            for c in checks {
                println!(
                    "{},{},{},{}",
                    c.status.label(),
                    c.suite,
                    c.instance,
                    c.detail
                );
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "status": c.status.label(),
                        "suite": c.suite,
                        "instance": c.instance,
                        "detail": c.detail,
                    })
                })
                .collect();
            let doc = json!({
                "config": cfg,
                "checks": rows,
                "summary": { "passed": passed, "failed": failed, "info": info },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable report")
            );
        }
    }
}
