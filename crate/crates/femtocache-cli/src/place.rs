//! The `place` subcommand: run the greedy placement (or its multi-round
//! extension) and report the counts, the closed-form average BER, and the
//! optimality certification.

use femtocache::greedy::{greedy_place, m_round_greedy, GreedyTrace, HelperAssignment};
use femtocache::placement::{average_ber, Placement};
use serde_json::json;

use crate::config::{CliError, Format, RunConfig};

pub fn cmd_place(cfg: &RunConfig, trace: bool) -> Result<(), CliError> {
    let pop = cfg.popularity()?;
    let ch = cfg.channel()?;
    if cfg.helpers == cfg.files {
        eprintln!(
            "note: helpers equal library size (N = F = {}); the model normally assumes F > N",
            cfg.files
        );
    }

    if cfg.per_helper == 1 {
        let result = greedy_place(cfg.helpers, &pop, &ch);
        let ber = average_ber(&result.placement, &pop, &ch)
            .expect("greedy placement matches the library dimensions");
        let trace_ref = if trace { Some(&result.trace) } else { None };
        render(
            cfg,
            &result.placement,
            ber,
            result.certified,
            "greedy",
            trace_ref,
            None,
        );
        return Ok(());
    }

    if trace {
        return Err(CliError::Invalid(
            "--trace requires --per-helper 1 (the multi-round schedule has no single trace)".into(),
        ));
    }
    let (placement, assignment) = m_round_greedy(cfg.helpers, cfg.per_helper, &pop, &ch)
        .map_err(|e| CliError::Invalid(format!("invalid --per-helper: {e}")))?;
    let ber = average_ber(&placement, &pop, &ch)
        .expect("multi-round placement matches the library dimensions");
    render(
        cfg,
        &placement,
        ber,
        false,
        "m_round_greedy",
        None,
        Some(&assignment),
    );
    Ok(())
}

fn render(
    cfg: &RunConfig,
    placement: &Placement,
    ber: f64,
    certified: bool,
    method: &str,
    trace: Option<&GreedyTrace>,
    assignment: Option<&HelperAssignment>,
) {
    match cfg.format {
        Format::Table => {
            println!(
                "helpers: {}   files: {}   gamma: {}   rho: {} dB   {}",
                cfg.helpers,
                cfg.files,
                cfg.gamma,
                cfg.rho_db,
                match (cfg.beta_db, cfg.nu_db) {
                    (Some(b), _) => format!("beta: {b} dB"),
                    (_, Some(n)) => format!("nu: {n} dB"),
                    _ => unreachable!(),
                }
            );
            if cfg.per_helper > 1 {
                println!("slots per helper: {}", cfg.per_helper);
            }
            println!("placement: {:?}", placement.counts());
            println!("average BER: {ber:.6e}");
            if method == "greedy" {
                println!("certified optimal (beta >= 2): {certified}");
            } else {
                println!("certified optimal: false (multi-round heuristic)");
            }
            if let Some(t) = trace {
                println!();
                println!("greedy trace:");
                println!("{:<10} {:<6} {:<14} ber", "iteration", "file", "gain");
                for step in &t.steps {
                    println!(
                        "{:<10} {:<6} {:<14.6e} {:.6e}",
                        step.iteration,
                        step.file + 1,
                        step.gain,
                        step.ber
                    );
                }
            }
            if let Some(a) = assignment {
                println!();
                println!("helper assignment (1-based files):");
                for (h, files) in a.per_helper.iter().enumerate() {
                    let listed: Vec<String> = files.iter().map(|f| (f + 1).to_string()).collect();
                    println!("  helper {}: {}", h + 1, listed.join(" "));
                }
            }
        }
        Format::Csv => {
            if let Some(t) = trace {
                println!("iteration,file,gain,ber");
                for step in &t.steps {
                    println!(
                        "{},{},{},{}",
                        step.iteration,
                        step.file + 1,
                        step.gain,
                        step.ber
                    );
                }
                return;
            }
            println!(
                "helpers,files,gamma,rho_db,beta_db,nu_db,per_helper,average_ber,certified,placement"
            );
            let counts: Vec<String> = placement.counts().iter().map(|c| c.to_string()).collect();
            println!(
                "{},{},{},{},{},{},{},{},{},{}",
                cfg.helpers,
                cfg.files,
                cfg.gamma,
                cfg.rho_db,
                cfg.beta_db.map(|v| v.to_string()).unwrap_or_default(),
                cfg.nu_db.map(|v| v.to_string()).unwrap_or_default(),
                cfg.per_helper,
                ber,
                certified,
                counts.join(" ")
            );
        }
        Format::Json => {
            let mut doc = json!({
                "config": cfg,
                "method": method,
                "placement": placement.counts(),
                "total_slots": placement.total_slots(),
                "average_ber": ber,
                "certified": certified,
            });
            if let Some(t) = trace {
                doc["trace"] = t
                    .steps
                    .iter()
                    .map(|s| {
                        json!({
                            "iteration": s.iteration,
                            "file": s.file + 1,
                            "gain": s.gain,
                            "ber": s.ber,
                        })
                    })
                    .collect();
            }
            if let Some(a) = assignment {
                doc["assignment"] = a
                    .per_helper
                    .iter()
                    .map(|files| files.iter().map(|f| f + 1).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
                    .into();
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable report")
            );
        }
    }
}
