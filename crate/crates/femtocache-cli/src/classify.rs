//! The `classify` subcommand: report which closed-form placement regime
//! the configured instance falls into, with the thresholds that decided.

use femtocache::regimes::{classify, RegimeClassification};
use serde_json::json;

use crate::config::{CliError, Format, RunConfig};

pub fn cmd_classify(cfg: &RunConfig, high_snr: Option<bool>) -> Result<(), CliError> {
    if cfg.helpers < 2 {
        return Err(CliError::Invalid(
            "--helpers must be at least 2 to classify regimes".into(),
        ));
    }
    let pop = cfg.popularity()?;
    let ch = cfg.channel()?;
    // Default heuristic: treat 30 dB and up as the high-SNR regime.
    let high_snr = high_snr.unwrap_or(cfg.rho_db >= 30.0);
    let out = classify(cfg.helpers, &pop, &ch, high_snr);
    render(cfg, high_snr, &out);
    Ok(())
}

fn render(cfg: &RunConfig, high_snr: bool, out: &RegimeClassification) {
    match cfg.format {
        Format::Table => {
            println!(
                "helpers: {}   gamma: {}   rho: {} dB   high SNR: {high_snr}",
                cfg.helpers, cfg.gamma, cfg.rho_db
            );
            match out.regime.doubly_k() {
                Some(k) => println!("regime: {} (k = {k})", out.regime.name()),
                None => println!("regime: {}", out.regime.name()),
            }
            println!("certified: {}", out.certified);
            let t = &out.thresholds;
            println!("thresholds:");
            println!("  gamma0       = {:.6}", t.gamma0);
            println!("  gamma0_prime = {:.6}", t.gamma0_prime);
            println!("  gamma1       = {:.6}", t.gamma1);
            if let Some(band) = &t.band {
                if band.upper_bound_valid {
                    println!(
                        "  band k={}: gamma2 = {:.6}, gamma3 = {:.6}",
                        band.k, band.gamma2, band.gamma3
                    );
                } else {
                    println!(
                        "  band k={}: gamma2 = {:.6}, open-ended above",
                        band.k, band.gamma2
                    );
                }
            }
        }
        Format::Csv => {
            println!(
                "helpers,files,gamma,rho_db,high_snr,regime,k,gamma0,gamma0_prime,gamma1,band_gamma2,band_gamma3,certified"
            );
            let t = &out.thresholds;
            let k = out
                .regime
                .doubly_k()
                .map(|k| k.to_string())
                .unwrap_or_default();
            let (g2, g3) = match &t.band {
                Some(b) => (b.gamma2.to_string(), b.gamma3.to_string()),
                None => (String::new(), String::new()),
            };
            println!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                cfg.helpers,
                cfg.files,
                cfg.gamma,
                cfg.rho_db,
                high_snr,
                out.regime.name(),
                k,
                t.gamma0,
                t.gamma0_prime,
                t.gamma1,
                g2,
                g3,
                out.certified
            );
        }
        Format::Json => {
            let doc = json!({
                "config": cfg,
                "high_snr": high_snr,
                "classification": out,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable report")
            );
        }
    }
}
