//! Closed-form placement regimes and the Zipf-exponent thresholds that
//! separate them.
//!
//! Two kinds of marginal gain drive every placement decision. Caching the
//! first copy of file k removes its cellular traffic and earns the file
//! diversity gain q_k * delta_p(0); caching an extra copy of an
//! already-cached file sharpens its fading statistics and earns the channel
//! diversity gain q_k * delta_p(n_k). Under a Zipf popularity law the
//! ordering of these gains is controlled entirely by the exponent gamma,
//! which yields closed-form optimality tests that avoid running the greedy
//! algorithm at all:
//!
//! * gamma <= gamma0 (and beta >= 2): spreading one copy of each of the N
//!   most popular files over the helpers — the even placement — is optimal
//!   at every SNR.
//! * gamma >= gamma1 (and beta >= 2): devoting all N slots to the single
//!   most popular file is optimal at every SNR.
//! * gamma2(k) <= gamma <= gamma3(k) (and beta >= 2): in the high-SNR limit
//!   the doubly placement — two copies of each of the top k files, one copy
//!   of the next N - 2k — is optimal. The bands tile the whole axis above
//!   gamma0 because gamma3(k) = gamma2(k + 1) identically, and the top band
//!   k = floor(N/2) is open-ended (only its lower edge binds).
//! * beta < 2: the first copy of a file is worth less than the second, the
//!   greedy exchange argument breaks down, and away from the high-SNR limit
//!   no closed form is known. In the high-SNR limit the doubly placement
//!   with k = floor(N/2) is optimal.
//!
//! gamma0' is a companion bound: even placement cannot be optimal for any
//! beta once gamma >= gamma0'. It is the beta -> infinity limit of gamma0,
//! so gamma0 < gamma0' always.
//!
//! All thresholds are evaluated at the effective SNR of the configured
//! modulation, so they remain exact away from the binary default. The
//! shared log-ratio numerator is rationalized so that no significant digits
//! cancel at high SNR, and gamma1 is evaluated through the stable
//! `delta_p` path rather than its alternating-sum textbook form, which
//! would be pure rounding noise in double precision for N beyond about 15.
//! The formulas assume beta > 1 (cluster links better than cellular);
//! below that they degenerate to signed infinities or NaN and the
//! classifier falls back to regimes that do not consult them.
//!
//! The high-SNR limit is a caller-asserted hypothesis: classification in a
//! doubly band is reported as certified because the band condition itself
//! holds, not as a finite-SNR optimality proof.

use std::error::Error;
use std::f64::consts::LN_2;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::ber::{delta_p, effective};
use crate::channel::ChannelParams;
use crate::popularity::Popularity;

/// Errors from the gain and threshold evaluations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegimeError {
    /// The thresholds compare at least two helpers; N = 1 has no regimes.
    TooFewHelpers { helpers: usize },
    /// File index outside 1..=F.
    FileIndexOutOfRange { index: usize, files: usize },
    /// Doubly index outside 1..=floor(N/2).
    DoublyIndexOutOfRange { k: usize, limit: usize },
    /// Channel diversity gain needs at least one existing copy.
    CopiesMustBePositive,
}

impl fmt::Display for RegimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeError::TooFewHelpers { helpers } => {
                write!(
                    f,
                    "regime thresholds need at least 2 helpers, got {helpers}"
                )
            }
            RegimeError::FileIndexOutOfRange { index, files } => {
                write!(f, "file index {index} outside 1..={files}")
            }
            RegimeError::DoublyIndexOutOfRange { k, limit } => {
                write!(f, "doubly index {k} outside 1..={limit}")
            }
            RegimeError::CopiesMustBePositive => {
                write!(
                    f,
                    "channel diversity gain needs n_k >= 1; n_k = 0 is a file gain"
                )
            }
        }
    }
}

impl Error for RegimeError {}

/// File diversity gain of the file with 1-based popularity rank `k`:
/// its request probability times the BER drop from caching a first copy.
pub fn file_gain(k: usize, pop: &Popularity, ch: &ChannelParams) -> Result<f64, RegimeError> {
    let q = pop.q_at(k).ok_or(RegimeError::FileIndexOutOfRange {
        index: k,
        files: pop.library_size(),
    })?;
    Ok(q * delta_p(0, ch))
}

/// Channel diversity gain of rank-`k` file already cached in `n_k >= 1`
/// helpers: its request probability times the BER drop from one more copy.
pub fn channel_gain(
    k: usize,
    n_k: usize,
    pop: &Popularity,
    ch: &ChannelParams,
) -> Result<f64, RegimeError> {
    if n_k == 0 {
        return Err(RegimeError::CopiesMustBePositive);
    }
    let q = pop.q_at(k).ok_or(RegimeError::FileIndexOutOfRange {
        index: k,
        files: pop.library_size(),
    })?;
    Ok(q * delta_p(n_k, ch))
}

/// 1 - sqrt((1 + rho) / (x + rho)), rationalized so no digits cancel at
/// high SNR where the value shrinks like (x - 1) / (2 rho).
fn one_minus_sqrt_ratio(x: f64, rho: f64) -> f64 {
    let ratio = (1.0 + rho) / (x + rho);
    (x - 1.0) / (x + rho) / (1.0 + ratio.sqrt())
}

/// Shared numerator of gamma0, gamma2, gamma3: the log of the ratio between
/// the first-copy shortfalls at cluster gain beta and at the pivotal beta = 2.
fn log_ratio_numerator(ch: &ChannelParams) -> f64 {
    let rho = effective(ch.rho_bar(), ch);
    one_minus_sqrt_ratio(ch.beta(), rho).ln() - one_minus_sqrt_ratio(2.0, rho).ln()
}

fn check_helpers(helpers: usize) -> Result<(), RegimeError> {
    if helpers < 2 {
        return Err(RegimeError::TooFewHelpers { helpers });
    }
    Ok(())
}

fn check_doubly_index(k: usize, helpers: usize) -> Result<(), RegimeError> {
    let limit = helpers / 2;
    if k < 1 || k > limit {
        return Err(RegimeError::DoublyIndexOutOfRange { k, limit });
    }
    Ok(())
}

/// Largest Zipf exponent for which even placement is optimal (beta >= 2).
pub fn gamma0(helpers: usize, ch: &ChannelParams) -> Result<f64, RegimeError> {
    check_helpers(helpers)?;
    Ok(log_ratio_numerator(ch) / (helpers as f64).ln())
}

/// Zipf exponent beyond which even placement cannot be optimal for any
/// beta; the beta -> infinity limit of gamma0.
pub fn gamma0_prime(helpers: usize, ch: &ChannelParams) -> Result<f64, RegimeError> {
    check_helpers(helpers)?;
    let rho = effective(ch.rho_bar(), ch);
    Ok(-one_minus_sqrt_ratio(2.0, rho).ln() / (helpers as f64).ln())
}

/// Smallest Zipf exponent for which single-file placement is optimal
/// (beta >= 2): the base-2 log of delta_p(0) / delta_p(N - 1), i.e. the
/// exponent at which the second file's first copy stops beating the first
/// file's N-th copy.
pub fn gamma1(helpers: usize, ch: &ChannelParams) -> Result<f64, RegimeError> {
    check_helpers(helpers)?;
    Ok((delta_p(0, ch) / delta_p(helpers - 1, ch)).ln() / LN_2)
}

/// Lower edge of the doubly band with index `k` (beta >= 2, high SNR).
pub fn gamma2(k: usize, helpers: usize, ch: &ChannelParams) -> Result<f64, RegimeError> {
    check_helpers(helpers)?;
    check_doubly_index(k, helpers)?;
    let denom = ((helpers - k + 1) as f64).ln() - (k as f64).ln();
    Ok(log_ratio_numerator(ch) / denom)
}

/// Upper edge of the doubly band with index `k`, with its validity flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gamma3 {
    /// Signed value of the closed form. Meaningful as an upper bound only
    /// when `upper_bound_valid`; at k = floor(N/2) it is negative (even N)
    /// or infinite (odd N) and the band is open-ended above.
    pub value: f64,
    /// True exactly when k < floor(N/2).
    pub upper_bound_valid: bool,
}

/// Upper edge of the doubly band with index `k` (beta >= 2, high SNR).
///
/// For k = floor(N/2) the closed form's denominator is non-positive and
/// the value is returned signed with `upper_bound_valid = false`: that top
/// band has no upper edge.
pub fn gamma3(k: usize, helpers: usize, ch: &ChannelParams) -> Result<Gamma3, RegimeError> {
    check_helpers(helpers)?;
    check_doubly_index(k, helpers)?;
    let denom = ((helpers - k) as f64).ln() - ((k + 1) as f64).ln();
    Ok(Gamma3 {
        value: log_ratio_numerator(ch) / denom,
        upper_bound_valid: k < helpers / 2,
    })
}

/// Placement regime decided from the Zipf exponent and channel parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// One copy each of the N most popular files is optimal at every SNR.
    Even,
    /// All N copies of the most popular file is optimal at every SNR.
    SingleFile,
    /// Two copies of the top k files, one of the next N - 2k, optimal in
    /// the high-SNR limit.
    Doubly(usize),
    /// No closed form applies; run the greedy algorithm.
    GreedyRequired,
    /// beta < 2 in the high-SNR limit: doubly with k = floor(N/2).
    HighSnrDoublyHalf,
}

impl Regime {
    /// Stable name used in serialized output.
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Even => "Even",
            Regime::SingleFile => "SingleFile",
            Regime::Doubly(_) => "Doubly",
            Regime::GreedyRequired => "GreedyRequired",
            Regime::HighSnrDoublyHalf => "HighSnrDoublyHalf",
        }
    }

    /// The doubly index when this regime carries one.
    pub fn doubly_k(&self) -> Option<usize> {
        match self {
            Regime::Doubly(k) => Some(*k),
            _ => None,
        }
    }
}

/// The doubly band the classifier matched, kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoublyBand {
    pub k: usize,
    pub gamma2: f64,
    pub gamma3: f64,
    /// False for k = floor(N/2), whose band is open-ended above.
    pub upper_bound_valid: bool,
}

/// Threshold values consulted while classifying.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeThresholds {
    pub gamma0: f64,
    pub gamma0_prime: f64,
    pub gamma1: f64,
    /// Present when a doubly band decided the regime.
    pub band: Option<DoublyBand>,
}

/// Outcome of the closed-form classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeClassification {
    pub regime: Regime,
    pub thresholds: RegimeThresholds,
    /// Whether the hypotheses of the matching closed form hold: beta >= 2
    /// where required, and the caller-asserted high-SNR limit for the
    /// doubly regimes. A certified doubly claim certifies the band
    /// condition, not finite-SNR optimality.
    pub certified: bool,
}

impl Serialize for RegimeClassification {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RegimeClassification", 4)?;
        st.serialize_field("regime", self.regime.name())?;
        st.serialize_field("k", &self.regime.doubly_k())?;
        st.serialize_field("thresholds", &self.thresholds)?;
        st.serialize_field("certified", &self.certified)?;
        st.end()
    }
}

/// Classifies the instance into a placement regime.
///
/// `high_snr` is the caller's assertion that the asymptotic results may be
/// applied; the doubly regimes are reported only under it. Exact-boundary
/// exponents classify into the closed-form regime, and an exponent on a
/// shared band edge takes the lower band index. Only `pop.gamma()` enters
/// the decision: the thresholds test popularity ratios, which the Zipf law
/// fixes as powers of the rank, so the library size is irrelevant here
/// (though an even or doubly placement needs F >= N - k files to exist).
///
/// `helpers` must be at least 2.
pub fn classify(
    helpers: usize,
    pop: &Popularity,
    ch: &ChannelParams,
    high_snr: bool,
) -> RegimeClassification {
    assert!(helpers >= 2, "classification needs at least 2 helpers");
    let gamma = pop.gamma();
    let beta = ch.beta();
    let g0 = gamma0(helpers, ch).expect("helpers >= 2 checked above");
    let g0p = gamma0_prime(helpers, ch).expect("helpers >= 2 checked above");
    let g1 = gamma1(helpers, ch).expect("helpers >= 2 checked above");
    let mut thresholds = RegimeThresholds {
        gamma0: g0,
        gamma0_prime: g0p,
        gamma1: g1,
        band: None,
    };

    if beta >= 2.0 {
        if gamma <= g0 {
            return RegimeClassification {
                regime: Regime::Even,
                thresholds,
                certified: true,
            };
        }
        if gamma >= g1 {
            return RegimeClassification {
                regime: Regime::SingleFile,
                thresholds,
                certified: true,
            };
        }
        if high_snr {
            // gamma > gamma0 = gamma2(1) here, and the bands tile the axis
            // above gamma0, so the scan always lands somewhere; ties on a
            // shared edge stop at the lower k.
            let half = helpers / 2;
            for k in 1..=half {
                let g3 = gamma3(k, helpers, ch).expect("k in 1..=floor(N/2)");
                if !g3.upper_bound_valid || gamma <= g3.value {
                    let g2 = gamma2(k, helpers, ch).expect("k in 1..=floor(N/2)");
                    thresholds.band = Some(DoublyBand {
                        k,
                        gamma2: g2,
                        gamma3: g3.value,
                        upper_bound_valid: g3.upper_bound_valid,
                    });
                    return RegimeClassification {
                        regime: Regime::Doubly(k),
                        thresholds,
                        certified: true,
                    };
                }
            }
            unreachable!("doubly bands tile the exponent axis above gamma0");
        }
        return RegimeClassification {
            regime: Regime::GreedyRequired,
            thresholds,
            certified: true,
        };
    }

    if high_snr {
        return RegimeClassification {
            regime: Regime::HighSnrDoublyHalf,
            thresholds,
            certified: true,
        };
    }
    RegimeClassification {
        regime: Regime::GreedyRequired,
        thresholds,
        certified: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::db_to_linear;
    use crate::greedy::greedy_place;
    use crate::popularity::zipf;

    fn channel(rho_db: f64, beta_db: f64) -> ChannelParams {
        ChannelParams::from_rho_beta(db_to_linear(rho_db), db_to_linear(beta_db)).unwrap()
    }

    #[test]
    fn file_gain_uniform_and_ranked() {
        let ch = channel(10.0, 5.0);
        let uniform = zipf(4, 0.0).unwrap();
        let g = file_gain(2, &uniform, &ch).unwrap();
        assert_eq!(g, 0.25 * delta_p(0, &ch));

        let ranked = zipf(10, 1.0).unwrap();
        let ratio = file_gain(1, &ranked, &ch).unwrap() / file_gain(2, &ranked, &ch).unwrap();
        assert!((ratio - 2.0).abs() <= 1e-15);
    }

    #[test]
    fn file_gain_vanishes_at_beta_one() {
        let ch = ChannelParams::from_rho_beta(100.0, 1.0).unwrap();
        let pop = zipf(5, 0.8).unwrap();
        for k in 1..=5 {
            assert_eq!(file_gain(k, &pop, &ch).unwrap(), 0.0);
        }
    }

    #[test]
    fn channel_gain_first_copy_matches_file_gain_at_beta_two() {
        let ch = ChannelParams::from_rho_beta(10.0, 2.0).unwrap();
        let pop = zipf(8, 0.7).unwrap();
        for k in [1, 3, 8] {
            let f = file_gain(k, &pop, &ch).unwrap();
            let c = channel_gain(k, 1, &pop, &ch).unwrap();
            assert!((f - c).abs() <= 1e-12 * f, "k={k}: {f} vs {c}");
        }
    }

    #[test]
    fn channel_gain_is_rank_free_under_uniform_popularity() {
        let ch = channel(15.0, 5.0);
        let pop = zipf(6, 0.0).unwrap();
        let base = channel_gain(1, 2, &pop, &ch).unwrap();
        for k in 2..=6 {
            assert_eq!(channel_gain(k, 2, &pop, &ch).unwrap(), base);
        }
    }

    #[test]
    fn gain_input_validation() {
        let ch = channel(10.0, 5.0);
        let pop = zipf(4, 0.6).unwrap();
        assert_eq!(
            file_gain(0, &pop, &ch),
            Err(RegimeError::FileIndexOutOfRange { index: 0, files: 4 })
        );
        assert_eq!(
            file_gain(5, &pop, &ch),
            Err(RegimeError::FileIndexOutOfRange { index: 5, files: 4 })
        );
        assert_eq!(
            channel_gain(1, 0, &pop, &ch),
            Err(RegimeError::CopiesMustBePositive)
        );
        assert_eq!(
            channel_gain(9, 1, &pop, &ch),
            Err(RegimeError::FileIndexOutOfRange { index: 9, files: 4 })
        );
    }

    #[test]
    fn frozen_thresholds_at_forty_db() {
        // N = 10, rho = 40 dB, beta = 5 dB; references from a 120-digit
        // evaluation of the closed forms.
        let ch = channel(40.0, 5.0);
        assert!((gamma0(10, &ch).unwrap() - 0.334_873_612_835_626_1).abs() < 1e-13);
        assert!((gamma0_prime(10, &ch).unwrap() - 4.301_105_990_277_61).abs() < 1e-13);
        assert!((gamma2(3, 10, &ch).unwrap() - 0.786145994916766).abs() < 1e-13);
        assert!((gamma3(3, 10, &ch).unwrap().value - 1.377864966599818).abs() < 1e-13);
        assert!((gamma2(4, 10, &ch).unwrap() - 1.377864966599818).abs() < 1e-13);
        assert!((gamma3(4, 10, &ch).unwrap().value - 4.229203625239884).abs() < 1e-13);
        assert!((gamma1(10, &ch).unwrap() - 90.38294069688835).abs() < 1e-10);
    }

    #[test]
    fn gamma1_at_moderate_snr() {
        let ch = channel(15.0, 5.0);
        assert!((gamma1(10, &ch).unwrap() - 25.958667536120014).abs() < 1e-10);
    }

    #[test]
    fn chain_identities_are_bit_tight() {
        for &(rho_db, beta_db) in &[(10.0, 5.0), (25.0, 3.5), (40.0, 5.0), (40.0, 9.0)] {
            let ch = channel(rho_db, beta_db);
            for helpers in [2usize, 3, 7, 10, 11] {
                let g0 = gamma0(helpers, &ch).unwrap();
                let g21 = gamma2(1, helpers, &ch).unwrap();
                assert_eq!(g0.to_bits(), g21.to_bits());
                for k in 1..helpers / 2 {
                    let g3 = gamma3(k, helpers, &ch).unwrap();
                    assert!(g3.upper_bound_valid);
                    let g2next = gamma2(k + 1, helpers, &ch).unwrap();
                    assert_eq!(g3.value.to_bits(), g2next.to_bits());
                }
            }
        }
    }

    #[test]
    fn gamma0_below_gamma0_prime_and_bands_ordered() {
        for &beta_db in &[3.02, 5.0, 10.0, 20.0] {
            for &rho_db in &[0.0, 15.0, 40.0] {
                let ch = channel(rho_db, beta_db);
                let g0 = gamma0(10, &ch).unwrap();
                let g0p = gamma0_prime(10, &ch).unwrap();
                assert!(g0 < g0p, "rho={rho_db} beta={beta_db}");
                let mut prev = gamma2(1, 10, &ch).unwrap();
                for k in 2..=5 {
                    let next = gamma2(k, 10, &ch).unwrap();
                    assert!(next > prev, "gamma2 must increase in k");
                    prev = next;
                }
            }
        }
    }

    #[test]
    fn top_band_has_no_upper_edge() {
        let ch = channel(40.0, 5.0);
        // Even N: negative denominator, signed negative value.
        let even = gamma3(5, 10, &ch).unwrap();
        assert!(!even.upper_bound_valid);
        assert!(even.value < 0.0);
        // Odd N: denominator exactly zero, value +infinity.
        let odd = gamma3(5, 11, &ch).unwrap();
        assert!(!odd.upper_bound_valid);
        assert!(odd.value.is_infinite() && odd.value > 0.0);
    }

    #[test]
    fn threshold_input_validation() {
        let ch = channel(40.0, 5.0);
        assert_eq!(
            gamma0(1, &ch),
            Err(RegimeError::TooFewHelpers { helpers: 1 })
        );
        assert_eq!(
            gamma2(0, 10, &ch),
            Err(RegimeError::DoublyIndexOutOfRange { k: 0, limit: 5 })
        );
        assert_eq!(
            gamma2(6, 10, &ch),
            Err(RegimeError::DoublyIndexOutOfRange { k: 6, limit: 5 })
        );
        assert_eq!(
            gamma3(6, 10, &ch).unwrap_err(),
            RegimeError::DoublyIndexOutOfRange { k: 6, limit: 5 }
        );
    }

    #[test]
    fn classifies_uniform_as_even() {
        let ch = channel(10.0, 5.0);
        let pop = zipf(20, 0.0).unwrap();
        let out = classify(10, &pop, &ch, false);
        assert_eq!(out.regime, Regime::Even);
        assert!(out.certified);
        assert!(out.thresholds.band.is_none());
    }

    #[test]
    fn classifies_published_high_snr_point_as_doubly_three() {
        let ch = channel(40.0, 5.0);
        let pop = zipf(20, 1.0).unwrap();
        let out = classify(10, &pop, &ch, true);
        assert_eq!(out.regime, Regime::Doubly(3));
        assert!(out.certified);
        let band = out.thresholds.band.unwrap();
        assert_eq!(band.k, 3);
        assert!(band.gamma2 <= 1.0 && 1.0 <= band.gamma3);
    }

    #[test]
    fn boundary_exponent_takes_the_lower_band() {
        let ch = channel(40.0, 5.0);
        let edge = gamma3(3, 10, &ch).unwrap().value;
        let pop = zipf(20, edge).unwrap();
        let out = classify(10, &pop, &ch, true);
        assert_eq!(out.regime, Regime::Doubly(3));
    }

    #[test]
    fn steep_exponent_classifies_single_file() {
        let ch = channel(40.0, 5.0);
        let pop = zipf(20, 95.0).unwrap();
        let out = classify(10, &pop, &ch, true);
        assert_eq!(out.regime, Regime::SingleFile);
        assert!(out.certified);
    }

    #[test]
    fn above_gamma0_prime_is_never_even() {
        for &beta_db in &[3.5, 5.0, 15.0] {
            let ch = channel(40.0, beta_db);
            let g0p = gamma0_prime(10, &ch).unwrap();
            let pop = zipf(20, g0p + 0.01).unwrap();
            for high_snr in [false, true] {
                let out = classify(10, &pop, &ch, high_snr);
                assert_ne!(out.regime, Regime::Even);
            }
        }
    }

    #[test]
    fn mid_band_without_high_snr_requires_greedy() {
        let ch = channel(15.0, 5.0);
        let pop = zipf(20, 1.0).unwrap();
        let out = classify(10, &pop, &ch, false);
        assert_eq!(out.regime, Regime::GreedyRequired);
        assert!(out.certified, "greedy is provably optimal for beta >= 2");
    }

    #[test]
    fn low_beta_classification() {
        let ch = ChannelParams::from_rho_beta(1000.0, 1.5).unwrap();
        let pop = zipf(20, 0.6).unwrap();
        let high = classify(10, &pop, &ch, true);
        assert_eq!(high.regime, Regime::HighSnrDoublyHalf);
        assert!(high.certified);
        let low = classify(10, &pop, &ch, false);
        assert_eq!(low.regime, Regime::GreedyRequired);
        assert!(!low.certified);
    }

    #[test]
    fn serializes_flat_json_shape() {
        let ch = channel(40.0, 5.0);
        let pop = zipf(20, 1.0).unwrap();
        let out = classify(10, &pop, &ch, true);
        let json = serde_json::to_value(&out).unwrap();
        assert_eq!(json["regime"], "Doubly");
        assert_eq!(json["k"], 3);
        assert_eq!(json["certified"], true);
        assert!(json["thresholds"]["gamma0"].is_number());
        assert!(json["thresholds"]["band"]["gamma2"].is_number());

        let even = classify(10, &zipf(20, 0.0).unwrap(), &ch, false);
        let json = serde_json::to_value(&even).unwrap();
        assert_eq!(json["regime"], "Even");
        assert!(json["k"].is_null());
    }

    #[test]
    fn certified_closed_forms_match_greedy() {
        let ch = channel(40.0, 5.0);
        let pop = zipf(20, 0.2).unwrap();
        let out = classify(10, &pop, &ch, false);
        assert_eq!(out.regime, Regime::Even);
        let greedy = greedy_place(10, &pop, &ch);
        assert_eq!(greedy.placement.counts()[..10], vec![1; 10]);
        assert!(greedy.placement.counts()[10..].iter().all(|&c| c == 0));

        let steep = zipf(20, 95.0).unwrap();
        assert_eq!(classify(10, &steep, &ch, false).regime, Regime::SingleFile);
        let greedy = greedy_place(10, &steep, &ch);
        assert_eq!(greedy.placement.counts()[0], 10);
        assert!(greedy.placement.counts()[1..].iter().all(|&c| c == 0));
    }
}
