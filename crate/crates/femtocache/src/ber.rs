//! Bit-error-rate formulas for Rayleigh-faded BPSK/QPSK links.
//!
//! Everything here is an exact expectation over the fading distribution —
//! no simulation. The building blocks:
//!
//! * `q_function`: the Gaussian tail Q(x) = erfc(x / sqrt(2)) / 2.
//! * `cellular_ber`: a single link at mean SNR nu, averaged over a
//!   unit-mean exponential power fade,
//!   p = (1/2) (1 - sqrt(nu / (1 + nu))).
//! * `cluster_ber`: selection diversity over n independently faded copies
//!   at mean SNR rho; the receiver decodes the strongest copy, whose
//!   effective SNR is the max of n exponentials. Closed form (alternating
//!   binomial sum):
//!   p(n) = (1/2) sum_{m=0}^{n} C(n, m) (-1)^m sqrt(rho / (m + rho)).
//! * `delta_p`: the marginal gain p(n) - p(n + 1) of adding one more copy;
//!   this is what the greedy placement maximises.
//!
//! Modulation constants other than the default (a0, a1) = (1, 2) enter
//! through the effective SNR a1 * snr / 2 and an overall a0 factor, so all
//! closed forms remain exact for user-supplied constants.
//!
//! Numerical strategy. The alternating sum cancels catastrophically once n
//! or rho is large (its absolute error floor is about 2^n * eps while the
//! true value decays like rho^{-n}), so:
//!
//! * `cluster_ber` uses the sum for n <= 15 and otherwise integrates the
//!   equivalent trigonometric product form
//!   p(n) = (1/pi) int_0^{pi/2} prod_{j=1}^{n} j / (c + j - 1) dtheta,
//!   with c = 1 + rho / sin^2(theta), by 64-node Gauss-Legendre
//!   quadrature. The integrand is smooth and positive, so this path is
//!   accurate to near machine precision for any n.
//! * `delta_p` always uses the single-integral form
//!   (1/pi) int (c - 1) / (n + c) * prod_{j=1}^{n} j / (c + j - 1) dtheta
//!   for n >= 1. A subtraction of the two sums would drown in the 2^n * eps
//!   noise floor long before n = 20 at high SNR; the integrand above is
//!   positive and strictly decreasing in n pointwise, so the computed gains
//!   keep their exact ordering even when they are ~1e-60.
//!
//! Both cluster paths are exported (`cluster_ber_sum`, `cluster_ber_quad`)
//! so tests can cross-check them against each other.

use std::error::Error;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::sync::OnceLock;

use crate::channel::ChannelParams;
use crate::quad::GaussLegendre;

/// Number of Gauss-Legendre nodes used by the quadrature paths.
///
/// The product-form integrands behave like sin(theta)^(2n) near the right
/// endpoint, so the rule must integrate trigonometric polynomials of
/// degree ~2n exactly; 128 nodes leaves a wide margin for every n this
/// crate evaluates (placements cap n at the cluster size).
const QUAD_ORDER: usize = 128;

/// Largest n evaluated through the alternating binomial sum.
const SUM_MAX_COPIES: usize = 15;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(QUAD_ORDER))
}

/// Errors from the BER formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BerError {
    /// The selection-diversity formulas need at least one cached copy;
    /// n = 0 is the cellular link, handled by `cellular_ber`.
    ClusterRequiresHelper,
}

impl fmt::Display for BerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerError::ClusterRequiresHelper => {
                write!(
                    f,
                    "cluster BER needs n >= 1 cached copies (n = 0 is the cellular link)"
                )
            }
        }
    }
}

impl Error for BerError {}

/// Gaussian tail probability Q(x) = P(Z > x) for standard normal Z.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Instantaneous BER a0 * Q(sqrt(a1 * snr)) at a given realised SNR.
///
/// This is the conditional error rate before fading is averaged out; the
/// Monte Carlo validator averages it over simulated fades.
pub fn instantaneous_ber(snr: f64, ch: &ChannelParams) -> f64 {
    ch.alpha0() * q_function((ch.alpha1() * snr).sqrt())
}

/// Effective SNR a1 * snr / 2; the closed forms below are exact in it.
pub(crate) fn effective(snr: f64, ch: &ChannelParams) -> f64 {
    0.5 * ch.alpha1() * snr
}

/// Average BER of the cellular (backhaul) link at mean SNR `nu_bar`.
pub fn cellular_ber(ch: &ChannelParams) -> f64 {
    let nu = effective(ch.nu_bar(), ch);
    ch.alpha0() * 0.5 * (1.0 - (nu / (1.0 + nu)).sqrt())
}

/// Average BER with selection diversity over `n >= 1` cached copies.
///
/// Dispatches to the binomial sum for n <= 15 while the result stays
/// clear of that sum's cancellation noise floor, and to Gauss-Legendre
/// quadrature of the product form otherwise, so the returned value is
/// always positive and lies in (0, alpha0/2].
pub fn cluster_ber(n: usize, ch: &ChannelParams) -> Result<f64, BerError> {
    if n <= SUM_MAX_COPIES {
        let sum = cluster_ber_sum(n, ch)?;
        // The alternating sum cancels down to an absolute noise floor
        // near 2^n * eps; once the true value sinks to that scale
        // (several copies at high SNR) the sum may even come out
        // non-positive, so fall through to the stable quadrature there.
        if sum > ch.alpha0() * (1u64 << n) as f64 * (1024.0 * f64::EPSILON) {
            return Ok(sum);
        }
    }
    cluster_ber_quad(n, ch)
}

/// Alternating binomial-sum evaluation of the cluster BER.
///
/// Exact in principle for every n, but in floating point its absolute
/// error grows like 2^n * eps; prefer `cluster_ber` which switches to the
/// quadrature path when the sum becomes unreliable.
pub fn cluster_ber_sum(n: usize, ch: &ChannelParams) -> Result<f64, BerError> {
    if n == 0 {
        return Err(BerError::ClusterRequiresHelper);
    }
    let rho = effective(ch.rho_bar(), ch);
    let mut acc = 0.0;
    for m in 0..=n {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(n, m) * (rho / (m as f64 + rho)).sqrt();
    }
    Ok(ch.alpha0() * 0.5 * acc)
}

/// Quadrature evaluation of the cluster BER via the trigonometric
/// product form; stable for any n.
pub fn cluster_ber_quad(n: usize, ch: &ChannelParams) -> Result<f64, BerError> {
    if n == 0 {
        return Err(BerError::ClusterRequiresHelper);
    }
    let rho = effective(ch.rho_bar(), ch);
    let integral = rule().integrate(0.0, FRAC_PI_2, |theta| {
        let s = theta.sin();
        let c = 1.0 + rho / (s * s);
        product_term(n, c)
    });
    Ok(ch.alpha0() * integral / PI)
}

/// Average BER of the file-delivery link when `n` helpers cache the file
/// (`n = 0` falls back to the cellular link).
pub fn file_ber(n: usize, ch: &ChannelParams) -> f64 {
    if n == 0 {
        cellular_ber(ch)
    } else {
        cluster_ber(n, ch).expect("n >= 1 cannot hit the n = 0 rejection")
    }
}

/// Marginal BER gain of caching one more copy: file_ber(n) - file_ber(n+1).
///
/// For n = 0 this is the cellular-to-cluster handoff gain
/// (1/2) (sqrt(rho / (1 + rho)) - sqrt(nu / (1 + nu))); for n >= 1 it is
/// evaluated as a single positive integral (see module docs), which keeps
/// the strict ordering delta_p(0) > delta_p(1) > ... intact even deep into
/// the high-SNR regime where the gains underflow toward 1e-60.
pub fn delta_p(n: usize, ch: &ChannelParams) -> f64 {
    let rho = effective(ch.rho_bar(), ch);
    if n == 0 {
        let nu = effective(ch.nu_bar(), ch);
        return ch.alpha0() * 0.5 * ((rho / (1.0 + rho)).sqrt() - (nu / (1.0 + nu)).sqrt());
    }
    let integral = rule().integrate(0.0, FRAC_PI_2, |theta| {
        let s = theta.sin();
        let c = 1.0 + rho / (s * s);
        (c - 1.0) / (n as f64 + c) * product_term(n, c)
    });
    ch.alpha0() * integral / PI
}

/// prod_{j=1}^{n} j / (c + j - 1), the Laplace-domain max-of-n factor.
fn product_term(n: usize, c: f64) -> f64 {
    let mut prod = 1.0;
    for j in 1..=n {
        prod *= j as f64 / (c + (j - 1) as f64);
    }
    prod
}

/// Binomial coefficient as f64 (exact through the n <= 15 range used by
/// the sum path; larger n may round).
fn binomial(n: usize, m: usize) -> f64 {
    let m = m.min(n - m);
    let mut c: u128 = 1;
    for k in 1..=m {
        c = c * (n - m + k) as u128 / k as u128;
    }
    c as f64
}

/// Memoised file-BER and marginal-gain lookups for one channel.
///
/// The greedy and exhaustive searches evaluate the same `file_ber(n)` and
/// `delta_p(n)` for every candidate; this table computes each once up
/// front. Entries are bit-identical to the free functions.
#[derive(Debug, Clone)]
pub struct BerTable {
    file: Vec<f64>,
    delta: Vec<f64>,
}

impl BerTable {
    /// Precomputes `file_ber(0..=max_copies)` and `delta_p(0..max_copies)`.
    pub fn new(ch: &ChannelParams, max_copies: usize) -> Self {
        let file = (0..=max_copies).map(|n| file_ber(n, ch)).collect();
        let delta = (0..max_copies).map(|n| delta_p(n, ch)).collect();
        BerTable { file, delta }
    }

    /// Largest copy count the table serves.
    pub fn max_copies(&self) -> usize {
        self.file.len() - 1
    }

    /// file_ber(n); panics if n exceeds the precomputed range.
    pub fn file_ber(&self, n: usize) -> f64 {
        self.file[n]
    }

    /// delta_p(n); panics if n >= max_copies.
    pub fn delta_p(&self, n: usize) -> f64 {
        self.delta[n]
    }
}
