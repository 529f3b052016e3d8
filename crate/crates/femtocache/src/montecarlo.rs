//! Monte Carlo validation of the closed-form BER expressions.
//!
//! The simulator rebuilds the model from first principles: Rayleigh fading
//! makes the instantaneous received SNR of each link exponentially
//! distributed (mean rho for a helper link, mean nu for the cellular
//! link); a user holding n cached copies of the requested file listens to
//! the strongest helper, so its SNR is the maximum of n independent
//! exponentials; a coherent demodulator then errs with probability
//! a0 * Q(sqrt(a1 * snr)). Averaging that conditional error probability
//! over simulated fades estimates the same expectation the closed forms
//! integrate, with far lower variance than counting simulated bit flips
//! (the Bernoulli noise is integrated out analytically).
//!
//! Determinism and concurrency: trials are split into fixed chunks of
//! 65,536. Chunk c draws from two dedicated ChaCha12 substreams of the
//! user seed — stream 2c for file selection and stream 2c + 1 for fading —
//! and chunk statistics are merged in chunk order. Results therefore
//! depend only on (inputs, seed): chunks may be computed concurrently and
//! merged in order without changing a single bit. Keeping selection and
//! fading on separate substreams also makes an all-miss placement
//! reproduce `simulate_file_ber(0, ...)` exactly, seed for seed.
//!
//! The max-of-n fade is sampled by drawing the n exponentials and taking
//! their maximum — not by inverting the max distribution — so the same
//! primitive that feeds the estimators can be checked against the
//! analytic law (1 - e^(-x/rho))^n directly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::ber::instantaneous_ber;
use crate::channel::ChannelParams;
use crate::placement::{Placement, PlacementError};
use crate::popularity::Popularity;

/// Trials per RNG substream chunk.
const CHUNK_TRIALS: u64 = 65_536;

/// One draw of the instantaneous received SNR of a delivery link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FadingSample {
    snr: f64,
}

impl FadingSample {
    /// Instantaneous SNR; never negative.
    pub fn snr(&self) -> f64 {
        self.snr
    }
}

/// A simulated BER with its statistical precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BerEstimate {
    /// Sample mean of the conditional error probability.
    pub mean: f64,
    /// Sample standard deviation over sqrt(trials); NaN when trials = 1,
    /// where a sample standard deviation does not exist.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Streaming mean and squared-deviation accumulator, mergeable across
/// chunks without loss (Welford updates, pairwise combination).
#[derive(Debug, Clone, Copy)]
struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    fn new() -> Self {
        RunningStats {
            count: 0,
            mean: 0.0,
            m2: 0.0,
        }
    }

    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: RunningStats) -> RunningStats {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * (other.count as f64 / count as f64);
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64 / count as f64);
        RunningStats { count, mean, m2 }
    }

    fn std_error(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        (self.m2 / (self.count - 1) as f64).sqrt() / (self.count as f64).sqrt()
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn draw_exponential(rng: &mut ChaCha12Rng, mean: f64) -> f64 {
    let u: f64 = rng.gen();
    -mean * (1.0 - u).ln()
}

fn draw_fade(rng: &mut ChaCha12Rng, copies: usize, ch: &ChannelParams) -> FadingSample {
    let snr = if copies == 0 {
        draw_exponential(rng, ch.nu_bar())
    } else {
        let mut best = 0.0f64;
        for _ in 0..copies {
            best = best.max(draw_exponential(rng, ch.rho_bar()));
        }
        best
    };
    FadingSample { snr }
}

/// Draws `count` independent fades of the link a user sees when `copies`
/// helpers cache the requested file (`copies = 0` is the cellular link).
///
/// This is the estimators' own sampling primitive, exposed so its
/// empirical distribution can be tested against the analytic law.
pub fn sample_fades(
    copies: usize,
    ch: &ChannelParams,
    count: usize,
    seed: u64,
) -> Vec<FadingSample> {
    let mut out = Vec::with_capacity(count);
    let mut chunk = 0u64;
    while out.len() < count {
        let mut rng = stream_rng(seed, 2 * chunk + 1);
        let len = (count - out.len()).min(CHUNK_TRIALS as usize);
        for _ in 0..len {
            out.push(draw_fade(&mut rng, copies, ch));
        }
        chunk += 1;
    }
    out
}

/// Simulates the average BER of a file cached in `copies` helpers
/// (`copies = 0`: delivered over the cellular link).
///
/// Deterministic in (inputs, seed); `trials` must be at least 1.
pub fn simulate_file_ber(copies: usize, ch: &ChannelParams, trials: u64, seed: u64) -> BerEstimate {
    assert!(trials >= 1, "at least one trial required");
    let mut total = RunningStats::new();
    let mut done = 0u64;
    let mut chunk = 0u64;
    while done < trials {
        let len = CHUNK_TRIALS.min(trials - done);
        let mut fade_rng = stream_rng(seed, 2 * chunk + 1);
        let mut local = RunningStats::new();
        for _ in 0..len {
            let fade = draw_fade(&mut fade_rng, copies, ch);
            local.push(instantaneous_ber(fade.snr(), ch));
        }
        total = total.merge(local);
        done += len;
        chunk += 1;
    }
    BerEstimate {
        mean: total.mean,
        std_error: total.std_error(),
        trials,
        seed,
    }
}

/// Simulates the library-wide average BER under `placement`: each trial
/// draws a requested file from the popularity law, fades its delivery
/// link, and scores the conditional error probability.
///
/// Deterministic in (inputs, seed); `trials` must be at least 1.
pub fn simulate_average_ber(
    placement: &Placement,
    pop: &Popularity,
    ch: &ChannelParams,
    trials: u64,
    seed: u64,
) -> Result<BerEstimate, PlacementError> {
    assert!(trials >= 1, "at least one trial required");
    let counts = placement.counts();
    if counts.len() != pop.library_size() {
        return Err(PlacementError::DimensionMismatch {
            counts: counts.len(),
            files: pop.library_size(),
        });
    }
    let mut cdf = Vec::with_capacity(pop.library_size());
    let mut acc = 0.0;
    for &q in pop.q() {
        acc += q;
        cdf.push(acc);
    }

    let mut total = RunningStats::new();
    let mut done = 0u64;
    let mut chunk = 0u64;
    while done < trials {
        let len = CHUNK_TRIALS.min(trials - done);
        let mut select_rng = stream_rng(seed, 2 * chunk);
        let mut fade_rng = stream_rng(seed, 2 * chunk + 1);
        let mut local = RunningStats::new();
        for _ in 0..len {
            let u: f64 = select_rng.gen();
            let file = cdf.partition_point(|&c| c <= u).min(counts.len() - 1);
            let fade = draw_fade(&mut fade_rng, counts[file], ch);
            local.push(instantaneous_ber(fade.snr(), ch));
        }
        total = total.merge(local);
        done += len;
        chunk += 1;
    }
    Ok(BerEstimate {
        mean: total.mean,
        std_error: total.std_error(),
        trials,
        seed,
    })
}
