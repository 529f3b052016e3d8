//! Zipf popularity law over the file library.
//!
//! File i (1-based rank) is requested with probability
//! q_i = i^(-gamma) / sum_j j^(-gamma). Larger gamma concentrates requests on
//! the top-ranked files; gamma = 0 is uniform.

use serde::Serialize;

/// A Zipf request distribution over `library_size` files.
///
/// The probability vector is computed once at construction and is immutable;
/// it is non-increasing in rank, strictly decreasing when gamma > 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Popularity {
    library_size: usize,
    gamma: f64,
    q: Vec<f64>,
}

/// Construction failures for [`Popularity`].
#[derive(Debug, Clone, PartialEq)]
pub enum PopularityError {
    /// The library must hold at least one file.
    EmptyLibrary,
    /// gamma must be finite and non-negative.
    InvalidGamma(f64),
}

impl std::fmt::Display for PopularityError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PopularityError::EmptyLibrary => write!(f, "library_size must be at least 1"),
            PopularityError::InvalidGamma(g) => {
                write!(f, "gamma must be finite and non-negative, got {g}")
            }
        }
    }
}

impl std::error::Error for PopularityError {}

/// Builds the Zipf distribution with exponent `gamma` over `library_size`
/// files.
///
/// The normalizer is accumulated from rank F down to rank 1 so the smallest
/// weights are summed first, which keeps the floating-point error of the sum
/// near one ulp even for large libraries.
pub fn zipf(library_size: usize, gamma: f64) -> Result<Popularity, PopularityError> {
    if library_size == 0 {
        return Err(PopularityError::EmptyLibrary);
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(PopularityError::InvalidGamma(gamma));
    }
    let mut norm = 0.0;
    for i in (1..=library_size).rev() {
        norm += (i as f64).powf(-gamma);
    }
    let q = (1..=library_size)
        .map(|i| (i as f64).powf(-gamma) / norm)
        .collect();
    Ok(Popularity {
        library_size,
        gamma,
        q,
    })
}

impl Popularity {
    /// Number of files F in the library.
    pub fn library_size(&self) -> usize {
        self.library_size
    }

    /// Zipf exponent gamma.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Request probabilities by rank, `q[0]` being the most popular file.
    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// Request probability of the file with 1-based rank `rank`.
    pub fn q_at(&self, rank: usize) -> Option<f64> {
        if rank >= 1 {
            self.q.get(rank - 1).copied()
        } else {
            None
        }
    }
}
