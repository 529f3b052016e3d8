//! Placement representation, the average-BER objective, and the
//! closed-form placement families.
//!
//! A placement assigns each file i a copy count n_i — the number of
//! helpers caching it — subject to sum n_i = total_slots (the cluster
//! size N, or N * M when each helper caches M files). Requests hit file i
//! with probability q_i and see BER p(n_i), so the objective is
//!
//! average_ber = sum_i q_i * file_ber(n_i).
//!
//! Three closed-form families from the regime analysis:
//!
//! * even: [1, ..., 1, 0, ..., 0] — the N most popular files once each;
//! * single-file: [N, 0, ..., 0] — all helpers cache the top file;
//! * doubly(k): [2, ..., 2, 1, ..., 1, 0, ..., 0] — the top k files
//!   twice, the next N - 2k files once.

use std::error::Error;
use std::fmt;

use serde::Serialize;

use crate::ber::file_ber;
use crate::channel::ChannelParams;
use crate::popularity::Popularity;

/// Errors from placement construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlacementError {
    /// The counts do not add up to the declared number of cache slots.
    CountSumMismatch { sum: usize, total_slots: usize },
    /// A placement was evaluated against a library of a different size.
    DimensionMismatch { counts: usize, files: usize },
    /// A placement family needs more distinct files than the library has.
    NotEnoughFiles { required: usize, files: usize },
    /// doubly(k) needs 0 <= k <= floor(N / 2).
    DoublyIndexTooLarge { k: usize, limit: usize },
}

impl fmt::Display for PlacementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlacementError::CountSumMismatch { sum, total_slots } => {
                write!(
                    f,
                    "counts sum to {sum} but the placement declares {total_slots} slots"
                )
            }
            PlacementError::DimensionMismatch { counts, files } => {
                write!(
                    f,
                    "placement covers {counts} files but the library has {files}"
                )
            }
            PlacementError::NotEnoughFiles { required, files } => {
                write!(
                    f,
                    "placement needs {required} distinct files but the library has {files}"
                )
            }
            PlacementError::DoublyIndexTooLarge { k, limit } => {
                write!(f, "doubly index k = {k} exceeds floor(N / 2) = {limit}")
            }
        }
    }
}

impl Error for PlacementError {}

/// A caching placement: per-file copy counts plus the slot total they
/// must exhaust.
///
/// `total_slots` is carried explicitly rather than recomputed so the same
/// type serves both the single-file-per-helper setting (N slots) and the
/// M-files-per-helper extension (N * M slots). A placement with zero
/// slots (all counts zero) is permitted and means every request falls
/// back to the cellular link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Placement {
    counts: Vec<usize>,
    total_slots: usize,
}

impl Placement {
    /// Wraps explicit counts, checking they exhaust `total_slots`.
    pub fn new(counts: Vec<usize>, total_slots: usize) -> Result<Self, PlacementError> {
        let sum: usize = counts.iter().sum();
        if sum != total_slots {
            return Err(PlacementError::CountSumMismatch { sum, total_slots });
        }
        Ok(Placement {
            counts,
            total_slots,
        })
    }

    /// Per-file copy counts, most popular file first.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of cache slots the placement fills.
    pub fn total_slots(&self) -> usize {
        self.total_slots
    }

    /// Consumes the placement, returning the counts vector.
    pub fn into_counts(self) -> Vec<usize> {
        self.counts
    }
}

/// Average BER of `p` under request distribution `pop` and channel `ch`:
/// sum_i q_i * file_ber(n_i).
pub fn average_ber(
    p: &Placement,
    pop: &Popularity,
    ch: &ChannelParams,
) -> Result<f64, PlacementError> {
    if p.counts.len() != pop.library_size() {
        return Err(PlacementError::DimensionMismatch {
            counts: p.counts.len(),
            files: pop.library_size(),
        });
    }
    Ok(p.counts
        .iter()
        .zip(pop.q())
        .map(|(&n, &q)| q * file_ber(n, ch))
        .sum())
}

/// The even placement [1, ..., 1, 0, ..., 0]: the N most popular files
/// cached once each. Requires N <= F.
pub fn even_placement(helpers: usize, files: usize) -> Result<Placement, PlacementError> {
    if helpers > files {
        return Err(PlacementError::NotEnoughFiles {
            required: helpers,
            files,
        });
    }
    let mut counts = vec![0usize; files];
    for c in counts.iter_mut().take(helpers) {
        *c = 1;
    }
    Ok(Placement {
        counts,
        total_slots: helpers,
    })
}

/// The single-file placement [N, 0, ..., 0]: every helper caches the most
/// popular file.
pub fn single_file_placement(helpers: usize, files: usize) -> Result<Placement, PlacementError> {
    if files == 0 {
        return Err(PlacementError::NotEnoughFiles {
            required: 1,
            files: 0,
        });
    }
    let mut counts = vec![0usize; files];
    counts[0] = helpers;
    Ok(Placement {
        counts,
        total_slots: helpers,
    })
}

/// The doubly placement: the top `k` files cached twice, the next
/// N - 2k files once. `k = 0` degenerates to the even placement.
/// Requires k <= floor(N / 2) and N - k <= F distinct files.
pub fn doubly_placement(
    k: usize,
    helpers: usize,
    files: usize,
) -> Result<Placement, PlacementError> {
    let limit = helpers / 2;
    if k > limit {
        return Err(PlacementError::DoublyIndexTooLarge { k, limit });
    }
    let distinct = helpers - k;
    if distinct > files {
        return Err(PlacementError::NotEnoughFiles {
            required: distinct,
            files,
        });
    }
    let mut counts = vec![0usize; files];
    for (i, c) in counts.iter_mut().take(distinct).enumerate() {
        *c = if i < k { 2 } else { 1 };
    }
    Ok(Placement {
        counts,
        total_slots: helpers,
    })
}
