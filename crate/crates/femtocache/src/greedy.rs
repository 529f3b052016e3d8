//! Marginal-gain greedy placement and its multi-round extension.
//!
//! The greedy search starts from [1, 0, ..., 0] (the most popular file on
//! one helper) and places the remaining N - 1 copies one at a time, each
//! time incrementing the file k with the largest marginal gain
//! q_k * delta_p(n_k). For beta >= 2 the marginal gains are strictly
//! decreasing in n, which makes the objective matroid-greedy-friendly:
//! every intermediate placement is optimal for its own slot count, and
//! the final placement solves the N-slot problem exactly. For beta < 2
//! the algorithm still runs but the optimality certificate is withheld.
//!
//! Because the running counts stay non-increasing in file index (ties
//! break toward the lower index), the argmax at step m can only be one of
//! the first m + 1 files; the search uses that reduced candidate set and
//! the full-library scan only as a test-time cross-check.
//!
//! The multi-round variant (`m_round_greedy`) lets every helper cache M
//! files: it fills N * M slots over M rounds of N, capping each file at N
//! copies (more copies than helpers cannot help a selection-diversity
//! receiver), and then materialises which helper caches which files.

use std::error::Error;
use std::fmt;

use serde::Serialize;

use crate::ber::BerTable;
use crate::channel::ChannelParams;
use crate::placement::Placement;
use crate::popularity::Popularity;

/// Errors from the multi-round greedy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyError {
    /// Each helper caches `per_helper` distinct files, so per_helper > F
    /// is infeasible.
    TooManyFilesPerHelper { per_helper: usize, files: usize },
}

impl fmt::Display for GreedyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreedyError::TooManyFilesPerHelper { per_helper, files } => write!(
                f,
                "each helper caches {per_helper} distinct files but the library only has {files}"
            ),
        }
    }
}

impl Error for GreedyError {}

/// One greedy step: which file received a copy and what it bought.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyStep {
    /// 0 for the initialisation step, then 1 ..= N - 1.
    pub iteration: usize,
    /// 0-based index of the file that received the copy.
    pub file: usize,
    /// Marginal gain q_k * delta_p(n_k) of that copy.
    pub gain: f64,
    /// Average BER after the step.
    pub ber: f64,
}

/// Step-by-step record of a greedy run.
///
/// The BER column decreases strictly and every gain is positive whenever
/// beta > 1 (an extra copy always helps then); the final BER equals the
/// average BER of the returned placement up to accumulated rounding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
}

/// Result of a greedy run: the placement, how it was built, and whether
/// the beta >= 2 optimality proof applies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyPlacement {
    pub placement: Placement,
    pub trace: GreedyTrace,
    /// true when beta >= 2: the greedy placement is provably optimal.
    /// false otherwise — the placement is still returned but may be
    /// suboptimal (cross-check against the exhaustive oracle when the
    /// instance allows).
    pub certified: bool,
}

/// Which helper caches which files in the multi-round setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HelperAssignment {
    /// `per_helper[h]` lists the M distinct files (0-based, ascending)
    /// cached by helper h.
    pub per_helper: Vec<Vec<usize>>,
}

/// Greedy placement of N single-file helpers. Provably optimal for
/// beta >= 2 (see `GreedyPlacement::certified`).
///
/// Panics if `helpers == 0`; the library model starts at one helper.
pub fn greedy_place(helpers: usize, pop: &Popularity, ch: &ChannelParams) -> GreedyPlacement {
    assert!(helpers >= 1, "greedy placement needs at least one helper");
    let files = pop.library_size();
    let q = pop.q();
    let table = BerTable::new(ch, helpers);

    let mut counts = vec![0usize; files];
    counts[0] = 1;
    let mut ber = table_average(&counts, q, &table);
    let mut steps = Vec::with_capacity(helpers);
    steps.push(GreedyStep {
        iteration: 0,
        file: 0,
        gain: q[0] * table.delta_p(0),
        ber,
    });

    for m in 1..helpers {
        // Only the first m + 1 files can win the argmax (see module docs).
        let (file, gain) = argmax_gain(&counts, q, &table, (m + 1).min(files), None);
        counts[file] += 1;
        ber -= gain;
        steps.push(GreedyStep {
            iteration: m,
            file,
            gain,
            ber,
        });
    }

    GreedyPlacement {
        placement: Placement::new(counts, helpers).expect("greedy places exactly N copies"),
        trace: GreedyTrace { steps },
        certified: ch.beta() >= 2.0,
    }
}

/// Greedy placement when each of the N helpers caches M files.
///
/// Runs M rounds of the single-file greedy rule over cumulative counts
/// (N slots per round; the first round is exactly `greedy_place`),
/// excluding a file from the candidate set as soon as its count reaches N
/// — an (N+1)-th copy can never be selected by a max-SNR receiver over N
/// helpers. Returns the counts and a duplicate-free assignment of files
/// to helpers realising them.
///
/// Panics if `helpers == 0` or `per_helper == 0`.
pub fn m_round_greedy(
    helpers: usize,
    per_helper: usize,
    pop: &Popularity,
    ch: &ChannelParams,
) -> Result<(Placement, HelperAssignment), GreedyError> {
    assert!(helpers >= 1, "greedy placement needs at least one helper");
    assert!(per_helper >= 1, "each helper caches at least one file");
    let files = pop.library_size();
    if per_helper > files {
        return Err(GreedyError::TooManyFilesPerHelper { per_helper, files });
    }
    let q = pop.q();
    let table = BerTable::new(ch, helpers);

    let mut counts = vec![0usize; files];
    let mut rounds: Vec<Vec<usize>> = Vec::with_capacity(per_helper);
    for round in 0..per_helper {
        let mut picked = Vec::with_capacity(helpers);
        if round == 0 {
            counts[0] = 1;
            picked.push(0);
        }
        while picked.len() < helpers {
            let limit = if round == 0 {
                // First round is the plain greedy with its reduced set;
                // counts cannot reach N mid-round here.
                (picked.len() + 1).min(files)
            } else {
                files
            };
            let (file, _) = argmax_gain(&counts, q, &table, limit, Some(helpers));
            counts[file] += 1;
            picked.push(file);
        }
        rounds.push(picked);
    }

    let assignment = assign_helpers(helpers, per_helper, &counts, &rounds);
    let placement =
        Placement::new(counts, helpers * per_helper).expect("every round places exactly N copies");
    Ok((placement, assignment))
}

/// Best file among `counts[..limit]` by marginal gain, ties to the lowest
/// index; files already at `cap` copies are excluded.
fn argmax_gain(
    counts: &[usize],
    q: &[f64],
    table: &BerTable,
    limit: usize,
    cap: Option<usize>,
) -> (usize, f64) {
    let mut best = usize::MAX;
    let mut best_gain = f64::NEG_INFINITY;
    for k in 0..limit {
        if cap.is_some_and(|c| counts[k] >= c) {
            continue;
        }
        let gain = q[k] * table.delta_p(counts[k]);
        if gain > best_gain {
            best_gain = gain;
            best = k;
        }
    }
    assert!(
        best != usize::MAX,
        "candidate set exhausted: all files at the copy cap"
    );
    (best, best_gain)
}

fn table_average(counts: &[usize], q: &[f64], table: &BerTable) -> f64 {
    counts
        .iter()
        .zip(q)
        .map(|(&n, &qi)| qi * table.file_ber(n))
        .sum()
}

/// Materialises which helper caches which files.
///
/// Round by round, the round's N chosen copies are matched to the N
/// helpers so that no helper receives a file it already holds: slots are
/// taken most-constrained-first and matched by augmenting paths, which
/// succeeds whenever the round admits any conflict-free assignment. If an
/// unlucky sequence of earlier rounds leaves some round unmatchable, the
/// round grouping (a presentation choice, not an invariant) is abandoned
/// and the final counts are dealt out round-robin — copies of each file
/// land on consecutive helpers modulo N, which is always valid since
/// every count is at most N and the total is exactly N * M.
fn assign_helpers(
    helpers: usize,
    per_helper: usize,
    counts: &[usize],
    rounds: &[Vec<usize>],
) -> HelperAssignment {
    let mut holdings: Vec<Vec<usize>> = vec![Vec::with_capacity(per_helper); helpers];
    let mut ok = true;
    'rounds: for picked in rounds {
        // Order this round's slots by how few helpers can still take them.
        let mut slots: Vec<usize> = picked.clone();
        slots.sort_by_key(|&file| {
            (
                (0..helpers)
                    .filter(|&h| !holdings[h].contains(&file))
                    .count(),
                file,
            )
        });

        // Augmenting-path matching of slots to helpers.
        let mut matched: Vec<Option<usize>> = vec![None; helpers]; // helper -> slot
        for (s, &file) in slots.iter().enumerate() {
            let mut visited = vec![false; helpers];
            if !augment(s, file, &slots, &holdings, &mut matched, &mut visited) {
                ok = false;
                break 'rounds;
            }
        }
        for (h, m) in matched.iter().enumerate() {
            let slot = m.expect("perfect matching covers every helper");
            holdings[h].push(slots[slot]);
        }
    }

    if !ok {
        holdings = deal_round_robin(helpers, per_helper, counts);
    }

    for h in &mut holdings {
        h.sort_unstable();
    }
    HelperAssignment {
        per_helper: holdings,
    }
}

/// Deals the counts out round-robin: copies of each file land on
/// consecutive helpers modulo N. Valid for any counts with every entry at
/// most N summing to N * M, regardless of how they were produced.
fn deal_round_robin(helpers: usize, per_helper: usize, counts: &[usize]) -> Vec<Vec<usize>> {
    let mut holdings = vec![Vec::with_capacity(per_helper); helpers];
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(counts[i]), i));
    let mut position = 0usize;
    for file in order {
        for _ in 0..counts[file] {
            holdings[position % helpers].push(file);
            position += 1;
        }
    }
    holdings
}

/// Tries to give slot `s` (carrying `file`) a helper, displacing earlier
/// matches along augmenting paths.
fn augment(
    s: usize,
    file: usize,
    slots: &[usize],
    holdings: &[Vec<usize>],
    matched: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for h in 0..holdings.len() {
        if visited[h] || holdings[h].contains(&file) {
            continue;
        }
        visited[h] = true;
        let free = match matched[h] {
            None => true,
            Some(other) => augment(other, slots[other], slots, holdings, matched, visited),
        };
        if free {
            matched[h] = Some(s);
            return true;
        }
    }
    false
}
