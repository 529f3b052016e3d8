//! Budgeted exhaustive search: ground truth for small instances.
//!
//! The search minimises the average BER over every feasible placement.
//! Two enumeration modes:
//!
//! * pruned (default): integer partitions of N into at most F
//!   non-increasing parts, assigned to the most popular files first. An
//!   optimal placement always keeps its counts non-increasing in q-order
//!   (swapping two counts against the popularity order never helps), so
//!   this loses nothing and shrinks the space from C(N+F-1, F-1)
//!   compositions to the partition count of N.
//! * unpruned: all compositions of N over F files — kept to let tests
//!   confirm the pruning claim on small instances.
//!
//! Before enumerating, the candidate count is estimated in integer
//! arithmetic; estimates above the budget produce an explicit refusal
//! carrying the estimate, never a silent long run.
//!
//! `exhaustive_optimal_capped` adds a per-file copy cap (counts <= N) for
//! the multi-round setting, where the slot total N * M exceeds the
//! cluster size.

use std::collections::HashMap;
use std::error::Error;
use std::fmt;

use crate::ber::BerTable;
use crate::channel::ChannelParams;
use crate::placement::{average_ber, Placement};
use crate::popularity::Popularity;

/// Default ceiling on the number of candidates the search will evaluate.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 10_000_000;

/// Errors from the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The candidate-count estimate exceeds the budget; the search
    /// refuses rather than running unbounded.
    BudgetExceeded { estimate: u128, budget: u64 },
    /// No placement satisfies the constraints (the copy cap times the
    /// library size is below the slot total).
    Infeasible { total_slots: usize, capacity: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { estimate, budget } => write!(
                f,
                "exhaustive search would evaluate ~{estimate} candidates, over the budget of {budget}"
            ),
            OracleError::Infeasible { total_slots, capacity } => write!(
                f,
                "no placement can fill {total_slots} slots: capped library capacity is {capacity}"
            ),
        }
    }
}

impl Error for OracleError {}

/// Outcome of an exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub best: Placement,
    /// Average BER of `best`, recomputed with the canonical summation so
    /// it equals `average_ber(best, ...)` exactly.
    pub best_ber: f64,
    pub candidates_evaluated: u64,
    /// Whether the non-increasing-counts pruning was applied.
    pub pruned: bool,
}

/// Exhaustive search over placements of `helpers` copies with the default
/// candidate budget.
pub fn exhaustive_optimal(
    helpers: usize,
    pop: &Popularity,
    ch: &ChannelParams,
    prune_ordered: bool,
) -> Result<SearchReport, OracleError> {
    exhaustive_optimal_with_budget(helpers, pop, ch, prune_ordered, DEFAULT_CANDIDATE_BUDGET)
}

/// Exhaustive search with an explicit candidate budget.
pub fn exhaustive_optimal_with_budget(
    helpers: usize,
    pop: &Popularity,
    ch: &ChannelParams,
    prune_ordered: bool,
    budget: u64,
) -> Result<SearchReport, OracleError> {
    let files = pop.library_size();
    let estimate = if prune_ordered {
        count_partitions(helpers, helpers, files)
    } else {
        count_compositions(helpers, files)
    };
    if estimate > budget as u128 {
        return Err(OracleError::BudgetExceeded { estimate, budget });
    }

    let mut search = Search::new(helpers, helpers, pop, ch);
    search.run(prune_ordered, helpers);
    Ok(search.into_report(helpers, pop, ch, prune_ordered))
}

/// Exhaustive search for the multi-round setting: `total_slots` copies
/// with every file capped at `max_copies`. Always uses the ordered
/// pruning.
pub fn exhaustive_optimal_capped(
    total_slots: usize,
    max_copies: usize,
    pop: &Popularity,
    ch: &ChannelParams,
    budget: u64,
) -> Result<SearchReport, OracleError> {
    let files = pop.library_size();
    let capacity = max_copies.saturating_mul(files);
    if capacity < total_slots {
        return Err(OracleError::Infeasible {
            total_slots,
            capacity,
        });
    }
    let estimate = count_partitions(total_slots, max_copies, files);
    if estimate > budget as u128 {
        return Err(OracleError::BudgetExceeded { estimate, budget });
    }

    let mut search = Search::new(total_slots, max_copies, pop, ch);
    search.run(true, total_slots);
    Ok(search.into_report(total_slots, pop, ch, true))
}

/// All optima whose average BER is within `tol` of the minimum, in
/// enumeration order.
///
/// Two passes over the candidate space: the first finds the minimum, the
/// second collects everything within `tol` of it. Both passes measure
/// candidates with the identical accumulation, so a zero tolerance means
/// bit-equality in the enumerator's arithmetic.
pub fn exhaustive_ties(
    helpers: usize,
    pop: &Popularity,
    ch: &ChannelParams,
    prune_ordered: bool,
    tol: f64,
) -> Result<Vec<Placement>, OracleError> {
    let files = pop.library_size();
    let estimate = if prune_ordered {
        count_partitions(helpers, helpers, files)
    } else {
        count_compositions(helpers, files)
    };
    if estimate > DEFAULT_CANDIDATE_BUDGET as u128 {
        return Err(OracleError::BudgetExceeded {
            estimate,
            budget: DEFAULT_CANDIDATE_BUDGET,
        });
    }

    let mut first = Search::new(helpers, helpers, pop, ch);
    first.run(prune_ordered, helpers);
    let mut second = Search::new(helpers, helpers, pop, ch);
    second.collect_within = Some((first.best_raw, tol));
    second.run(prune_ordered, helpers);
    Ok(second
        .ties
        .into_iter()
        .map(|counts| Placement::new(counts, helpers).expect("enumerated counts fill the slots"))
        .collect())
}

/// Shared state for the recursive enumerators.
struct Search<'a> {
    q: &'a [f64],
    table: BerTable,
    /// suffix_q[i] = sum of q_j for j >= i, so an all-zero tail costs
    /// suffix_q[i] * file_ber(0) in one step.
    suffix_q: Vec<f64>,
    counts: Vec<usize>,
    best_counts: Vec<usize>,
    best_raw: f64,
    evaluated: u64,
    /// When set, collect counts with raw BER within (reference, tol).
    collect_within: Option<(f64, f64)>,
    ties: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn run(&mut self, prune_ordered: bool, total: usize) {
        if prune_ordered {
            self.partitions(0, total, self.table.max_copies(), 0.0);
        } else {
            self.compositions(0, total, 0.0);
        }
    }

    fn new(total: usize, max_copies: usize, pop: &'a Popularity, ch: &ChannelParams) -> Self {
        let q = pop.q();
        let mut suffix_q = vec![0.0; q.len() + 1];
        for i in (0..q.len()).rev() {
            suffix_q[i] = suffix_q[i + 1] + q[i];
        }
        Search {
            q,
            table: BerTable::new(ch, max_copies.min(total)),
            suffix_q,
            counts: vec![0; q.len()],
            best_counts: Vec::new(),
            best_raw: f64::INFINITY,
            evaluated: 0,
            collect_within: None,
            ties: Vec::new(),
        }
    }

    fn leaf(&mut self, next_file: usize, partial: f64) {
        let ber = partial + self.suffix_q[next_file] * self.table.file_ber(0);
        self.evaluated += 1;
        // Strict improvement keeps the first-seen minimum; enumeration is
        // lexicographically descending, so exact ties resolve to the
        // lexicographically largest counts vector.
        if ber < self.best_raw {
            self.best_raw = ber;
            self.best_counts.clear();
            self.best_counts.extend_from_slice(&self.counts);
        }
        if let Some((reference, tol)) = self.collect_within {
            if ber <= reference + tol {
                self.ties.push(self.counts.clone());
            }
        }
    }

    /// Non-increasing parts, largest first: lexicographically descending.
    fn partitions(&mut self, file: usize, remaining: usize, max_part: usize, partial: f64) {
        if remaining == 0 {
            self.leaf(file, partial);
            return;
        }
        if file == self.q.len() {
            return;
        }
        for v in (1..=max_part.min(remaining)).rev() {
            self.counts[file] = v;
            let contribution = self.q[file] * self.table.file_ber(v);
            self.partitions(file + 1, remaining - v, v, partial + contribution);
        }
        self.counts[file] = 0;
    }

    /// All compositions, first coordinate descending.
    fn compositions(&mut self, file: usize, remaining: usize, partial: f64) {
        if remaining == 0 {
            self.leaf(file, partial);
            return;
        }
        if file == self.q.len() {
            return;
        }
        if file == self.q.len() - 1 {
            self.counts[file] = remaining;
            self.leaf(
                file + 1,
                partial + self.q[file] * self.table.file_ber(remaining),
            );
            self.counts[file] = 0;
            return;
        }
        for v in (0..=remaining).rev() {
            self.counts[file] = v;
            let contribution = self.q[file] * self.table.file_ber(v);
            self.compositions(file + 1, remaining - v, partial + contribution);
        }
        self.counts[file] = 0;
    }

    fn into_report(
        self,
        total_slots: usize,
        pop: &Popularity,
        ch: &ChannelParams,
        pruned: bool,
    ) -> SearchReport {
        let best = Placement::new(self.best_counts, total_slots)
            .expect("enumerated counts fill the slots");
        let best_ber = average_ber(&best, pop, ch).expect("search uses the library dimensions");
        SearchReport {
            best,
            best_ber,
            candidates_evaluated: self.evaluated,
            pruned,
        }
    }
}

/// Number of partitions of `n` into at most `parts` parts, each at most
/// `cap`; saturates to u128::MAX for inputs far beyond any usable budget.
fn count_partitions(n: usize, cap: usize, parts: usize) -> u128 {
    // The partition count of 128 already exceeds 4e12, far over any
    // sensible budget, so saturating keeps the memo table small.
    if n > 128 {
        return u128::MAX;
    }
    fn rec(
        remaining: usize,
        max_part: usize,
        files_left: usize,
        memo: &mut HashMap<(usize, usize, usize), u128>,
    ) -> u128 {
        if remaining == 0 {
            return 1;
        }
        if files_left == 0 {
            return 0;
        }
        let key = (
            remaining,
            max_part.min(remaining),
            files_left.min(remaining),
        );
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total: u128 = 0;
        for v in 1..=key.1 {
            total = total.saturating_add(rec(remaining - v, v, key.2 - 1, memo));
        }
        memo.insert(key, total);
        total
    }
    rec(n, cap, parts, &mut HashMap::new())
}

/// Number of compositions of `n` over `files` slots: C(n + files - 1,
/// files - 1), saturating.
fn count_compositions(n: usize, files: usize) -> u128 {
    let k = (files - 1).min(n);
    let mut c: u128 = 1;
    for i in 1..=k {
        let factor = (n + files - 1 - k + i) as u128;
        c = match c.checked_mul(factor) {
            Some(v) => v / i as u128,
            None => return u128::MAX,
        };
    }
    c
}
