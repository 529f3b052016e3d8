//! Cross-module property suites: structural guarantees that hold across
//! wide parameter grids rather than at frozen reference points, plus
//! randomized checks of the same invariants.

use femtocache::ber::{cellular_ber, cluster_ber, cluster_ber_quad, cluster_ber_sum, delta_p};
use femtocache::channel::{db_to_linear, linear_to_db};
use femtocache::greedy::greedy_place;
use femtocache::montecarlo::{sample_fades, simulate_file_ber};
use femtocache::oracle::exhaustive_optimal;
use femtocache::placement::{
    average_ber, doubly_placement, even_placement, single_file_placement, Placement,
};
use femtocache::popularity::zipf;
use femtocache::regimes::{classify, gamma0, gamma0_prime, gamma2, gamma3, Regime};
use femtocache::ChannelParams;
use proptest::prelude::*;

const SQRT10: f64 = 3.1622776601683795;

fn channel(rho: f64, beta: f64) -> ChannelParams {
    ChannelParams::from_rho_beta(rho, beta).expect("valid channel")
}

fn channel_db(rho_db: f64, beta_db: f64) -> ChannelParams {
    channel(db_to_linear(rho_db), db_to_linear(beta_db))
}

// ------------------------------------------------------------- greedy

/// The reduced candidate set (first m + 1 files at step m) must pick the
/// same placement as scanning the whole library at every step.
#[test]
fn reduced_candidate_set_matches_a_full_scan() {
    let params = [(1.0, 2.0), (10.0 * SQRT10, 10.0), (1e4, 2.0)];
    for helpers in 1..=12 {
        for files in [1usize, 3, 8, 21, 30] {
            for gamma in [0.0, 0.6, 2.5] {
                let pop = zipf(files, gamma).unwrap();
                let q = pop.q();
                for &(rho, beta) in &params {
                    let ch = channel(rho, beta);

                    // Reference: argmax over every file, ties to the
                    // lowest index.
                    let mut counts = vec![0usize; files];
                    counts[0] = 1;
                    for _ in 1..helpers {
                        let mut best = 0;
                        let mut best_gain = f64::NEG_INFINITY;
                        for f in 0..files {
                            let gain = q[f] * delta_p(counts[f], &ch);
                            if gain > best_gain {
                                best = f;
                                best_gain = gain;
                            }
                        }
                        counts[best] += 1;
                    }

                    let got = greedy_place(helpers, &pop, &ch);
                    assert_eq!(
                        got.placement.counts(),
                        counts.as_slice(),
                        "N={helpers} F={files} gamma={gamma} rho={rho} beta={beta}"
                    );
                }
            }
        }
    }
}

/// Adding a helper extends the previous greedy placement by exactly one
/// copy; nothing already placed ever moves.
#[test]
fn greedy_grows_by_single_increments() {
    for gamma in [0.6, 1.0, 2.5] {
        let pop = zipf(20, gamma).unwrap();
        for rho_db in [10.0, 15.0, 40.0] {
            let ch = channel_db(rho_db, 5.0);
            let mut previous = greedy_place(1, &pop, &ch).placement.into_counts();
            for helpers in 2..=12 {
                let current = greedy_place(helpers, &pop, &ch).placement.into_counts();
                let bumps: Vec<usize> = (0..20).filter(|&f| current[f] != previous[f]).collect();
                assert_eq!(bumps.len(), 1, "gamma={gamma} rho={rho_db} dB N={helpers}");
                assert_eq!(current[bumps[0]], previous[bumps[0]] + 1);
                previous = current;
            }
        }
    }
}

#[test]
fn trace_explains_the_placement() {
    for gamma in [0.0, 0.6, 3.0] {
        let pop = zipf(20, gamma).unwrap();
        for (rho_db, beta_db) in [(0.0, 1.0), (15.0, 5.0), (40.0, 3.0)] {
            let ch = channel_db(rho_db, beta_db);
            let result = greedy_place(10, &pop, &ch);
            let steps = &result.trace.steps;
            assert_eq!(steps.len(), 10);
            assert_eq!(steps[0].iteration, 0);
            assert_eq!(steps[0].file, 0, "initialisation caches the top file");
            let mut counted = vec![0usize; 20];
            for (i, step) in steps.iter().enumerate() {
                assert_eq!(step.iteration, i);
                assert!(step.file < 20);
                assert!(step.gain > 0.0, "every copy helps while beta > 1");
                if i > 0 {
                    assert!(step.ber < steps[i - 1].ber, "BER strictly decreases");
                }
                counted[step.file] += 1;
            }
            assert_eq!(
                counted,
                result.placement.counts(),
                "trace replays the placement"
            );

            let recomputed = average_ber(&result.placement, &pop, &ch).unwrap();
            let drift = (steps.last().unwrap().ber - recomputed).abs();
            assert!(drift <= 1e-12, "incremental BER drifted by {drift:e}");
            assert_eq!(result.certified, ch.beta() >= 2.0);
        }
    }
}

// ------------------------------------------------------------- oracle

#[test]
fn pruned_and_unpruned_searches_find_the_same_minimum() {
    for helpers in 1..=6 {
        for files in [2usize, 4, 7] {
            for gamma in [0.0, 0.6, 2.0] {
                let pop = zipf(files, gamma).unwrap();
                let ch = channel(10.0, 2.0);
                let pruned = exhaustive_optimal(helpers, &pop, &ch, true).unwrap();
                let full = exhaustive_optimal(helpers, &pop, &ch, false).unwrap();
                assert!(pruned.candidates_evaluated <= full.candidates_evaluated);
                let gap =
                    (pruned.best_ber - full.best_ber).abs() / full.best_ber.max(f64::MIN_POSITIVE);
                assert!(
                    gap <= 1e-12,
                    "N={helpers} F={files} gamma={gamma}: pruned {:e} vs full {:e}",
                    pruned.best_ber,
                    full.best_ber
                );
            }
        }
    }
}

/// On the reference family the optimum itself grows one copy at a time
/// as helpers are added — the structure that makes a greedy rule exact.
#[test]
fn oracle_optimum_grows_by_single_increments_on_the_reference_family() {
    let pop = zipf(20, 1.0).unwrap();
    let ch = channel_db(15.0, 5.0);
    let mut previous = exhaustive_optimal(1, &pop, &ch, true)
        .unwrap()
        .best
        .into_counts();
    for helpers in 2..=10 {
        let current = exhaustive_optimal(helpers, &pop, &ch, true)
            .unwrap()
            .best
            .into_counts();
        let bumps: Vec<usize> = (0..20).filter(|&f| current[f] != previous[f]).collect();
        assert_eq!(bumps.len(), 1, "N={helpers}: {previous:?} -> {current:?}");
        assert_eq!(current[bumps[0]], previous[bumps[0]] + 1);
        previous = current;
    }
}

// ---------------------------------------------------------------- ber

#[test]
fn dual_paths_agree_on_a_dense_grid() {
    for &rho in &[0.01, 0.1, 1.0, 10.0, 100.0, 1e3, 1e4, 1e6] {
        let ch = channel(rho, 2.0);
        for n in 1..=15 {
            let sum = cluster_ber_sum(n, &ch).unwrap();
            let quad = cluster_ber_quad(n, &ch).unwrap();
            assert!(
                (sum - quad).abs() <= 1e-10,
                "rho={rho} n={n}: {sum:e} vs {quad:e}"
            );
        }
    }
}

#[test]
fn gains_decrease_across_the_full_grid() {
    for &beta in &[2.0, SQRT10, 10.0, 100.0] {
        for step in 0..=25 {
            let rho = db_to_linear(-10.0 + 2.0 * step as f64);
            let ch = channel(rho, beta);
            for n in 0..=19 {
                let here = delta_p(n, &ch);
                let next = delta_p(n + 1, &ch);
                if beta == 2.0 && n == 0 {
                    // Exact tie at the certification boundary.
                    assert!((here - next).abs() <= 1e-12 * here);
                    continue;
                }
                assert!(
                    here > next,
                    "rho={rho:e} beta={beta}: delta_p({n}) = {here:e} <= delta_p({}) = {next:e}",
                    n + 1
                );
            }
        }
    }
}

/// Normalized channel gains fall by about 10^(n-1) per SNR decade — an
/// asymptotic rate, approached from below, so the decade factors sit just
/// under their nominal values.
#[test]
fn normalized_gain_ratios_follow_the_decade_law() {
    let low = channel(1e3, 2.0);
    let high = channel(1e4, 2.0);
    let ratio = |n: usize, ch: &ChannelParams| delta_p(n, ch) / delta_p(1, ch);

    let second = ratio(2, &low) / ratio(2, &high);
    let third = ratio(3, &low) / ratio(3, &high);
    let raw_second = delta_p(2, &low) / delta_p(2, &high);

    assert!((second - 9.97531889963343).abs() <= 1e-12 * second);
    assert!((third - 99.41779403143588).abs() <= 1e-12 * third);
    assert!((raw_second - 99.55157467426253).abs() <= 1e-12 * raw_second);

    assert!(
        (9.0..=11.0).contains(&second),
        "decade factor for n=2: {second}"
    );
    assert!(
        (90.0..=110.0).contains(&third),
        "decade factor for n=3: {third}"
    );
    assert!(
        raw_second >= 95.0,
        "raw decade factor for n=2: {raw_second}"
    );
}

// ------------------------------------------------------------- regimes

#[test]
fn chain_identities_are_bit_equal() {
    for helpers in 2..=16 {
        for &rho in &[1.0, SQRT10, 10.0, 1e3, 1e4] {
            for &beta in &[2.0, SQRT10, 10.0, 40.0] {
                let ch = channel(rho, beta);
                assert_eq!(
                    gamma0(helpers, &ch).unwrap().to_bits(),
                    gamma2(1, helpers, &ch).unwrap().to_bits()
                );
                for k in 1..helpers / 2 {
                    assert_eq!(
                        gamma3(k, helpers, &ch).unwrap().value.to_bits(),
                        gamma2(k + 1, helpers, &ch).unwrap().to_bits(),
                        "N={helpers} k={k} rho={rho} beta={beta}"
                    );
                }
            }
        }
    }
}

#[test]
fn band_edges_are_ordered() {
    for helpers in [4usize, 7, 10, 15] {
        for &rho in &[10.0, 1e3, 1e4] {
            // Above the certification boundary the exact-regime edge sits
            // strictly below the asymptotic one, and the band starts
            // strictly increase with k.
            for &beta in &[SQRT10, 10.0] {
                let ch = channel(rho, beta);
                let g0 = gamma0(helpers, &ch).unwrap();
                let g0p = gamma0_prime(helpers, &ch).unwrap();
                assert!(
                    g0 > 0.0 && g0 < g0p,
                    "N={helpers} rho={rho} beta={beta}: {g0} vs {g0p}"
                );
                for k in 1..helpers / 2 {
                    let lower = gamma2(k, helpers, &ch).unwrap();
                    let upper = gamma2(k + 1, helpers, &ch).unwrap();
                    assert!(
                        lower < upper,
                        "N={helpers} rho={rho} beta={beta}: gamma2({k}) = {lower} not below \
                         gamma2({}) = {upper}",
                        k + 1
                    );
                }
            }

            // At beta = 2 the log-gain numerator vanishes, collapsing
            // every band start to zero while the single-file edge stays
            // positive.
            let ch = channel(rho, 2.0);
            assert_eq!(gamma0(helpers, &ch).unwrap(), 0.0);
            assert!(gamma0_prime(helpers, &ch).unwrap() > 0.0);
            for k in 1..=helpers / 2 {
                assert_eq!(gamma2(k, helpers, &ch).unwrap(), 0.0);
            }
        }
    }
}

#[test]
fn classifier_agrees_with_greedy_in_certified_regimes() {
    let helpers = 10;
    let files = 20;
    let ch = channel_db(40.0, 5.0);

    let cases: [(f64, Regime); 7] = [
        (0.2, Regime::Even),
        (1.0, Regime::Doubly(3)),
        (2.0, Regime::Doubly(4)),
        (3.0, Regime::Doubly(4)),
        (4.0, Regime::Doubly(4)),
        (5.0, Regime::Doubly(5)),
        (95.0, Regime::SingleFile),
    ];
    for (gamma, expected) in cases {
        let pop = zipf(files, gamma).unwrap();
        let out = classify(helpers, &pop, &ch, true);
        assert_eq!(out.regime, expected, "gamma={gamma}");
        assert!(out.certified);

        let closed_form = match out.regime {
            Regime::Even => even_placement(helpers, files).unwrap(),
            Regime::SingleFile => single_file_placement(helpers, files).unwrap(),
            Regime::Doubly(k) => doubly_placement(k, helpers, files).unwrap(),
            _ => unreachable!(),
        };
        let greedy = greedy_place(helpers, &pop, &ch);
        assert_eq!(
            greedy.placement.counts(),
            closed_form.counts(),
            "gamma={gamma}: greedy disagrees with the certified closed form"
        );
    }

    // Away from high SNR only the two exact closed forms apply; between
    // them the greedy itself is the certified answer.
    let mid = channel_db(15.0, 5.0);
    let out = classify(helpers, &zipf(files, 0.6).unwrap(), &mid, false);
    assert_eq!(out.regime, Regime::GreedyRequired);
    assert!(out.certified, "beta >= 2 keeps the greedy provably optimal");

    let low_beta = channel_db(15.0, 2.0);
    let out = classify(helpers, &zipf(files, 0.6).unwrap(), &low_beta, false);
    assert_eq!(out.regime, Regime::GreedyRequired);
    assert!(!out.certified, "below beta = 2 no optimality proof applies");
}

// --------------------------------------------------------- monte carlo

#[test]
fn standard_error_scales_with_the_square_root_of_trials() {
    let ch = channel(10.0, 2.0);
    let coarse = simulate_file_ber(1, &ch, 10_000, 7);
    let fine = simulate_file_ber(1, &ch, 100_000, 7);
    let ratio = coarse.std_error / fine.std_error;
    assert!(
        (ratio / SQRT10 - 1.0).abs() <= 0.2,
        "se({}) / se({}) = {ratio}, expected about sqrt(10)",
        coarse.trials,
        fine.trials
    );
}

fn ks_statistic(mut samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len() as f64;
    let mut worst = 0.0f64;
    for (i, x) in samples.iter().enumerate() {
        let f = cdf(*x);
        worst = worst.max((f - i as f64 / n).abs());
        worst = worst.max((f - (i + 1) as f64 / n).abs());
    }
    worst
}

#[test]
fn fading_samples_follow_the_selection_law() {
    let ch = channel(10.0, 2.0);
    let count = 100_000;

    // Miss: a single cellular draw.
    let nu = ch.nu_bar();
    let cellular: Vec<f64> = sample_fades(0, &ch, count, 11)
        .iter()
        .map(|s| s.snr())
        .collect();
    let ks = ks_statistic(cellular, |x| 1.0 - (-x / nu).exp());
    assert!(ks <= 0.01, "cellular KS statistic {ks}");

    // Hit on n copies: the max of n independent draws.
    let rho = ch.rho_bar();
    for copies in [1usize, 3] {
        let fades: Vec<f64> = sample_fades(copies, &ch, count, 11)
            .iter()
            .map(|s| s.snr())
            .collect();
        let ks = ks_statistic(fades, |x| (1.0 - (-x / rho).exp()).powi(copies as i32));
        assert!(ks <= 0.01, "{copies}-copy KS statistic {ks}");
    }
}

// ------------------------------------------------------------ proptest

proptest! {
    #[test]
    fn zipf_is_a_sorted_distribution(files in 1usize..200, gamma in 0.0f64..8.0) {
        let pop = zipf(files, gamma).unwrap();
        let q = pop.q();
        prop_assert_eq!(q.len(), files);
        prop_assert!(q.windows(2).all(|w| w[0] >= w[1]));
        let total: f64 = q.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert_eq!(pop.q_at(1), Some(q[0]));
        prop_assert_eq!(pop.q_at(files + 1), None);
    }

    #[test]
    fn greedy_counts_are_sorted_and_certified(
        helpers in 1usize..=25,
        files in 1usize..=30,
        gamma in 0.0f64..5.0,
        rho_db in -10.0f64..40.0,
        beta in 2.0f64..50.0,
    ) {
        let pop = zipf(files, gamma).unwrap();
        let ch = channel(db_to_linear(rho_db), beta);
        let result = greedy_place(helpers, &pop, &ch);
        let counts = result.placement.counts();
        prop_assert_eq!(counts.iter().sum::<usize>(), helpers);
        prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]),
            "popularity order carries over to copy counts: {:?}", counts);
        prop_assert!(result.certified);
    }

    #[test]
    fn average_ber_is_sandwiched_by_the_extremes(
        helpers in 1usize..=20,
        files in 1usize..=30,
        gamma in 0.0f64..5.0,
        rho_db in -10.0f64..40.0,
        beta in 1.5f64..50.0,
    ) {
        let pop = zipf(files, gamma).unwrap();
        let ch = channel(db_to_linear(rho_db), beta);
        let placement = greedy_place(helpers, &pop, &ch).placement;
        let ber = average_ber(&placement, &pop, &ch).unwrap();
        let ceiling = cellular_ber(&ch);
        let floor = cluster_ber(helpers, &ch).unwrap();
        prop_assert!(ber > 0.0);
        prop_assert!(ber <= ceiling * (1.0 + 1e-12),
            "no placement is worse than serving every request from the backhaul");
        prop_assert!(ber >= floor * (1.0 - 1e-12),
            "no placement beats full diversity on every file");
    }

    #[test]
    fn db_conversion_round_trips(db in -100.0f64..100.0) {
        let back = linear_to_db(db_to_linear(db));
        prop_assert!((back - db).abs() <= 1e-12 * db.abs().max(1.0));
    }

    #[test]
    fn sum_and_quadrature_paths_agree_at_random_points(
        n in 1usize..=12,
        log_rho in -2.0f64..5.0,
    ) {
        let ch = channel(10f64.powf(log_rho), 2.0);
        let sum = cluster_ber_sum(n, &ch).unwrap();
        let quad = cluster_ber_quad(n, &ch).unwrap();
        prop_assert!((sum - quad).abs() <= 1e-10);
    }

    #[test]
    fn placements_reject_mismatched_totals(
        counts in proptest::collection::vec(0usize..4, 1..12),
        extra in 1usize..5,
    ) {
        let total: usize = counts.iter().sum();
        prop_assert!(Placement::new(counts, total + extra).is_err());
    }
}
