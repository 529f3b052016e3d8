//! Optimal file caching for a wireless helper cluster under Rayleigh fading.
//!
//! A cluster of N cache-equipped helper stations serves a popular library
//! of F files to a user. A file cached on n helpers is delivered by
//! selection diversity over the n faded copies (mean SNR rho); an uncached
//! file falls back to the cellular link (mean SNR nu = rho / beta). With
//! Zipf-distributed requests, the average bit error rate of a placement
//! (n_1, ..., n_F) with sum n_i = N is
//!
//! sum_i q_i * p(n_i),
//!
//! where p(n) is the fading-averaged BER with n copies. This crate
//! computes that objective exactly, finds optimal placements, and
//! classifies the parameter regimes where the optimum has a closed form:
//!
//! * [`ber`] — exact fading-averaged BER formulas and marginal gains.
//! * [`channel`] — link parameters (rho, nu, modulation constants).
//! * [`popularity`] — Zipf request distribution.
//! * [`placement`] — placement type, average BER, fixed strategies.
//! * [`greedy`] — the marginal-gain greedy search (provably optimal for
//!   beta >= 2) and its multi-round extension with helper assignment.
//! * [`oracle`] — budgeted exhaustive search for ground truth.
//! * [`regimes`] — closed-form popularity-exponent thresholds separating
//!   the uniform, concentrated, and mixed placement regimes.
//! * [`montecarlo`] — deterministic fading simulation that validates the
//!   closed forms.

pub mod ber;
pub mod channel;
pub mod greedy;
pub mod montecarlo;
pub mod oracle;
pub mod placement;
pub mod popularity;
mod quad;
pub mod regimes;

pub use ber::{BerError, BerTable};
pub use channel::{ChannelError, ChannelParams};
pub use greedy::{GreedyError, GreedyPlacement, GreedyTrace, HelperAssignment};
pub use montecarlo::{BerEstimate, FadingSample};
pub use oracle::{OracleError, SearchReport};
pub use placement::{Placement, PlacementError};
pub use popularity::{Popularity, PopularityError};
pub use regimes::{Regime, RegimeClassification, RegimeError, RegimeThresholds};
