//! Channel-side parameters of the cluster: average SNRs and modulation constants.
//!
//! Two links exist. Cluster communication (a caching helper serves the user)
//! has average received SNR `rho_bar`; cellular communication (the macro base
//! station serves a cache miss) has average received SNR `nu_bar`. Both are
//! linear-scale; decibel conversion belongs to the caller (the CLI converts
//! exactly once at its boundary). The ratio `beta = rho_bar / nu_bar` drives
//! every optimality result: helpers are assumed closer than the base station,
//! so beta > 1 is the physically sensible regime and beta >= 2 is where the
//! greedy placement is provably optimal.

use serde::Serialize;

/// Linear-scale channel parameters shared by every BER formula.
///
/// `alpha0` and `alpha1` are the coherent-modulation constants of the
/// instantaneous bit error rate `alpha0 * Q(sqrt(alpha1 * snr))`; the defaults
/// (1, 2) correspond to QPSK and are the values the closed forms assume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    rho_bar: f64,
    nu_bar: f64,
    alpha0: f64,
    alpha1: f64,
}

/// Construction failures for [`ChannelParams`].
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelError {
    /// An average SNR was zero, negative, or not finite.
    InvalidSnr { name: &'static str, value: f64 },
    /// A modulation constant was zero, negative, or not finite.
    InvalidModulation { name: &'static str, value: f64 },
}

impl std::fmt::Display for ChannelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelError::InvalidSnr { name, value } => {
                write!(f, "{name} must be positive and finite, got {value}")
            }
            ChannelError::InvalidModulation { name, value } => {
                write!(f, "{name} must be positive and finite, got {value}")
            }
        }
    }
}

impl std::error::Error for ChannelError {}

fn check(name: &'static str, value: f64) -> Result<f64, ChannelError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(ChannelError::InvalidSnr { name, value })
    }
}

impl ChannelParams {
    /// Builds parameters from the two average SNRs, with QPSK constants.
    pub fn from_rho_nu(rho_bar: f64, nu_bar: f64) -> Result<Self, ChannelError> {
        Ok(ChannelParams {
            rho_bar: check("rho_bar", rho_bar)?,
            nu_bar: check("nu_bar", nu_bar)?,
            alpha0: 1.0,
            alpha1: 2.0,
        })
    }

    /// Builds parameters from the cluster SNR and the ratio `beta = rho/nu`.
    ///
    /// Equivalent to `from_rho_nu(rho_bar, rho_bar / beta)`; the two routes
    /// agree to within floating-point rounding of the single division.
    pub fn from_rho_beta(rho_bar: f64, beta: f64) -> Result<Self, ChannelError> {
        let rho_bar = check("rho_bar", rho_bar)?;
        let beta = check("beta", beta)?;
        Self::from_rho_nu(rho_bar, rho_bar / beta)
    }

    /// Replaces the modulation constants (instantaneous BER
    /// `alpha0 * Q(sqrt(alpha1 * snr))`).
    ///
    /// The closed-form BER expressions in this crate are specific to the
    /// default (1, 2); other constants are honored by the Monte Carlo path.
    pub fn with_modulation(mut self, alpha0: f64, alpha1: f64) -> Result<Self, ChannelError> {
        if !(alpha0 > 0.0 && alpha0.is_finite()) {
            return Err(ChannelError::InvalidModulation {
                name: "alpha0",
                value: alpha0,
            });
        }
        if !(alpha1 > 0.0 && alpha1.is_finite()) {
            return Err(ChannelError::InvalidModulation {
                name: "alpha1",
                value: alpha1,
            });
        }
        self.alpha0 = alpha0;
        self.alpha1 = alpha1;
        Ok(self)
    }

    /// Average received SNR of cluster communication (linear).
    pub fn rho_bar(&self) -> f64 {
        self.rho_bar
    }

    /// Average received SNR of cellular communication (linear).
    pub fn nu_bar(&self) -> f64 {
        self.nu_bar
    }

    /// Cluster-to-cellular SNR ratio `rho_bar / nu_bar`.
    pub fn beta(&self) -> f64 {
        self.rho_bar / self.nu_bar
    }

    /// Modulation constant multiplying the Q-function.
    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    /// Modulation constant inside the Q-function argument.
    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    /// Whether the parameters sit outside the `beta > 1` regime the model's
    /// optimality analysis assumes (helpers at least as strong as cellular).
    pub fn outside_model_regime(&self) -> bool {
        self.beta() <= 1.0
    }
}

/// Converts a decibel value to linear scale: `10^(db/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear value to decibels: `10 log10(x)`.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
