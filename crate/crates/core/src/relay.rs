//! Two-hop composition: relay gains and end-to-end SNDR.

use crate::error::{Error, Result};
use crate::fso::UnifiedSnrParams;
use crate::hpa::{derive_hpa, kappa_factor, HpaDerived, HpaModel};
use crate::modulation::ModulationScheme;
use crate::rf::{prs_moment, PrsRfParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelayMode {
    /// Fixed gain from the average first-hop CSI.
    Fg,
    /// Variable gain from the instantaneous first-hop CSI.
    Vg,
}

/// Full link description. The source power is P₁ = γ̄₁σ₀² with unit
/// average channel power, so `rf.snr_avg` fixes P₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    pub rf: PrsRfParams,
    pub fso: UnifiedSnrParams,
    pub hpa: HpaModel,
    pub mode: RelayMode,
    pub modulation: ModulationScheme,
    /// Destination noise power σ₀².
    pub noise_var: f64,
}

impl LinkConfig {
    pub fn validate(&self) -> Result<()> {
        self.rf.validate()?;
        self.fso.validate()?;
        self.hpa.validate()?;
        self.modulation.validate(self.fso.detection)?;
        if !(self.noise_var > 0.0 && self.noise_var.is_finite()) {
            return Err(Error::invalid("noise_var", "must be positive"));
        }
        Ok(())
    }

    pub fn source_power(&self) -> f64 {
        self.rf.snr_avg * self.noise_var
    }

    pub fn hpa_derived(&self) -> Result<HpaDerived> {
        derive_hpa(&self.hpa)
    }

    /// E[γ₁(m)].
    pub fn mean_snr1(&self) -> f64 {
        prs_moment(1.0, &self.rf).expect("t = 1 is a valid order")
    }

    /// Gain used to evaluate κ: the fixed gain built from E[|h₁(m)|²]
    /// (also for variable-gain relaying).
    pub fn average_gain(&self) -> f64 {
        let h2 = self.mean_snr1() / self.rf.snr_avg;
        relay_gain(self.hpa.sigma_r2, h2, self.source_power(), self.noise_var)
    }

    pub fn kappa(&self) -> Result<f64> {
        let d = self.hpa_derived()?;
        kappa_factor(&d, self.average_gain(), self.noise_var)
    }

    /// c = E[γ₁(m)] + κ in the fixed-gain SNDR.
    pub fn c_constant(&self) -> Result<f64> {
        Ok(self.mean_snr1() + self.kappa()?)
    }
}

/// G = √(σ_r²/(|h|²P₁ + σ₀²)); pass E[|h|²] for fixed gain or the
/// instantaneous |h|² for variable gain.
pub fn relay_gain(sigma_r2: f64, h_sq: f64, p1: f64, noise_var: f64) -> f64 {
    (sigma_r2 / (h_sq * p1 + noise_var)).sqrt()
}

/// γ₁γ₂/(κγ₂ + E[γ₁] + κ).
pub fn sndr_fixed_gain(g1: f64, g2: f64, kappa: f64, mean_g1: f64) -> f64 {
    g1 * g2 / (kappa * g2 + mean_g1 + kappa)
}

/// Exact γ₁γ₂/(κγ₂ + γ₁ + κ), or min(γ₁, γ₂/((κ−1)γ₂ + 1)).
pub fn sndr_variable_gain(g1: f64, g2: f64, kappa: f64, approx: bool) -> f64 {
    if approx {
        g1.min(g2 / ((kappa - 1.0) * g2 + 1.0))
    } else {
        g1 * g2 / (kappa * g2 + g1 + kappa)
    }
}
