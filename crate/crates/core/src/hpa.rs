//! Relay power-amplifier nonlinearity under Bussgang linearisation.

use crate::error::{Error, Result};
use crate::specfun::elementary::{erfc, exp_times_ei_neg};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HpaKind {
    /// Soft envelope limiter.
    Sel,
    /// Travelling-wave tube amplifier.
    Twta,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HpaModel {
    pub kind: HpaKind,
    /// Input saturation amplitude.
    pub a_sat: f64,
    /// Mean signal power at the gain-block output σ_r².
    pub sigma_r2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HpaDerived {
    /// Linear gain Ω.
    pub omega: f64,
    /// Distortion variance σ_ς².
    pub distortion_var: f64,
    /// Clipping factor η.
    pub clipping: f64,
}

impl HpaModel {
    pub fn new(kind: HpaKind, a_sat: f64, sigma_r2: f64) -> Result<Self> {
        let m = Self {
            kind,
            a_sat,
            sigma_r2,
        };
        m.validate()?;
        Ok(m)
    }

    /// Model with IBO = A_sat²/σ_r² given in dB.
    pub fn from_ibo_db(kind: HpaKind, ibo_db: f64, sigma_r2: f64) -> Result<Self> {
        let ibo = 10f64.powf(ibo_db / 10.0);
        Self::new(kind, (ibo * sigma_r2).sqrt(), sigma_r2)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a_sat > 0.0 && self.a_sat.is_finite()) {
            return Err(Error::invalid("a_sat", "must be positive"));
        }
        if !(self.sigma_r2 > 0.0 && self.sigma_r2.is_finite()) {
            return Err(Error::invalid("sigma_r2", "must be positive"));
        }
        Ok(())
    }

    pub fn ibo(&self) -> f64 {
        self.a_sat * self.a_sat / self.sigma_r2
    }

    pub fn ibo_db(&self) -> f64 {
        10.0 * self.ibo().log10()
    }
}

pub fn derive_hpa(model: &HpaModel) -> Result<HpaDerived> {
    model.validate()?;
    let x = model.ibo();
    let (omega, clipping) = match model.kind {
        HpaKind::Ideal => (1.0, 1.0),
        HpaKind::Sel => {
            let nu = x.sqrt();
            let clip = -(-x).exp_m1();
            let omega = clip + std::f64::consts::PI.sqrt() / 2.0 * nu * erfc(nu);
            (omega, clip)
        }
        HpaKind::Twta => {
            let s = exp_times_ei_neg(x)?;
            let omega = x * (1.0 + x * s);
            let clip = -x * x * ((1.0 + x) * s + 1.0);
            (omega, clip)
        }
    };
    let distortion_var = (model.sigma_r2 * (clipping - omega * omega)).max(0.0);
    Ok(HpaDerived {
        omega,
        distortion_var,
        clipping,
    })
}

/// κ = 1 + σ_ς²/(Ω² G² σ₀²).
pub fn kappa_factor(d: &HpaDerived, gain: f64, noise_var: f64) -> Result<f64> {
    if !(gain > 0.0) || !(noise_var > 0.0) {
        return Err(Error::invalid("gain/noise_var", "must be positive"));
    }
    Ok(1.0 + d.distortion_var / (d.omega * d.omega * gain * gain * noise_var))
}

/// Output amplitude for input amplitude `r_in`. The TWTA curve is the Saleh
/// form 2r/(1 + r²/A²), which peaks at r = A with output A.
pub fn am_am(kind: HpaKind, r_in: f64, a_sat: f64) -> f64 {
    match kind {
        HpaKind::Ideal => r_in,
        HpaKind::Sel => r_in.min(a_sat),
        HpaKind::Twta => 2.0 * r_in / (1.0 + (r_in / a_sat).powi(2)),
    }
}
