//! Closed-form, asymptotic and bound expressions for the end-to-end link.

mod fixed;
mod variable;

pub use fixed::{
    bep_fg, capacity_fg, capacity_fg_detailed, capacity_fg_quadrature, outage_fg, outage_fg_asymptotic,
};
pub use variable::{
    bep_vg_asymptotic, bep_vg_numerical, capacity_vg_approx, capacity_vg_upper, capacity_vg_upper_detailed,
    capacity_vg_upper_quadrature, fso_cdf_asymptotic, fso_cdf_expansion, outage_vg_min_approx, outage_vg_upper,
    vg_ideal_gains,
};

use crate::error::{Error, Result};
use crate::fso::UnifiedSnrParams;
use crate::hpa::HpaDerived;
use crate::relay::{LinkConfig, RelayMode};
use crate::specfun::HParam;
use serde::{Deserialize, Serialize};

/// High-SNR behaviour P_e ≈ (G_c γ̄)^{−G_d} from f_γ(γ) ≈ a γ^b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticGains {
    pub g_d: f64,
    pub g_c: f64,
    pub a: f64,
    pub b: f64,
}

/// Result of an expression that may fall back to direct quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flagged {
    pub value: f64,
    pub fallback: bool,
}

/// Ceiling log₂(1 + ϖΩ²/(η − Ω²)).
pub fn capacity_ceiling(hpa: &HpaDerived, weight: f64) -> Result<f64> {
    let gap = hpa.clipping - hpa.omega * hpa.omega;
    if !(gap > 0.0) {
        return Err(Error::invalid("hpa", "ideal hardware: no capacity ceiling exists"));
    }
    Ok((weight * hpa.omega * hpa.omega / gap).log2_1p())
}

trait Log2OnePlus {
    fn log2_1p(self) -> f64;
}

impl Log2OnePlus for f64 {
    fn log2_1p(self) -> f64 {
        self.ln_1p() / std::f64::consts::LN_2
    }
}

/// min(1, α₁m₁/r, α₂m₂/r, ξ²/r) for ideal hardware, 0 otherwise.
pub fn diversity_order(cfg: &LinkConfig, ideal: bool) -> Result<f64> {
    if !ideal && cfg.kappa()? > 1.0 {
        return Ok(0.0);
    }
    Ok(fso_exponent(&cfg.fso).min(1.0))
}

/// min(α₁m₁, α₂m₂, ξ²)/r: small-argument exponent of the optical CDF.
pub(crate) fn fso_exponent(u: &UnifiedSnrParams) -> f64 {
    let d = &u.dgg;
    (d.alpha1 * d.m1).min(d.alpha2 * d.m2).min(u.xi * u.xi) / u.r()
}

pub(crate) fn require_mode(cfg: &LinkConfig, mode: RelayMode) -> Result<()> {
    cfg.validate()?;
    if cfg.mode != mode {
        return Err(Error::invalid("mode", format!("expression needs {mode:?} relaying")));
    }
    Ok(())
}

/// Mellin data of the optical SNR:
/// E[γ₂^λ] = coeff · root^λ · Π Γ(b_k + Bλ) Γ(c + Bλ) / Γ(c + 1 + Bλ)
/// with root = ζ^{r/(α₂p)} and B = r/(α₂p).
pub(crate) struct FsoMellin {
    /// b_k followed by c = ξ²/(α₂p).
    pub lower: Vec<f64>,
    pub c: f64,
    pub scale: f64,
    pub coeff: f64,
    pub root: f64,
}

impl FsoMellin {
    pub fn new(u: &UnifiedSnrParams) -> Self {
        let c = u.pointing_param();
        let mut lower = u.dgg.b_params();
        lower.push(c);
        let scale = u.r() / u.order();
        Self {
            lower,
            c,
            scale,
            coeff: u.dgg.norm_const() * c,
            root: u.zeta().powf(scale),
        }
    }

    /// Numerator factors Γ(b − Bs) (argument z ∝ 1/γ₂ power).
    pub fn falling(&self) -> Vec<HParam> {
        self.lower.iter().map(|&b| HParam::new(b, self.scale)).collect()
    }

    /// Denominator Γ(c + 1 − Bs) as an a-type parameter.
    pub fn falling_den(&self) -> HParam {
        HParam::new(self.c + 1.0, self.scale)
    }

    /// Numerator factors Γ(b + Bs) as a-type parameters.
    pub fn rising(&self) -> Vec<HParam> {
        self.lower.iter().map(|&b| HParam::new(1.0 - b, self.scale)).collect()
    }

    /// Denominator Γ(c + 1 + Bs) as a b-type parameter.
    pub fn rising_den(&self) -> HParam {
        HParam::new(-self.c, self.scale)
    }
}

/// Applies `f`; on a degenerate-pole error retries once with ξ² nudged by
/// a relative 1e−6.
pub(crate) fn with_xi_nudge<T>(cfg: &LinkConfig, f: impl Fn(&LinkConfig) -> Result<T>) -> Result<T> {
    match f(cfg) {
        Err(Error::Degenerate { .. }) => {
            let mut c = *cfg;
            c.fso.xi *= (1.0 + 1e-6f64).sqrt();
            f(&c)
        }
        r => r,
    }
}

/// Error probability from a CDF: δ/(2Γ(τ)) Σ_k q_k^τ ∫ γ^{τ−1} e^{−q_k γ} F(γ) dγ.
pub(crate) fn bep_from_cdf(
    modulation: &crate::modulation::ModulationScheme,
    scale_hint: f64,
    cdf: impl Fn(f64) -> Result<f64>,
) -> Result<f64> {
    use crate::specfun::elementary::gamma;
    use crate::specfun::quad::{integrate_log_scale, QuadOptions};
    let tau = modulation.tau();
    let mut total = 0.0;
    let opts = QuadOptions::with_tol(1e-16, 1e-8);
    for q in modulation.q() {
        let mut err = None;
        let v = integrate_log_scale(
            |g| {
                let f = cdf(g).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    0.0
                });
                g.powf(tau - 1.0) * (-q * g).exp() * f
            },
            1e-14 * scale_hint.min(1.0),
            60.0 / q,
            &opts,
        )?;
        if let Some(e) = err {
            return Err(e);
        }
        total += q.powf(tau) * v;
    }
    Ok(modulation.delta() / (2.0 * gamma(tau)) * total)
}
