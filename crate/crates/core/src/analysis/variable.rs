//! Variable-gain relaying: bounds, high-SNR forms and references.

use super::{
    bep_from_cdf, fso_exponent, require_mode, with_xi_nudge, AsymptoticGains, Flagged, FsoMellin, Log2OnePlus,
};
use crate::error::{Error, Result};
use crate::fso::{fso_snr_cdf, fso_snr_pdf, UnifiedSnrParams};
use crate::modulation::ModulationScheme;
use crate::relay::{LinkConfig, RelayMode};
use crate::rf::prs_cdf;
use crate::specfun::elementary::{exp_times_ei_neg, gamma};
use crate::specfun::quad::{integrate_log_scale, QuadOptions};
use crate::specfun::{fox_h, fox_h_residues, meijer_g, FoxHSpec, HParam, MeijerGSpec, ResidueTerm};

/// F₁(γ_th) + F₂(γ_th/((κ−1)γ_th+1)) − F₁F₂.
pub fn outage_vg_upper(th: f64, cfg: &LinkConfig) -> Result<f64> {
    require_mode(cfg, RelayMode::Vg)?;
    if th.is_infinite() {
        return Ok(1.0);
    }
    let kappa = cfg.kappa()?;
    let f1 = prs_cdf(th, &cfg.rf);
    let f2 = fso_snr_cdf(th / ((kappa - 1.0) * th + 1.0), &cfg.fso)?;
    Ok(f1 + f2 - f1 * f2)
}

/// Exact CDF of min(γ₁, γ₂/((κ−1)γ₂+1)). The second argument cannot
/// exceed 1/(κ−1), so the CDF reaches 1 at γ_th = 1/(κ−1).
pub fn outage_vg_min_approx(th: f64, cfg: &LinkConfig) -> Result<f64> {
    require_mode(cfg, RelayMode::Vg)?;
    let kappa = cfg.kappa()?;
    let den = 1.0 - (kappa - 1.0) * th;
    if den <= 0.0 || th.is_infinite() {
        return Ok(1.0);
    }
    let f1 = prs_cdf(th, &cfg.rf);
    let f2 = fso_snr_cdf(th / den, &cfg.fso)?;
    Ok(f1 + f2 - f1 * f2)
}

/// Small-argument expansion F₂(γ) ≈ Σ coeff γ^power.
pub fn fso_cdf_expansion(u: &UnifiedSnrParams) -> Result<Vec<ResidueTerm>> {
    let run = |u: &UnifiedSnrParams| -> Result<Vec<ResidueTerm>> {
        let spec: FoxHSpec = (&u.cdf_spec()).into();
        let k = u.dgg.norm_const() * u.pointing_param();
        let zeta = u.zeta();
        let ratio = u.order() / u.r();
        Ok(fox_h_residues(&spec, 1.0)?
            .into_iter()
            .map(|t| ResidueTerm {
                coeff: k * t.coeff * zeta.powf(-t.power),
                power: t.power * ratio,
            })
            .collect())
    };
    match run(u) {
        Err(Error::Degenerate { .. }) => {
            let mut v = *u;
            v.xi *= (1.0 + 1e-6f64).sqrt();
            run(&v)
        }
        r => r,
    }
}

pub fn fso_cdf_asymptotic(th: f64, cfg: &LinkConfig) -> Result<f64> {
    cfg.fso.validate()?;
    Ok(fso_cdf_expansion(&cfg.fso)?
        .iter()
        .map(|t| t.coeff * th.powf(t.power))
        .sum())
}

/// ∫₀^∞ γ^{τ+e−1} e^{−qγ} (1+(κ−1)γ)^{−e} dγ.
fn damped_moment(tau: f64, e: f64, q: f64, kappa: f64) -> Result<f64> {
    let a = tau + e;
    if kappa - 1.0 < 1e-12 {
        return Ok(gamma(a) * q.powf(-a));
    }
    let k = kappa - 1.0;
    let spec = MeijerGSpec::new(2, 1, vec![1.0 - a], vec![0.0, -tau])?;
    Ok(k.powf(-a) * meijer_g(&spec, q / k)? / gamma(e))
}

/// High-SNR error probability from F ≈ F₁(γ) + F₂^∞(γ/((κ−1)γ+1)).
pub fn bep_vg_asymptotic(modulation: &ModulationScheme, cfg: &LinkConfig) -> Result<f64> {
    require_mode(cfg, RelayMode::Vg)?;
    modulation.validate(cfg.fso.detection)?;
    let kappa = cfg.kappa()?;
    let tau = modulation.tau();
    let g_tau = gamma(tau);
    let expansion = fso_cdf_expansion(&cfg.fso)?;
    let mut total = 0.0;
    for q in modulation.q() {
        let rf: f64 = cfg
            .rf
            .terms()
            .map(|(w, theta, k1)| w / k1 * g_tau * (q.powf(-tau) - (q + k1 / theta).powf(-tau)))
            .sum();
        let mut fso = 0.0;
        for t in &expansion {
            fso += t.coeff * damped_moment(tau, t.power, q, kappa)?;
        }
        total += q.powf(tau) * (rf + fso);
    }
    Ok((modulation.delta() / (2.0 * g_tau) * total).clamp(0.0, modulation.delta() * modulation.v() as f64 / 2.0))
}

/// Log-spaced nodes y and trapezoid weights h·y·f₂(y) covering the
/// optical SNR density.
fn pdf_grid(u: &UnifiedSnrParams) -> Result<Vec<(f64, f64)>> {
    const PER_DECADE: usize = 40;
    let (lo, hi) = ((u.mu * 1e-12).ln(), (u.mu * 1e6).ln());
    let n = ((hi - lo) / std::f64::consts::LN_10 * PER_DECADE as f64) as usize;
    let h = (hi - lo) / n as f64;
    (0..=n)
        .map(|i| {
            let y = (lo + h * i as f64).exp();
            let w = if i == 0 || i == n { 0.5 * h } else { h };
            Ok((y, w * y * fso_snr_pdf(y, u)?))
        })
        .collect()
}

/// Exact CDF of the variable-gain SNDR on a density grid.
fn vg_cdf_on_grid(t: f64, kappa: f64, rf: &[(f64, f64, f64)], grid: &[(f64, f64)]) -> f64 {
    let mut survive = 0.0;
    for &(y, wy) in grid.iter().filter(|(y, _)| *y > t) {
        let x = t * kappa * (y + 1.0) / (y - t);
        let s1: f64 = rf.iter().map(|&(w, theta, k1)| w / k1 * (-k1 / theta * x).exp()).sum();
        survive += wy * s1;
    }
    (1.0 - survive).clamp(0.0, 1.0)
}

/// Reference error probability by numerical integration of the exact
/// variable-gain CDF; valid for any κ.
pub fn bep_vg_numerical(modulation: &ModulationScheme, cfg: &LinkConfig) -> Result<f64> {
    require_mode(cfg, RelayMode::Vg)?;
    modulation.validate(cfg.fso.detection)?;
    let kappa = cfg.kappa()?;
    let grid = pdf_grid(&cfg.fso)?;
    let rf: Vec<_> = cfg.rf.terms().collect();
    bep_from_cdf(modulation, cfg.rf.snr_avg.min(cfg.fso.mu), |t| {
        Ok(vg_cdf_on_grid(t, kappa, &rf, &grid))
    })
}

/// Diversity and coding gains of ideal variable-gain relaying, with f_γ ≈ aγ^b
/// and P_e ≈ (G_c γ̄)^{−G_d}, γ̄ = `rf.snr_avg`. For a scheme with several
/// q_k the coding gain absorbs δ Σ_k (2q_k)^{−G_d}; BPSK gives c = 2.
pub fn vg_ideal_gains(cfg: &LinkConfig) -> Result<AsymptoticGains> {
    cfg.validate()?;
    with_xi_nudge(cfg, |cfg| {
        let e = fso_exponent(&cfg.fso);
        let lead = fso_cdf_expansion(&cfg.fso)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Numerical {
                operation: "vg_ideal_gains",
                detail: "empty optical expansion".into(),
            })?;
        let f1_zero: f64 = cfg.rf.terms().map(|(w, theta, _)| w / theta).sum();
        let fso_a = lead.coeff * lead.power;
        let (a, b) = if (e - 1.0).abs() < 1e-9 {
            (f1_zero + fso_a, 0.0)
        } else if e < 1.0 {
            (fso_a, lead.power - 1.0)
        } else {
            (f1_zero, 0.0)
        };
        let g_d = b + 1.0;
        let a_norm = a * cfg.rf.snr_avg.powf(g_d);
        let scale = 2f64.powf(b) * gamma(b + 1.5) / (std::f64::consts::PI.sqrt() * g_d);
        let m = &cfg.modulation;
        let sum_c: f64 = m.q().iter().map(|q| (2.0 * q).powf(-g_d)).sum();
        let g_c = (m.delta() * scale * a_norm * sum_c).powf(-1.0 / g_d);
        Ok(AsymptoticGains { g_d, g_c, a, b })
    })
}

/// log₂(1 + ϖ E[min(γ₁, γ₂/((κ−1)γ₂+1))]).
pub fn capacity_vg_approx(cfg: &LinkConfig) -> Result<f64> {
    require_mode(cfg, RelayMode::Vg)?;
    let kappa = cfg.kappa()?;
    let weight = cfg.fso.detection.capacity_weight();
    let rf_scale = cfg.rf.terms().map(|(_, theta, k1)| theta / k1).fold(0.0f64, f64::max);
    let mut hi = 60.0 * rf_scale;
    if kappa > 1.0 {
        hi = hi.min(1.0 / (kappa - 1.0));
    }
    let lo = 1e-9 * hi.min(1.0);
    let mut err = None;
    let v = integrate_log_scale(
        |t| {
            let den = 1.0 - (kappa - 1.0) * t;
            if den <= 0.0 {
                return 0.0;
            }
            let s2 = fso_snr_cdf(t / den, &cfg.fso).map(|f| 1.0 - f).unwrap_or_else(|e| {
                err.get_or_insert(e);
                0.0
            });
            (1.0 - prs_cdf(t, &cfg.rf)) * s2
        },
        lo,
        hi,
        &QuadOptions::with_tol(1e-12, 1e-8),
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok((weight * (v + lo)).log2_1p())
}

/// log₂(1 + ϖJ), J = E[γ₁γ₂/(κγ₂ + γ₁)] (Jensen bound).
pub fn capacity_vg_upper(cfg: &LinkConfig) -> Result<f64> {
    Ok(capacity_vg_upper_detailed(cfg)?.value)
}

pub fn capacity_vg_upper_detailed(cfg: &LinkConfig) -> Result<Flagged> {
    require_mode(cfg, RelayMode::Vg)?;
    let weight = cfg.fso.detection.capacity_weight();
    let (j, fallback) = match j_foxh(cfg) {
        Ok(j) => (j, false),
        Err(Error::Convergence { .. }) | Err(Error::Numerical { .. }) | Err(Error::Degenerate { .. }) => {
            (j_quadrature(cfg)?, true)
        }
        Err(e) => return Err(e),
    };
    Ok(Flagged {
        value: (weight * j).log2_1p(),
        fallback,
    })
}

pub fn capacity_vg_upper_quadrature(cfg: &LinkConfig) -> Result<f64> {
    require_mode(cfg, RelayMode::Vg)?;
    Ok((cfg.fso.detection.capacity_weight() * j_quadrature(cfg)?).log2_1p())
}

/// With 1/(1+x) written as a Mellin–Barnes integral, J splits into the
/// moments E[γ₁^{1−s}] E[γ₂^s]; each mixture term is a univariate Fox-H.
fn j_foxh(cfg: &LinkConfig) -> Result<f64> {
    let kappa = cfg.kappa()?;
    let fm = FsoMellin::new(&cfg.fso);
    let mut a = vec![HParam::new(1.0, 1.0)];
    a.extend(fm.rising());
    let spec = FoxHSpec {
        m: 2,
        n: a.len(),
        a,
        b: vec![HParam::new(1.0, 1.0), HParam::new(2.0, 1.0), fm.rising_den()],
    };
    let mut j = 0.0;
    for (w, theta, k1) in cfg.rf.terms() {
        let beta = k1 / theta;
        j += w * theta / (kappa * k1 * k1) * fm.coeff * fox_h(&spec, kappa * beta * fm.root)?;
    }
    Ok(j)
}

/// g(x) = 1 − x eˣ E₁(x), so that E[γ₁/(γ₁+a)] = Σ (w_n/k_n) g(β_n a).
fn one_minus_xexe1(x: f64) -> Result<f64> {
    if x > 50.0 {
        let (mut term, mut sum) = (1.0, 0.0);
        for k in 1..=15 {
            term *= -(k as f64) / x;
            sum -= term;
        }
        return Ok(sum);
    }
    Ok(1.0 + x * exp_times_ei_neg(x)?)
}

fn j_quadrature(cfg: &LinkConfig) -> Result<f64> {
    let kappa = cfg.kappa()?;
    let grid = pdf_grid(&cfg.fso)?;
    let mut j = 0.0;
    for (y, wy) in grid {
        let mut inner = 0.0;
        for (w, theta, k1) in cfg.rf.terms() {
            inner += w / k1 * one_minus_xexe1(k1 / theta * kappa * y)?;
        }
        j += wy * y * inner;
    }
    Ok(j)
}
