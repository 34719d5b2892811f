//! Fixed-gain relaying.
//!
//! Conditioning on γ₂, the outage event is γ₁ < κγ_th + cγ_th/γ₂, so with
//! the exponential-mixture CDF of γ₁
//!
//! P_out = F₁(κγ_th) + Σ_n (w_n/k_n) e^{−β_nκγ_th} E[1 − e^{−β_n c γ_th/γ₂}].
//!
//! The last expectation is a Fox-H function of β_n c γ_th ζ^{−r/(α₂p)}.

use super::{require_mode, with_xi_nudge, Flagged, FsoMellin};
use crate::error::{Error, Result};
use crate::modulation::ModulationScheme;
use crate::relay::{LinkConfig, RelayMode};
use crate::rf::prs_cdf;
use crate::specfun::elementary::gamma;
use crate::specfun::quad::{integrate_log_scale, QuadOptions};
use crate::specfun::{fox_h, fox_h_bivariate, fox_h_residues, FoxHBivariateSpec, FoxHSpec, HCoupled, HParam};

/// Spec of E[1 − e^{−x/γ₂}]/coeff, optionally with an extra numerator
/// Γ(τ + s) for the error-probability integral.
fn expm1_spec(fm: &FsoMellin, tau: Option<f64>) -> FoxHSpec {
    let mut a = vec![HParam::new(1.0, 1.0)];
    if let Some(t) = tau {
        a.push(HParam::new(1.0 - t, 1.0));
    }
    let n = a.len();
    a.push(fm.falling_den());
    let mut b = vec![HParam::new(1.0, 1.0)];
    b.extend(fm.falling());
    let m = b.len();
    b.push(HParam::new(0.0, 1.0));
    FoxHSpec { m, n, a, b }
}

struct FgSetup {
    kappa: f64,
    c: f64,
    fm: FsoMellin,
}

fn setup(cfg: &LinkConfig) -> Result<FgSetup> {
    require_mode(cfg, RelayMode::Fg)?;
    Ok(FgSetup {
        kappa: cfg.kappa()?,
        c: cfg.c_constant()?,
        fm: FsoMellin::new(&cfg.fso),
    })
}

fn check_probability(operation: &'static str, v: f64) -> Result<f64> {
    if !(-1e-9..=1.0 + 1e-9).contains(&v) {
        return Err(Error::Numerical {
            operation,
            detail: format!("probability {v} outside [0, 1]"),
        });
    }
    Ok(v.clamp(0.0, 1.0))
}

fn outage_with(th: f64, cfg: &LinkConfig, q: impl Fn(&FgSetup, f64) -> Result<f64>) -> Result<f64> {
    let s = setup(cfg)?;
    if !(th >= 0.0) {
        return Err(Error::Domain {
            function: "outage_fg",
            value: th,
            reason: "threshold must be non-negative",
        });
    }
    if th == 0.0 {
        return Ok(0.0);
    }
    if th.is_infinite() {
        return Ok(1.0);
    }
    let mut p = prs_cdf(s.kappa * th, &cfg.rf);
    for (w, theta, k1) in cfg.rf.terms() {
        let beta = k1 / theta;
        let damp = (-beta * s.kappa * th).exp();
        if damp == 0.0 {
            continue;
        }
        let z = beta * s.c * th / s.fm.root;
        p += w / k1 * damp * s.fm.coeff * q(&s, z)?;
    }
    Ok(p)
}

/// P[γ < γ_th] for fixed-gain relaying.
pub fn outage_fg(th: f64, cfg: &LinkConfig) -> Result<f64> {
    let p = outage_with(th, cfg, |s, z| fox_h(&expm1_spec(&s.fm, None), z))?;
    check_probability("outage_fg", p)
}

/// High-SNR outage: the Fox-H factor replaced by its right-pole residues.
pub fn outage_fg_asymptotic(th: f64, cfg: &LinkConfig) -> Result<f64> {
    with_xi_nudge(cfg, |cfg| {
        let p = outage_with(th, cfg, |s, z| {
            let terms = fox_h_residues(&expm1_spec(&s.fm, None), 1.0)?;
            Ok(terms.iter().map(|t| t.coeff * z.powf(t.power)).sum())
        })?;
        Ok(p.clamp(0.0, 1.0))
    })
}

/// Average error probability for fixed-gain relaying.
pub fn bep_fg(modulation: &ModulationScheme, cfg: &LinkConfig) -> Result<f64> {
    let s = setup(cfg)?;
    modulation.validate(cfg.fso.detection)?;
    let tau = modulation.tau();
    let spec = expm1_spec(&s.fm, Some(tau));
    let g_tau = gamma(tau);
    let mut total = 0.0;
    for q in modulation.q() {
        let mut inner = 0.0;
        for (w, theta, k1) in cfg.rf.terms() {
            let beta = k1 / theta;
            let big_p = q + beta * s.kappa;
            let z = beta * s.c / (big_p * s.fm.root);
            let h = fox_h(&spec, z)?;
            inner += w / k1 * (g_tau * (q.powf(-tau) - big_p.powf(-tau)) + s.fm.coeff * big_p.powf(-tau) * h);
        }
        total += q.powf(tau) * inner;
    }
    check_probability("bep_fg", modulation.delta() / (2.0 * g_tau) * total)
}

/// Ergodic capacity through the bivariate Fox-H form, falling back to
/// quadrature of the complementary CDF when the contour integral fails.
pub fn capacity_fg(cfg: &LinkConfig) -> Result<f64> {
    Ok(capacity_fg_detailed(cfg)?.value)
}

pub fn capacity_fg_detailed(cfg: &LinkConfig) -> Result<Flagged> {
    match capacity_fg_foxh(cfg) {
        Ok(value) => Ok(Flagged {
            value,
            fallback: false,
        }),
        Err(Error::Convergence { .. }) | Err(Error::Numerical { .. }) | Err(Error::Degenerate { .. }) => {
            Ok(Flagged {
                value: capacity_fg_quadrature(cfg)?,
                fallback: true,
            })
        }
        Err(e) => Err(e),
    }
}

fn capacity_fg_foxh(cfg: &LinkConfig) -> Result<f64> {
    let s = setup(cfg)?;
    let weight = cfg.fso.detection.capacity_weight();
    let mut b2 = vec![HParam::new(0.0, 1.0)];
    b2.extend(s.fm.falling());
    let spec = FoxHBivariateSpec {
        n1: 1,
        outer_a: vec![HCoupled::new(0.0, 1.0, 1.0)],
        outer_b: vec![],
        inner1: FoxHSpec {
            m: 1,
            n: 1,
            a: vec![HParam::new(0.0, 1.0)],
            b: vec![HParam::new(0.0, 1.0)],
        },
        inner2: FoxHSpec {
            m: b2.len(),
            n: 0,
            a: vec![s.fm.falling_den()],
            b: b2,
        },
    };
    let z2 = s.c / (s.kappa * s.fm.root);
    let mut total = 0.0;
    for (w, theta, k1) in cfg.rf.terms() {
        let bk = k1 / theta * s.kappa;
        let h = fox_h_bivariate(&spec, weight / bk, z2)?;
        total += w / k1 * s.fm.coeff / bk * h;
    }
    Ok(weight * total / std::f64::consts::LN_2)
}

/// (ϖ/ln 2) ∫ (1 − F(γ))/(1 + ϖγ) dγ with the closed-form CDF.
pub fn capacity_fg_quadrature(cfg: &LinkConfig) -> Result<f64> {
    let s = setup(cfg)?;
    let weight = cfg.fso.detection.capacity_weight();
    let spec = expm1_spec(&s.fm, None);
    let terms: Vec<_> = cfg.rf.terms().collect();
    let slowest = terms
        .iter()
        .map(|&(_, theta, k1)| theta / k1)
        .fold(0.0f64, f64::max)
        / s.kappa;
    let survival = |g: f64| -> Result<f64> {
        let mut v = 0.0;
        for &(w, theta, k1) in &terms {
            let beta = k1 / theta;
            let damp = (-beta * s.kappa * g).exp();
            if damp == 0.0 {
                continue;
            }
            let q = s.fm.coeff * fox_h(&spec, beta * s.c * g / s.fm.root)?;
            v += w / k1 * damp * (1.0 - q);
        }
        Ok(v.clamp(0.0, 1.0))
    };
    let lo = 1e-9 * slowest.min(1.0);
    let mut err = None;
    let v = integrate_log_scale(
        |g| {
            let sv = survival(g).unwrap_or_else(|e| {
                err.get_or_insert(e);
                0.0
            });
            sv / (1.0 + weight * g)
        },
        lo,
        60.0 * slowest,
        &QuadOptions::with_tol(1e-12, 1e-7),
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(weight * (v + lo) / std::f64::consts::LN_2)
}
