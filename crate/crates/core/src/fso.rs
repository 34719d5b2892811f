//! FSO hop: path loss, pointing error and Double Generalized Gamma
//! turbulence, combined into the unified SNR γ₂ = μ_r (I_a I_l I_p)^r.

use crate::error::{Error, Result};
use crate::specfun::elementary::{erf, ln_gamma};
use crate::specfun::meijer::{meijer_g, MeijerGSpec};
use rand::Rng;
use rand_distr::{Distribution, Gamma as GammaDist};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Raw link geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FsoGeometry {
    /// Link length (m).
    pub length: f64,
    /// Wavelength (m).
    pub wavelength: f64,
    /// Receiver aperture radius (m).
    pub aperture_radius: f64,
    /// Beam waist at the relay (m).
    pub beam_waist: f64,
    /// Radius of curvature (m), may be negative.
    pub curvature_radius: f64,
    /// Jitter standard deviation (m).
    pub jitter_std: f64,
    /// Refractive-index structure parameter (m^-2/3).
    pub cn2: f64,
    /// Weather attenuation (1/m).
    pub attenuation: f64,
}

impl FsoGeometry {
    /// L = 1 km, λ = 1550 nm, F₀ = −10 m, a = 5 cm, ω₀ = 5 mm, σ_s = 3.75 cm.
    pub fn reference(cn2: f64) -> Self {
        Self {
            length: 1_000.0,
            wavelength: 1550e-9,
            aperture_radius: 0.05,
            beam_waist: 5e-3,
            curvature_radius: -10.0,
            jitter_std: 0.0375,
            cn2,
            attenuation: 0.0,
        }
    }
}

/// Quantities derived from [`FsoGeometry`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryDerived {
    pub wave_number: f64,
    pub rytov_variance: f64,
    pub theta0: f64,
    pub lambda0: f64,
    pub lambda1: f64,
    pub beam_width: f64,
    pub v: f64,
    pub beam_width_eq: f64,
    pub a0: f64,
    pub xi: f64,
    pub path_loss: f64,
}

pub fn derive_geometry(g: &FsoGeometry) -> Result<GeometryDerived> {
    for (name, v) in [
        ("length", g.length),
        ("wavelength", g.wavelength),
        ("aperture_radius", g.aperture_radius),
        ("beam_waist", g.beam_waist),
        ("jitter_std", g.jitter_std),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::invalid(name, format!("must be positive, got {v}")));
        }
    }
    if g.cn2 < 0.0 || g.attenuation < 0.0 || g.curvature_radius == 0.0 {
        return Err(Error::invalid(
            "cn2/attenuation/curvature_radius",
            "cn2 and attenuation must be non-negative and F0 nonzero",
        ));
    }
    let k = 2.0 * PI / g.wavelength;
    let rytov = 1.23 * g.cn2 * k.powf(7.0 / 6.0) * g.length.powf(11.0 / 6.0);
    let theta0 = 1.0 - g.length / g.curvature_radius;
    let lambda0 = 2.0 * g.length / (k * g.beam_waist * g.beam_waist);
    let denom = theta0 * theta0 + lambda0 * lambda0;
    if denom == 0.0 {
        return Err(Error::Degenerate {
            context: "derive_geometry",
            detail: "Θ₀ and Λ₀ both vanish".into(),
        });
    }
    let lambda1 = lambda0 / denom;
    let spread = (theta0 + lambda0) * (1.0 + 1.63 * rytov.powf(6.0 / 5.0) * lambda1);
    if !(spread > 0.0) {
        return Err(Error::Degenerate {
            context: "derive_geometry",
            detail: format!("beam width factor {spread} is not positive"),
        });
    }
    let w_z = g.beam_waist * spread.sqrt();
    let v = PI.sqrt() * g.aperture_radius / (2f64.sqrt() * w_z);
    let w_eq2 = w_z * w_z * PI.sqrt() * erf(v) / (2.0 * v * (-v * v).exp());
    let w_eq = w_eq2.sqrt();
    let a0 = erf(v).powi(2);
    Ok(GeometryDerived {
        wave_number: k,
        rytov_variance: rytov,
        theta0,
        lambda0,
        lambda1,
        beam_width: w_z,
        v,
        beam_width_eq: w_eq,
        a0,
        xi: w_eq / (2.0 * g.jitter_std),
        path_loss: path_loss(g.attenuation, g.length),
    })
}

/// Beer–Lambert loss e^{−σL}.
pub fn path_loss(attenuation: f64, length: f64) -> f64 {
    (-attenuation * length).exp()
}

/// Draws I_p = A₀ exp(−2R²/ω²_eq) with R Rayleigh-distributed with scale σ_s.
pub fn sample_pointing<R: Rng + ?Sized>(g: &FsoGeometry, d: &GeometryDerived, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    // R² = −2σ² ln(1 − u)
    let r2 = -2.0 * g.jitter_std * g.jitter_std * (-u).ln_1p();
    d.a0 * (-2.0 * r2 / (d.beam_width_eq * d.beam_width_eq)).exp()
}

/// Pointing sample from (A₀, ξ) alone; identical in law to
/// [`sample_pointing`].
pub fn sample_pointing_xi<R: Rng + ?Sized>(a0: f64, xi: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    a0 * ((-u).ln_1p() / (xi * xi)).exp()
}

/// Turbulence I_a = X·Y with X ~ GG(α₁, m₁, Ω₁), Y ~ GG(α₂, m₂, Ω₂), where
/// GG(α, m, Ω) has density α m^m x^{αm−1} e^{−m x^α/Ω} / (Γ(m) Ω^m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DggParams {
    pub alpha1: f64,
    pub m1: f64,
    pub omega1: f64,
    pub alpha2: f64,
    pub m2: f64,
    pub omega2: f64,
    pub p: u32,
    pub q: u32,
}

/// Finds p/q = x in lowest terms with q ≤ 20.
pub fn rational_ratio(x: f64) -> Result<(u32, u32)> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid("alpha1/alpha2", format!("ratio {x} must be positive")));
    }
    for q in 1..=20u32 {
        let p = (x * f64::from(q)).round();
        if p >= 1.0 && ((p / f64::from(q)) - x).abs() <= 1e-9 * x {
            return Ok((p as u32, q));
        }
    }
    Err(Error::invalid(
        "alpha1/alpha2",
        format!("ratio {x} is not p/q with q <= 20; round α₁ or α₂ to a nearby rational"),
    ))
}

impl DggParams {
    pub fn new(alpha1: f64, m1: f64, omega1: f64, alpha2: f64, m2: f64, omega2: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha1", alpha1),
            ("m1", m1),
            ("omega1", omega1),
            ("alpha2", alpha2),
            ("m2", m2),
            ("omega2", omega2),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be positive, got {v}")));
            }
        }
        let (p, q) = rational_ratio(alpha1 / alpha2)?;
        Ok(Self {
            alpha1,
            m1,
            omega1,
            alpha2,
            m2,
            omega2,
            p,
            q,
        })
    }

    /// Chooses Ω₁, Ω₂ so that E[X] = E[Y] = 1.
    pub fn unit_mean(alpha1: f64, m1: f64, alpha2: f64, m2: f64) -> Result<Self> {
        let omega = |a: f64, m: f64| m * ((ln_gamma(m) - ln_gamma(m + 1.0 / a)) * a).exp();
        Self::new(alpha1, m1, omega(alpha1, m1), alpha2, m2, omega(alpha2, m2))
    }

    pub fn validate(&self) -> Result<()> {
        let fresh = Self::new(self.alpha1, self.m1, self.omega1, self.alpha2, self.m2, self.omega2)?;
        if (fresh.p, fresh.q) != (self.p, self.q) {
            return Err(Error::invalid(
                "p/q",
                format!("p/q = {}/{} does not reduce α₁/α₂", self.p, self.q),
            ));
        }
        Ok(())
    }

    /// E[I_a^s].
    pub fn moment(&self, s: f64) -> Result<f64> {
        let a1 = self.m1 + s / self.alpha1;
        let a2 = self.m2 + s / self.alpha2;
        if !(a1 > 0.0 && a2 > 0.0) {
            return Err(Error::Domain {
                function: "dgg_moment",
                value: s,
                reason: "moment does not exist",
            });
        }
        let ln = ln_gamma(a1) - ln_gamma(self.m1) + ln_gamma(a2) - ln_gamma(self.m2)
            + s / self.alpha1 * (self.omega1 / self.m1).ln()
            + s / self.alpha2 * (self.omega2 / self.m2).ln();
        Ok(ln.exp())
    }

    /// D = (qΩ₁/m₁)^q (pΩ₂/m₂)^p, so that E[I_a^{α₂p u}] ∝ D^u.
    pub fn scale_d(&self) -> f64 {
        let (p, q) = (f64::from(self.p), f64::from(self.q));
        (q * self.omega1 / self.m1).powf(q) * (p * self.omega2 / self.m2).powf(p)
    }

    /// Lower Meijer parameters m₁/q, …, (m₁+q−1)/q, m₂/p, …, (m₂+p−1)/p.
    pub(crate) fn b_params(&self) -> Vec<f64> {
        let mut v = crate::specfun::delta_vec(self.q as usize, self.m1);
        v.extend(crate::specfun::delta_vec(self.p as usize, self.m2));
        v
    }

    /// (2π)^{1−(p+q)/2} q^{m₁−1/2} p^{m₂−1/2} / (Γ(m₁)Γ(m₂)).
    pub(crate) fn norm_const(&self) -> f64 {
        let (p, q) = (f64::from(self.p), f64::from(self.q));
        ((1.0 - (p + q) / 2.0) * (2.0 * PI).ln() + (self.m1 - 0.5) * q.ln() + (self.m2 - 0.5) * p.ln()
            - ln_gamma(self.m1)
            - ln_gamma(self.m2))
        .exp()
    }
}

fn sample_gg<R: Rng + ?Sized>(alpha: f64, m: f64, omega: f64, rng: &mut R) -> f64 {
    let g = GammaDist::new(m, omega / m).expect("validated GG parameters");
    g.sample(rng).powf(1.0 / alpha)
}

pub fn sample_turbulence<R: Rng + ?Sized>(d: &DggParams, rng: &mut R) -> f64 {
    let x = sample_gg(d.alpha1, d.m1, d.omega1, rng);
    let y = sample_gg(d.alpha2, d.m2, d.omega2, rng);
    x * y
}

/// Detection mode: heterodyne (r = 1) or IM/DD (r = 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detection {
    Heterodyne,
    Imdd,
}

impl Detection {
    pub fn r(self) -> f64 {
        match self {
            Detection::Heterodyne => 1.0,
            Detection::Imdd => 2.0,
        }
    }

    /// ϖ in the capacity expressions.
    pub fn capacity_weight(self) -> f64 {
        match self {
            Detection::Heterodyne => 1.0,
            Detection::Imdd => std::f64::consts::E / (2.0 * PI),
        }
    }
}

/// Unified optical SNR model γ₂ = μ_r (I_a I_l I_p)^r.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnifiedSnrParams {
    pub dgg: DggParams,
    pub detection: Detection,
    /// Average electrical SNR μ_r (linear).
    pub mu: f64,
    pub xi: f64,
    pub a0: f64,
    pub path_loss: f64,
}

impl UnifiedSnrParams {
    pub fn from_geometry(dgg: DggParams, detection: Detection, mu: f64, geom: &GeometryDerived) -> Result<Self> {
        let u = Self {
            dgg,
            detection,
            mu,
            xi: geom.xi,
            a0: geom.a0,
            path_loss: geom.path_loss,
        };
        u.validate()?;
        Ok(u)
    }

    pub fn validate(&self) -> Result<()> {
        self.dgg.validate()?;
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::invalid("mu", "average electrical SNR must be positive"));
        }
        if !(self.xi > 0.0) {
            return Err(Error::invalid("xi", "pointing coefficient must be positive"));
        }
        if !(self.a0 > 0.0 && self.a0 <= 1.0) {
            return Err(Error::invalid("a0", "collected fraction must lie in (0, 1]"));
        }
        if !(self.path_loss > 0.0 && self.path_loss <= 1.0) {
            return Err(Error::invalid("path_loss", "must lie in (0, 1]"));
        }
        Ok(())
    }

    pub fn r(&self) -> f64 {
        self.detection.r()
    }

    /// α₂p.
    pub fn order(&self) -> f64 {
        self.dgg.alpha2 * f64::from(self.dgg.p)
    }

    /// ζ = D (A₀I_l)^{α₂p} μ_r^{α₂p/r}.
    pub fn zeta(&self) -> f64 {
        let n = self.order();
        self.dgg.scale_d() * (self.a0 * self.path_loss).powf(n) * self.mu.powf(n / self.r())
    }

    /// Argument γ^{α₂p/r}/ζ of the Meijer functions below.
    pub(crate) fn meijer_arg(&self, g: f64) -> f64 {
        let n = self.order();
        ((n / self.r()) * g.ln() - self.zeta().ln()).exp()
    }

    /// c = ξ²/(α₂p).
    pub(crate) fn pointing_param(&self) -> f64 {
        self.xi * self.xi / self.order()
    }

    /// Meijer spec of the density kernel,
    /// G^{p+q+1,0}_{1,p+q+1}(· | c+1; b, c).
    pub(crate) fn pdf_spec(&self) -> MeijerGSpec {
        let c = self.pointing_param();
        let mut b = self.dgg.b_params();
        b.push(c);
        MeijerGSpec {
            m: b.len(),
            n: 0,
            a: vec![c + 1.0],
            b,
        }
    }

    /// G^{p+q+1,1}_{2,p+q+2}(· | 1, c+1; b, c, 0).
    pub(crate) fn cdf_spec(&self) -> MeijerGSpec {
        let c = self.pointing_param();
        let mut b = self.dgg.b_params();
        b.push(c);
        let m = b.len();
        b.push(0.0);
        MeijerGSpec {
            m,
            n: 1,
            a: vec![1.0, c + 1.0],
            b,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let ia = sample_turbulence(&self.dgg, rng);
        let ip = sample_pointing_xi(self.a0, self.xi, rng);
        self.mu * (ia * self.path_loss * ip).powf(self.r())
    }
}

pub fn fso_snr_pdf(g: f64, u: &UnifiedSnrParams) -> Result<f64> {
    if !(g > 0.0) {
        return Ok(0.0);
    }
    let k = u.dgg.norm_const() * u.xi * u.xi / (u.r() * g);
    let v = meijer_g(&u.pdf_spec(), u.meijer_arg(g))?;
    Ok((k * v).max(0.0))
}

pub fn fso_snr_cdf(g: f64, u: &UnifiedSnrParams) -> Result<f64> {
    if !(g > 0.0) {
        return Ok(0.0);
    }
    let k = u.dgg.norm_const() * u.pointing_param();
    let v = k * meijer_g(&u.cdf_spec(), u.meijer_arg(g))?;
    if !(-1e-9..=1.0 + 1e-9).contains(&v) {
        return Err(Error::Numerical {
            operation: "fso_snr_cdf",
            detail: format!("CDF value {v} outside [0, 1] at γ = {g}"),
        });
    }
    Ok(v.clamp(0.0, 1.0))
}

/// E[γ₂^t] = μ_r^t (A₀I_l)^{rt} E[I_a^{rt}] ξ²/(ξ²+rt).
pub fn fso_snr_moment(t: f64, u: &UnifiedSnrParams) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    let rt = u.r() * t;
    let xi2 = u.xi * u.xi;
    if !(xi2 + rt > 0.0) {
        return Err(Error::Domain {
            function: "fso_snr_moment",
            value: t,
            reason: "pointing-error moment does not exist",
        });
    }
    Ok(u.mu.powf(t) * (u.a0 * u.path_loss).powf(rt) * u.dgg.moment(rt)? * xi2 / (xi2 + rt))
}

/// E[I^r]/E[I]^r of the composite gain; for r = 2 this is the scintillation
/// index plus one.
pub fn average_snr_ratio(u: &UnifiedSnrParams) -> Result<f64> {
    let r = u.r();
    let xi2 = u.xi * u.xi;
    let er = u.dgg.moment(r)? * xi2 / (xi2 + r);
    let e1 = u.dgg.moment(1.0)? * xi2 / (xi2 + 1.0);
    Ok(er / e1.powf(r))
}
