//! Univariate and bivariate Fox H-functions.
//!
//! The bivariate form follows the Mittal–Gupta definition
//!
//! H[z1, z2] = (2πi)^{-2} ∫∫ φ(s, t) θ₁(s) θ₂(t) z1^s z2^t ds dt,
//!
//! φ(s, t) = Π_{j≤n₁} Γ(1 − a_j + α_j s + A_j t)
//!         / (Π_{j>n₁} Γ(a_j − α_j s − A_j t) Π_j Γ(1 − b_j + β_j s + B_j t)),
//!
//! with θ₁, θ₂ the univariate kernels below.

use super::mellin::{GammaTerm, Kernel};
use super::quad::CancelToken;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// (coefficient, scale) pair of a univariate parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HParam {
    pub coeff: f64,
    pub scale: f64,
}

impl HParam {
    pub fn new(coeff: f64, scale: f64) -> Self {
        Self { coeff, scale }
    }
}

/// Coupled parameter (a; α, A) of the outer group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HCoupled {
    pub coeff: f64,
    pub scale1: f64,
    pub scale2: f64,
}

impl HCoupled {
    pub fn new(coeff: f64, scale1: f64, scale2: f64) -> Self {
        Self {
            coeff,
            scale1,
            scale2,
        }
    }
}

/// H^{m,n}_{p,q}: integrand
/// Π_{j≤m} Γ(b_j − B_j s) Π_{j≤n} Γ(1 − a_j + A_j s)
/// / (Π_{j>m} Γ(1 − b_j + B_j s) Π_{j>n} Γ(a_j − A_j s)) z^s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoxHSpec {
    pub m: usize,
    pub n: usize,
    pub a: Vec<HParam>,
    pub b: Vec<HParam>,
}

impl FoxHSpec {
    pub fn new(m: usize, n: usize, a: Vec<HParam>, b: Vec<HParam>) -> Result<Self> {
        let s = Self { m, n, a, b };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m > self.b.len() || self.n > self.a.len() {
            return Err(Error::invalid(
                "m/n",
                format!(
                    "orders ({}, {}) exceed parameter counts ({}, {})",
                    self.m,
                    self.n,
                    self.a.len(),
                    self.b.len()
                ),
            ));
        }
        for p in self.a.iter().chain(&self.b) {
            if !(p.scale > 0.0) || !p.coeff.is_finite() || !p.scale.is_finite() {
                return Err(Error::invalid("scale", format!("bad parameter {p:?}")));
            }
        }
        Ok(())
    }

    /// Terms in variable `axis` (0 or 1).
    fn terms(&self, axis: usize) -> Vec<GammaTerm> {
        let e = |x: f64| {
            let mut v = [0.0; 2];
            v[axis] = x;
            v
        };
        let mut out = Vec::new();
        for (j, p) in self.b.iter().enumerate() {
            out.push(if j < self.m {
                GammaTerm {
                    c: p.coeff,
                    e: e(-p.scale),
                    numerator: true,
                }
            } else {
                GammaTerm {
                    c: 1.0 - p.coeff,
                    e: e(p.scale),
                    numerator: false,
                }
            });
        }
        for (j, p) in self.a.iter().enumerate() {
            out.push(if j < self.n {
                GammaTerm {
                    c: 1.0 - p.coeff,
                    e: e(p.scale),
                    numerator: true,
                }
            } else {
                GammaTerm {
                    c: p.coeff,
                    e: e(-p.scale),
                    numerator: false,
                }
            });
        }
        out
    }
}

/// Parameters of a bivariate H-function. The outer group has m₁ = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoxHBivariateSpec {
    pub n1: usize,
    pub outer_a: Vec<HCoupled>,
    pub outer_b: Vec<HCoupled>,
    pub inner1: FoxHSpec,
    pub inner2: FoxHSpec,
}

impl FoxHBivariateSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n1 > self.outer_a.len() {
            return Err(Error::invalid("n1", "n1 exceeds outer p"));
        }
        if self
            .outer_a
            .iter()
            .chain(&self.outer_b)
            .any(|c| !(c.coeff.is_finite() && c.scale1.is_finite() && c.scale2.is_finite()))
        {
            return Err(Error::invalid("outer", "parameters must be finite"));
        }
        self.inner1.validate()?;
        self.inner2.validate()
    }

    fn kernel(&self, z1: f64, z2: f64) -> Kernel {
        let mut terms = Vec::new();
        for (j, p) in self.outer_a.iter().enumerate() {
            terms.push(if j < self.n1 {
                GammaTerm::num2(1.0 - p.coeff, p.scale1, p.scale2)
            } else {
                GammaTerm::den2(p.coeff, -p.scale1, -p.scale2)
            });
        }
        for p in &self.outer_b {
            terms.push(GammaTerm::den2(1.0 - p.coeff, p.scale1, p.scale2));
        }
        terms.extend(self.inner1.terms(0));
        terms.extend(self.inner2.terms(1));
        Kernel {
            terms,
            log_arg: [z1.ln(), z2.ln()],
            dims: 2,
        }
    }
}

fn check_arg(function: &'static str, z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: z,
            reason: "argument must be positive and finite",
        })
    }
}

pub fn fox_h(spec: &FoxHSpec, z: f64) -> Result<f64> {
    spec.validate()?;
    check_arg("fox_h", z)?;
    let k = Kernel {
        terms: spec.terms(0),
        log_arg: [z.ln(), 0.0],
        dims: 1,
    };
    Ok(k.integrate_1d("fox_h", None)?.value)
}

pub fn fox_h_bivariate(spec: &FoxHBivariateSpec, z1: f64, z2: f64) -> Result<f64> {
    fox_h_bivariate_with(spec, z1, z2, None)
}

pub fn fox_h_bivariate_with(
    spec: &FoxHBivariateSpec,
    z1: f64,
    z2: f64,
    cancel: Option<&CancelToken>,
) -> Result<f64> {
    spec.validate()?;
    check_arg("fox_h_bivariate", z1)?;
    check_arg("fox_h_bivariate", z2)?;
    Ok(spec
        .kernel(z1, z2)
        .integrate_2d("fox_h_bivariate", cancel)?
        .value)
}

/// One term `coeff · z^power` of a small-argument expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueTerm {
    pub coeff: f64,
    pub power: f64,
}

fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}

/// Residues at the right-hand poles s = (b_j + k)/B_j of the numerator
/// factors Γ(b_j − B_j s), j ≤ m. The first pole of every family is kept
/// plus every pole with s ≤ s_min + `span`. Terms are sorted by power, so
/// H(z) ≈ Σ coeff z^power as z → 0. Coincident poles are rejected.
pub fn fox_h_residues(spec: &FoxHSpec, span: f64) -> Result<Vec<ResidueTerm>> {
    spec.validate()?;
    let poles = |j: usize, k: usize| (spec.b[j].coeff + k as f64) / spec.b[j].scale;
    let s_min = (0..spec.m).map(|j| poles(j, 0)).fold(f64::INFINITY, f64::min);
    let mut out = Vec::new();
    for j in 0..spec.m {
        let mut k = 0usize;
        loop {
            let s = poles(j, k);
            if k > 0 && s > s_min + span {
                break;
            }
            for (i, p) in spec.b.iter().enumerate().take(spec.m) {
                if i == j {
                    continue;
                }
                let t = p.coeff - p.scale * s;
                if t <= 1e-6 && (t - t.round()).abs() < 1e-6 {
                    return Err(Error::Degenerate {
                        context: "fox_h_residues",
                        detail: format!("poles of families {j} and {i} coincide at s = {s}"),
                    });
                }
            }
            let mut v = 1.0 / spec.b[j].scale * if k % 2 == 0 { 1.0 } else { -1.0 }
                / libm::tgamma(k as f64 + 1.0);
            for (i, p) in spec.b.iter().enumerate() {
                if i == j {
                    continue;
                }
                v *= if i < spec.m {
                    libm::tgamma(p.coeff - p.scale * s)
                } else {
                    rgamma(1.0 - p.coeff + p.scale * s)
                };
            }
            for (i, p) in spec.a.iter().enumerate() {
                v *= if i < spec.n {
                    libm::tgamma(1.0 - p.coeff + p.scale * s)
                } else {
                    rgamma(p.coeff - p.scale * s)
                };
            }
            if !v.is_finite() {
                return Err(Error::Degenerate {
                    context: "fox_h_residues",
                    detail: format!("pole at s = {s} collides with a left-hand pole"),
                });
            }
            out.push(ResidueTerm { coeff: v, power: s });
            k += 1;
        }
    }
    out.sort_by(|a, b| a.power.total_cmp(&b.power));
    Ok(out)
}

impl From<&super::meijer::MeijerGSpec> for FoxHSpec {
    fn from(g: &super::meijer::MeijerGSpec) -> Self {
        let unit = |v: &Vec<f64>| v.iter().map(|&c| HParam::new(c, 1.0)).collect();
        Self {
            m: g.m,
            n: g.n,
            a: unit(&g.a),
            b: unit(&g.b),
        }
    }
}
