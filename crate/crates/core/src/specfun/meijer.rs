//! Meijer G-function G^{m,n}_{p,q}(z | a; b) for real z > 0.

use super::mellin::{GammaTerm, Kernel};
use super::quad::CancelToken;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Orders and parameter vectors of a Meijer G-function.
///
/// Uses the integrand
/// Π_{j≤m} Γ(b_j − s) Π_{j≤n} Γ(1 − a_j + s) / (Π_{j>m} Γ(1 − b_j + s) Π_{j>n} Γ(a_j − s)) z^s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeijerGSpec {
    pub m: usize,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let spec = Self { m, n, a, b };
        spec.validate()?;
        Ok(spec)
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.m > self.q() {
            return Err(Error::invalid("m", format!("m = {} exceeds q = {}", self.m, self.q())));
        }
        if self.n > self.p() {
            return Err(Error::invalid("n", format!("n = {} exceeds p = {}", self.n, self.p())));
        }
        if self.a.iter().chain(&self.b).any(|v| !v.is_finite()) {
            return Err(Error::invalid("a/b", "parameters must be finite"));
        }
        Ok(())
    }

    pub(crate) fn kernel(&self, z: f64) -> Kernel {
        let mut terms = Vec::with_capacity(self.p() + self.q());
        for (j, &b) in self.b.iter().enumerate() {
            terms.push(if j < self.m {
                GammaTerm::num(b, -1.0)
            } else {
                GammaTerm::den(1.0 - b, 1.0)
            });
        }
        for (j, &a) in self.a.iter().enumerate() {
            terms.push(if j < self.n {
                GammaTerm::num(1.0 - a, 1.0)
            } else {
                GammaTerm::den(a, -1.0)
            });
        }
        Kernel {
            terms,
            log_arg: [z.ln(), 0.0],
            dims: 1,
        }
    }
}

/// Δ(j; x) = x/j, (x+1)/j, …, (x+j−1)/j.
pub fn delta_vec(j: usize, x: f64) -> Vec<f64> {
    (0..j).map(|i| (x + i as f64) / j as f64).collect()
}

/// Evaluates the G-function by contour quadrature.
pub fn meijer_g(spec: &MeijerGSpec, z: f64) -> Result<f64> {
    meijer_g_with(spec, z, None)
}

pub fn meijer_g_with(spec: &MeijerGSpec, z: f64, cancel: Option<&CancelToken>) -> Result<f64> {
    spec.validate()?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain {
            function: "meijer_g",
            value: z,
            reason: "argument must be positive and finite",
        });
    }
    Ok(spec.kernel(z).integrate_1d("meijer_g", cancel)?.value)
}
