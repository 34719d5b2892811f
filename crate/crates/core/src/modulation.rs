//! Modulation constants for the generic error-probability form
//! P_e(γ) = δ/(2Γ(τ)) Σ_{k=1}^{v} Γ(τ, q_k γ).

use crate::error::{Error, Result};
use crate::fso::Detection;
use crate::specfun::elementary::{gamma, upper_gamma};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum ModulationScheme {
    Ook,
    Bpsk,
    Mpsk { order: u32 },
    Mqam { order: u32 },
}

impl ModulationScheme {
    pub fn validate(&self, detection: Detection) -> Result<()> {
        match *self {
            ModulationScheme::Ook if detection != Detection::Imdd => {
                return Err(Error::invalid("modulation", "OOK requires IM/DD detection"));
            }
            ModulationScheme::Bpsk | ModulationScheme::Mpsk { .. } | ModulationScheme::Mqam { .. }
                if detection != Detection::Heterodyne =>
            {
                return Err(Error::invalid(
                    "modulation",
                    "PSK/QAM schemes require heterodyne detection",
                ));
            }
            _ => {}
        }
        match *self {
            ModulationScheme::Mpsk { order } if order < 4 || !order.is_power_of_two() => Err(
                Error::invalid("modulation", "M-PSK order must be a power of two >= 4"),
            ),
            ModulationScheme::Mqam { order }
                if order < 4 || !order.is_power_of_two() || order.trailing_zeros() % 2 == 1 =>
            {
                Err(Error::invalid("modulation", "M-QAM order must be an even power of two"))
            }
            _ => Ok(()),
        }
    }

    /// Matching scheme for the detection mode when none is configured.
    pub fn default_for(detection: Detection) -> Self {
        match detection {
            Detection::Heterodyne => ModulationScheme::Bpsk,
            Detection::Imdd => ModulationScheme::Ook,
        }
    }

    pub fn delta(&self) -> f64 {
        match *self {
            ModulationScheme::Ook | ModulationScheme::Bpsk => 1.0,
            ModulationScheme::Mpsk { order } => 2.0 / f64::from(order).log2().max(2.0),
            ModulationScheme::Mqam { order } => {
                let m = f64::from(order);
                4.0 / m.log2() * (1.0 - 1.0 / m.sqrt())
            }
        }
    }

    pub fn tau(&self) -> f64 {
        0.5
    }

    pub fn v(&self) -> usize {
        match *self {
            ModulationScheme::Ook | ModulationScheme::Bpsk => 1,
            ModulationScheme::Mpsk { order } => (order as usize / 4).max(1),
            ModulationScheme::Mqam { order } => (f64::from(order).sqrt() / 2.0) as usize,
        }
    }

    /// q_k for k = 1..=v.
    pub fn q(&self) -> Vec<f64> {
        let v = self.v();
        (1..=v)
            .map(|k| {
                let odd = (2 * k - 1) as f64;
                match *self {
                    ModulationScheme::Ook => 0.5,
                    ModulationScheme::Bpsk => 1.0,
                    ModulationScheme::Mpsk { order } => (odd * PI / f64::from(order)).sin().powi(2),
                    ModulationScheme::Mqam { order } => 3.0 * odd * odd / (2.0 * (f64::from(order) - 1.0)),
                }
            })
            .collect()
    }

    /// Conditional error probability at SNR γ.
    pub fn conditional_bep(&self, snr: f64) -> f64 {
        let tau = self.tau();
        let scale = self.delta() / (2.0 * gamma(tau));
        self.q()
            .iter()
            .map(|&q| upper_gamma(tau, q * snr.max(0.0)).expect("valid incomplete gamma arguments"))
            .sum::<f64>()
            * scale
    }

    pub fn label(&self) -> String {
        match *self {
            ModulationScheme::Ook => "ook".into(),
            ModulationScheme::Bpsk => "bpsk".into(),
            ModulationScheme::Mpsk { order } => format!("{order}psk"),
            ModulationScheme::Mqam { order } => format!("{order}qam"),
        }
    }
}
