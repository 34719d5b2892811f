//! User-facing scenario description in engineering units, with turbulence
//! presets. Converts to a [`LinkConfig`] at a given average SNR.

use crate::error::{Error, Result};
use crate::fso::{derive_geometry, Detection, DggParams, FsoGeometry, UnifiedSnrParams};
use crate::hpa::{HpaKind, HpaModel};
use crate::modulation::ModulationScheme;
use crate::relay::{LinkConfig, RelayMode};
use crate::rf::PrsRfParams;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turbulence {
    Weak,
    Moderate,
    Strong,
}

impl Turbulence {
    /// (α₁, m₁, α₂, m₂). These sets are not taken from measurements; they
    /// only need distinct pole families and a rational α₁/α₂.
    pub fn shape(self) -> (f64, f64, f64, f64) {
        match self {
            Turbulence::Weak => (2.2, 4.3, 1.1, 3.2),
            Turbulence::Moderate => (1.8, 2.2, 1.2, 1.4),
            Turbulence::Strong => (1.5, 1.3, 1.0, 0.8),
        }
    }

    pub fn cn2(self) -> f64 {
        match self {
            Turbulence::Weak => 1e-14,
            Turbulence::Moderate => 5e-14,
            Turbulence::Strong => 2e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RfSection {
    #[serde(rename = "N")]
    pub n_relays: u32,
    #[serde(rename = "m")]
    pub rank: u32,
    pub rho: f64,
    /// First-hop average SNR; follows the swept μ_r when absent.
    pub snr_db: Option<f64>,
}

impl Default for RfSection {
    fn default() -> Self {
        Self {
            n_relays: 5,
            rank: 5,
            rho: 0.9,
            snr_db: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FsoSection {
    pub detection: Detection,
    pub turbulence: Turbulence,
    pub alpha1: Option<f64>,
    pub m1: Option<f64>,
    pub alpha2: Option<f64>,
    pub m2: Option<f64>,
    #[serde(rename = "Cn2")]
    pub cn2: Option<f64>,
    pub length: f64,
    pub wavelength: f64,
    pub aperture_radius: f64,
    pub beam_waist: f64,
    pub curvature_radius: f64,
    pub jitter_std: f64,
    /// Weather attenuation in dB/km.
    pub sigma_atten_db_km: f64,
    /// Overrides the pointing coefficient derived from the geometry.
    pub xi: Option<f64>,
}

impl Default for FsoSection {
    fn default() -> Self {
        let g = FsoGeometry::reference(0.0);
        Self {
            detection: Detection::Imdd,
            turbulence: Turbulence::Moderate,
            alpha1: None,
            m1: None,
            alpha2: None,
            m2: None,
            cn2: None,
            length: g.length,
            wavelength: g.wavelength,
            aperture_radius: g.aperture_radius,
            beam_waist: g.beam_waist,
            curvature_radius: g.curvature_radius,
            jitter_std: g.jitter_std,
            sigma_atten_db_km: 0.0,
            xi: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HpaSection {
    pub kind: HpaKind,
    pub ibo_db: f64,
    pub sigma_r2: f64,
}

impl Default for HpaSection {
    fn default() -> Self {
        Self {
            kind: HpaKind::Sel,
            ibo_db: 5.0,
            sigma_r2: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelaySection {
    pub mode: RelayMode,
    pub noise_var: f64,
}

impl Default for RelaySection {
    fn default() -> Self {
        Self {
            mode: RelayMode::Fg,
            noise_var: 1.0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub rf: RfSection,
    pub fso: FsoSection,
    pub hpa: HpaSection,
    pub relay: RelaySection,
    pub modulation: Option<ModulationScheme>,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl Scenario {
    pub fn geometry(&self) -> FsoGeometry {
        let f = &self.fso;
        FsoGeometry {
            length: f.length,
            wavelength: f.wavelength,
            aperture_radius: f.aperture_radius,
            beam_waist: f.beam_waist,
            curvature_radius: f.curvature_radius,
            jitter_std: f.jitter_std,
            cn2: f.cn2.unwrap_or(f.turbulence.cn2()),
            attenuation: f.sigma_atten_db_km * std::f64::consts::LN_10 / 10.0 / 1_000.0,
        }
    }

    pub fn dgg(&self) -> Result<DggParams> {
        let (a1, m1, a2, m2) = self.fso.turbulence.shape();
        let f = &self.fso;
        DggParams::unit_mean(
            f.alpha1.unwrap_or(a1),
            f.m1.unwrap_or(m1),
            f.alpha2.unwrap_or(a2),
            f.m2.unwrap_or(m2),
        )
    }

    /// Link at optical average SNR μ_r (dB).
    pub fn link(&self, mu_r_db: f64) -> Result<LinkConfig> {
        let rf = &self.rf;
        if rf.rank > rf.n_relays {
            return Err(Error::invalid("rf.m", "rank m exceeds relay count N"));
        }
        let mu = db_to_linear(mu_r_db);
        let rf_params = PrsRfParams::new(rf.n_relays, rf.rank, rf.rho, rf.snr_db.map_or(mu, db_to_linear))?;
        let geom = derive_geometry(&self.geometry())?;
        let mut fso = UnifiedSnrParams::from_geometry(self.dgg()?, self.fso.detection, mu, &geom)?;
        if let Some(xi) = self.fso.xi {
            fso.xi = xi;
        }
        let cfg = LinkConfig {
            rf: rf_params,
            fso,
            hpa: HpaModel::from_ibo_db(self.hpa.kind, self.hpa.ibo_db, self.hpa.sigma_r2)?,
            mode: self.relay.mode,
            modulation: self.modulation.unwrap_or(ModulationScheme::default_for(self.fso.detection)),
            noise_var: self.relay.noise_var,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
