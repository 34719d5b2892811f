//! Run configuration: the scenario sections plus `[mc]` and `[sweep]`.
//! Read from TOML, or from JSON (a plain configuration or a sidecar written
//! by a previous run).

use crate::error::CliError;
use rffso_core::modulation::ModulationScheme;
use rffso_core::relay::RelayMode;
use rffso_core::scenario::{FsoSection, HpaSection, RelaySection, RfSection, Scenario};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McSection {
    pub seed: u64,
    pub samples: u64,
}

impl Default for McSection {
    fn default() -> Self {
        Self {
            seed: 1,
            samples: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    MuRDb,
    IboDb,
    Rho,
    GammaThDb,
    Xi,
    SigmaAtten,
}

impl SweepVariable {
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::MuRDb => "mu_r_db",
            SweepVariable::IboDb => "ibo_db",
            SweepVariable::Rho => "rho",
            SweepVariable::GammaThDb => "gamma_th_db",
            SweepVariable::Xi => "xi",
            SweepVariable::SigmaAtten => "sigma_atten",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    OutageClosed,
    OutageMc,
    OutageAsymptotic,
    BepClosed,
    BepMc,
    CapacityClosed,
    CapacityMc,
    CapacityUpper,
    CapacityApprox,
    Ceiling,
}

impl Output {
    pub fn column(self) -> &'static str {
        match self {
            Output::OutageClosed => "outage_closed",
            Output::OutageMc => "outage_mc",
            Output::OutageAsymptotic => "outage_asymptotic",
            Output::BepClosed => "bep_closed",
            Output::BepMc => "bep_mc",
            Output::CapacityClosed => "capacity_closed",
            Output::CapacityMc => "capacity_mc",
            Output::CapacityUpper => "capacity_upper",
            Output::CapacityApprox => "capacity_approx",
            Output::Ceiling => "ceiling",
        }
    }

    pub fn is_mc(self) -> bool {
        matches!(self, Output::OutageMc | Output::BepMc | Output::CapacityMc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    /// μ_r when another variable is swept.
    pub mu_r_db: f64,
    pub gamma_th_db: f64,
    pub outputs: Vec<Output>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            variable: SweepVariable::MuRDb,
            start: 0.0,
            stop: 50.0,
            step: 5.0,
            mu_r_db: 30.0,
            gamma_th_db: 0.0,
            outputs: vec![Output::OutageClosed, Output::OutageMc],
        }
    }
}

impl SweepSpec {
    /// Sweep points, inclusive of `stop` up to rounding.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + self.step * k as f64).collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub rf: RfSection,
    pub fso: FsoSection,
    pub hpa: HpaSection,
    pub relay: RelaySection,
    pub modulation: Option<ModulationScheme>,
    pub mc: McSection,
    pub sweep: SweepSpec,
}

impl RunConfig {
    pub fn scenario(&self) -> Scenario {
        Scenario {
            rf: self.rf.clone(),
            fso: self.fso.clone(),
            hpa: self.hpa.clone(),
            relay: self.relay.clone(),
            modulation: self.modulation,
        }
    }

    /// Fills every preset-dependent optional field with the value it
    /// resolves to, so the configuration no longer depends on defaults.
    pub fn resolved(&self) -> Self {
        let mut c = self.clone();
        let (a1, m1, a2, m2) = c.fso.turbulence.shape();
        c.fso.alpha1.get_or_insert(a1);
        c.fso.m1.get_or_insert(m1);
        c.fso.alpha2.get_or_insert(a2);
        c.fso.m2.get_or_insert(m2);
        c.fso.cn2.get_or_insert(c.fso.turbulence.cn2());
        c.modulation.get_or_insert(ModulationScheme::default_for(c.fso.detection));
        c
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let s = &self.sweep;
        if !(s.step > 0.0) || !s.start.is_finite() || !(s.stop >= s.start) {
            return Err(CliError::validation("sweep.range", "need start <= stop and step > 0"));
        }
        if s.points().len() > 10_000 {
            return Err(CliError::validation("sweep.range", "more than 10000 points"));
        }
        if s.outputs.is_empty() {
            return Err(CliError::validation("sweep.outputs", "no outputs requested"));
        }
        if self.mc.samples < rffso_core::mc::MIN_SAMPLES && s.outputs.iter().any(|o| o.is_mc()) {
            return Err(CliError::validation(
                "mc.samples",
                format!("need at least {}", rffso_core::mc::MIN_SAMPLES),
            ));
        }
        let fg = self.relay.mode == RelayMode::Fg;
        for o in &s.outputs {
            let ok = match o {
                Output::OutageAsymptotic | Output::CapacityClosed => fg,
                Output::CapacityUpper | Output::CapacityApprox => !fg,
                _ => true,
            };
            if !ok {
                return Err(CliError::validation(
                    "sweep.outputs",
                    format!("{} is not available for {:?} relaying", o.column(), self.relay.mode),
                ));
            }
        }
        if s.outputs.contains(&Output::Ceiling) && self.hpa.kind == rffso_core::hpa::HpaKind::Ideal {
            return Err(CliError::validation("sweep.outputs", "ceiling is undefined for ideal hardware"));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct Sidecar {
    config: RunConfig,
}

pub fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::validation("config", e.to_string()))?;
        let parsed = if value.get("config").is_some() {
            serde_json::from_value::<Sidecar>(value).map(|s| s.config)
        } else {
            serde_json::from_value::<RunConfig>(value)
        };
        parsed.map_err(|e| CliError::validation("config", e.to_string()))
    } else {
        toml::from_str(&text).map_err(|e| CliError::validation("config", e.message().to_string()))
    }
}
