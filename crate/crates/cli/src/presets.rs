//! Figure presets. Each returns named series, one sweep per series.

use crate::config::{Output, RunConfig, SweepSpec, SweepVariable};
use crate::error::CliError;
use rffso_core::fso::Detection;
use rffso_core::hpa::HpaKind;
use rffso_core::modulation::ModulationScheme;
use rffso_core::relay::RelayMode;
use rffso_core::scenario::Turbulence;

pub const FIGURES: [&str; 8] = ["fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"];

fn base(mode: RelayMode, kind: HpaKind, det: Detection, outputs: Vec<Output>) -> RunConfig {
    let mut c = RunConfig::default();
    c.relay.mode = mode;
    c.hpa.kind = kind;
    c.fso.detection = det;
    c.sweep = SweepSpec {
        variable: SweepVariable::MuRDb,
        start: 0.0,
        stop: 50.0,
        step: 5.0,
        outputs,
        ..SweepSpec::default()
    };
    c
}

fn outage(mode: RelayMode) -> Vec<Output> {
    match mode {
        RelayMode::Fg => vec![Output::OutageClosed, Output::OutageAsymptotic, Output::OutageMc],
        RelayMode::Vg => vec![Output::OutageClosed, Output::OutageMc],
    }
}

fn fmt(v: f64) -> String {
    format!("{v}").replace('.', "p")
}

pub fn figure(name: &str) -> Result<Vec<(String, RunConfig)>, CliError> {
    let mut series = Vec::new();
    match name {
        "fig3" => {
            for rho in [0.5, 1.0] {
                for th in [0.0, 5.0] {
                    let mut c = base(RelayMode::Fg, HpaKind::Sel, Detection::Imdd, outage(RelayMode::Fg));
                    c.rf.rho = rho;
                    c.sweep.gamma_th_db = th;
                    series.push((format!("rho{}_th{}", fmt(rho), fmt(th)), c));
                }
            }
        }
        "fig4" => {
            for turb in [Turbulence::Moderate, Turbulence::Strong] {
                for det in [Detection::Heterodyne, Detection::Imdd] {
                    let mut c = base(RelayMode::Vg, HpaKind::Twta, det, outage(RelayMode::Vg));
                    c.fso.turbulence = turb;
                    let d = if det == Detection::Heterodyne { "het" } else { "imdd" };
                    series.push((format!("{turb:?}_{d}").to_lowercase(), c));
                }
            }
        }
        "fig5" => {
            for xi in [0.4, 0.7, 0.9, 1.2] {
                let mut c = base(RelayMode::Vg, HpaKind::Twta, Detection::Imdd, outage(RelayMode::Vg));
                c.fso.xi = Some(xi);
                series.push((format!("xi{}", fmt(xi)), c));
            }
        }
        "fig6" => {
            for att in [0.0, 1.0, 3.0, 6.0] {
                let mut c = base(RelayMode::Fg, HpaKind::Sel, Detection::Imdd, outage(RelayMode::Fg));
                c.fso.sigma_atten_db_km = att;
                series.push((format!("atten{}", fmt(att)), c));
            }
        }
        "fig7" => {
            let schemes = [
                ("bpsk", ModulationScheme::Bpsk),
                ("qpsk", ModulationScheme::Mpsk { order: 4 }),
                ("16qam", ModulationScheme::Mqam { order: 16 }),
                ("64qam", ModulationScheme::Mqam { order: 64 }),
            ];
            for (label, m) in schemes {
                let mut c = base(
                    RelayMode::Fg,
                    HpaKind::Sel,
                    Detection::Heterodyne,
                    vec![Output::BepClosed, Output::BepMc],
                );
                c.modulation = Some(m);
                series.push((label.to_string(), c));
            }
        }
        "fig8" => {
            for kind in [HpaKind::Sel, HpaKind::Twta] {
                let mut c = base(
                    RelayMode::Fg,
                    kind,
                    Detection::Heterodyne,
                    vec![Output::CapacityClosed, Output::CapacityMc, Output::Ceiling],
                );
                c.hpa.ibo_db = 10.0;
                c.sweep.stop = 60.0;
                series.push((format!("{kind:?}").to_lowercase(), c));
            }
        }
        "fig9" => {
            for ibo in [0.0, 3.0, 5.0, 30.0] {
                let mut c = base(
                    RelayMode::Vg,
                    HpaKind::Sel,
                    Detection::Heterodyne,
                    vec![Output::CapacityMc, Output::CapacityApprox, Output::CapacityUpper, Output::Ceiling],
                );
                c.hpa.ibo_db = ibo;
                c.sweep.stop = 60.0;
                series.push((format!("ibo{}", fmt(ibo)), c));
            }
        }
        "fig10" => {
            for ibo in [0.0, 4.0, 8.0] {
                let mut c = base(RelayMode::Vg, HpaKind::Sel, Detection::Imdd, outage(RelayMode::Vg));
                c.hpa.ibo_db = ibo;
                c.sweep.stop = 60.0;
                series.push((format!("ibo{}", fmt(ibo)), c));
            }
        }
        other => {
            return Err(CliError::validation(
                "figure",
                format!("unknown figure `{other}`; expected one of {}", FIGURES.join(", ")),
            ))
        }
    }
    Ok(series)
}
