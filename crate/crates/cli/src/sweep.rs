//! Evaluation of the requested outputs over the sweep points.

use crate::config::{Output, RunConfig, SweepVariable};
use crate::error::CliError;
use rffso_core::analysis::*;
use rffso_core::mc::{estimate_metrics, Metric};
use rffso_core::relay::{LinkConfig, RelayMode};
use rffso_core::scenario::db_to_linear;

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn header(cfg: &RunConfig) -> Vec<String> {
    let mut h = vec![cfg.sweep.variable.column().to_string()];
    for o in &cfg.sweep.outputs {
        h.push(o.column().to_string());
        if o.is_mc() {
            h.push(format!("{}_se", o.column()));
        }
    }
    h
}

/// Configuration and (μ_r, γ_th) at one sweep point.
fn at_point(cfg: &RunConfig, x: f64) -> (RunConfig, f64, f64) {
    let mut c = cfg.clone();
    let (mut mu, mut th) = (cfg.sweep.mu_r_db, cfg.sweep.gamma_th_db);
    match cfg.sweep.variable {
        SweepVariable::MuRDb => mu = x,
        SweepVariable::IboDb => c.hpa.ibo_db = x,
        SweepVariable::Rho => c.rf.rho = x,
        SweepVariable::GammaThDb => th = x,
        SweepVariable::Xi => c.fso.xi = Some(x),
        SweepVariable::SigmaAtten => c.fso.sigma_atten_db_km = x,
    }
    (c, mu, th)
}

fn closed(o: Output, link: &LinkConfig, th: f64) -> rffso_core::Result<f64> {
    let fg = link.mode == RelayMode::Fg;
    match o {
        Output::OutageClosed if fg => outage_fg(th, link),
        Output::OutageClosed => outage_vg_upper(th, link),
        Output::OutageAsymptotic => outage_fg_asymptotic(th, link),
        Output::BepClosed if fg => bep_fg(&link.modulation, link),
        Output::BepClosed => bep_vg_numerical(&link.modulation, link),
        Output::CapacityClosed => capacity_fg(link),
        Output::CapacityUpper => capacity_vg_upper(link),
        Output::CapacityApprox => capacity_vg_approx(link),
        // at large IBO the distortion variance underflows and the ceiling
        // moves to infinity
        Output::Ceiling => {
            let d = link.hpa_derived()?;
            if d.clipping - d.omega * d.omega > 0.0 {
                capacity_ceiling(&d, link.fso.detection.capacity_weight())
            } else {
                Ok(f64::INFINITY)
            }
        }
        Output::OutageMc | Output::BepMc | Output::CapacityMc => unreachable!("handled by the MC pass"),
    }
}

fn row(cfg: &RunConfig, index: usize, x: f64) -> Result<Vec<f64>, CliError> {
    let (c, mu, th_db) = at_point(cfg, x);
    let link = c.scenario().link(mu)?;
    let th = db_to_linear(th_db);
    let mc_outputs: Vec<Output> = cfg.sweep.outputs.iter().copied().filter(|o| o.is_mc()).collect();
    let metrics: Vec<Metric> = mc_outputs
        .iter()
        .map(|o| match o {
            Output::OutageMc => Metric::Outage { threshold: th },
            Output::BepMc => Metric::Bep {
                modulation: link.modulation,
            },
            _ => Metric::Capacity,
        })
        .collect();
    let estimates = if metrics.is_empty() {
        Vec::new()
    } else {
        // one stream family per sweep point
        let seed = cfg.mc.seed.wrapping_mul(1_000_003).wrapping_add(index as u64);
        estimate_metrics(&link, &metrics, cfg.mc.samples, seed)?
    };
    let mut out = vec![x];
    let mut next_mc = estimates.iter();
    for &o in &cfg.sweep.outputs {
        if o.is_mc() {
            let e = next_mc.next().expect("one estimate per MC output");
            out.push(e.value);
            out.push(e.std_error);
        } else {
            out.push(closed(o, &link, th)?);
        }
    }
    Ok(out)
}

pub fn run(cfg: &RunConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    let rows = cfg
        .sweep
        .points()
        .iter()
        .enumerate()
        .map(|(i, &x)| row(cfg, i, x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Table {
        header: header(cfg),
        rows,
    })
}
