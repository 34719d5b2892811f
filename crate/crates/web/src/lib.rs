//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export wraps a plain function of the same name in [`ops`], which
//! the native tests call directly.

use wasm_bindgen::prelude::*;

pub mod ops {
    use rffso_core::analysis::{capacity_ceiling, outage_fg, outage_vg_upper};
    use rffso_core::fso::Detection;
    use rffso_core::hpa::{am_am, derive_hpa, HpaKind, HpaModel};
    use rffso_core::relay::RelayMode;
    use rffso_core::scenario::{db_to_linear, Scenario};

    pub fn hpa_kind(s: &str) -> Result<HpaKind, String> {
        match s {
            "sel" => Ok(HpaKind::Sel),
            "twta" => Ok(HpaKind::Twta),
            "ideal" => Ok(HpaKind::Ideal),
            _ => Err(format!("unknown amplifier `{s}`")),
        }
    }

    fn detection(heterodyne: bool) -> Detection {
        if heterodyne {
            Detection::Heterodyne
        } else {
            Detection::Imdd
        }
    }

    /// Outage probability at μ_r = start, start + step, ... ≤ stop (dB).
    /// Variable gain uses the closed-form bound.
    #[allow(clippy::too_many_arguments)]
    pub fn outage_curve(
        variable_gain: bool,
        kind: &str,
        heterodyne: bool,
        ibo_db: f64,
        rho: f64,
        gamma_th_db: f64,
        start: f64,
        stop: f64,
        step: f64,
    ) -> Result<Vec<f64>, String> {
        if !(step > 0.0) || !(stop >= start) || (stop - start) / step > 1000.0 {
            return Err("need start <= stop, step > 0 and at most 1000 points".into());
        }
        let mut s = Scenario::default();
        s.relay.mode = if variable_gain { RelayMode::Vg } else { RelayMode::Fg };
        s.hpa.kind = hpa_kind(kind)?;
        s.hpa.ibo_db = ibo_db;
        s.rf.rho = rho;
        s.fso.detection = detection(heterodyne);
        let th = db_to_linear(gamma_th_db);
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| {
                let link = s.link(start + step * k as f64).map_err(|e| e.to_string())?;
                let p = if variable_gain {
                    outage_vg_upper(th, &link)
                } else {
                    outage_fg(th, &link)
                };
                p.map_err(|e| e.to_string())
            })
            .collect()
    }

    /// Capacity ceiling in bps/Hz; infinite for ideal hardware.
    pub fn ceiling(kind: &str, ibo_db: f64, heterodyne: bool) -> Result<f64, String> {
        let m = HpaModel::from_ibo_db(hpa_kind(kind)?, ibo_db, 1.0).map_err(|e| e.to_string())?;
        let d = derive_hpa(&m).map_err(|e| e.to_string())?;
        if d.clipping - d.omega * d.omega <= 0.0 {
            return Ok(f64::INFINITY);
        }
        capacity_ceiling(&d, detection(heterodyne).capacity_weight()).map_err(|e| e.to_string())
    }

    /// Output modulus for `n` inputs evenly spaced on [0, r_max].
    pub fn am_am_curve(kind: &str, a_sat: f64, r_max: f64, n: usize) -> Result<Vec<f64>, String> {
        let kind = hpa_kind(kind)?;
        if !(a_sat > 0.0) || !(r_max > 0.0) || !(2..=10_000).contains(&n) {
            return Err("need a_sat > 0, r_max > 0 and 2 <= n <= 10000".into());
        }
        Ok((0..n)
            .map(|k| am_am(kind, r_max * k as f64 / (n - 1) as f64, a_sat))
            .collect())
    }
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn outage_curve(
    variable_gain: bool,
    kind: &str,
    heterodyne: bool,
    ibo_db: f64,
    rho: f64,
    gamma_th_db: f64,
    start: f64,
    stop: f64,
    step: f64,
) -> Result<Vec<f64>, String> {
    ops::outage_curve(variable_gain, kind, heterodyne, ibo_db, rho, gamma_th_db, start, stop, step)
}

#[wasm_bindgen]
pub fn ceiling(kind: &str, ibo_db: f64, heterodyne: bool) -> Result<f64, String> {
    ops::ceiling(kind, ibo_db, heterodyne)
}

#[wasm_bindgen]
pub fn am_am_curve(kind: &str, a_sat: f64, r_max: f64, n: usize) -> Result<Vec<f64>, String> {
    ops::am_am_curve(kind, a_sat, r_max, n)
}
