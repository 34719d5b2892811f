//! CSV table and JSON sidecar.

use crate::config::RunConfig;
use crate::sweep::Table;
use serde::Serialize;
use std::fmt::Write as _;

fn number(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-3 {
        format!("{v:.6e}")
    } else {
        format!("{v:.6}")
    }
}

pub fn csv(table: &Table) -> String {
    let mut s = table.header.join(",");
    s.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&v| number(v)).collect();
        let _ = writeln!(s, "{}", cells.join(","));
    }
    s
}

#[derive(Serialize)]
struct Provenance<'a> {
    seed: u64,
    samples: u64,
    version: &'a str,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    config: &'a RunConfig,
    provenance: Provenance<'a>,
}

/// Fully resolved configuration plus provenance; loading it back reproduces
/// the run.
pub fn sidecar(cfg: &RunConfig) -> String {
    let resolved = cfg.resolved();
    let side = Sidecar {
        config: &resolved,
        provenance: Provenance {
            seed: cfg.mc.seed,
            samples: cfg.mc.samples,
            version: env!("CARGO_PKG_VERSION"),
        },
    };
    serde_json::to_string_pretty(&side).expect("configuration serialises")
}
