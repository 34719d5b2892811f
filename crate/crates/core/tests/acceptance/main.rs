//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! `RFFSO_ACCEPT_SAMPLES` sets the Monte Carlo sample count of the
//! cross-validation grid (default 10⁶).

#[path = "../common/mod.rs"]
mod common;
mod grid;
mod hardware;
mod math;
mod stats;

use std::time::Instant;

pub struct Outcome {
    pub pass: bool,
    pub summary: String,
    /// Failure is a documented property of the printed expression.
    pub known: bool,
}

impl Outcome {
    pub fn new(pass: bool, summary: impl Into<String>) -> Self {
        Self {
            pass,
            summary: summary.into(),
            known: false,
        }
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "SEL capacity ceilings", hardware::sel_ceilings),
        (2, "TWTA capacity ceiling", hardware::twta_ceiling),
        (3, "closed form vs Monte Carlo grid", grid::cross_validation),
        (4, "outage floors", hardware::outage_floors),
        (5, "ideal-hardware diversity slopes", hardware::diversity_slopes),
        (6, "parameter orderings", hardware::orderings),
        (7, "special-function identities", math::identities),
        (8, "distortion variance identity", math::distortion_identity),
        (9, "sampler distribution tests", stats::samplers),
    ];
    let filter: Option<u32> = std::env::var("RFFSO_ACCEPT_ONLY").ok().and_then(|s| s.parse().ok());
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let tag = match (o.pass, o.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id} {tag}: {name}: {} [{:.1} s]", o.summary, t.elapsed().as_secs_f64());
        if !o.pass && !o.known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
