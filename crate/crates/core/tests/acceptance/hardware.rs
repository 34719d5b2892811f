use crate::common::scenario;
use crate::Outcome;
use rffso_core::analysis::{bep_fg, capacity_ceiling, diversity_order, outage_fg};
use rffso_core::fso::Detection;
use rffso_core::hpa::{derive_hpa, HpaKind, HpaModel};
use rffso_core::modulation::ModulationScheme;
use rffso_core::relay::RelayMode;
use rffso_core::scenario::{Scenario, Turbulence};

const TH: f64 = 1.0;

fn ceiling(kind: HpaKind, ibo_db: f64) -> f64 {
    let d = derive_hpa(&HpaModel::from_ibo_db(kind, ibo_db, 1.0).unwrap()).unwrap();
    capacity_ceiling(&d, 1.0).unwrap()
}

pub fn sel_ceilings() -> Outcome {
    let quoted = [4.0, 5.9, 7.9];
    let got: Vec<f64> = [0.0, 3.0, 5.0].iter().map(|&i| ceiling(HpaKind::Sel, i)).collect();
    let worst = got.iter().zip(quoted).map(|(g, p)| (g - p).abs()).fold(0.0, f64::max);
    Outcome::new(
        worst <= 0.2,
        format!("{:.3} / {:.3} / {:.3} bps/Hz vs 4 / 5.9 / 7.9, max gap {worst:.3} (tol 0.2)", got[0], got[1], got[2]),
    )
}

pub fn twta_ceiling() -> Outcome {
    let c = ceiling(HpaKind::Twta, 10.0);
    Outcome::new((6.0..=6.7).contains(&c), format!("{c:.3} bps/Hz (range [6.0, 6.7])"))
}

pub fn outage_floors() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    let mut notes = Vec::new();
    for kind in [HpaKind::Sel, HpaKind::Twta] {
        for det in [Detection::Heterodyne, Detection::Imdd] {
            let mut floors = Vec::new();
            for ibo in [0.0, 4.0, 8.0] {
                let mut s = scenario(RelayMode::Fg, kind, det, Turbulence::Moderate);
                s.hpa.ibo_db = ibo;
                let p80 = outage_fg(TH, &s.link(80.0).unwrap()).unwrap();
                let p100 = outage_fg(TH, &s.link(100.0).unwrap()).unwrap();
                worst = worst.max((p80 - p100).abs());
                floors.push(p100);
            }
            monotone &= floors.windows(2).all(|w| w[1] < w[0]);
            notes.push(format!("{kind:?}/{det:?} {:.2e}>{:.2e}>{:.2e}", floors[0], floors[1], floors[2]));
        }
    }
    Outcome::new(
        worst < 1e-4 && monotone,
        format!("max |P(80 dB) − P(100 dB)| = {worst:.1e} (tol 1e-4); floors over IBO 0/4/8 dB: {}", notes.join(", ")),
    )
}

pub fn diversity_slopes() -> Outcome {
    let mut rf_limited = scenario(RelayMode::Fg, HpaKind::Ideal, Detection::Heterodyne, Turbulence::Weak);
    rf_limited.fso.xi = Some(3.0);
    let turb_limited = scenario(RelayMode::Fg, HpaKind::Ideal, Detection::Heterodyne, Turbulence::Strong);
    let mut pointing_limited = scenario(RelayMode::Fg, HpaKind::Ideal, Detection::Imdd, Turbulence::Weak);
    pointing_limited.fso.xi = Some(1.1);
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, s) in [("RF", rf_limited), ("turbulence", turb_limited), ("pointing", pointing_limited)] {
        let want = diversity_order(&s.link(60.0).unwrap(), true).unwrap();
        let p50 = outage_fg(TH, &s.link(50.0).unwrap()).unwrap();
        let p70 = outage_fg(TH, &s.link(70.0).unwrap()).unwrap();
        let got = -(p70.log10() - p50.log10()) / 2.0;
        let err = (got - want).abs() / want;
        pass &= err < 0.10;
        notes.push(format!("{name}-limited {got:.3} vs {want:.3}"));
    }
    Outcome::new(pass, format!("{} (tol 10%)", notes.join(", ")))
}

fn ordered(better: &Scenario, worse: &Scenario, th_b: f64, th_w: f64) -> bool {
    (0..10).all(|k| {
        let mu = 10.0 + 5.0 * k as f64;
        outage_fg(th_b, &better.link(mu).unwrap()).unwrap() < outage_fg(th_w, &worse.link(mu).unwrap()).unwrap()
    })
}

pub fn orderings() -> Outcome {
    let base = scenario(RelayMode::Fg, HpaKind::Sel, Detection::Imdd, Turbulence::Moderate);
    let mut results = Vec::new();

    results.push(("threshold", ordered(&base, &base, 1.0, 4.0)));

    let (mut good, mut bad) = (base.clone(), base.clone());
    good.rf.rho = 0.99;
    bad.rf.rho = 0.5;
    results.push(("correlation", ordered(&good, &bad, TH, TH)));

    let het = scenario(RelayMode::Fg, HpaKind::Sel, Detection::Heterodyne, Turbulence::Moderate);
    results.push(("detection", ordered(&het, &base, TH, TH)));

    let mut wide = scenario(RelayMode::Fg, HpaKind::Twta, Detection::Imdd, Turbulence::Moderate);
    let mut narrow = wide.clone();
    wide.fso.xi = Some(1.2);
    narrow.fso.xi = Some(0.7);
    results.push(("pointing", ordered(&wide, &narrow, TH, TH)));

    let mut hazy = base.clone();
    hazy.fso.sigma_atten_db_km = 4.0;
    results.push(("attenuation", ordered(&base, &hazy, TH, TH)));

    let modulation = (0..10).all(|k| {
        let cfg = het.link(10.0 + 5.0 * k as f64).unwrap();
        bep_fg(&ModulationScheme::Bpsk, &cfg).unwrap() < bep_fg(&ModulationScheme::Mqam { order: 64 }, &cfg).unwrap()
    });
    results.push(("modulation", modulation));

    let failed: Vec<&str> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    Outcome::new(
        failed.is_empty(),
        format!(
            "{}/6 orderings hold on μ_r = 10..55 dB{}",
            6 - failed.len(),
            if failed.is_empty() { String::new() } else { format!("; violated: {}", failed.join(", ")) }
        ),
    )
}
