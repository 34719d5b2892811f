use crate::common::*;
use crate::Outcome;
use rffso_core::fso::*;
use rffso_core::hpa::HpaKind;
use rffso_core::mc::simulate_sndr;
use rffso_core::relay::RelayMode;
use rffso_core::rf::*;
use rffso_core::scenario::Turbulence;
use rffso_core::specfun::quad::{integrate, integrate_log_scale, QuadOptions};
use statrs::distribution::{ChiSquared, ContinuousCDF};

const N: usize = 1_000_000;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn rf_checks(out: &mut Vec<Check>) {
    let p = PrsRfParams::new(1, 1, 1.0, 2.5).unwrap();
    let mut r = rng(11);
    let mut s: Vec<f64> = (0..N).map(|_| sample_selected_snr(&p, &mut r)).collect();
    let d = ks_exact(&mut s, |x| 1.0 - (-x / 2.5f64).exp());
    out.push(check("RF exponential KS", d < 0.002, format!("{d:.4}<0.002")));

    let p = PrsRfParams::new(5, 3, 0.7, 1.0).unwrap();
    let mut r = rng(12);
    let mut s: Vec<f64> = (0..N).map(|_| sample_selected_snr(&p, &mut r)).collect();
    let d = ks_exact(&mut s, |x| prs_cdf(x, &p));
    out.push(check("RF (5,3,0.7) KS", d < 0.005, format!("{d:.4}<0.005")));

    let p = PrsRfParams::new(6, 3, 0.0, 3.0).unwrap();
    let mut r = rng(13);
    let s: Vec<f64> = (0..N).map(|_| sample_selected_snr(&p, &mut r)).collect();
    let (mean, se) = mean_se(&s);
    let z = (mean - 3.0) / se;
    out.push(check("RF ρ=0 mean", z.abs() < 3.0, format!("{z:+.2} SE")));
}

fn optical_checks(out: &mut Vec<Check>) {
    let g = FsoGeometry::reference(5e-14);
    let d = derive_geometry(&g).unwrap();
    let mut r = rng(21);
    let mut s: Vec<f64> = (0..N).map(|_| sample_pointing(&g, &d, &mut r) / d.a0).collect();
    let (mean, se) = mean_se(&s);
    let xi2 = d.xi * d.xi;
    let z = (mean - xi2 / (xi2 + 1.0)) / se;
    out.push(check("pointing mean", z.abs() < 3.0, format!("{z:+.2} SE")));
    let dist = ks_exact(&mut s, |x| x.powf(xi2));
    out.push(check("pointing KS", dist < 0.002, format!("{dist:.4}<0.002")));

    let dgg = DggParams::unit_mean(1.8, 2.2, 1.2, 1.4).unwrap();
    let mut r = rng(22);
    let s: Vec<f64> = (0..N).map(|_| sample_turbulence(&dgg, &mut r).powi(2)).collect();
    let (mean, se) = mean_se(&s);
    let z = (mean - dgg.moment(2.0).unwrap()) / se;
    out.push(check("turbulence E[I²]", z.abs() < 3.0, format!("{z:+.2} SE")));

    for (det, seed) in [(Detection::Heterodyne, 31), (Detection::Imdd, 32)] {
        let u = moderate_fso(det, 10.0);
        let mut r = rng(seed);
        let mut s: Vec<f64> = (0..N).map(|_| u.sample(&mut r)).collect();
        let d = ks_bound(&mut s, 250, |x| fso_snr_cdf(x, &u).unwrap());
        let name = if det == Detection::Heterodyne { "FSO SNR KS (het)" } else { "FSO SNR KS (IM/DD)" };
        out.push(check(name, d < 0.005, format!("{d:.4}<0.005")));
    }

    let u = moderate_fso(Detection::Imdd, 10.0);
    let mut r = rng(33);
    let mut s: Vec<f64> = (0..N).map(|_| u.sample(&mut r)).collect();
    s.sort_by(f64::total_cmp);
    let bins = 40;
    let mut edges: Vec<f64> = (1..bins).map(|k| s[k * N / bins]).collect();
    edges.insert(0, 0.0);
    edges.push(f64::INFINITY);
    let opts = QuadOptions::with_tol(1e-12, 1e-9);
    let pdf = |x: f64| fso_snr_pdf(x, &u).unwrap();
    let mut chi2 = 0.0;
    for k in 0..bins {
        let (a, b) = (edges[k], edges[k + 1]);
        let observed = (s.partition_point(|&x| x < b) - s.partition_point(|&x| x < a)) as f64;
        let p = if a == 0.0 {
            integrate_log_scale(pdf, 1e-12, b, &opts).unwrap()
        } else if b.is_infinite() {
            integrate_log_scale(pdf, a, 1e6 * u.mu, &opts).unwrap()
        } else {
            integrate(pdf, a, b, &opts).unwrap().value
        };
        let e = p * N as f64;
        chi2 += (observed - e).powi(2) / e;
    }
    let crit = ChiSquared::new((bins - 1) as f64).unwrap().inverse_cdf(0.99);
    out.push(check("FSO SNR χ²", chi2 < crit, format!("{chi2:.1}<{crit:.1}")));
}

fn engine_check(out: &mut Vec<Check>) {
    let mut cfg = link(RelayMode::Fg, HpaKind::Ideal, Detection::Heterodyne, Turbulence::Weak, 10.0);
    cfg.fso.dgg = DggParams::unit_mean(1.0, 1e7, 1.0, 1e7).unwrap();
    cfg.fso.xi = 1e4;
    let g2 = cfg.fso.mu * cfg.fso.a0 * cfg.fso.path_loss;
    let scale = g2 / (g2 + cfg.mean_snr1() + 1.0);
    let mut s = simulate_sndr(&cfg, N as u64, 17).unwrap();
    let d = ks_exact(&mut s, |t| prs_cdf(t / scale, &cfg.rf));
    out.push(check("MC degenerate-FSO KS", d < 0.005, format!("{d:.4}<0.005")));
}

pub fn samplers() -> Outcome {
    let mut checks = Vec::new();
    rf_checks(&mut checks);
    optical_checks(&mut checks);
    engine_check(&mut checks);
    let pass = checks.iter().all(|c| c.pass);
    let parts: Vec<String> = checks
        .iter()
        .map(|c| format!("{}{} {}", if c.pass { "" } else { "✗ " }, c.name, c.detail))
        .collect();
    Outcome::new(pass, format!("10⁶ samples each: {}", parts.join("; ")))
}
