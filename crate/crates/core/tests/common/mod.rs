#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rffso_core::fso::{Detection, UnifiedSnrParams};
use rffso_core::hpa::{am_am, HpaKind};
use rffso_core::specfun::quad::{integrate, QuadOptions};
use rffso_core::relay::{LinkConfig, RelayMode};
use rffso_core::scenario::{Scenario, Turbulence};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scenario(mode: RelayMode, kind: HpaKind, det: Detection, turb: Turbulence) -> Scenario {
    let mut s = Scenario::default();
    s.relay.mode = mode;
    s.hpa.kind = kind;
    s.fso.detection = det;
    s.fso.turbulence = turb;
    s
}

pub fn link(mode: RelayMode, kind: HpaKind, det: Detection, turb: Turbulence, mu_db: f64) -> LinkConfig {
    scenario(mode, kind, det, turb).link(mu_db).unwrap()
}

pub fn moderate_fso(det: Detection, mu_db: f64) -> UnifiedSnrParams {
    link(RelayMode::Fg, HpaKind::Ideal, det, Turbulence::Moderate, mu_db).fso
}

/// Upper bound on the Kolmogorov–Smirnov distance between the sample and
/// `cdf`, evaluating `cdf` only at every `stride`-th order statistic.
/// Between evaluation points both functions are monotone, which bounds
/// the gap by the values at the neighbouring points.
pub fn ks_bound(samples: &mut [f64], stride: usize, cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len();
    let nf = n as f64;
    let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
    if *idx.last().unwrap() != n - 1 {
        idx.push(n - 1);
    }
    let vals: Vec<f64> = idx.iter().map(|&i| cdf(samples[i])).collect();
    let mut d: f64 = 0.0;
    // below the first evaluated point
    d = d.max(idx[0] as f64 / nf + 1.0 / nf).max(vals[0]);
    for w in 0..idx.len() - 1 {
        let (i, j) = (idx[w], idx[w + 1]);
        // empirical CDF just below x_j is j/n, at x_i it is (i+1)/n
        d = d.max(j as f64 / nf - vals[w]);
        d = d.max(vals[w + 1] - (i + 1) as f64 / nf);
    }
    d.max(1.0 - vals[vals.len() - 1])
}

/// Exact KS distance for a cheap CDF.
pub fn ks_exact(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let nf = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / nf).max((i + 1) as f64 / nf - f)
        })
        .fold(0.0, f64::max)
}

pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// Bussgang pair from the Rayleigh envelope with σ_r² = 1. The TWTA
/// nonlinearity behind the closed forms is A²r/(A² + r²), i.e. half the
/// display curve.
pub fn bussgang_by_quadrature(kind: HpaKind, ibo: f64) -> (f64, f64) {
    let a = ibo.sqrt();
    let g = |r: f64| match kind {
        HpaKind::Twta => 0.5 * am_am(kind, r, a),
        _ => am_am(kind, r, a),
    };
    let opts = QuadOptions::with_tol(1e-15, 1e-13);
    // u = r² ~ Exp(1); split at the SEL kink
    let mut omega = 0.0;
    let mut eta = 0.0;
    let hi = 80.0f64.max(2.0 * ibo);
    for (lo, up) in [(0.0, ibo.min(hi)), (ibo.min(hi), hi)] {
        if up > lo {
            omega += integrate(|u| u.sqrt() * g(u.sqrt()) * (-u).exp(), lo, up, &opts).unwrap().value;
            eta += integrate(|u| g(u.sqrt()).powi(2) * (-u).exp(), lo, up, &opts).unwrap().value;
        }
    }
    (omega, eta)
}
