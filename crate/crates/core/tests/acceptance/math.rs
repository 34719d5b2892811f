use crate::common::{bussgang_by_quadrature, link};
use crate::Outcome;
use rffso_core::analysis::{capacity_vg_upper_detailed, capacity_vg_upper_quadrature};
use rffso_core::fso::Detection;
use rffso_core::hpa::{derive_hpa, HpaKind, HpaModel};
use rffso_core::relay::RelayMode;
use rffso_core::scenario::Turbulence;
use rffso_core::specfun::elementary::upper_gamma;
use statrs::function::gamma::gamma_li;
use rffso_core::specfun::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn meijer_worst() -> f64 {
    let mut worst: f64 = 0.0;
    let exp = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
    for z in [1e-3, 0.1, 1.0, 3.7, 12.0, 30.0] {
        worst = worst.max(rel(meijer_g(&exp, z).unwrap(), (-z).exp()));
    }
    for a in [0.3, 1.0, 2.5, 4.2] {
        let upper = MeijerGSpec::new(2, 0, vec![1.0], vec![a, 0.0]).unwrap();
        let lower = MeijerGSpec::new(1, 1, vec![1.0], vec![a, 0.0]).unwrap();
        for z in [0.01, 0.5, 2.0, 8.0, 20.0] {
            let up = upper_gamma(a, z).unwrap();
            worst = worst.max(rel(meijer_g(&upper, z).unwrap(), up));
            worst = worst.max(rel(meijer_g(&lower, z).unwrap(), gamma_li(a, z)));
        }
    }
    worst
}

fn fox_worst() -> f64 {
    let mut worst: f64 = 0.0;
    let base = FoxHSpec::new(
        2,
        1,
        vec![HParam::new(0.6, 1.0), HParam::new(1.5, 0.5)],
        vec![HParam::new(0.7, 1.0), HParam::new(0.2, 1.5), HParam::new(-0.4, 0.5)],
    )
    .unwrap();
    for k in [0.5, 2.0, 3.0] {
        let mut scaled = base.clone();
        for p in scaled.a.iter_mut().chain(scaled.b.iter_mut()) {
            p.scale *= k;
        }
        for z in [0.2f64, 1.0, 3.0] {
            let rhs = fox_h(&base, z.powf(1.0 / k)).unwrap() / k;
            worst = worst.max(rel(fox_h(&scaled, z).unwrap(), rhs));
        }
    }
    let inner1 = FoxHSpec::new(1, 0, vec![], vec![HParam::new(0.5, 1.0)]).unwrap();
    let inner2 = FoxHSpec::new(
        2,
        0,
        vec![HParam::new(1.0, 1.0)],
        vec![HParam::new(1.2, 0.5), HParam::new(0.0, 1.0)],
    )
    .unwrap();
    let product = FoxHBivariateSpec {
        n1: 0,
        outer_a: vec![],
        outer_b: vec![],
        inner1: inner1.clone(),
        inner2: inner2.clone(),
    };
    for (z1, z2) in [(0.5, 0.5), (1.0, 2.0), (2.0, 0.3)] {
        let rhs = fox_h(&inner1, z1).unwrap() * fox_h(&inner2, z2).unwrap();
        worst = worst.max(rel(fox_h_bivariate(&product, z1, z2).unwrap(), rhs));
    }
    worst
}

fn jensen_worst() -> f64 {
    let cases = [
        (HpaKind::Sel, Detection::Imdd, Turbulence::Moderate, 10.0),
        (HpaKind::Twta, Detection::Heterodyne, Turbulence::Strong, 20.0),
        (HpaKind::Ideal, Detection::Heterodyne, Turbulence::Weak, 30.0),
    ];
    cases
        .iter()
        .map(|&(kind, det, turb, mu)| {
            let cfg = link(RelayMode::Vg, kind, det, turb, mu);
            let f = capacity_vg_upper_detailed(&cfg).unwrap();
            if f.fallback {
                return f64::INFINITY;
            }
            let q = capacity_vg_upper_quadrature(&cfg).unwrap();
            rel(f.value.exp2() - 1.0, q.exp2() - 1.0)
        })
        .fold(0.0, f64::max)
}

pub fn identities() -> Outcome {
    let (m, f, j) = (meijer_worst(), fox_worst(), jensen_worst());
    Outcome::new(
        m < 1e-8 && f < 1e-5 && j < 1e-3,
        format!(
            "Meijer exponential/incomplete-gamma max rel err {m:.1e} (tol 1e-8); Fox-H scale/separability {f:.1e} (tol 1e-5); \
             J Fox-H vs quadrature {j:.1e} (tol 1e-3)"
        ),
    )
}

pub fn distortion_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_pair: f64 = 0.0;
    for kind in [HpaKind::Sel, HpaKind::Twta] {
        for k in 0..=70 {
            let ibo_db = -5.0 + 0.5 * k as f64;
            let m = HpaModel::from_ibo_db(kind, ibo_db, 1.0).unwrap();
            let d = derive_hpa(&m).unwrap();
            let (omega, eta) = bussgang_by_quadrature(kind, m.ibo());
            worst = worst.max((d.distortion_var - (eta - omega * omega)).abs());
            worst_pair = worst_pair.max((d.omega - omega).abs()).max((d.clipping - eta).abs());
        }
    }
    Outcome::new(
        worst < 1e-10,
        format!(
            "max |σ_ς² − σ_r²(η − Ω²)| = {worst:.1e} with (Ω, η) by Rayleigh-envelope quadrature, \
             IBO −5..30 dB, SEL and TWTA (tol 1e-10); closed-form pair error {worst_pair:.1e}"
        ),
    )
}
