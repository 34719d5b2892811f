//! Globally adaptive 21-point Gauss–Kronrod quadrature.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Shared flag that aborts long quadratures. Clones observe the same flag.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-11,
            max_intervals: 2_000,
            cancel: None,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    /// ∫|f|, useful for judging cancellation.
    pub abs_integral: f64,
    /// Largest |f| seen at a node.
    pub max_abs: f64,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, max_abs: &mut f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    *max_abs = max_abs.max(fc.abs());
    let mut k = WGK[10] * fc;
    let mut g = 0.0;
    let mut abs = WGK[10] * fc.abs();
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        *max_abs = max_abs.max(f1.abs()).max(f2.abs());
        k += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    Segment {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
        abs: abs * h.abs(),
    }
}

/// ∫ₐᵇ f on a finite interval.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let mut max_abs = 0.0;
    let first = kronrod(&mut f, a, b, &mut max_abs);
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_integral = first.abs;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut count = 1;
    loop {
        if !value.is_finite() {
            return Err(Error::Convergence {
                context: "quadrature",
                detail: format!("non-finite integrand on [{a}, {b}]"),
            });
        }
        let tol = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= tol {
            break;
        }
        if let Some(token) = &opts.cancel {
            if token.is_cancelled() {
                return Err(Error::Convergence {
                    context: "quadrature",
                    detail: "cancelled".into(),
                });
            }
        }
        if count >= opts.max_intervals {
            return Err(Error::Convergence {
                context: "quadrature",
                detail: format!(
                    "interval budget exhausted on [{a}, {b}]: estimate {value:e} ± {error:e}"
                ),
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&mut f, worst.a, mid, &mut max_abs);
        let right = kronrod(&mut f, mid, worst.b, &mut max_abs);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_integral += left.abs + right.abs - worst.abs;
        heap.push(left);
        heap.push(right);
        count += 1;
        // roundoff floor: stop once segment errors are below representable noise
        if error < 64.0 * f64::EPSILON * abs_integral {
            break;
        }
    }
    // re-sum for a clean total
    let (mut v, mut e) = (0.0, 0.0);
    for s in heap.iter() {
        v += s.value;
        e += s.error;
    }
    Ok(QuadResult {
        value: v,
        abs_error: e,
        abs_integral,
        max_abs,
    })
}

/// ∫₀^∞ f(x) dx for functions spanning many decades: integrates
/// f(eᵘ)eᵘ over u ∈ [ln lo, ln hi], split at decade boundaries.
pub fn integrate_log_scale<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    opts: &QuadOptions,
) -> Result<f64> {
    let (ulo, uhi) = (lo.ln(), hi.ln());
    let pieces = ((uhi - ulo) / std::f64::consts::LN_10).ceil().max(1.0) as usize;
    let step = (uhi - ulo) / pieces as f64;
    let mut total = 0.0;
    for k in 0..pieces {
        let a = ulo + step * k as f64;
        let r = integrate(
            |u| {
                let x = u.exp();
                f(x) * x
            },
            a,
            a + step,
            opts,
        )?;
        total += r.value;
    }
    Ok(total)
}
