//! Mellin–Barnes contour integration shared by the Meijer-G and Fox-H
//! evaluators.
//!
//! A kernel is a product of gamma factors Γ(c + e·s)^{±1} times x^s, with
//! s ∈ ℂ (univariate) or ℂ² (bivariate). The value is
//! (2πi)^{-d} ∫ kernel ds along vertical lines Re s = σ, where σ puts every
//! numerator argument on the positive side (c + e·σ > 0), which is the same as
//! separating the left- and right-going pole families.
//!
//! σ is placed at the minimum of the real log-kernel inside the admissible
//! region: that point is a saddle of the integrand on the imaginary direction,
//! so the integrand near t = 0 does not oscillate and cancellation is limited.

use super::cgamma::ln_gamma;
use super::quad::{integrate, CancelToken, QuadOptions};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Contour is rejected when the admissible strip is thinner than this.
pub(crate) const POLE_SEPARATION: f64 = 1e-6;
/// Integration along t stops once |kernel| drops below this fraction of its peak.
const TAIL_RATIO: f64 = 1e-17;
const T_MAX: f64 = 4_000.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct GammaTerm {
    pub c: f64,
    pub e: [f64; 2],
    pub numerator: bool,
}

impl GammaTerm {
    pub fn num(c: f64, e: f64) -> Self {
        Self {
            c,
            e: [e, 0.0],
            numerator: true,
        }
    }

    pub fn den(c: f64, e: f64) -> Self {
        Self {
            c,
            e: [e, 0.0],
            numerator: false,
        }
    }

    pub fn num2(c: f64, e1: f64, e2: f64) -> Self {
        Self {
            c,
            e: [e1, e2],
            numerator: true,
        }
    }

    pub fn den2(c: f64, e1: f64, e2: f64) -> Self {
        Self {
            c,
            e: [e1, e2],
            numerator: false,
        }
    }
}

/// Γ-product kernel with log-arguments for each integration variable.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    pub terms: Vec<GammaTerm>,
    pub log_arg: [f64; 2],
    pub dims: usize,
}

#[allow(dead_code)]
#[derive(Debug, Clone, Copy)]
pub(crate) struct Evaluation {
    pub value: f64,
    pub abs_error: f64,
    pub contour: [f64; 2],
}

impl Kernel {
    fn ln_at(&self, s: [Complex64; 2]) -> Complex64 {
        let mut acc = s[0] * self.log_arg[0];
        if self.dims == 2 {
            acc += s[1] * self.log_arg[1];
        }
        for term in &self.terms {
            let z = s[0] * term.e[0] + s[1] * term.e[1] + term.c;
            let lg = ln_gamma(z);
            if term.numerator {
                acc += lg;
            } else {
                acc -= lg;
            }
        }
        acc
    }

    fn value_at(&self, s: [Complex64; 2]) -> Complex64 {
        self.ln_at(s).exp()
    }

    /// Real log-kernel on the real axis; +inf outside the admissible region.
    fn phi(&self, sigma: [f64; 2], margin: f64) -> f64 {
        let mut acc = sigma[0] * self.log_arg[0] + sigma[1] * self.log_arg[1];
        for term in &self.terms {
            let z = term.c + term.e[0] * sigma[0] + term.e[1] * sigma[1];
            if term.numerator {
                if z <= margin {
                    return f64::INFINITY;
                }
                acc += libm::lgamma_r(z).0;
            } else {
                let (lg, _) = libm::lgamma_r(z);
                if !lg.is_finite() {
                    // 1/Γ vanishes here; treat as a poor contour location
                    return f64::INFINITY;
                }
                acc -= lg;
            }
        }
        acc
    }

    /// Exponential decay rate of |kernel| along the imaginary direction `dir`.
    fn decay_rate(&self, dir: [f64; 2]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let w = (t.e[0] * dir[0] + t.e[1] * dir[1]).abs();
                if t.numerator {
                    w
                } else {
                    -w
                }
            })
            .sum::<f64>()
            * PI
            / 2.0
    }

    pub fn check_decay(&self, context: &'static str) -> Result<()> {
        let dirs: Vec<[f64; 2]> = if self.dims == 1 {
            vec![[1.0, 0.0]]
        } else {
            (0..16)
                .map(|k| {
                    let a = PI * k as f64 / 16.0;
                    [a.cos(), a.sin()]
                })
                .collect()
        };
        for d in dirs {
            let rate = self.decay_rate(d);
            if rate <= 1e-9 {
                return Err(Error::Convergence {
                    context,
                    detail: format!(
                        "integrand does not decay along imaginary direction ({:.3}, {:.3}); rate {rate:.3e}",
                        d[0], d[1]
                    ),
                });
            }
        }
        Ok(())
    }

    /// Admissible interval for variable `axis` with the other coordinate
    /// held at `other`.
    fn interval(&self, axis: usize, other: f64) -> (f64, f64) {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let o = 1 - axis;
        for t in self.terms.iter().filter(|t| t.numerator) {
            let e = t.e[axis];
            let c = t.c + t.e[o] * other;
            if e > 0.0 {
                lo = lo.max(-c / e);
            } else if e < 0.0 {
                hi = hi.min(-c / e);
            } else if c <= 0.0 {
                // constant argument at or left of a pole: never admissible
                return (f64::INFINITY, f64::NEG_INFINITY);
            }
        }
        (lo, hi)
    }

    fn choose_contour_1d(&self, context: &'static str) -> Result<f64> {
        let (lo, hi) = self.interval(0, 0.0);
        if !(hi - lo > POLE_SEPARATION) {
            return Err(Error::Degenerate {
                context,
                detail: format!(
                    "no vertical contour separates the pole families (strip [{lo}, {hi}])"
                ),
            });
        }
        let width = hi - lo;
        let pad = if width.is_finite() {
            (1e-3 * width).min(1e-3)
        } else {
            1e-3
        };
        let (a, b) = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => (lo + pad, hi - pad),
            (true, false) => (lo + pad, lo + 80.0),
            (false, true) => (hi - 80.0, hi - pad),
            (false, false) => (-40.0, 40.0),
        };
        Ok(minimize_1d(|x| self.phi([x, 0.0], 0.0), a, b))
    }

    fn choose_contour_2d(&self, context: &'static str) -> Result<[f64; 2]> {
        // maximise the smallest normalised margin to find an interior point
        let margin = |p: [f64; 2]| -> f64 {
            self.terms
                .iter()
                .filter(|t| t.numerator)
                .map(|t| {
                    let n = (t.e[0] * t.e[0] + t.e[1] * t.e[1]).sqrt().max(1e-300);
                    (t.c + t.e[0] * p[0] + t.e[1] * p[1]) / n
                })
                .fold(f64::INFINITY, f64::min)
                .min(1.0)
        };
        let mut best = [0.0, 0.0];
        let mut best_m = margin(best);
        for start in [[0.0, 0.0], [0.5, 0.5], [-0.5, 0.5], [0.5, -0.5], [-0.5, -0.5]] {
            let p = nelder_mead(|p| -margin(p), start, 0.5, 400);
            let m = margin(p);
            if m > best_m {
                best = p;
                best_m = m;
            }
        }
        if !(best_m > POLE_SEPARATION) {
            return Err(Error::Degenerate {
                context,
                detail: "no pair of vertical contours separates the pole families".into(),
            });
        }
        let pad = (1e-3 * best_m).min(1e-3);
        let obj = |p: [f64; 2]| {
            if p[0].abs() > 60.0 || p[1].abs() > 60.0 {
                f64::INFINITY
            } else {
                self.phi(p, pad)
            }
        };
        let p = nelder_mead(obj, best, (0.25 * best_m).min(0.5), 600);
        Ok(if obj(p).is_finite() { p } else { best })
    }

    /// Evaluates the univariate integral.
    pub fn integrate_1d(&self, context: &'static str, cancel: Option<&CancelToken>) -> Result<Evaluation> {
        self.check_decay(context)?;
        let sigma = self.choose_contour_1d(context)?;
        let f = |t: f64| {
            self.value_at([Complex64::new(sigma, t), Complex64::new(0.0, 0.0)])
                .re
        };
        let env = |t: f64| {
            self.ln_at([Complex64::new(sigma, t), Complex64::new(0.0, 0.0)])
                .re
        };
        let (value, err) = integrate_half_line(f, env, context, cancel)?;
        Ok(Evaluation {
            value: value / PI,
            abs_error: err / PI,
            contour: [sigma, 0.0],
        })
    }

    /// Evaluates the bivariate integral by nested quadrature.
    pub fn integrate_2d(&self, context: &'static str, cancel: Option<&CancelToken>) -> Result<Evaluation> {
        self.check_decay(context)?;
        let sigma = self.choose_contour_2d(context)?;
        let mut inner_err = 0.0f64;
        let mut failure: Option<Error> = None;
        let outer = |u: f64| -> f64 {
            if failure.is_some() {
                return 0.0;
            }
            let f = |v: f64| {
                self.value_at([Complex64::new(sigma[0], u), Complex64::new(sigma[1], v)])
                    .re
            };
            let env = |v: f64| {
                self.ln_at([Complex64::new(sigma[0], u), Complex64::new(sigma[1], v)])
                    .re
            };
            match integrate_full_line(f, env, context, cancel) {
                Ok((val, e)) => {
                    inner_err += e;
                    val
                }
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        };
        // envelope for the outer variable: peak along the v = 0 line and
        // a few offsets
        let outer_env = |u: f64| {
            [0.0, -2.0, 2.0, -6.0, 6.0]
                .iter()
                .map(|&v| {
                    self.ln_at([Complex64::new(sigma[0], u), Complex64::new(sigma[1], v)])
                        .re
                })
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let res = integrate_half_line_with(outer, outer_env, context, cancel, 1e-10);
        if let Some(e) = failure {
            return Err(e);
        }
        let (value, err) = res?;
        let scale = 1.0 / (2.0 * PI * PI);
        Ok(Evaluation {
            value: value * scale,
            abs_error: err * scale,
            contour: sigma,
        })
    }
}

fn integrate_half_line<F, E>(f: F, env: E, context: &'static str, cancel: Option<&CancelToken>) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
    E: Fn(f64) -> f64,
{
    integrate_half_line_with(f, env, context, cancel, 1e-13)
}

/// ∫₀^∞ f on unit panels, stopping when the log-envelope falls far below its
/// running peak.
fn integrate_half_line_with<F, E>(
    mut f: F,
    env: E,
    context: &'static str,
    cancel: Option<&CancelToken>,
    rel_tol: f64,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
    E: Fn(f64) -> f64,
{
    let ln_tail = TAIL_RATIO.ln();
    let mut peak = env(0.0);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut t = 0.0;
    let width = 1.0;
    loop {
        if let Some(c) = cancel {
            if c.is_cancelled() {
                return Err(Error::Convergence {
                    context,
                    detail: "cancelled".into(),
                });
            }
        }
        let opts = QuadOptions {
            abs_tol: (1e-16 * peak.exp()).max(1e-300),
            rel_tol,
            max_intervals: 400,
            cancel: cancel.cloned(),
        };
        // panels deep in a cancelling tail can sit at the ln Γ noise floor;
        // retry those with a looser relative target
        let r = match integrate(&mut f, t, t + width, &opts) {
            Err(Error::Convergence { .. }) if rel_tol < 1e-10 && !cancelled(cancel) => integrate(
                &mut f,
                t,
                t + width,
                &QuadOptions {
                    rel_tol: 1e-10,
                    ..opts
                },
            )?,
            r => r?,
        };
        total += r.value;
        err += r.abs_error;
        if r.max_abs > 0.0 {
            peak = peak.max(r.max_abs.ln());
        }
        t += width;
        let here = env(t);
        peak = peak.max(here);
        if t >= 4.0 && here - peak < ln_tail && env(t + 0.5 * width) - peak < ln_tail {
            break;
        }
        if t > T_MAX {
            return Err(Error::Convergence {
                context,
                detail: format!("integrand has not decayed by |Im s| = {T_MAX}"),
            });
        }
    }
    Ok((total, err))
}

fn cancelled(cancel: Option<&CancelToken>) -> bool {
    cancel.is_some_and(CancelToken::is_cancelled)
}

fn integrate_full_line<F, E>(
    mut f: F,
    env: E,
    context: &'static str,
    cancel: Option<&CancelToken>,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
    E: Fn(f64) -> f64,
{
    let (a, ea) = integrate_half_line_with(&mut f, &env, context, cancel, 1e-11)?;
    let (b, eb) = integrate_half_line_with(|x| f(-x), |x| env(-x), context, cancel, 1e-11)?;
    Ok((a + b, ea + eb))
}

/// Grid search followed by golden-section refinement.
fn minimize_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let n = 240;
    let step = (b - a) / n as f64;
    let mut best = 0usize;
    let mut best_v = f64::INFINITY;
    for i in 0..=n {
        let v = f(a + step * i as f64);
        if v < best_v {
            best_v = v;
            best = i;
        }
    }
    if !best_v.is_finite() {
        return 0.5 * (a + b);
    }
    let mut lo = a + step * best.saturating_sub(1) as f64;
    let mut hi = (a + step * (best + 1) as f64).min(b);
    let g = 0.618_033_988_749_895;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    if f(x).is_finite() {
        x
    } else {
        a + step * best as f64
    }
}

fn nelder_mead<F: Fn([f64; 2]) -> f64>(f: F, start: [f64; 2], scale: f64, iters: usize) -> [f64; 2] {
    let mut pts = [
        start,
        [start[0] + scale, start[1]],
        [start[0], start[1] + scale],
    ];
    let mut vals = pts.map(&f);
    for _ in 0..iters {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        let (b, m, w) = (idx[0], idx[1], idx[2]);
        let c = [(pts[b][0] + pts[m][0]) / 2.0, (pts[b][1] + pts[m][1]) / 2.0];
        let lerp = |t: f64| [c[0] + t * (pts[w][0] - c[0]), c[1] + t * (pts[w][1] - c[1])];
        let r = lerp(-1.0);
        let fr = f(r);
        if fr < vals[b] {
            let e = lerp(-2.0);
            let fe = f(e);
            if fe < fr {
                pts[w] = e;
                vals[w] = fe;
            } else {
                pts[w] = r;
                vals[w] = fr;
            }
        } else if fr < vals[m] {
            pts[w] = r;
            vals[w] = fr;
        } else {
            let k = lerp(0.5);
            let fk = f(k);
            if fk < vals[w] {
                pts[w] = k;
                vals[w] = fk;
            } else {
                for &i in &[m, w] {
                    pts[i] = [
                        (pts[i][0] + pts[b][0]) / 2.0,
                        (pts[i][1] + pts[b][1]) / 2.0,
                    ];
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    let mut bi = 0;
    for i in 1..3 {
        if vals[i] < vals[bi] {
            bi = i;
        }
    }
    pts[bi]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_kernel() {
        // (1/2πi)∫ Γ(s) x^{-s} ds = e^{-x}
        for &x in &[0.01, 1.0, 7.5, 40.0] {
            let k = Kernel {
                terms: vec![GammaTerm::num(0.0, 1.0)],
                log_arg: [-f64::ln(x), 0.0],
                dims: 1,
            };
            let v = k.integrate_1d("test", None).unwrap().value;
            assert!(((v - (-x).exp()) / (-x).exp()).abs() < 1e-9, "x={x}: {v}");
        }
    }

    #[test]
    fn non_decaying_kernel_is_rejected() {
        let k = Kernel {
            terms: vec![GammaTerm::num(0.5, 1.0), GammaTerm::den(0.2, 1.0)],
            log_arg: [0.0, 0.0],
            dims: 1,
        };
        assert!(matches!(
            k.integrate_1d("test", None),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn overlapping_pole_families_are_rejected() {
        // Γ(s)Γ(-s) pole at 0 from both sides
        let k = Kernel {
            terms: vec![GammaTerm::num(0.0, 1.0), GammaTerm::num(0.0, -1.0)],
            log_arg: [0.0, 0.0],
            dims: 1,
        };
        assert!(matches!(
            k.integrate_1d("test", None),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn separable_bivariate_kernel() {
        // e^{-x} e^{-y}
        let (x, y) = (0.7, 2.5);
        let k = Kernel {
            terms: vec![GammaTerm::num2(0.0, 1.0, 0.0), GammaTerm::num2(0.0, 0.0, 1.0)],
            log_arg: [-f64::ln(x), -f64::ln(y)],
            dims: 2,
        };
        let v = k.integrate_2d("test", None).unwrap().value;
        let want = (-x - y).exp();
        assert!(((v - want) / want).abs() < 1e-7, "{v} vs {want}");
    }
}
