//! Real-valued transcendental functions used by the channel and amplifier
//! models.
//!
//! `erf`, `erfc`, `J0` and the real gamma function come from `libm` (a port of
//! musl's implementations, accurate to a few ulp). The exponential integral and
//! the upper incomplete gamma function are evaluated here with power series
//! and modified-Lentz continued fractions.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

/// Selector for [`eval_elementary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Erf,
    Erfc,
    /// Exponential integral Ei(x), x ≠ 0.
    Ei,
    /// Bessel function of the first kind, order zero.
    J0,
    /// Γ(a, x); takes `[a, x]`.
    UpperIncompleteGamma,
    /// Q(x) = P[N(0,1) > x].
    GaussianQ,
}

/// Dispatches to the named function. `args` holds one value except for the
/// incomplete gamma function, which takes `[a, x]`.
pub fn eval_elementary(kind: Elementary, args: &[f64]) -> Result<f64> {
    let want = match kind {
        Elementary::UpperIncompleteGamma => 2,
        _ => 1,
    };
    if args.len() != want {
        return Err(Error::invalid(
            "args",
            format!("{kind:?} takes {want} argument(s), got {}", args.len()),
        ));
    }
    if let Some(bad) = args.iter().find(|v| v.is_nan()) {
        return Err(Error::Domain {
            function: "eval_elementary",
            value: *bad,
            reason: "NaN argument",
        });
    }
    match kind {
        Elementary::Erf => Ok(erf(args[0])),
        Elementary::Erfc => Ok(erfc(args[0])),
        Elementary::Ei => ei(args[0]),
        Elementary::J0 => Ok(bessel_j0(args[0])),
        Elementary::UpperIncompleteGamma => upper_gamma(args[0], args[1]),
        Elementary::GaussianQ => Ok(gaussian_q(args[0])),
    }
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

pub fn bessel_j0(x: f64) -> f64 {
    libm::j0(x)
}

pub fn gaussian_q(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Γ(x) for real x (poles at non-positive integers give ±inf).
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// Binomial coefficient as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// E₁(x) = ∫ₓ^∞ e^{-t}/t dt for x > 0.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "E1",
            value: x,
            reason: "requires x > 0",
        });
    }
    if x <= 1.0 {
        // -γ - ln x - Σ (-x)^k / (k k!)
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..MAX_ITER {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < EPS * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() - sum)
    } else {
        Ok((-x).exp() * e1_scaled_cf(x))
    }
}

/// e^x E₁(x) for x ≥ 1 via the continued fraction
/// 1/(x+1- 1/(x+3- 4/(x+5- ...))).
fn e1_scaled_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Exponential integral Ei(x) (Cauchy principal value for x > 0).
pub fn ei(x: f64) -> Result<f64> {
    if x == 0.0 || x.is_nan() {
        return Err(Error::Domain {
            function: "Ei",
            value: x,
            reason: "Ei is undefined at 0",
        });
    }
    if x < 0.0 {
        return Ok(-exp_integral_e1(-x)?);
    }
    if x < 40.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..MAX_ITER {
            term *= x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add < EPS * sum {
                break;
            }
        }
        Ok(EULER_GAMMA + x.ln() + sum)
    } else {
        // asymptotic: e^x/x Σ k!/x^k, truncated at the smallest term
        let mut sum = 1.0;
        let mut term = 1.0;
        for k in 1..60 {
            let next = term * k as f64 / x;
            if next > term {
                break;
            }
            term = next;
            sum += term;
            if term < EPS * sum {
                break;
            }
        }
        Ok(x.exp() / x * sum)
    }
}

/// e^x · Ei(-x) for x > 0, evaluated without overflow for large x.
pub fn exp_times_ei_neg(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "exp_times_ei_neg",
            value: x,
            reason: "requires x > 0",
        });
    }
    if x <= 1.0 {
        Ok(x.exp() * ei(-x)?)
    } else {
        Ok(-e1_scaled_cf(x))
    }
}

/// Upper incomplete gamma function Γ(a, x) for a ≥ 0, x ≥ 0
/// (x > 0 when a = 0).
pub fn upper_gamma(a: f64, x: f64) -> Result<f64> {
    if a < 0.0 || x < 0.0 || a.is_nan() || x.is_nan() {
        return Err(Error::Domain {
            function: "upper_incomplete_gamma",
            value: if x < 0.0 { x } else { a },
            reason: "requires a >= 0 and x >= 0",
        });
    }
    if a == 0.0 {
        return exp_integral_e1(x);
    }
    if x == 0.0 {
        return Ok(gamma(a));
    }
    if x < a + 1.0 {
        Ok(gamma(a) - lower_gamma_series(a, x))
    } else {
        Ok(upper_gamma_cf(a, x))
    }
}

/// γ(a, x) = x^a e^{-x} Σ x^k / (a (a+1) ... (a+k)).
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut del = 1.0 / a;
    let mut sum = del;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * (a * x.ln() - x).exp()
}

fn upper_gamma_cf(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    (a * x.ln() - x).exp() * h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(eval_elementary(Elementary::Erf, &[0.0]).unwrap(), 0.0);
        assert_eq!(eval_elementary(Elementary::J0, &[0.0]).unwrap(), 1.0);
        let g = eval_elementary(Elementary::UpperIncompleteGamma, &[0.5, 0.0]).unwrap();
        assert!(rel(g, std::f64::consts::PI.sqrt()) < 1e-14);
    }

    #[test]
    fn domain_errors_are_explicit() {
        assert!(matches!(ei(0.0), Err(Error::Domain { .. })));
        assert!(matches!(upper_gamma(0.5, -1.0), Err(Error::Domain { .. })));
        assert!(eval_elementary(Elementary::Erf, &[f64::NAN]).is_err());
        assert!(eval_elementary(Elementary::UpperIncompleteGamma, &[1.0]).is_err());
    }

    #[test]
    fn ei_reference_values() {
        // Abramowitz & Stegun tables
        assert!(rel(ei(1.0).unwrap(), 1.895_117_816_355_936_8) < 1e-13);
        assert!(rel(ei(-1.0).unwrap(), -0.219_383_934_395_520_27) < 1e-13);
        assert!(rel(ei(-10.0).unwrap(), -4.156_968_929_685_324e-6) < 1e-12);
        assert!(rel(ei(50.0).unwrap(), 1.058_563_689_713_169e20) < 1e-12);
        assert!(rel(ei(10.0).unwrap(), 2_492.228_976_241_877_8) < 1e-13);
    }

    #[test]
    fn incomplete_gamma_matches_erfc_and_exponential() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        for &x in &[1e-4, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0] {
            let g = upper_gamma(0.5, x).unwrap();
            assert!(rel(g, sqrt_pi * erfc(x.sqrt())) < 1e-12, "x={x}");
            let g1 = upper_gamma(1.0, x).unwrap();
            assert!(rel(g1, (-x).exp()) < 1e-12, "x={x}");
            // Γ(3, x) = e^{-x}(x² + 2x + 2)
            let g3 = upper_gamma(3.0, x).unwrap();
            assert!(rel(g3, (-x).exp() * (x * x + 2.0 * x + 2.0)) < 1e-12, "x={x}");
        }
    }

    #[test]
    fn scaled_ei_is_continuous_across_branch() {
        let below = exp_times_ei_neg(1.0 - 1e-12).unwrap();
        let above = exp_times_ei_neg(1.0 + 1e-12).unwrap();
        assert!((below - above).abs() < 1e-10);
        assert!(rel(exp_times_ei_neg(10.0).unwrap(), 10f64.exp() * ei(-10.0).unwrap()) < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
