//! Complex log-gamma for Mellin–Barnes integrands.
//!
//! Only `exp(ln_gamma(z))` is ever used, so the imaginary part is returned on
//! whatever branch is convenient.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(z) for complex z away from the poles.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let ln_pi = Complex64::new(PI.ln(), 0.0);
        ln_pi - ln_sin_pi(z) - ln_gamma_right(Complex64::new(1.0, 0.0) - z)
    } else {
        ln_gamma_right(z)
    }
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// ln sin(πz) without overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let ln_2i = Complex64::new(2f64.ln(), PI / 2.0);
    if z.im.abs() < 5.0 {
        (z * PI).sin().ln()
    } else if z.im > 0.0 {
        // sin(πz) = e^{-iπz} (e^{2iπz} - 1) / (2i)
        -i * PI * z + ((2.0 * i * PI * z).exp() - 1.0).ln() - ln_2i
    } else {
        // sin(πz) = e^{iπz} (1 - e^{-2iπz}) / (2i)
        i * PI * z + (1.0 - (-2.0 * i * PI * z).exp()).ln() - ln_2i
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::elementary;

    #[test]
    fn matches_real_gamma_on_the_axis() {
        for &x in &[0.1, 0.5, 1.0, 2.5, 7.3, 30.0, -0.5, -2.7, -10.3] {
            let g = ln_gamma(Complex64::new(x, 0.0)).exp();
            let r = elementary::gamma(x);
            assert!(((g.re - r) / r).abs() < 1e-12, "x={x}: {} vs {r}", g.re);
            assert!(g.im.abs() < 1e-10 * r.abs());
        }
    }

    #[test]
    fn recurrence_and_reflection_off_axis() {
        for &(a, b) in &[(0.3, 2.0), (-3.2, 7.5), (1.7, -40.0), (0.5, 120.0), (-20.4, -15.0)] {
            let z = Complex64::new(a, b);
            // Γ(z+1) = z Γ(z)
            let lhs = ln_gamma(z + 1.0);
            let rhs = ln_gamma(z) + z.ln();
            let d = (lhs - rhs).exp();
            assert!((d - 1.0).norm() < 1e-11, "z={z}: {d}");
        }
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        for &y in &[0.5, 3.0, 10.0, 60.0] {
            let lg = ln_gamma(Complex64::new(0.5, y));
            let want = 0.5 * (PI.ln() - (PI * y).cosh().ln());
            assert!((lg.re - want).abs() < 1e-11, "y={y}");
        }
    }
}
