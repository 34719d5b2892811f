//! Rayleigh RF hop with partial relay selection under outdated CSI.

use crate::error::{Error, Result};
use crate::specfun::elementary::{bessel_j0, binomial, gamma};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// First-hop parameters: `n_relays` relays, the relay of rank `rank`
/// (1 = worst, N = best) is selected on CSI correlated with coefficient
/// `rho` to the current channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrsRfParams {
    pub n_relays: u32,
    pub rank: u32,
    pub rho: f64,
    /// Average SNR of one unsorted branch (linear).
    pub snr_avg: f64,
}

impl PrsRfParams {
    pub fn new(n_relays: u32, rank: u32, rho: f64, snr_avg: f64) -> Result<Self> {
        let p = Self {
            n_relays,
            rank,
            rho,
            snr_avg,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_relays == 0 {
            return Err(Error::invalid("n_relays", "need at least one relay"));
        }
        if self.rank == 0 || self.rank > self.n_relays {
            return Err(Error::invalid(
                "rank",
                format!("rank {} outside 1..={}", self.rank, self.n_relays),
            ));
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(Error::invalid("rho", format!("{} not in [0, 1]", self.rho)));
        }
        if !(self.snr_avg > 0.0 && self.snr_avg.is_finite()) {
            return Err(Error::invalid("snr_avg", "must be positive and finite"));
        }
        Ok(())
    }

    /// Terms (weight, rate-denominator, n) of the exponential mixture.
    ///
    /// weight_n = m C(N,m) (−1)^n C(m−1,n),
    /// the n-th exponential has mean θ_n / (N−m+n+1) with
    /// θ_n = [(N−m+n)(1−ρ)+1] γ̄₁.
    pub(crate) fn terms(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let (n_r, m) = (self.n_relays, self.rank);
        let lead = f64::from(m) * binomial(n_r, m);
        (0..m).map(move |n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let k = f64::from(n_r - m + n);
            let theta = (k * (1.0 - self.rho) + 1.0) * self.snr_avg;
            (lead * sign * binomial(m - 1, n), theta, k + 1.0)
        })
    }

    /// β_n = (N−m+n+1)/θ_n for each mixture term, in order of n.
    pub fn betas(&self) -> Vec<f64> {
        self.terms().map(|(_, theta, k1)| k1 / theta).collect()
    }
}

/// ρ = J0(2π f_d T_d).
pub fn jakes_correlation(doppler_hz: f64, delay_s: f64) -> f64 {
    bessel_j0(2.0 * std::f64::consts::PI * doppler_hz * delay_s)
}

pub fn prs_pdf(x: f64, p: &PrsRfParams) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let v: f64 = p
        .terms()
        .map(|(w, theta, k1)| w / theta * (-k1 * x / theta).exp())
        .sum();
    v.max(0.0)
}

pub fn prs_cdf(x: f64, p: &PrsRfParams) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    // Σ w/(k1) (1 − e^{-k1 x/θ}) written with expm1 so that small x keeps
    // full relative precision
    let v: f64 = p
        .terms()
        .map(|(w, theta, k1)| -w / k1 * (-k1 * x / theta).exp_m1())
        .sum();
    v.clamp(0.0, 1.0)
}

/// E[γ₁^t] for t ≥ 0.
pub fn prs_moment(t: f64, p: &PrsRfParams) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain {
            function: "prs_moment",
            value: t,
            reason: "moment order must be non-negative",
        });
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let g = gamma(t + 1.0);
    Ok(p
        .terms()
        .map(|(w, theta, k1)| w * g * theta.powf(t) / k1.powf(t + 1.0))
        .sum())
}

fn cn01<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    (re * std::f64::consts::FRAC_1_SQRT_2, im * std::f64::consts::FRAC_1_SQRT_2)
}

/// Draws the current SNR of the relay ranked `rank` on outdated CSI.
pub fn sample_selected_snr<R: Rng + ?Sized>(p: &PrsRfParams, rng: &mut R) -> f64 {
    let n = p.n_relays as usize;
    let mut gains: Vec<(f64, (f64, f64))> = (0..n)
        .map(|_| {
            let h = cn01(rng);
            (h.0 * h.0 + h.1 * h.1, h)
        })
        .collect();
    // stable sort keeps the lowest index first on ties
    gains.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (_, hat) = gains[p.rank as usize - 1];
    let w = cn01(rng);
    let (a, b) = (p.rho.sqrt(), (1.0 - p.rho).sqrt());
    let re = a * hat.0 + b * w.0;
    let im = a * hat.1 + b * w.1;
    p.snr_avg * (re * re + im * im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_relay_is_exponential() {
        let p = PrsRfParams::new(1, 1, 0.3, 2.0).unwrap();
        for &x in &[0.0, 0.5, 3.0] {
            assert!((prs_pdf(x, &p) - 0.5 * (-x / 2.0f64).exp()).abs() < 1e-15);
            assert!((prs_cdf(x, &p) - (1.0 - (-x / 2.0f64).exp())).abs() < 1e-15);
        }
        assert!((prs_moment(1.0, &p).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cdf_starts_at_zero_for_all_orders() {
        // m C(N,m) Σ (−1)^n C(m−1,n)/(N−m+n+1) = 1
        for n in 1..=10 {
            for m in 1..=n {
                let p = PrsRfParams::new(n, m, 0.5, 1.0).unwrap();
                let s: f64 = p.terms().map(|(w, _, k1)| w / k1).sum();
                assert!((s - 1.0).abs() < 1e-10, "N={n} m={m}: {s}");
            }
        }
    }

    #[test]
    fn perfect_csi_best_of_five() {
        let p = PrsRfParams::new(5, 5, 1.0, 1.0).unwrap();
        let want = (1.0 - (-1f64).exp()).powi(5);
        assert!((prs_cdf(1.0, &p) - want).abs() < 1e-12);
        assert!((want - 0.100_925).abs() < 1e-6);
    }

    #[test]
    fn harmonic_mean_of_best_of_two() {
        let p = PrsRfParams::new(2, 2, 1.0, 3.0).unwrap();
        assert!((prs_moment(1.0, &p).unwrap() - 4.5).abs() < 1e-12);
    }

    #[test]
    fn jakes_values() {
        assert_eq!(jakes_correlation(0.0, 1.0), 1.0);
        // power series Σ (−x²/4)^k / (k!)²
        let x = 2.0 * std::f64::consts::PI * 0.1;
        let mut term = 1.0;
        let mut series = 1.0;
        for k in 1..30 {
            term *= -x * x / 4.0 / (k * k) as f64;
            series += term;
        }
        assert!((jakes_correlation(100.0, 1e-3) - series).abs() < 1e-14);
        assert!((series - 0.903_712).abs() < 1e-6);
        assert!(jakes_correlation(2.404_825_557_695_773 / (2.0 * std::f64::consts::PI), 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_rank() {
        assert!(PrsRfParams::new(3, 4, 0.5, 1.0).is_err());
        assert!(PrsRfParams::new(3, 0, 0.5, 1.0).is_err());
        assert!(PrsRfParams::new(3, 1, 1.5, 1.0).is_err());
    }
}
