//! Stream-parallel Monte Carlo estimation of outage, error probability and
//! capacity.
//!
//! Samples are drawn in fixed-size blocks; block `i` uses a ChaCha8 stream
//! keyed by (seed, i). Block sums are merged in block order, so estimates do
//! not depend on the number of worker threads.

use crate::error::{Error, Result};
use crate::modulation::ModulationScheme;
use crate::relay::{sndr_fixed_gain, sndr_variable_gain, LinkConfig, RelayMode};
use crate::rf::sample_selected_snr;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const BLOCK: u64 = 1 << 16;
pub const MIN_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Metric {
    Outage { threshold: f64 },
    Bep { modulation: ModulationScheme },
    Capacity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub metric: Metric,
}

/// Neumaier-compensated accumulator of x and x².
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    sum: f64,
    comp: f64,
    sq: f64,
    sq_comp: f64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl Moments {
    fn push(&mut self, x: f64) {
        neumaier(&mut self.sum, &mut self.comp, x);
        neumaier(&mut self.sq, &mut self.sq_comp, x * x);
    }

    fn merge(&mut self, o: &Moments) {
        neumaier(&mut self.sum, &mut self.comp, o.sum + o.comp);
        neumaier(&mut self.sq, &mut self.sq_comp, o.sq + o.sq_comp);
    }

    fn mean_se(&self, n: u64) -> (f64, f64) {
        let nf = n as f64;
        let mean = (self.sum + self.comp) / nf;
        let var = ((self.sq + self.sq_comp) / nf - mean * mean).max(0.0) * nf / (nf - 1.0).max(1.0);
        (mean, (var / nf).sqrt())
    }
}

/// Per-sample functional of the SNDR.
pub fn functional(metric: &Metric, weight: f64, g: f64) -> f64 {
    match metric {
        Metric::Outage { threshold } => f64::from(u8::from(g < *threshold)),
        Metric::Bep { modulation } => modulation.conditional_bep(g),
        Metric::Capacity => (weight * g).ln_1p() / std::f64::consts::LN_2,
    }
}

/// Per-link constants needed to compose one SNDR draw.
#[derive(Debug, Clone, Copy)]
struct Composer {
    kappa: f64,
    mean_g1: f64,
    mode: RelayMode,
}

impl Composer {
    fn new(cfg: &LinkConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            kappa: cfg.kappa()?,
            mean_g1: cfg.mean_snr1(),
            mode: cfg.mode,
        })
    }

    fn draw(&self, cfg: &LinkConfig, rng: &mut ChaCha8Rng) -> f64 {
        let g1 = sample_selected_snr(&cfg.rf, rng);
        let g2 = cfg.fso.sample(rng);
        match self.mode {
            RelayMode::Fg => sndr_fixed_gain(g1, g2, self.kappa, self.mean_g1),
            RelayMode::Vg => sndr_variable_gain(g1, g2, self.kappa, false),
        }
    }
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn block_len(n: u64, block: u64) -> u64 {
    (n - block * BLOCK).min(BLOCK)
}

/// n end-to-end SNDR draws, identical for any thread count.
pub fn simulate_sndr(cfg: &LinkConfig, n: u64, seed: u64) -> Result<Vec<f64>> {
    let comp = Composer::new(cfg)?;
    let blocks = n.div_ceil(BLOCK);
    let chunks: Vec<Vec<f64>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            (0..block_len(n, b)).map(|_| comp.draw(cfg, &mut rng)).collect()
        })
        .collect();
    Ok(chunks.concat())
}

/// Estimates every metric in one pass over the same n draws.
pub fn estimate_metrics(cfg: &LinkConfig, metrics: &[Metric], n: u64, seed: u64) -> Result<Vec<MetricEstimate>> {
    if n < MIN_SAMPLES {
        return Err(Error::invalid("samples", format!("need at least {MIN_SAMPLES} samples")));
    }
    for m in metrics {
        if let Metric::Bep { modulation } = m {
            modulation.validate(cfg.fso.detection)?;
        }
    }
    let comp = Composer::new(cfg)?;
    let weight = cfg.fso.detection.capacity_weight();
    let blocks = n.div_ceil(BLOCK);
    let per_block: Vec<Vec<Moments>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let mut acc = vec![Moments::default(); metrics.len()];
            for _ in 0..block_len(n, b) {
                let g = comp.draw(cfg, &mut rng);
                for (a, m) in acc.iter_mut().zip(metrics) {
                    a.push(functional(m, weight, g));
                }
            }
            acc
        })
        .collect();
    Ok(merge(&per_block, metrics, n, seed))
}

fn merge(per_block: &[Vec<Moments>], metrics: &[Metric], n: u64, seed: u64) -> Vec<MetricEstimate> {
    metrics
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut total = Moments::default();
            for b in per_block {
                total.merge(&b[i]);
            }
            let (value, std_error) = total.mean_se(n);
            MetricEstimate {
                value,
                std_error,
                n_samples: n,
                seed,
                metric: *m,
            }
        })
        .collect()
}

pub fn estimate_metric(cfg: &LinkConfig, metric: Metric, n: u64, seed: u64) -> Result<MetricEstimate> {
    Ok(estimate_metrics(cfg, &[metric], n, seed)?.remove(0))
}

/// Estimate from given SNDR samples.
pub fn estimate_from_samples(samples: &[f64], metric: Metric, weight: f64, seed: u64) -> MetricEstimate {
    let mut acc = Moments::default();
    for &g in samples {
        acc.push(functional(&metric, weight, g));
    }
    let (value, std_error) = acc.mean_se(samples.len() as u64);
    MetricEstimate {
        value,
        std_error,
        n_samples: samples.len() as u64,
        seed,
        metric,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::elementary::erfc;

    #[test]
    fn forced_outage() {
        let e = estimate_from_samples(&[1.0; 100], Metric::Outage { threshold: 2.0 }, 1.0, 0);
        assert_eq!((e.value, e.std_error), (1.0, 0.0));
    }

    #[test]
    fn constant_capacity() {
        let e = estimate_from_samples(&[3.0; 50], Metric::Capacity, 1.0, 0);
        assert!((e.value - 2.0).abs() < 1e-15);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn constant_bep_is_half_erfc() {
        let m = Metric::Bep {
            modulation: ModulationScheme::Bpsk,
        };
        let e = estimate_from_samples(&[1.7; 10], m, 1.0, 0);
        assert!((e.value - 0.5 * erfc(1.7f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn compensated_merge() {
        let mut a = Moments::default();
        for _ in 0..1000 {
            a.push(0.1);
        }
        let mut b = Moments::default();
        b.merge(&a);
        b.merge(&a);
        assert!((b.mean_se(2000).0 - 0.1).abs() < 1e-16);
    }
}
