//! Monte-Carlo simulation of the `M`-shot threshold test.
//!
//! Each trial draws the sum of `M` capped photon counts under one hypothesis;
//! the decision compares the shot average with a threshold `R_th`. The
//! estimated error is half of `min_{R_th}[Pr(Ō > R_th | H0) + Pr(Ō ≤ R_th | H1)]`
//! (equal priors); the unnormalized sum is reported too.
//!
//! Randomness is ChaCha8 seeded from the user seed, with an independent stream
//! per `(trial, hypothesis)`. Results are bit-identical for serial and parallel
//! execution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Gamma, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{require, QiError, Result};
use crate::smpc_receiver::{geometric_q, pnr_moments_from_q, PnrObservableStats, Resolution};

/// Number of evenly spaced thresholds scanned between the hypothesis means.
pub const THRESHOLD_POINTS: usize = 101;

/// z-score of the two-sided 95% binomial interval.
const Z95: f64 = 1.959_963_984_540_054;

/// Geometric photon statistics of the detector mode under each hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableSource {
    pub q0: f64,
    pub q1: f64,
    pub resolution: Resolution,
}

impl ObservableSource {
    pub fn new(q0: f64, q1: f64, resolution: Resolution) -> Result<Self> {
        require((0.0..1.0).contains(&q0), "q0", q0, "geometric parameter must lie in [0, 1)")?;
        require((0.0..1.0).contains(&q1), "q1", q1, "geometric parameter must lie in [0, 1)")?;
        Ok(Self { q0, q1, resolution })
    }

    pub fn from_stats(stats: &PnrObservableStats, resolution: Resolution) -> Result<Self> {
        Self::new(geometric_q(stats.n_c0), geometric_q(stats.n_c1), resolution)
    }

    /// Analytic per-shot means `(H0, H1)`.
    pub fn means(&self) -> (f64, f64) {
        let m0 = pnr_moments_from_q(self.q0, self.resolution).expect("validated").0;
        let m1 = pnr_moments_from_q(self.q1, self.resolution).expect("validated").0;
        (m0, m1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionExperiment {
    pub shots_m: u64,
    pub trials: u64,
    pub seed: u64,
    pub source: ObservableSource,
}

impl DetectionExperiment {
    pub fn new(shots_m: u64, trials: u64, seed: u64, source: ObservableSource) -> Result<Self> {
        require(shots_m >= 1, "shots_m", shots_m as f64, "need at least one shot")?;
        require(trials >= 1, "trials", trials as f64, "need at least one trial")?;
        Ok(Self {
            shots_m,
            trials,
            seed,
            source,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimate {
    /// Equal-prior error probability (half the minimized sum).
    pub p_err: f64,
    /// `Pr(false alarm) + Pr(miss)` at the chosen threshold.
    pub raw_sum: f64,
    /// Half-width of the 95% binomial interval on `p_err`.
    pub ci_halfwidth: f64,
    pub threshold_used: f64,
    /// Hypothesis means coincide; `p_err` is pinned to ½.
    pub degenerate: bool,
}

/// One capped photon count, drawn by inverting the geometric CDF.
pub fn sample_observable<R: Rng + ?Sized>(q: f64, k: Resolution, rng: &mut R) -> u64 {
    let n = if q <= 0.0 {
        0
    } else {
        // 1 − U lies in (0, 1], so the log is finite.
        let u: f64 = 1.0 - rng.random::<f64>();
        (u.ln() / q.ln()).floor() as u64
    };
    match k.cap() {
        Some(cap) => n.min(cap as u64),
        None => n,
    }
}

/// Sum of `shots` independent capped photon counts.
///
/// Counts per level are drawn with sequential binomials: given at least `j`
/// photons, a geometric count equals `j` with probability `1 − q` at every
/// level. Unbounded resolution draws a negative binomial as a Gamma–Poisson
/// mixture. Same distribution as summing [`sample_observable`] draws.
pub fn sample_shot_sum<R: Rng + ?Sized>(q: f64, k: Resolution, shots: u64, rng: &mut R) -> u64 {
    if q <= 0.0 || shots == 0 {
        return 0;
    }
    match k.cap() {
        Some(cap) => {
            let mut remaining = shots;
            let mut total = 0u64;
            let stop = 1.0 - q;
            for level in 0..cap as u64 {
                if remaining == 0 {
                    break;
                }
                let here = Binomial::new(remaining, stop).expect("valid binomial").sample(rng);
                total += level * here;
                remaining -= here;
            }
            total + cap as u64 * remaining
        }
        None => {
            let rate = Gamma::new(shots as f64, q / (1.0 - q)).expect("valid gamma").sample(rng);
            if rate <= 0.0 {
                0
            } else {
                Poisson::new(rate).expect("valid poisson").sample(rng) as u64
            }
        }
    }
}

fn trial_rng(seed: u64, trial: u64, hypothesis: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial * 2 + hypothesis);
    rng
}

/// Shot sums for every trial of one hypothesis, in trial order.
pub fn simulate_sums(exp: &DetectionExperiment, hypothesis: u64) -> Vec<u64> {
    let q = if hypothesis == 0 { exp.source.q0 } else { exp.source.q1 };
    (0..exp.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(exp.seed, t, hypothesis);
            sample_shot_sum(q, exp.source.resolution, exp.shots_m, &mut rng)
        })
        .collect()
}

pub fn estimate_error_probability(exp: &DetectionExperiment) -> Result<ErrorEstimate> {
    let (mean0, mean1) = exp.source.means();
    if mean0 == mean1 {
        return Ok(ErrorEstimate {
            p_err: 0.5,
            raw_sum: 1.0,
            ci_halfwidth: 0.0,
            threshold_used: mean0,
            degenerate: true,
        });
    }

    let mut absent = simulate_sums(exp, 0);
    let mut present = simulate_sums(exp, 1);
    absent.sort_unstable();
    present.sort_unstable();

    let trials = exp.trials as f64;
    let shots = exp.shots_m as f64;
    let mut best: Option<(f64, f64, f64, f64)> = None;
    for i in 0..THRESHOLD_POINTS {
        let t = mean0 + (mean1 - mean0) * i as f64 / (THRESHOLD_POINTS - 1) as f64;
        let cut = t * shots;
        // Ō > t  ⇔  sum > t·M
        let false_alarm = (absent.len() - absent.partition_point(|&s| (s as f64) <= cut)) as f64 / trials;
        let miss = present.partition_point(|&s| (s as f64) <= cut) as f64 / trials;
        let sum = false_alarm + miss;
        if best.is_none_or(|(b, ..)| sum < b) {
            best = Some((sum, t, false_alarm, miss));
        }
    }
    let (raw_sum, threshold_used, fa, miss) = best.expect("at least one threshold");
    let var = (fa * (1.0 - fa) + miss * (1.0 - miss)) / trials;
    Ok(ErrorEstimate {
        p_err: 0.5 * raw_sum,
        raw_sum,
        ci_halfwidth: 0.5 * Z95 * var.sqrt(),
        threshold_used,
        degenerate: false,
    })
}

/// `exp(−SNR·M)`: exponent-only prediction, no prefactor.
pub fn chernoff_prediction(snr: f64, m: u64) -> f64 {
    (-snr * m as f64).exp()
}

/// Least-squares slope of `ln p` against `M`.
pub fn exponent_slope(points: &[(u64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(QiError::Degenerate("need at least two (M, p) points".into()));
    }
    if let Some(&(_, p)) = points.iter().find(|(_, p)| !(*p > 0.0)) {
        return Err(QiError::Degenerate(format!("cannot take log of p = {p}")));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(m, _)| m as f64).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, p)| p.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(QiError::Degenerate("all M values coincide".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn k(n: u32) -> Resolution {
        Resolution::bounded(n).unwrap()
    }

    fn empirical(q: f64, res: Resolution, n: usize, seed: u64) -> (f64, f64) {
        let mut r = rng(seed);
        let xs: Vec<f64> = (0..n).map(|_| sample_observable(q, res, &mut r) as f64).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0);
        (mean, var)
    }

    #[test]
    fn zero_q_never_clicks() {
        let mut r = rng(1);
        assert!((0..1000).all(|_| sample_observable(0.0, k(3), &mut r) == 0));
        assert_eq!(sample_shot_sum(0.0, Resolution::Unbounded, 1000, &mut r), 0);
    }

    #[test]
    fn on_off_sample_mean() {
        let q = 1.0 / 11.0;
        let n = 1_000_000;
        let (mean, _) = empirical(q, Resolution::ON_OFF, n, 7);
        let sigma = (q * (1.0 - q) / n as f64).sqrt();
        assert!((mean - q).abs() < 3.0 * sigma, "{mean}");
    }

    #[test]
    fn two_cap_sample_variance() {
        let n = 1_000_000;
        let (_, var) = empirical(0.5, k(2), n, 11);
        // fourth central moment of min(n, 2) at q = 1/2 bounds the spread of the estimator
        let mu4 = 0.5 * 0.5625 * 0.5625 + 0.25 * 0.0625 + 0.25 * 1.5625 * 1.5625;
        let sigma = ((mu4 - 0.6875f64 * 0.6875) / n as f64).sqrt();
        assert!((var - 0.6875).abs() < 3.0 * sigma, "{var}");
    }

    #[test]
    fn shot_sums_match_moments() {
        // sums of 1000 shots vs M·mean and M·variance, several resolutions
        for res in [Resolution::ON_OFF, k(3), Resolution::Unbounded] {
            let q = 0.2;
            let (mu, var) = pnr_moments_from_q(q, res).unwrap();
            let mut r = rng(3);
            let n = 20_000;
            let sums: Vec<f64> = (0..n).map(|_| sample_shot_sum(q, res, 1000, &mut r) as f64).collect();
            let mean = sums.iter().sum::<f64>() / n as f64;
            let sv = sums.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n as f64 - 1.0);
            let se = (1000.0 * var / n as f64).sqrt();
            assert!((mean - 1000.0 * mu).abs() < 4.0 * se, "{res}: {mean}");
            assert!((sv / (1000.0 * var) - 1.0).abs() < 0.05, "{res}: {sv}");
        }
    }

    #[test]
    fn indistinguishable_hypotheses() {
        let src = ObservableSource::new(0.3, 0.3, k(2)).unwrap();
        let est = estimate_error_probability(&DetectionExperiment::new(10, 100, 1, src).unwrap()).unwrap();
        assert_eq!(est.p_err, 0.5);
        assert!(est.degenerate);
    }

    #[test]
    fn noiseless_absent_hypothesis() {
        let q1 = 0.6;
        let src = ObservableSource::new(0.0, q1, Resolution::ON_OFF).unwrap();
        let trials = 200_000;
        let est = estimate_error_probability(&DetectionExperiment::new(1, trials, 5, src).unwrap()).unwrap();
        let expected = 0.5 * (1.0 - q1);
        assert!((est.p_err - expected).abs() < 3.0 * est.ci_halfwidth.max(1e-3), "{}", est.p_err);
        assert_eq!(est.threshold_used, 0.0);
    }

    #[test]
    fn bit_identical_reruns() {
        let src = ObservableSource::new(0.01, 0.012, Resolution::ON_OFF).unwrap();
        let exp = DetectionExperiment::new(5_000, 2_000, 42, src).unwrap();
        let a = estimate_error_probability(&exp).unwrap();
        let b = estimate_error_probability(&exp).unwrap();
        assert_eq!(a.p_err.to_bits(), b.p_err.to_bits());
        assert_eq!(a.threshold_used.to_bits(), b.threshold_used.to_bits());
        let serial: Vec<u64> = (0..exp.trials)
            .map(|t| sample_shot_sum(src.q0, src.resolution, exp.shots_m, &mut trial_rng(42, t, 0)))
            .collect();
        assert_eq!(serial, simulate_sums(&exp, 0));
    }

    #[test]
    fn error_decreases_with_shots() {
        let src = ObservableSource::new(0.01, 0.013, Resolution::ON_OFF).unwrap();
        let mut last: Option<ErrorEstimate> = None;
        for m in [500, 1000, 2000, 4000] {
            let est = estimate_error_probability(&DetectionExperiment::new(m, 20_000, 9, src).unwrap()).unwrap();
            if let Some(prev) = last {
                assert!(est.p_err <= prev.p_err + 2.0 * (est.ci_halfwidth + prev.ci_halfwidth));
            }
            last = Some(est);
        }
    }

    #[test]
    fn chernoff_values() {
        assert_eq!(chernoff_prediction(0.0, 1_000_000), 1.0);
        assert!((chernoff_prediction(1e-4, 10_000) - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn slope_of_exact_exponential() {
        let pts: Vec<(u64, f64)> = [10u64, 20, 40].iter().map(|&m| (m, 0.3 * (-0.05 * m as f64).exp())).collect();
        assert!((exponent_slope(&pts).unwrap() + 0.05).abs() < 1e-12);
        assert!(exponent_slope(&pts[..1]).is_err());
    }
}
