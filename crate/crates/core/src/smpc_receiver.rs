//! Single-mode phase-conjugate (SMPC) receiver.
//!
//! The returned signal is frequency-converted by an EOM converter, mixed with
//! the stored idler on a beam splitter of low reflectivity `R`, and the single
//! output mode is counted by a photon-number-resolving detector that saturates
//! at `K` photons. The detector mode is treated as thermal (geometric photon
//! statistics) under both hypotheses, with the cross term only shifting its
//! mean.

use std::num::NonZeroU32;

use serde::{Deserialize, Serialize};

use crate::advantage_metrics::{gamma_ci, snr, HypothesisStats};
use crate::eom_devices::EomCoefficients;
use crate::error::{require, QiError, Result};
use crate::quantum_states::TwoModeMoments;
use crate::scene::{MemoryLine, TargetChannel};

/// Moments of the two beam-splitter inputs: converted signal `c_S` and stored
/// idler `c_I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConverterOutputMoments {
    pub n_cs: f64,
    pub n_ci: f64,
    /// `<c_S† c_I + c_I† c_S> / 2`
    pub n_csi: f64,
}

/// Photon-count cap of the detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Resolution {
    Bounded(NonZeroU32),
    Unbounded,
}

impl Resolution {
    /// On-off detection.
    pub const ON_OFF: Resolution = Resolution::Bounded(NonZeroU32::MIN);

    pub fn bounded(k: u32) -> Result<Self> {
        NonZeroU32::new(k)
            .map(Resolution::Bounded)
            .ok_or(QiError::Domain {
                name: "resolution",
                value: 0.0,
                reason: "resolution must be >= 1",
            })
    }

    pub fn cap(&self) -> Option<u32> {
        match self {
            Resolution::Bounded(k) => Some(k.get()),
            Resolution::Unbounded => None,
        }
    }
}

impl std::fmt::Display for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Resolution::Bounded(k) => write!(f, "{k}"),
            Resolution::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmpcReceiver {
    reflectivity: f64,
    pub resolution: Resolution,
}

impl SmpcReceiver {
    pub fn new(reflectivity: f64, resolution: Resolution) -> Result<Self> {
        require(
            (0.0..=1.0).contains(&reflectivity),
            "reflectivity",
            reflectivity,
            "reflectivity must lie in [0, 1]",
        )?;
        Ok(Self {
            reflectivity,
            resolution,
        })
    }

    /// Receiver using [`optimal_reflectivity`] for the given inputs.
    pub fn tuned(m: &ConverterOutputMoments, resolution: Resolution) -> Result<Self> {
        Self::new(optimal_reflectivity(m)?, resolution)
    }

    pub fn reflectivity(&self) -> f64 {
        self.reflectivity
    }
}

/// Per-hypothesis observable statistics plus the detector-mode means they
/// came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PnrObservableStats {
    pub stats: HypothesisStats,
    pub n_c0: f64,
    pub n_c1: f64,
}

/// Moments entering the receiver beam splitter. `conv` are the converter's
/// coefficients; `input` is the transmitted state.
pub fn converter_output_moments(
    conv: &EomCoefficients,
    n_m_thermal: f64,
    ch: &TargetChannel,
    mem: &MemoryLine,
    input: &TwoModeMoments,
) -> Result<ConverterOutputMoments> {
    require(n_m_thermal >= 0.0, "n_m_thermal", n_m_thermal, "occupation must be >= 0")?;
    input.validate()?;
    let eta = mem.eta();
    Ok(ConverterOutputMoments {
        n_cs: conv.b * conv.b * (ch.n_b() + 1.0) + conv.c_o_sq * (n_m_thermal + 1.0),
        n_ci: eta * input.n_i,
        n_csi: conv.b * (eta * ch.kappa()).sqrt() * input.n_si,
    })
}

/// `R = √N_cI / N_cS`. Fails when the result would exceed 1, i.e. outside the
/// low-reflectivity regime.
pub fn optimal_reflectivity(m: &ConverterOutputMoments) -> Result<f64> {
    require(m.n_cs > 0.0, "n_cs", m.n_cs, "converted signal must be nonzero")?;
    require(m.n_ci >= 0.0, "n_ci", m.n_ci, "idler occupation must be >= 0")?;
    let root = m.n_ci.sqrt();
    if root > m.n_cs {
        return Err(QiError::Regime {
            sqrt_n_ci: root,
            n_cs: m.n_cs,
        });
    }
    Ok(root / m.n_cs)
}

/// Detector-mode means `(N_c|κ=0, N_c|κ>0)`.
pub fn output_mode_means(reflectivity: f64, m: &ConverterOutputMoments) -> Result<(f64, f64)> {
    require(
        (0.0..=1.0).contains(&reflectivity),
        "reflectivity",
        reflectivity,
        "reflectivity must lie in [0, 1]",
    )?;
    let r = reflectivity;
    let absent = r * m.n_cs + (1.0 - r) * m.n_ci;
    let present = absent + 2.0 * (r * (1.0 - r)).sqrt() * m.n_csi;
    if present < 0.0 || absent < 0.0 {
        return Err(QiError::NonPhysical(format!(
            "negative detector-mode mean ({absent:e}, {present:e})"
        )));
    }
    Ok((absent, present))
}

/// Mean and variance of `min(n, K)` for geometric `P(n) = (1 − q)qⁿ`.
pub fn pnr_moments_from_q(q: f64, k: Resolution) -> Result<(f64, f64)> {
    require((0.0..1.0).contains(&q), "q", q, "geometric parameter must lie in [0, 1)")?;
    let one_minus = 1.0 - q;
    Ok(match k {
        Resolution::Unbounded => {
            let n = q / one_minus;
            (n, n * (n + 1.0))
        }
        Resolution::Bounded(k) => capped_moments(q, one_minus, k.get()),
    })
}

fn capped_moments(q: f64, one_minus: f64, k: u32) -> (f64, f64) {
    if q == 0.0 {
        return (0.0, 0.0);
    }
    let qk = q.powi(k as i32);
    let ratio = q / one_minus;
    let mean = ratio * (1.0 - qk);
    let second = ratio * (1.0 - (2.0 * k as f64 + 1.0) * qk + 2.0 * q * (1.0 - qk) / one_minus);
    (mean, (second - mean * mean).max(0.0))
}

/// Mean and variance of the capped photon count for a thermal detector mode of
/// mean `n_c`. Unbounded resolution gives `(n_c, n_c(n_c + 1))`.
pub fn pnr_moments(n_c: f64, k: Resolution) -> Result<(f64, f64)> {
    require(n_c >= 0.0, "n_c", n_c, "mean photon number must be >= 0")?;
    Ok(match k {
        Resolution::Unbounded => (n_c, n_c * (n_c + 1.0)),
        // 1 − q computed as 1/(n + 1) to keep precision when n_c ≪ 1.
        Resolution::Bounded(k) => capped_moments(n_c / (n_c + 1.0), 1.0 / (n_c + 1.0), k.get()),
    })
}

/// Geometric parameter `q = n / (n + 1)` of a thermal mode with mean `n`.
pub fn geometric_q(n_c: f64) -> f64 {
    n_c / (n_c + 1.0)
}

pub fn smpc_stats(rx: &SmpcReceiver, m: &ConverterOutputMoments) -> Result<PnrObservableStats> {
    let (n_c0, n_c1) = output_mode_means(rx.reflectivity, m)?;
    let (mean0, var0) = pnr_moments(n_c0, rx.resolution)?;
    let (mean1, var1) = pnr_moments(n_c1, rx.resolution)?;
    Ok(PnrObservableStats {
        stats: HypothesisStats {
            mean0,
            mean1,
            var0,
            var1,
        },
        n_c0,
        n_c1,
    })
}

/// Receiver figure of merit `SNR / γ_CI`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReceiverAdvantage {
    pub f: f64,
    pub snr: f64,
    pub gamma_ci: f64,
    pub reflectivity: f64,
    pub n_c0: f64,
    pub n_c1: f64,
    /// Set when `γ_CI = 0` (no target or no signal); `f` is then reported as 0.
    pub degenerate: bool,
}

/// Full SMPC chain: converter moments, tuned reflectivity, PNR statistics,
/// `SNR / γ_CI`. `benchmark_n_s` defaults to the input signal energy.
pub fn f_smpc(
    resolution: Resolution,
    conv: &EomCoefficients,
    n_m_thermal: f64,
    ch: &TargetChannel,
    mem: &MemoryLine,
    input: &TwoModeMoments,
    benchmark_n_s: Option<f64>,
) -> Result<ReceiverAdvantage> {
    let moments = converter_output_moments(conv, n_m_thermal, ch, mem, input)?;
    let rx = SmpcReceiver::tuned(&moments, resolution)?;
    f_smpc_with(&rx, &moments, ch, benchmark_n_s.unwrap_or(input.n_s))
}

/// As [`f_smpc`] but with an explicit receiver (any reflectivity).
pub fn f_smpc_with(
    rx: &SmpcReceiver,
    moments: &ConverterOutputMoments,
    ch: &TargetChannel,
    benchmark_n_s: f64,
) -> Result<ReceiverAdvantage> {
    require(benchmark_n_s >= 0.0, "benchmark_n_s", benchmark_n_s, "signal energy must be >= 0")?;
    let pnr = smpc_stats(rx, moments)?;
    let snr = snr(&pnr.stats)?;
    let gc = gamma_ci(benchmark_n_s, ch);
    let degenerate = gc == 0.0;
    Ok(ReceiverAdvantage {
        f: if degenerate { 0.0 } else { snr / gc },
        snr,
        gamma_ci: gc,
        reflectivity: rx.reflectivity,
        n_c0: pnr.n_c0,
        n_c1: pnr.n_c1,
        degenerate,
    })
}
