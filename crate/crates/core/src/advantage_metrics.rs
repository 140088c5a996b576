//! Error exponents, the quantum-advantage figure `F = γ_QI / γ_CI`, critical
//! memory efficiencies and the closed-form optima for squeezed-thermal and
//! EOM-transmitter inputs.
//!
//! Two versions of `F` coexist. [`advantage_exact`] is the plain ratio of the
//! two error exponents. [`advantage_approx`] and the closed forms built on it
//! ([`advantage_tmst`], [`advantage_coop`]) drop terms of order `κ` and
//! `N_S / N_B`, which is the regime every figure dataset lives in.

use serde::{Deserialize, Serialize};

use crate::eom_devices::Cooperativities;
use crate::error::{require, QiError, Result};
use crate::quantum_states::{squeezed_excess, TmstParams, TwoModeMoments};
use crate::scene::{MemoryLine, TargetChannel};

pub use crate::optimize::{bisect, maximize_1d, Maximum};

/// Slack allowed below 1 in an `acosh` argument before it is treated as a
/// domain error.
pub const ACOSH_TOL: f64 = 1e-12;

/// Means and variances of a measured observable under the two hypotheses
/// (index 0: target absent, 1: target present).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypothesisStats {
    pub mean0: f64,
    pub mean1: f64,
    pub var0: f64,
    pub var1: f64,
}

/// Signal-to-noise ratio of a threshold test on `M` averaged shots.
///
/// Returns [`QiError::InfiniteSnr`] when both variances vanish but the means
/// differ.
pub fn snr(stats: &HypothesisStats) -> Result<f64> {
    require(stats.var0 >= 0.0, "var0", stats.var0, "variance must be >= 0")?;
    require(stats.var1 >= 0.0, "var1", stats.var1, "variance must be >= 0")?;
    let diff = stats.mean1 - stats.mean0;
    if diff == 0.0 {
        return Ok(0.0);
    }
    let spread = stats.var1.sqrt() + stats.var0.sqrt();
    if spread == 0.0 {
        return Err(QiError::InfiniteSnr);
    }
    Ok(diff * diff / (2.0 * spread * spread))
}

/// Maximum local-measurement error exponent of QI. Sign of `n_si` is irrelevant.
pub fn gamma_qi(m: &TwoModeMoments, mem: &MemoryLine, ch: &TargetChannel) -> f64 {
    let eta = mem.eta();
    let n_b = ch.n_b();
    eta * ch.kappa() * m.n_si * m.n_si / (2.0 * (1.0 + eta * m.n_i + n_b + 2.0 * eta * m.n_i * n_b))
}

/// Error exponent of the coherent-state benchmark with signal energy `n_s`.
pub fn gamma_ci(n_s: f64, ch: &TargetChannel) -> f64 {
    ch.kappa() * n_s / (4.0 * ch.n_b() + 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdvantageReport {
    pub gamma_qi: f64,
    pub gamma_ci: f64,
    pub f: f64,
}

/// Exact ratio of the two error exponents.
pub fn advantage_exact(m: &TwoModeMoments, mem: &MemoryLine, ch: &TargetChannel) -> Result<AdvantageReport> {
    require(m.n_s > 0.0, "n_s", m.n_s, "advantage ratio needs a nonzero signal")?;
    if ch.kappa() == 0.0 {
        return Err(QiError::Degenerate("advantage ratio undefined for kappa = 0".into()));
    }
    let gq = gamma_qi(m, mem, ch);
    let gc = gamma_ci(m.n_s, ch);
    Ok(AdvantageReport {
        gamma_qi: gq,
        gamma_ci: gc,
        f: gq / gc,
    })
}

/// `F ≈ 2η·N_SI² / (N_S·(1 + 2η·N_I))`, valid for `κ ≪ 1`, `N_S ≪ N_B`.
pub fn advantage_approx(m: &TwoModeMoments, mem: &MemoryLine) -> Result<f64> {
    require(m.n_s > 0.0, "n_s", m.n_s, "advantage ratio needs a nonzero signal")?;
    let eta = mem.eta();
    Ok(2.0 * eta * m.n_si * m.n_si / (m.n_s * (1.0 + 2.0 * eta * m.n_i)))
}

/// Closed-form approximate advantage of a balanced two-mode squeezed thermal
/// state. At the vacuum corner (`ν = 1`, `r = 0`) the `r → 0⁺` limit `2η` is
/// returned.
pub fn advantage_tmst(params: TmstParams, mem: &MemoryLine) -> Result<f64> {
    let (nu, r, eta) = (params.nu(), params.r(), mem.eta());
    let excess = squeezed_excess(params);
    if excess == 0.0 {
        return Ok(2.0 * eta);
    }
    let s = (2.0 * r).sinh();
    Ok(eta * nu * nu * s * s / (excess * (1.0 + eta * excess)))
}

fn require_half_efficiency(mem: &MemoryLine) -> Result<f64> {
    let eta = mem.eta();
    require(eta > 0.5, "eta", eta, "closed-form optimum requires eta > 1/2")?;
    Ok(eta)
}

/// `acosh(1 + x)` for `x ≥ −ACOSH_TOL`, precise for small `x`.
fn acosh_one_plus(x: f64, name: &'static str) -> Result<f64> {
    require(x >= -ACOSH_TOL, name, 1.0 + x, "acosh argument below 1")?;
    let x = x.max(0.0);
    Ok((x + (x * (x + 2.0)).sqrt()).ln_1p())
}

/// Squeezing at which `F = 1` (the edge of the quantum-advantage region).
pub fn r_qa(nu: f64, mem: &MemoryLine) -> Result<f64> {
    require(nu >= 1.0, "nu", nu, "symplectic eigenvalue must be >= 1")?;
    let eta = require_half_efficiency(mem)?;
    // (ην² + η − 1)/((2η − 1)ν) − 1 = (ν − 1)(η(ν − 1) + 1) / ((2η − 1)ν)
    let excess = (nu - 1.0) * (eta * (nu - 1.0) + 1.0) / ((2.0 * eta - 1.0) * nu);
    Ok(0.5 * acosh_one_plus(excess, "r_qa acosh argument")?)
}

/// Squeezing that maximizes [`advantage_tmst`] at fixed `nu` and `eta`.
pub fn r_optimal(nu: f64, mem: &MemoryLine) -> Result<f64> {
    require(nu >= 1.0, "nu", nu, "symplectic eigenvalue must be >= 1")?;
    let eta = require_half_efficiency(mem)?;
    let nu2m1 = (nu - 1.0) * (nu + 1.0);
    let root = (nu2m1 * (nu2m1 * eta * eta + 2.0 * eta - 1.0)).sqrt();
    let excess = ((nu - 1.0) * (eta * (nu - 1.0) + 1.0) + root) / ((2.0 * eta - 1.0) * nu);
    Ok(0.5 * acosh_one_plus(excess, "r_optimal acosh argument")?)
}

/// Minimum idler-memory efficiency for which QI beats CI.
///
/// Values above 1 are reported unchanged with `achievable == false`: the state
/// has no advantage even with a perfect memory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalEfficiency {
    pub value: f64,
    pub achievable: bool,
}

impl CriticalEfficiency {
    fn from_value(value: f64) -> Self {
        Self {
            value,
            achievable: value <= 1.0,
        }
    }
}

/// `η_c ≈ n_S / (2(n_SI² − n_S·n_I))`.
pub fn eta_critical_moments(m: &TwoModeMoments) -> Result<CriticalEfficiency> {
    let excess = m.n_si * m.n_si - m.n_s * m.n_i;
    if !(excess > 0.0) {
        return Err(QiError::Degenerate(format!(
            "n_si² − n_s·n_i = {excess:e} ≤ 0: no advantage at any memory efficiency"
        )));
    }
    Ok(CriticalEfficiency::from_value(m.n_s / (2.0 * excess)))
}

/// `η_c = 1 / (2 − (ν² − 1)/(ν·cosh 2r − 1))`; exactly ½ for the TMSV.
pub fn eta_critical_tmst(nu: f64, r: f64) -> Result<CriticalEfficiency> {
    let params = TmstParams::new(nu, r)?;
    let excess = squeezed_excess(params);
    if excess == 0.0 {
        return Err(QiError::Degenerate("vacuum input has no critical efficiency".into()));
    }
    let denom = 2.0 - (nu - 1.0) * (nu + 1.0) / excess;
    if !(denom > 0.0) {
        return Err(QiError::Degenerate(format!(
            "nu = {nu}, r = {r}: no advantage at any memory efficiency"
        )));
    }
    Ok(CriticalEfficiency::from_value(1.0 / denom))
}

/// `η_c = (Γ_o + N_M^T) / (2Γ_o)` for the EOM transmitter.
pub fn eta_critical_coop(gamma_o: f64, n_m_thermal: f64) -> Result<CriticalEfficiency> {
    require(gamma_o > 0.0, "gamma_o", gamma_o, "cooperativity must be > 0")?;
    require(n_m_thermal >= 0.0, "n_m_thermal", n_m_thermal, "occupation must be >= 0")?;
    Ok(CriticalEfficiency::from_value((gamma_o + n_m_thermal) / (2.0 * gamma_o)))
}

/// Smallest optical cooperativity with an advantage at memory efficiency `eta`:
/// `Γ_o = N_M^T / (2η − 1)`.
pub fn gamma_o_threshold(mem: &MemoryLine, n_m_thermal: f64) -> Result<f64> {
    let eta = require_half_efficiency(mem)?;
    Ok(n_m_thermal / (2.0 * eta - 1.0))
}

/// Closed-form approximate advantage of the EOM transmitter; needs `Γ_w > Γ_o`.
pub fn advantage_coop(c: Cooperativities, mem: &MemoryLine, n_m_thermal: f64) -> Result<f64> {
    let (go, gw, eta) = (c.gamma_o(), c.gamma_w(), mem.eta());
    if !(gw > go) {
        return Err(QiError::Precondition(format!(
            "closed-form EOM advantage needs gamma_w > gamma_o (got {gw} <= {go})"
        )));
    }
    require(go > 0.0, "gamma_o", go, "cooperativity must be > 0")?;
    require(n_m_thermal >= 0.0, "n_m_thermal", n_m_thermal, "occupation must be >= 0")?;
    let n = n_m_thermal;
    let lead = 1.0 + go + gw + 2.0 * n;
    let d = 1.0 - go + gw;
    Ok(2.0 * eta * go * lead * lead
        / ((go + n) * (d * d + 8.0 * eta * go * (1.0 + gw) + 8.0 * eta * go * n)))
}

/// Closed-form optical cooperativity `½(N/(2η−1) + √(N·Γ_w/(2η−1)))`.
pub fn gamma_o_optimal(gamma_w: f64, mem: &MemoryLine, n_m_thermal: f64) -> Result<f64> {
    let eta = require_half_efficiency(mem)?;
    require(gamma_w > 0.0, "gamma_w", gamma_w, "cooperativity must be > 0")?;
    require(n_m_thermal >= 0.0, "n_m_thermal", n_m_thermal, "occupation must be >= 0")?;
    let k = 2.0 * eta - 1.0;
    Ok(0.5 * (n_m_thermal / k + (n_m_thermal * gamma_w / k).sqrt()))
}
