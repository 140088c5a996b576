//! Target channel and idler memory line.

use serde::{Deserialize, Serialize};

use crate::error::{require, Result};

/// Beam-splitter target of reflectivity `kappa` embedded in a thermal background.
///
/// `n_b` is the background seen at the receiver: the injected thermal mode has
/// mean `n_b / (1 - kappa)`, so the noise part of the return does not depend on
/// `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetChannel {
    kappa: f64,
    n_b: f64,
}

impl TargetChannel {
    pub fn new(kappa: f64, n_b: f64) -> Result<Self> {
        require((0.0..1.0).contains(&kappa), "kappa", kappa, "reflectivity must lie in [0, 1)")?;
        require(n_b >= 0.0, "n_b", n_b, "background occupation must be >= 0")?;
        Ok(Self { kappa, n_b })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn n_b(&self) -> f64 {
        self.n_b
    }

    /// Same background with the target removed.
    pub fn absent(&self) -> Self {
        Self { kappa: 0.0, ..*self }
    }

    /// Mean occupation of the thermal mode injected before the target.
    pub fn injected_background(&self) -> f64 {
        self.n_b / (1.0 - self.kappa)
    }
}

/// Delay line storing the idler, modelled as a pure-loss channel with zero
/// thermal noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemoryLine {
    eta: f64,
}

impl MemoryLine {
    pub fn new(eta: f64) -> Result<Self> {
        require(eta > 0.0 && eta <= 1.0, "eta", eta, "transmission must lie in (0, 1]")?;
        Ok(Self { eta })
    }

    pub fn lossless() -> Self {
        Self { eta: 1.0 }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// `η = exp(−γ_I·t)` for damping rate `gamma_i` (1/s) and storage time `t` (s).
pub fn memory_from_damping(gamma_i: f64, t: f64) -> Result<MemoryLine> {
    require(gamma_i >= 0.0, "gamma_i", gamma_i, "damping rate must be >= 0")?;
    require(t >= 0.0, "t", t, "delay must be >= 0")?;
    MemoryLine::new((-gamma_i * t).exp())
}

/// `η = 10^(−α·L/10)` for fiber attenuation `alpha_db_per_km` over `length_km`.
pub fn memory_from_fiber(alpha_db_per_km: f64, length_km: f64) -> Result<MemoryLine> {
    require(alpha_db_per_km >= 0.0, "alpha_db_per_km", alpha_db_per_km, "attenuation must be >= 0")?;
    require(length_km >= 0.0, "length_km", length_km, "length must be >= 0")?;
    MemoryLine::new(10f64.powf(-alpha_db_per_km * length_km / 10.0))
}

/// Fiber length (km) at which the transmission drops to `eta`.
pub fn fiber_length_for(alpha_db_per_km: f64, eta: f64) -> Result<f64> {
    require(alpha_db_per_km > 0.0, "alpha_db_per_km", alpha_db_per_km, "attenuation must be > 0")?;
    require(eta > 0.0 && eta <= 1.0, "eta", eta, "transmission must lie in (0, 1]")?;
    Ok(-10.0 * eta.log10() / alpha_db_per_km)
}

/// Mean photon number of the returned signal mode, `κ·n_s + N_B`.
pub fn returned_signal_mean(ch: &TargetChannel, n_s: f64) -> f64 {
    ch.kappa * n_s + ch.n_b
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn damping() {
        assert_eq!(memory_from_damping(0.0, 17.0).unwrap().eta(), 1.0);
        assert_relative_eq!(memory_from_damping(2f64.ln(), 1.0).unwrap().eta(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(memory_from_damping(0.1, 5.0).unwrap().eta(), 0.606_530_659_712_633_4, max_relative = 1e-15);
        assert!(memory_from_damping(-0.1, 5.0).is_err());
        assert!(memory_from_damping(0.1, -5.0).is_err());
    }

    #[test]
    fn fiber() {
        assert_eq!(memory_from_fiber(0.14, 0.0).unwrap().eta(), 1.0);
        assert!((memory_from_fiber(0.14, 21.50).unwrap().eta() - 0.5).abs() < 1e-3);
        assert!((memory_from_fiber(3.0103, 1.0).unwrap().eta() - 0.5).abs() < 1e-5);
        assert!(memory_from_fiber(-0.14, 1.0).is_err());
        assert_relative_eq!(fiber_length_for(0.14, 0.5).unwrap(), 21.502_142_547_427_23, max_relative = 1e-13);
    }

    #[test]
    fn returned_mean() {
        let ch = TargetChannel::new(0.01, 600.0).unwrap();
        assert_relative_eq!(returned_signal_mean(&ch, 0.1), 600.001, max_relative = 1e-15);
        assert_eq!(returned_signal_mean(&ch.absent(), 0.1), 600.0);
        let mirror = TargetChannel::new(1.0 - 1e-12, 0.0).unwrap();
        assert_relative_eq!(returned_signal_mean(&mirror, 0.3), 0.3, max_relative = 1e-11);
    }

    #[test]
    fn channel_validation() {
        assert!(TargetChannel::new(1.0, 1.0).is_err());
        assert!(TargetChannel::new(-0.1, 1.0).is_err());
        assert!(TargetChannel::new(0.5, -1.0).is_err());
        assert!(MemoryLine::new(0.0).is_err());
        assert!(MemoryLine::new(1.1).is_err());
    }

    proptest! {
        #[test]
        fn fiber_composes(alpha in 0.0f64..1.0, l1 in 0.0f64..50.0, l2 in 0.0f64..50.0) {
            let whole = memory_from_fiber(alpha, l1 + l2).unwrap().eta();
            let parts = memory_from_fiber(alpha, l1).unwrap().eta() * memory_from_fiber(alpha, l2).unwrap().eta();
            prop_assert!(((whole - parts) / whole).abs() < 1e-12);
        }

        #[test]
        fn fiber_matches_damping(alpha in 0.0f64..1.0, l in 0.0f64..100.0) {
            let fiber = memory_from_fiber(alpha, l).unwrap().eta();
            let damped = memory_from_damping(alpha * l * 10f64.ln() / 10.0, 1.0).unwrap().eta();
            prop_assert!(((fiber - damped) / fiber).abs() < 1e-12);
        }
    }
}
