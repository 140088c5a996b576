//! Electro-optomechanical (EOM) transmitter and converter.
//!
//! Cooperativities are the primitive inputs. Coefficients `C_o` and `C_w` are
//! purely imaginary, so only their squared magnitudes are stored; the one
//! product that enters a moment, `C_w·C_o`, is real and negative.

use serde::{Deserialize, Serialize};

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{require, QiError, Result};
use crate::quantum_states::TwoModeMoments;

/// Bose–Einstein occupation of a mode at ordinary frequency `freq` (Hz) and
/// temperature `temperature` (K).
pub fn thermal_occupation(freq: f64, temperature: f64) -> Result<f64> {
    require(freq > 0.0, "freq", freq, "frequency must be positive")?;
    require(temperature > 0.0, "temperature", temperature, "temperature must be positive")?;
    let x = HBAR * 2.0 * std::f64::consts::PI * freq / (BOLTZMANN * temperature);
    // exp_m1 overflows to +inf for frozen modes, giving exactly 0.
    Ok(1.0 / x.exp_m1())
}

/// Cryogenic environment of the EOM devices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EomEnvironment {
    /// Kelvin.
    pub temperature: f64,
    /// Mechanical resonance, Hz (ordinary frequency).
    pub freq_mech: f64,
    /// Microwave cavity resonance, Hz.
    pub freq_microwave: f64,
    /// Optical cavity resonance, Hz.
    pub freq_optical: f64,
}

impl EomEnvironment {
    pub fn new(temperature: f64, freq_mech: f64, freq_microwave: f64, freq_optical: f64) -> Result<Self> {
        require(temperature > 0.0, "temperature", temperature, "temperature must be positive")?;
        require(freq_mech > 0.0, "freq_mech", freq_mech, "frequency must be positive")?;
        require(freq_microwave > 0.0, "freq_microwave", freq_microwave, "frequency must be positive")?;
        require(freq_optical > 0.0, "freq_optical", freq_optical, "frequency must be positive")?;
        Ok(Self {
            temperature,
            freq_mech,
            freq_microwave,
            freq_optical,
        })
    }

    /// Optical frequency taken from a pump wavelength in metres.
    pub fn with_pump_wavelength(
        temperature: f64,
        freq_mech: f64,
        freq_microwave: f64,
        wavelength: f64,
    ) -> Result<Self> {
        require(wavelength > 0.0, "wavelength", wavelength, "wavelength must be positive")?;
        Self::new(temperature, freq_mech, freq_microwave, SPEED_OF_LIGHT / wavelength)
    }

    /// 30 mK dilution fridge, 10 MHz mechanics, 10 GHz microwave, 1064 nm pump.
    pub fn reference() -> Self {
        Self::with_pump_wavelength(30e-3, 10e6, 10e9, 1064e-9).expect("reference environment is valid")
    }

    /// Mechanical thermal occupation `N_M^T`.
    pub fn n_mech(&self) -> f64 {
        thermal_occupation(self.freq_mech, self.temperature).expect("validated")
    }

    /// Microwave cavity occupation `N_w^T` (neglected in the moment maps).
    pub fn n_microwave(&self) -> f64 {
        thermal_occupation(self.freq_microwave, self.temperature).expect("validated")
    }

    /// Optical cavity occupation `N_o^T` (neglected in the moment maps).
    pub fn n_optical(&self) -> f64 {
        thermal_occupation(self.freq_optical, self.temperature).expect("validated")
    }
}

/// Optical and microwave cooperativities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cooperativities {
    gamma_o: f64,
    gamma_w: f64,
}

impl Cooperativities {
    /// Requires non-negative values and the stability condition `Γ_o < 1 + Γ_w`.
    pub fn new(gamma_o: f64, gamma_w: f64) -> Result<Self> {
        require(gamma_o >= 0.0, "gamma_o", gamma_o, "cooperativity must be >= 0")?;
        require(gamma_w >= 0.0, "gamma_w", gamma_w, "cooperativity must be >= 0")?;
        if 1.0 + gamma_w - gamma_o <= 0.0 {
            return Err(QiError::Unstable { gamma_o, gamma_w });
        }
        Ok(Self { gamma_o, gamma_w })
    }

    pub fn gamma_o(&self) -> f64 {
        self.gamma_o
    }

    pub fn gamma_w(&self) -> f64 {
        self.gamma_w
    }

    /// Shared denominator `1 + Γ_w − Γ_o` (positive by construction).
    pub fn denominator(&self) -> f64 {
        1.0 + self.gamma_w - self.gamma_o
    }
}

/// Output-mode scattering coefficients of an EOM device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EomCoefficients {
    pub a_w: f64,
    pub a_o: f64,
    pub b: f64,
    /// `|C_o|²`
    pub c_o_sq: f64,
    /// `|C_w|²`
    pub c_w_sq: f64,
}

impl EomCoefficients {
    /// The real product `C_w·C_o = −|C_w||C_o|` of the two imaginary amplitudes.
    pub fn c_product(&self) -> f64 {
        -(self.c_w_sq * self.c_o_sq).sqrt()
    }

    /// Residual of `A_o² − B² − |C_o|² = 1`, relative to the largest term.
    pub fn idler_commutator_residual(&self) -> f64 {
        let lhs = self.a_o * self.a_o - self.b * self.b - self.c_o_sq;
        (lhs - 1.0).abs() / (self.a_o * self.a_o).max(1.0)
    }

    /// Residual of `A_w² − B² + |C_w|² = 1`, relative to the largest term.
    pub fn signal_commutator_residual(&self) -> f64 {
        let lhs = self.a_w * self.a_w - self.b * self.b + self.c_w_sq;
        (lhs - 1.0).abs() / (self.a_w * self.a_w).max(self.b * self.b).max(1.0)
    }
}

pub fn eom_coefficients(c: Cooperativities) -> EomCoefficients {
    let (go, gw) = (c.gamma_o, c.gamma_w);
    let d = c.denominator();
    EomCoefficients {
        a_w: (1.0 - (gw + go)) / d,
        a_o: (1.0 + (gw + go)) / d,
        b: 2.0 * (gw * go).sqrt() / d,
        c_o_sq: 4.0 * go / (d * d),
        c_w_sq: 4.0 * gw / (d * d),
    }
}

/// Signal (microwave) and idler (optical) moments emitted by the transmitter.
///
/// Cavity occupations are dropped: at millikelvin they are far below one.
pub fn transmitter_moments(coeffs: &EomCoefficients, n_m_thermal: f64) -> Result<TwoModeMoments> {
    require(n_m_thermal >= 0.0, "n_m_thermal", n_m_thermal, "occupation must be >= 0")?;
    let b2 = coeffs.b * coeffs.b;
    TwoModeMoments::new(
        b2 + coeffs.c_w_sq * n_m_thermal,
        b2 + coeffs.c_o_sq * (n_m_thermal + 1.0),
        coeffs.a_w * coeffs.b + coeffs.c_product() * (n_m_thermal + 1.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn mechanical_occupation_at_30_mk() {
        let n = thermal_occupation(10e6, 30e-3).unwrap();
        assert_relative_eq!(n, 62.011_190_487_372_49, max_relative = 1e-12);
        assert!((n - 62.0).abs() < 0.5);
    }

    #[test]
    fn microwave_occupation_is_tiny() {
        let n = thermal_occupation(10e9, 30e-3).unwrap();
        assert_relative_eq!(n, 1.128_194_821_837_114e-7, max_relative = 1e-9);
    }

    #[test]
    fn frozen_mode_goes_to_zero() {
        assert_eq!(thermal_occupation(10e9, 1e-6).unwrap(), 0.0);
        assert!(thermal_occupation(10e6, 1e-9).unwrap() < 1e-200);
    }

    #[test]
    fn occupation_rejects_bad_inputs() {
        assert!(thermal_occupation(0.0, 1.0).is_err());
        assert!(thermal_occupation(1e9, -1.0).is_err());
    }

    #[test]
    fn reference_environment() {
        let env = EomEnvironment::reference();
        assert_relative_eq!(env.freq_optical, 2.817_598_289_473_684e14, max_relative = 1e-12);
        assert!(env.n_optical() == 0.0);
        assert!((env.n_mech() - 62.0).abs() < 0.5);
    }

    #[test]
    fn converter_coefficients() {
        let k = eom_coefficients(Cooperativities::new(60.0, 600.0).unwrap());
        assert_relative_eq!(k.b, 0.701_429_425_545_666_4, max_relative = 1e-13);
        assert_relative_eq!(k.a_w, -1.218_114_602_587_800_4, max_relative = 1e-13);
        assert_relative_eq!(k.a_o, 1.221_811_460_258_780_1, max_relative = 1e-13);
        assert_relative_eq!(k.c_o_sq, 8.200_053_983_688_726e-4, max_relative = 1e-13);
        assert_relative_eq!(k.c_w_sq, 8.200_053_983_688_726e-3, max_relative = 1e-13);
    }

    #[test]
    fn passive_limit() {
        let k = eom_coefficients(Cooperativities::new(0.0, 7.0).unwrap());
        assert_eq!(k.b, 0.0);
        assert_relative_eq!(k.a_w, -6.0 / 8.0);
        assert_relative_eq!(k.a_w * k.a_w + k.c_w_sq, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn equal_cooperativities() {
        let g = 3.5;
        let k = eom_coefficients(Cooperativities::new(g, g).unwrap());
        assert_relative_eq!(k.a_w, 1.0 - 2.0 * g);
        assert_relative_eq!(k.a_o, 1.0 + 2.0 * g);
        assert_relative_eq!(k.b, 2.0 * g);
    }

    #[test]
    fn instability_is_an_error() {
        assert!(matches!(
            Cooperativities::new(11.0, 10.0),
            Err(QiError::Unstable { .. })
        ));
        assert!(Cooperativities::new(10.999, 10.0).is_ok());
    }

    #[test]
    fn transmitter_reference_moments() {
        let k = eom_coefficients(Cooperativities::new(60.0, 600.0).unwrap());
        let m = transmitter_moments(&k, 62.0).unwrap();
        assert_relative_eq!(m.n_s, 1.000_406_586_010_024_6, max_relative = 1e-12);
        assert_relative_eq!(m.n_i, 0.543_663_579_118_562_5, max_relative = 1e-12);
        assert_relative_eq!(m.n_si, -1.017_785_765_348_148_1, max_relative = 1e-12);
    }

    #[test]
    fn no_optical_coupling_no_idler() {
        let k = eom_coefficients(Cooperativities::new(0.0, 40.0).unwrap());
        let m = transmitter_moments(&k, 62.0).unwrap();
        assert_eq!(m.n_i, 0.0);
        assert_eq!(m.n_si, 0.0);
    }

    #[test]
    fn equal_cooperativities_vacuum_bath() {
        let g = 2.0;
        let k = eom_coefficients(Cooperativities::new(g, g).unwrap());
        let m = transmitter_moments(&k, 0.0).unwrap();
        assert_relative_eq!(m.n_s, 4.0 * g * g);
        assert_relative_eq!(m.n_i, 4.0 * g * g + 4.0 * g);
        assert_relative_eq!(m.n_si, -2.0 * g - 4.0 * g * g);
    }

    proptest! {
        #[test]
        fn commutators_preserved(lg_o in -1.0f64..3.0, frac in 0.0f64..1.0) {
            let go = 10f64.powf(lg_o);
            // Γ_w ∈ [Γ_o, 1e4], log-uniform
            let gw = 10f64.powf(go.log10() + frac * (4.0 - go.log10()));
            let k = eom_coefficients(Cooperativities::new(go, gw).unwrap());
            prop_assert!(k.idler_commutator_residual() < 1e-10);
            prop_assert!(k.signal_commutator_residual() < 1e-10);
        }

        #[test]
        fn transmitter_moments_are_physical(lg_o in -1.0f64..3.0, frac in 0.0f64..1.0, n_m in 0.0f64..1e3) {
            let go = 10f64.powf(lg_o);
            let gw = 10f64.powf(go.log10() + frac * (4.0 - go.log10()));
            let k = eom_coefficients(Cooperativities::new(go, gw).unwrap());
            let m = transmitter_moments(&k, n_m).unwrap();
            prop_assert!(m.n_si * m.n_si <= m.correlation_bound() * (1.0 + 1e-10));
        }

        #[test]
        fn occupation_monotone(f in 1e6f64..1e11, t in 1e-2f64..1.0) {
            let n = thermal_occupation(f, t).unwrap();
            prop_assert!(thermal_occupation(f, t * 1.01).unwrap() > n);
            prop_assert!(thermal_occupation(f * 1.01, t).unwrap() < n);
        }
    }
}
