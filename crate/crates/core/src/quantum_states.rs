//! Two-mode Gaussian input states in the mean-photon-number parameterization.
//!
//! The covariance convention is vacuum = identity, so a thermal mode with
//! mean occupation `n` has symplectic eigenvalue `2n + 1`.

use serde::{Deserialize, Serialize};

use crate::error::{require, QiError, Result};

/// Relative slack used when checking the physicality bound on `n_si`.
const PHYSICAL_TOL: f64 = 1e-10;

/// Two-mode squeezed thermal state with equal signal/idler symplectic eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TmstParams {
    nu: f64,
    r: f64,
}

impl TmstParams {
    pub fn new(nu: f64, r: f64) -> Result<Self> {
        require(nu >= 1.0, "nu", nu, "symplectic eigenvalue must be >= 1")?;
        require(r >= 0.0, "r", r, "squeezing parameter must be >= 0")?;
        Ok(Self { nu, r })
    }

    /// Two-mode squeezed vacuum with squeezing `r`.
    pub fn vacuum(r: f64) -> Result<Self> {
        Self::new(1.0, r)
    }

    /// State with equal-eigenvalue thermal inputs `nu` whose signal mean is `n_s`.
    ///
    /// Fails when `n_s < (nu - 1) / 2`: squeezing only adds photons.
    pub fn from_signal_mean(nu: f64, n_s: f64) -> Result<Self> {
        require(nu >= 1.0, "nu", nu, "symplectic eigenvalue must be >= 1")?;
        let arg = (2.0 * n_s + 1.0) / nu;
        require(
            arg >= 1.0 - 1e-12,
            "n_s",
            n_s,
            "signal mean is below the thermal floor (nu - 1) / 2",
        )?;
        Self::new(nu, 0.5 * arg.max(1.0).acosh())
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Signal/idler mean photon numbers and the signed cross-correlation
/// `n_si = <a_S a_I + a_I a_S> / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoModeMoments {
    pub n_s: f64,
    pub n_i: f64,
    pub n_si: f64,
}

impl TwoModeMoments {
    /// Validating constructor.
    pub fn new(n_s: f64, n_i: f64, n_si: f64) -> Result<Self> {
        let m = Self { n_s, n_i, n_si };
        m.validate()?;
        Ok(m)
    }

    /// Two-mode squeezed vacuum with signal mean `n_s` (positive correlation).
    pub fn tmsv(n_s: f64) -> Result<Self> {
        require(n_s >= 0.0, "n_s", n_s, "mean photon number must be >= 0")?;
        Ok(Self {
            n_s,
            n_i: n_s,
            n_si: (n_s * (n_s + 1.0)).sqrt(),
        })
    }

    /// Upper bound on `n_si²`: `n_s·n_i + min(n_s, n_i)`, saturated by the TMSV.
    pub fn correlation_bound(&self) -> f64 {
        self.n_s * self.n_i + self.n_s.min(self.n_i)
    }

    pub fn is_physical(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn validate(&self) -> Result<()> {
        require(self.n_s >= 0.0, "n_s", self.n_s, "mean photon number must be >= 0")?;
        require(self.n_i >= 0.0, "n_i", self.n_i, "mean photon number must be >= 0")?;
        if !self.n_si.is_finite() {
            return Err(QiError::NonPhysical(format!("n_si = {}", self.n_si)));
        }
        let bound = self.correlation_bound();
        let sq = self.n_si * self.n_si;
        if sq > bound + PHYSICAL_TOL * bound.max(sq).max(1e-300) {
            return Err(QiError::NonPhysical(format!(
                "n_si² = {sq:e} exceeds n_s·n_i + min(n_s, n_i) = {bound:e}"
            )));
        }
        Ok(())
    }
}

/// Moment map of the balanced two-mode squeezed thermal state.
pub fn tmst_moments(params: TmstParams) -> TwoModeMoments {
    let n = 0.5 * squeezed_excess(params);
    TwoModeMoments {
        n_s: n,
        n_i: n,
        n_si: 0.5 * params.nu * (2.0 * params.r).sinh(),
    }
}

/// `ν·cosh 2r − 1`, written as `(ν − 1) + 2ν·sinh² r` so small `r` keeps full
/// relative precision.
pub(crate) fn squeezed_excess(params: TmstParams) -> f64 {
    let sh = params.r.sinh();
    (params.nu - 1.0) + 2.0 * params.nu * sh * sh
}

/// Standard-form covariance entries `(a, b, c)`: diagonal blocks `a·I`, `b·I`,
/// off-diagonal block `diag(c, -c)`.
fn standard_form(m: &TwoModeMoments) -> (f64, f64, f64) {
    (2.0 * m.n_s + 1.0, 2.0 * m.n_i + 1.0, 2.0 * m.n_si)
}

/// Smallest symplectic eigenvalue of the partially transposed covariance matrix.
///
/// The state is entangled iff the result is below 1.
pub fn pt_min_symplectic(m: &TwoModeMoments) -> Result<f64> {
    m.validate()?;
    let (a, b, c) = standard_form(m);

    // Physicality of the state itself: untransposed smallest eigenvalue >= 1.
    let det_sqrt = a * b - c * c;
    if det_sqrt <= 0.0 {
        return Err(QiError::NonPhysical(format!(
            "covariance determinant factor ab - c² = {det_sqrt:e} is not positive"
        )));
    }
    let det = det_sqrt * det_sqrt;

    // Δ̃ = a² + b² + 2c²; Δ̃² − 4 det = ((a−b)² + 4c²)(a+b)², factored so it never
    // goes negative through cancellation.
    let delta_pt = a * a + b * b + 2.0 * c * c;
    let disc = ((a - b) * (a - b) + 4.0 * c * c) * (a + b) * (a + b);
    let nu_plus_sq = 0.5 * (delta_pt + disc.sqrt());
    // ν̃₋² · ν̃₊² = det σ; dividing avoids the subtraction in (Δ̃ − √disc)/2.
    Ok((det / nu_plus_sq).sqrt())
}

/// PPT test on the two-mode standard form.
pub fn is_entangled(m: &TwoModeMoments) -> Result<bool> {
    Ok(pt_min_symplectic(m)? < 1.0)
}

/// Squeezing at which a balanced TMST with eigenvalue `nu` becomes entangled.
pub fn entanglement_threshold_r(nu: f64) -> Result<f64> {
    require(nu >= 1.0, "nu", nu, "symplectic eigenvalue must be >= 1")?;
    Ok(0.5 * nu.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn vacuum_has_no_photons() {
        let m = tmst_moments(TmstParams::new(1.0, 0.0).unwrap());
        assert_eq!((m.n_s, m.n_i, m.n_si), (0.0, 0.0, 0.0));
    }

    #[test]
    fn tmst_reference_point() {
        // high-precision direct evaluation of cosh/sinh
        let m = tmst_moments(TmstParams::new(1.02, 0.327).unwrap());
        assert_relative_eq!(m.n_s, 0.123_010_925_899_516, max_relative = 1e-13);
        assert_relative_eq!(m.n_i, m.n_s);
        assert_relative_eq!(m.n_si, 0.357_830_426_026_312_6, max_relative = 1e-13);
    }

    #[test]
    fn rejects_out_of_domain_params() {
        assert!(matches!(
            TmstParams::new(0.99, 0.1),
            Err(QiError::Domain { name: "nu", .. })
        ));
        assert!(matches!(
            TmstParams::new(1.0, -0.1),
            Err(QiError::Domain { name: "r", .. })
        ));
    }

    #[test]
    fn separable_without_squeezing() {
        for nu in [1.0, 1.01, 1.5, 3.0] {
            let m = tmst_moments(TmstParams::new(nu, 0.0).unwrap());
            let v = pt_min_symplectic(&m).unwrap();
            assert_relative_eq!(v, nu, max_relative = 1e-14);
            assert!(!is_entangled(&m).unwrap());
        }
    }

    #[test]
    fn tmsv_half_squeezing() {
        let m = tmst_moments(TmstParams::vacuum(0.5).unwrap());
        assert_relative_eq!(pt_min_symplectic(&m).unwrap(), (-1.0f64).exp(), max_relative = 1e-13);
        assert!(is_entangled(&m).unwrap());
    }

    #[test]
    fn boundary_state_sits_at_one() {
        let r = entanglement_threshold_r(1.02).unwrap();
        assert_relative_eq!(r, 0.009_901_313_648_089_865, max_relative = 1e-12);
        let m = tmst_moments(TmstParams::new(1.02, r).unwrap());
        assert_relative_eq!(pt_min_symplectic(&m).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn non_physical_correlation_is_rejected() {
        let m = TwoModeMoments { n_s: 0.1, n_i: 0.1, n_si: 0.5 };
        assert!(matches!(pt_min_symplectic(&m), Err(QiError::NonPhysical(_))));
        assert!(TwoModeMoments::new(0.1, 0.1, 0.5).is_err());
        assert!(TwoModeMoments::new(-0.1, 0.1, 0.0).is_err());
    }

    #[test]
    fn signal_mean_inversion() {
        let p = TmstParams::from_signal_mean(1.001, 1e-3).unwrap();
        assert_relative_eq!(tmst_moments(p).n_s, 1e-3, max_relative = 1e-9);
        assert!(TmstParams::from_signal_mean(1.001, 1e-4).is_err());
    }

    proptest! {
        #[test]
        fn tmsv_saturates_correlation_bound(r in 0.0f64..5.0) {
            let m = tmst_moments(TmstParams::vacuum(r).unwrap());
            let gap = m.n_si * m.n_si - m.n_s * (m.n_s + 1.0);
            prop_assert!(gap.abs() <= 1e-12 * (m.n_si * m.n_si).max(1e-300));
        }

        #[test]
        fn pt_eigenvalue_closed_form(nu in 1.0f64..2.0, r in 0.0f64..3.0) {
            let m = tmst_moments(TmstParams::new(nu, r).unwrap());
            let v = pt_min_symplectic(&m).unwrap();
            let expected = nu * (-2.0 * r).exp();
            prop_assert!(((v - expected) / expected).abs() < 1e-10, "{} vs {}", v, expected);
        }

        #[test]
        fn entanglement_boundary_is_half_log_nu(nu in 1.0f64..2.0, dr in 1e-4f64..0.5) {
            let r0 = entanglement_threshold_r(nu).unwrap();
            let above = tmst_moments(TmstParams::new(nu, r0 + dr).unwrap());
            prop_assert!(is_entangled(&above).unwrap());
            if r0 - dr >= 0.0 {
                let below = tmst_moments(TmstParams::new(nu, r0 - dr).unwrap());
                prop_assert!(!is_entangled(&below).unwrap());
            }
        }
    }
}
