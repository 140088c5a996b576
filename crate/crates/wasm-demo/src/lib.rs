//! Browser bindings for three interactive views: advantage against squeezing,
//! against optical cooperativity, and the SMPC receiver against signal energy.
//!
//! Curves come back as flat `Float64Array`s; points where a value is undefined
//! are `NaN` so the page can leave gaps.

use wasm_bindgen::prelude::*;

use qimem::advantage_metrics::{advantage_coop, advantage_tmst, eta_critical_coop, gamma_o_optimal, r_optimal, r_qa};
use qimem::eom_devices::{eom_coefficients, thermal_occupation, Cooperativities};
use qimem::optimize::{maximize_1d, DEFAULT_TOL};
use qimem::quantum_states::{TmstParams, TwoModeMoments};
use qimem::scene::{MemoryLine, TargetChannel};
use qimem::smpc_receiver::{f_smpc, Resolution};
use qimem::QiError;

/// Mechanical frequency of the EOM devices (Hz).
const FREQ_MECH: f64 = 10e6;
/// Receiver-side converter cooperativities.
const CONVERTER: (f64, f64) = (60.0, 600.0);

fn scene(eta: f64, kappa: f64, n_b: f64) -> Result<(MemoryLine, TargetChannel), QiError> {
    Ok((MemoryLine::new(eta)?, TargetChannel::new(kappa, n_b)?))
}

fn n_mech(t_eom_mk: f64) -> Result<f64, QiError> {
    thermal_occupation(FREQ_MECH, t_eom_mk * 1e-3)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + step * i as f64)
}

fn logspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    linspace(lo.log10(), hi.log10(), n).map(|e| 10f64.powf(e))
}

/// `F` on `points` squeezing values evenly spaced in `[0, r_max]`.
pub fn tmst_curve_values(nu: f64, eta: f64, r_max: f64, points: usize) -> Result<Vec<f64>, QiError> {
    let mem = MemoryLine::new(eta)?;
    TmstParams::new(nu, r_max)?;
    Ok(linspace(0.0, r_max, points)
        .map(|r| TmstParams::new(nu, r).and_then(|p| advantage_tmst(p, &mem)).unwrap_or(f64::NAN))
        .collect())
}

/// `[r_opt, F(r_opt), r_qa]`; `NaN` where the closed form needs `η > 1/2`.
pub fn tmst_optimum_values(nu: f64, eta: f64) -> Result<Vec<f64>, QiError> {
    let mem = MemoryLine::new(eta)?;
    TmstParams::new(nu, 0.0)?;
    let r_opt = r_optimal(nu, &mem).unwrap_or(f64::NAN);
    let f_opt = TmstParams::new(nu, r_opt).and_then(|p| advantage_tmst(p, &mem)).unwrap_or(f64::NAN);
    Ok(vec![r_opt, f_opt, r_qa(nu, &mem).unwrap_or(f64::NAN)])
}

fn coop_f(gamma_o: f64, gamma_w: f64, mem: &MemoryLine, n: f64) -> f64 {
    Cooperativities::new(gamma_o, gamma_w)
        .and_then(|c| advantage_coop(c, mem, n))
        .unwrap_or(f64::NAN)
}

/// Closed-form `F` on `points` log-spaced `Γ_o` in `[go_min, go_max]`.
pub fn coop_curve_values(
    gamma_w: f64,
    eta: f64,
    t_eom_mk: f64,
    go_min: f64,
    go_max: f64,
    points: usize,
) -> Result<Vec<f64>, QiError> {
    let mem = MemoryLine::new(eta)?;
    let n = n_mech(t_eom_mk)?;
    if !(go_min > 0.0 && go_max > go_min) {
        return Err(QiError::Bracket { lo: go_min, hi: go_max });
    }
    Ok(logspace(go_min, go_max, points).map(|go| coop_f(go, gamma_w, &mem, n)).collect())
}

/// `[Γ_o closed form, F there, Γ_o numeric argmax, F there, η_c at the closed
/// form, N_M^T]`.
pub fn coop_optimum_values(gamma_w: f64, eta: f64, t_eom_mk: f64) -> Result<Vec<f64>, QiError> {
    let mem = MemoryLine::new(eta)?;
    let n = n_mech(t_eom_mk)?;
    let closed = gamma_o_optimal(gamma_w, &mem, n).unwrap_or(f64::NAN);
    let best = maximize_1d(
        |go| {
            let f = coop_f(go, gamma_w, &mem, n);
            if f.is_nan() { f64::NEG_INFINITY } else { f }
        },
        0.0,
        gamma_w,
        DEFAULT_TOL,
    )?;
    let eta_c = eta_critical_coop(closed, n).map(|e| e.value).unwrap_or(f64::NAN);
    Ok(vec![closed, coop_f(closed, gamma_w, &mem, n), best.arg, best.value, eta_c, n])
}

/// `F_SMPC` for a two-mode squeezed vacuum on `points` log-spaced signal
/// energies in `[10^lg_min, 10^lg_max]`. `k = 0` means unbounded resolution.
pub fn smpc_curve_values(
    eta: f64,
    k: u32,
    kappa: f64,
    n_b: f64,
    lg_min: f64,
    lg_max: f64,
    points: usize,
) -> Result<Vec<f64>, QiError> {
    let (mem, ch) = scene(eta, kappa, n_b)?;
    let res = if k == 0 { Resolution::Unbounded } else { Resolution::bounded(k)? };
    let conv = eom_coefficients(Cooperativities::new(CONVERTER.0, CONVERTER.1)?);
    let n = n_mech(30.0)?;
    Ok(linspace(lg_min, lg_max, points)
        .map(|lg| {
            TwoModeMoments::tmsv(10f64.powf(lg))
                .and_then(|m| f_smpc(res, &conv, n, &ch, &mem, &m, None))
                .map(|a| a.f)
                .unwrap_or(f64::NAN)
        })
        .collect())
}

fn js(e: QiError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn tmst_curve(nu: f64, eta: f64, r_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    tmst_curve_values(nu, eta, r_max, points).map_err(js)
}

#[wasm_bindgen]
pub fn tmst_optimum(nu: f64, eta: f64) -> Result<Vec<f64>, JsError> {
    tmst_optimum_values(nu, eta).map_err(js)
}

#[wasm_bindgen]
pub fn coop_curve(gamma_w: f64, eta: f64, t_eom_mk: f64, go_min: f64, go_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    coop_curve_values(gamma_w, eta, t_eom_mk, go_min, go_max, points).map_err(js)
}

#[wasm_bindgen]
pub fn coop_optimum(gamma_w: f64, eta: f64, t_eom_mk: f64) -> Result<Vec<f64>, JsError> {
    coop_optimum_values(gamma_w, eta, t_eom_mk).map_err(js)
}

#[wasm_bindgen]
pub fn smpc_curve(eta: f64, k: u32, kappa: f64, n_b: f64, lg_min: f64, lg_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    smpc_curve_values(eta, k, kappa, n_b, lg_min, lg_max, points).map_err(js)
}
