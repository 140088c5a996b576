//! Dataset builders, one per mode.
//!
//! Grid points are evaluated on the rayon pool and collected in grid order.
//! Points where a quantity is undefined (unstable converter, closed form out
//! of range, ...) keep their row with a non-`ok` status; only invalid fixed
//! parameters abort the run.

use rayon::prelude::*;
use serde_json::{json, Value};

use qimem::advantage_metrics::{
    advantage_approx, advantage_coop, advantage_exact, advantage_tmst, eta_critical_coop, eta_critical_tmst,
    gamma_o_optimal, r_optimal, r_qa,
};
use qimem::detection_sim::{chernoff_prediction, estimate_error_probability, exponent_slope, DetectionExperiment, ObservableSource};
use qimem::eom_devices::{eom_coefficients, transmitter_moments, Cooperativities, EomCoefficients, EomEnvironment};
use qimem::optimize::{maximize_1d, DEFAULT_TOL};
use qimem::quantum_states::{is_entangled, pt_min_symplectic, tmst_moments, TmstParams, TwoModeMoments};
use qimem::scene::{fiber_length_for, memory_from_fiber, MemoryLine, TargetChannel};
use qimem::smpc_receiver::{converter_output_moments, f_smpc, smpc_stats, Resolution, SmpcReceiver};
use qimem::QiError;

use crate::config::{Mode, SweepConfig, Target};
use crate::error::CliError;
use crate::table::{Cell, Dataset};

/// Upper end of the squeezing bracket searched by the numeric optimizer.
pub const R_SEARCH_MAX: f64 = 3.0;

/// `optimize` flags closed-form/numeric disagreements above this.
pub const OPTIMUM_AGREEMENT: f64 = 1e-6;

/// Transmission below which no memory efficiency gives an advantage for any
/// Gaussian source considered here.
const HALF: f64 = 0.5;

pub fn run(cfg: &SweepConfig) -> Result<Dataset, CliError> {
    match cfg.mode {
        Mode::Tmst => tmst(cfg),
        Mode::Coop => coop(cfg),
        Mode::Receiver => receiver(cfg),
        Mode::Montecarlo => montecarlo(cfg),
        Mode::Range => range(cfg),
        Mode::Optimize => optimize(cfg),
    }
}

struct Scene {
    ch: TargetChannel,
    mems: Vec<MemoryLine>,
    n_m: f64,
}

fn scene(cfg: &SweepConfig) -> Result<Scene, CliError> {
    let f = &cfg.fixed;
    let ch = TargetChannel::new(f.kappa, f.n_b).map_err(CliError::physics("fixed.kappa / fixed.n_b"))?;
    let mems = cfg
        .eta()
        .iter()
        .map(|&e| MemoryLine::new(e))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::physics("fixed.eta"))?;
    let env = EomEnvironment::with_pump_wavelength(f.t_eom, f.freq_mech, f.freq_microwave, f.pump_wavelength)
        .map_err(CliError::physics("fixed environment"))?;
    Ok(Scene { ch, mems, n_m: env.n_mech() })
}

fn converter(cfg: &SweepConfig) -> Result<EomCoefficients, CliError> {
    let c = cfg.fixed.converter;
    Cooperativities::new(c.gamma_o, c.gamma_w)
        .map(eom_coefficients)
        .map_err(CliError::physics("fixed.converter"))
}

fn echo_env(cfg: &SweepConfig, n_m: f64) -> Vec<Cell> {
    let f = &cfg.fixed;
    vec![f.kappa.into(), f.n_b.into(), f.t_eom.into(), f.freq_mech.into(), n_m.into()]
}

const ENV_COLUMNS: [&str; 5] = ["kappa", "n_b", "t_eom", "freq_mech", "n_m"];

fn columns(head: &[&'static str], tail: &[&'static str]) -> Vec<&'static str> {
    head.iter().chain(tail).copied().collect()
}

// ---------------------------------------------------------------- tmst

struct TmstPoint {
    cells: Vec<Cell>,
    f: Option<f64>,
    status: &'static str,
}

fn tmst_point(nu: f64, r: f64, mem: &MemoryLine, ch: &TargetChannel) -> TmstPoint {
    let Ok(params) = TmstParams::new(nu, r) else {
        return TmstPoint { cells: vec![Cell::Missing; 11], f: None, status: "invalid" };
    };
    let m = tmst_moments(params);
    let f = advantage_tmst(params, mem).ok();
    let exact = advantage_exact(&m, mem, ch).ok();
    let eta_c = eta_critical_tmst(nu, r).ok();
    TmstPoint {
        cells: vec![
            m.n_s.into(),
            m.n_si.into(),
            f.into(),
            exact.map(|e| e.f).into(),
            exact.map(|e| e.gamma_qi).into(),
            exact.map(|e| e.gamma_ci).into(),
            eta_c.map(|e| e.value).into(),
            eta_c.map_or(Cell::Missing, |e| e.achievable.into()),
            pt_min_symplectic(&m).ok().into(),
            is_entangled(&m).map_or(Cell::Missing, Cell::from),
            r_qa(nu, mem).ok().into(),
        ],
        status: if f.is_some() { "ok" } else { "degenerate" },
        f,
    }
}

fn tmst(cfg: &SweepConfig) -> Result<Dataset, CliError> {
    let sc = scene(cfg)?;
    let nus = cfg.grids.axis("nu").points();
    let rs = cfg.grids.axis("r").points();
    let mut ds = Dataset::new(vec![
        "kappa", "n_b", "eta", "nu", "r", "n_s", "n_si", "f_approx", "f_exact", "gamma_qi", "gamma_ci", "eta_c",
        "eta_c_achievable", "pt_min_symplectic", "entangled", "r_qa", "f1_crossing", "status",
    ]);
    for mem in &sc.mems {
        for &nu in &nus {
            let pts: Vec<TmstPoint> = rs.par_iter().map(|&r| tmst_point(nu, r, mem, &sc.ch)).collect();
            for (i, (p, &r)) in pts.iter().zip(&rs).enumerate() {
                // Marks the lower-r end of each grid interval where F − 1 changes sign.
                let crossing = match (p.f, pts.get(i + 1).and_then(|q| q.f)) {
                    (Some(a), Some(b)) => ((a - 1.0) * (b - 1.0) < 0.0).into(),
                    _ => false.into(),
                };
                let mut row = vec![cfg.fixed.kappa.into(), cfg.fixed.n_b.into(), mem.eta().into(), nu.into(), r.into()];
                row.extend(p.cells.iter().cloned());
                row.push(crossing);
                row.push(p.status.into());
                ds.push(row);
            }
        }
    }
    Ok(ds)
}

// ---------------------------------------------------------------- coop

fn coop_point(go: f64, gw: f64, mem: &MemoryLine, n_m: f64, ch: &TargetChannel) -> (Vec<Cell>, &'static str) {
    const WIDTH: usize = 9;
    let c = match Cooperativities::new(go, gw) {
        Ok(c) => c,
        Err(QiError::Unstable { .. }) => return (vec![Cell::Missing; WIDTH], "unstable"),
        Err(_) => return (vec![Cell::Missing; WIDTH], "invalid"),
    };
    let Ok(m) = transmitter_moments(&eom_coefficients(c), n_m) else {
        return (vec![Cell::Missing; WIDTH], "nonphysical");
    };
    let closed = advantage_coop(c, mem, n_m);
    let status = match closed {
        Ok(_) => "ok",
        Err(QiError::Precondition(_)) => "closed_form_invalid",
        Err(_) => "degenerate",
    };
    let eta_c = eta_critical_coop(go, n_m).ok();
    let cells = vec![
        m.n_s.into(),
        m.n_i.into(),
        m.n_si.into(),
        closed.ok().into(),
        advantage_approx(&m, mem).ok().into(),
        advantage_exact(&m, mem, ch).ok().map(|e| e.f).into(),
        eta_c.map(|e| e.value).into(),
        eta_c.map_or(Cell::Missing, |e| e.achievable.into()),
        gamma_o_optimal(gw, mem, n_m).ok().into(),
    ];
    debug_assert_eq!(cells.len(), WIDTH);
    (cells, status)
}

fn coop(cfg: &SweepConfig) -> Result<Dataset, CliError> {
    let sc = scene(cfg)?;
    let gos = cfg.grids.axis("gamma_o").points();
    let gws = match cfg.fixed.gamma_w {
        Some(gw) => vec![gw],
        None => cfg.grids.axis("gamma_w").points(),
    };
    let mut ds = Dataset::new(columns(
        &ENV_COLUMNS,
        &[
            "eta", "gamma_o", "gamma_w", "n_s", "n_i", "n_si", "f_closed", "f_approx", "f_exact", "eta_c",
            "eta_c_achievable", "gamma_o_opt", "status",
        ],
    ));
    let echo = echo_env(cfg, sc.n_m);
    for mem in &sc.mems {
        for &gw in &gws {
            let pts: Vec<_> = gos.par_iter().map(|&go| coop_point(go, gw, mem, sc.n_m, &sc.ch)).collect();
            for ((cells, status), &go) in pts.into_iter().zip(&gos) {
                let mut row = echo.clone();
                row.extend([mem.eta().into(), go.into(), gw.into()]);
                row.extend(cells);
                row.push(status.into());
                ds.push(row);
            }
        }
    }
    Ok(ds)
}

// ---------------------------------------------------------------- receiver

/// Balanced source with signal energy `n_s` and symplectic eigenvalue `nu`.
fn source_state(nu: f64, n_s: f64) -> Option<(TmstParams, TwoModeMoments)> {
    let p = TmstParams::from_signal_mean(nu, n_s).ok()?;
    Some((p, tmst_moments(p)))
}

struct ReceiverCtx<'a> {
    conv: &'a EomCoefficients,
    n_m: f64,
    ch: &'a TargetChannel,
}

fn receiver_point(ctx: &ReceiverCtx, nu: f64, n_s: f64, mem: &MemoryLine, k: Resolution) -> (Vec<Cell>, &'static str) {
    const WIDTH: usize = 9;
    let Some((p, m)) = source_state(nu, n_s) else {
        return (vec![Cell::Missing; WIDTH], "unavailable");
    };
    let head = [p.r().into(), advantage_approx(&m, mem).ok().into(), advantage_exact(&m, mem, ctx.ch).ok().map(|e| e.f).into()];
    let (tail, status) = match f_smpc(k, ctx.conv, ctx.n_m, ctx.ch, mem, &m, None) {
        Ok(a) => (
            vec![a.f.into(), a.snr.into(), a.gamma_ci.into(), a.reflectivity.into(), a.n_c0.into(), a.n_c1.into()],
            if a.degenerate { "degenerate" } else { "ok" },
        ),
        Err(QiError::Regime { .. }) => (vec![Cell::Missing; 6], "regime_violated"),
        Err(_) => (vec![Cell::Missing; 6], "degenerate"),
    };
    (head.into_iter().chain(tail).collect(), status)
}

fn receiver(cfg: &SweepConfig) -> Result<Dataset, CliError> {
    let sc = scene(cfg)?;
    let conv = converter(cfg)?;
    let nu = cfg.fixed.nu.expect("resolved");
    TmstParams::new(nu, 0.0).map_err(CliError::physics("fixed.nu"))?;
    let n_ss = cfg.grids.axis("n_s").points();
    let ctx = ReceiverCtx { conv: &conv, n_m: sc.n_m, ch: &sc.ch };
    let mut ds = Dataset::new(columns(
        &ENV_COLUMNS,
        &[
            "converter_gamma_o", "converter_gamma_w", "nu", "eta", "k", "n_s", "r", "f_approx", "f_exact", "f_smpc",
            "snr", "gamma_ci", "reflectivity", "n_c0", "n_c1", "status",
        ],
    ));
    let mut echo = echo_env(cfg, sc.n_m);
    echo.extend([cfg.fixed.converter.gamma_o.into(), cfg.fixed.converter.gamma_w.into(), nu.into()]);
    for mem in &sc.mems {
        for k in cfg.resolutions() {
            let pts: Vec<_> = n_ss.par_iter().map(|&n_s| receiver_point(&ctx, nu, n_s, mem, k)).collect();
            for ((cells, status), &n_s) in pts.into_iter().zip(&n_ss) {
                let mut row = echo.clone();
                row.extend([mem.eta().into(), k.to_string().into(), n_s.into()]);
                row.extend(cells);
                row.push(status.into());
                ds.push(row);
            }
        }
    }
    Ok(ds)
}

// ---------------------------------------------------------------- montecarlo

fn montecarlo(cfg: &SweepConfig) -> Result<Dataset, CliError> {
    let sc = scene(cfg)?;
    let conv = converter(cfg)?;
    let f = &cfg.fixed;
    let (nu, n_s) = (f.nu.expect("resolved"), f.n_s.expect("resolved"));
    let params = TmstParams::from_signal_mean(nu, n_s).map_err(CliError::physics("fixed.nu / fixed.n_s"))?;
    let input = tmst_moments(params);

    let mut ds = Dataset::new(columns(
        &ENV_COLUMNS,
        &[
            "converter_gamma_o", "converter_gamma_w", "nu", "n_s", "eta", "k", "seed", "trials", "m", "mean0",
            "mean1", "snr", "snr_m", "chernoff_prediction", "p_err", "ci_halfwidth", "raw_sum", "threshold",
            "status",
        ],
    ));
    let mut echo = echo_env(cfg, sc.n_m);
    echo.extend([f.converter.gamma_o.into(), f.converter.gamma_w.into(), nu.into(), n_s.into()]);
    let mut fits = Vec::new();

    for mem in &sc.mems {
        for k in cfg.resolutions() {
            let ctx = format!("operating point eta = {}, k = {k}", mem.eta());
            let moments = converter_output_moments(&conv, sc.n_m, &sc.ch, mem, &input)
                .map_err(CliError::physics(ctx.clone()))?;
            let rx = SmpcReceiver::tuned(&moments, k).map_err(CliError::physics(ctx.clone()))?;
            let stats = smpc_stats(&rx, &moments).map_err(CliError::physics(ctx.clone()))?;
            let snr = qimem::advantage_metrics::snr(&stats.stats).map_err(CliError::physics(ctx.clone()))?;
            let source = ObservableSource::from_stats(&stats, k).map_err(CliError::physics(ctx.clone()))?;
            let mut points = Vec::new();
            for &m in &f.shots {
                let exp = DetectionExperiment::new(m, f.trials, f.seed, source).map_err(CliError::physics(ctx.clone()))?;
                let est = estimate_error_probability(&exp).map_err(CliError::physics(ctx.clone()))?;
                points.push((m, est.p_err));
                let mut row = echo.clone();
                row.extend([
                    mem.eta().into(),
                    k.to_string().into(),
                    f.seed.into(),
                    f.trials.into(),
                    m.into(),
                    stats.stats.mean0.into(),
                    stats.stats.mean1.into(),
                    snr.into(),
                    (snr * m as f64).into(),
                    chernoff_prediction(snr, m).into(),
                    est.p_err.into(),
                    est.ci_halfwidth.into(),
                    est.raw_sum.into(),
                    est.threshold_used.into(),
                    if est.degenerate { "degenerate" } else { "ok" }.into(),
                ]);
                ds.push(row);
            }
            let fit = match exponent_slope(&points) {
                Ok(slope) => json!({
                    "eta": mem.eta(),
                    "k": k.to_string(),
                    "slope": slope,
                    "minus_snr": -snr,
                    "relative_deviation": (slope + snr) / snr,
                }),
                Err(e) => json!({ "eta": mem.eta(), "k": k.to_string(), "slope": null, "note": e.to_string() }),
            };
            fits.push(fit);
        }
    }
    ds.summary.insert("exponent_fits".into(), Value::Array(fits));
    ds.summary.insert(
        "note".into(),
        "slope is the least-squares fit of ln p_err against m; it approaches -snr only once snr*m is of order 1 or larger"
            .into(),
    );
    Ok(ds)
}

// ---------------------------------------------------------------- range

/// Maximum range often quoted for 0.14 dB/km fiber, which the exponential
/// loss law does not reproduce.
const QUOTED_RANGE_KM: f64 = 21.21;

fn range(cfg: &SweepConfig) -> Result<Dataset, CliError> {
    let alpha = cfg.fixed.alpha_db_per_km;
    let half = fiber_length_for(alpha, HALF).map_err(CliError::physics("fixed.alpha_db_per_km"))?;
    let mut ds = Dataset::new(vec!["alpha_db_per_km", "length_km", "eta", "advantage_possible", "status"]);
    for l in cfg.grids.axis("length_km").points() {
        match memory_from_fiber(alpha, l) {
            Ok(mem) => ds.push(vec![alpha.into(), l.into(), mem.eta().into(), (mem.eta() > HALF).into(), "ok".into()]),
            Err(_) => ds.push(vec![alpha.into(), l.into(), Cell::Missing, Cell::Missing, "invalid".into()]),
        }
    }
    ds.summary.insert("half_transmission_length_km".into(), half.into());
    ds.summary.insert(
        "note".into(),
        format!(
            "eta = 10^(-alpha*L/10) reaches 1/2 at L = {half:.3} km for alpha = {alpha} dB/km; \
             the frequently quoted {QUOTED_RANGE_KM} km is not reproduced by this loss law"
        )
        .into(),
    );
    Ok(ds)
}

// ---------------------------------------------------------------- optimize

/// Closed-form and numeric optimum for one memory efficiency.
pub struct OptimumComparison {
    pub closed_form: Result<f64, QiError>,
    pub numeric: qimem::optimize::Maximum,
    pub f_closed_form: Option<f64>,
}

pub fn compare_r(nu: f64, mem: &MemoryLine) -> Result<OptimumComparison, QiError> {
    let f = |r: f64| TmstParams::new(nu, r).and_then(|p| advantage_tmst(p, mem)).unwrap_or(f64::NEG_INFINITY);
    let numeric = maximize_1d(f, 0.0, R_SEARCH_MAX, DEFAULT_TOL)?;
    let closed_form = r_optimal(nu, mem);
    let f_closed_form = closed_form.as_ref().ok().map(|&r| f(r));
    Ok(OptimumComparison { closed_form, numeric, f_closed_form })
}

pub fn compare_gamma_o(gamma_w: f64, mem: &MemoryLine, n_m: f64) -> Result<OptimumComparison, QiError> {
    let f = |go: f64| {
        Cooperativities::new(go, gamma_w)
            .and_then(|c| advantage_coop(c, mem, n_m))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let numeric = maximize_1d(f, 0.0, gamma_w, DEFAULT_TOL)?;
    let closed_form = gamma_o_optimal(gamma_w, mem, n_m);
    let f_closed_form = closed_form.as_ref().ok().map(|&g| f(g)).filter(|v| v.is_finite());
    Ok(OptimumComparison { closed_form, numeric, f_closed_form })
}

fn optimize(cfg: &SweepConfig) -> Result<Dataset, CliError> {
    let sc = scene(cfg)?;
    let f = &cfg.fixed;
    let target = f.target.expect("resolved");
    let mut ds = Dataset::new(columns(
        &ENV_COLUMNS,
        &[
            "target", "eta", "nu", "gamma_w", "closed_form", "numeric", "abs_diff", "f_closed_form", "f_numeric",
            "iterations", "converged", "note", "status",
        ],
    ));
    let echo = echo_env(cfg, sc.n_m);
    for mem in &sc.mems {
        let (name, nu, gw, cmp) = match target {
            Target::R => {
                let nu = f.nu.expect("resolved");
                ("r", Cell::from(nu), Cell::Missing, compare_r(nu, mem).map_err(CliError::physics("fixed.nu"))?)
            }
            Target::GammaO => {
                let gw = f.gamma_w.expect("resolved");
                let cmp = compare_gamma_o(gw, mem, sc.n_m).map_err(CliError::physics("fixed.gamma_w"))?;
                ("gamma_o", Cell::Missing, Cell::from(gw), cmp)
            }
        };
        let (closed, diff, note, status) = match &cmp.closed_form {
            Ok(c) => {
                let diff = (c - cmp.numeric.arg).abs();
                let note = if *c == 0.0 {
                    "boundary optimum at r = 0".to_string()
                } else if diff > OPTIMUM_AGREEMENT {
                    format!("closed form and numeric maximizer differ by more than {OPTIMUM_AGREEMENT:e}")
                } else {
                    String::new()
                };
                (Cell::from(*c), Cell::from(diff), note, "ok")
            }
            Err(e) => (Cell::Missing, Cell::Missing, e.to_string(), "closed_form_unavailable"),
        };
        let mut row = echo.clone();
        row.extend([
            name.into(),
            mem.eta().into(),
            nu,
            gw,
            closed,
            cmp.numeric.arg.into(),
            diff,
            cmp.f_closed_form.into(),
            cmp.numeric.value.into(),
            (cmp.numeric.iterations as u64).into(),
            cmp.numeric.converged.into(),
            note.into(),
            status.into(),
        ]);
        ds.push(row);
    }
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Axis;

    fn cell(ds: &Dataset, row: usize, col: &str) -> Cell {
        ds.rows[row][ds.column(col).unwrap()].clone()
    }

    fn num(ds: &Dataset, row: usize, col: &str) -> f64 {
        match cell(ds, row, col) {
            Cell::Num(x) => x,
            other => panic!("{col}: {other:?}"),
        }
    }

    #[test]
    fn tmst_grid_hits_reference_point() {
        let mut cfg = SweepConfig::default_for(Mode::Tmst);
        cfg.grids.nu = Some(Axis::linear(1.0, 1.1, 6));
        cfg.grids.r = Some(Axis::linear(0.327, 0.427, 2));
        let ds = run(&cfg).unwrap();
        assert_eq!(ds.rows.len(), 12);
        // nu = 1.02, r = 0.327
        let i = 2;
        assert!((num(&ds, i, "nu") - 1.02).abs() < 1e-12);
        assert!((num(&ds, i, "f_approx") - 1.67).abs() < 0.01);
        assert_eq!(cell(&ds, i, "status"), Cell::from("ok"));
    }

    #[test]
    fn tmst_marks_unit_crossing() {
        let mut cfg = SweepConfig::default_for(Mode::Tmst);
        cfg.fixed.eta = Some(vec![0.6]);
        cfg.grids.nu = Some(Axis::linear(1.05, 1.1, 2));
        cfg.grids.r = Some(Axis::linear(0.01, 1.0, 50));
        let ds = run(&cfg).unwrap();
        let marks = ds.rows.iter().filter(|r| r[ds.column("f1_crossing").unwrap()] == Cell::Flag(true)).count();
        assert!(marks >= 2, "{marks}");
    }

    #[test]
    fn coop_statuses() {
        let mut cfg = SweepConfig::default_for(Mode::Coop);
        cfg.grids.gamma_o = Some(Axis::linear(247.0, 5754.0, 3));
        cfg.grids.gamma_w = Some(Axis::linear(3000.0, 3001.0, 2));
        let ds = run(&cfg).unwrap();
        assert!((num(&ds, 0, "f_closed") - 1.33).abs() < 0.01);
        let statuses: Vec<_> = (0..3).map(|i| cell(&ds, i, "status")).collect();
        assert_eq!(statuses, vec!["ok".into(), "closed_form_invalid".into(), "unstable".into()]);
        assert_eq!(cell(&ds, 2, "f_approx"), Cell::Missing);
        assert!(matches!(cell(&ds, 1, "f_approx"), Cell::Num(_)));
    }

    #[test]
    fn receiver_marks_unavailable_thermal_points() {
        let mut cfg = SweepConfig::default_for(Mode::Receiver);
        cfg.fixed.nu = Some(1.02);
        cfg.fixed.eta = Some(vec![1.0]);
        cfg.grids.n_s = Some(Axis::log(1e-3, 1e-1, 3));
        let ds = run(&cfg).unwrap();
        assert_eq!(cell(&ds, 0, "status"), Cell::from("unavailable"));
        assert_eq!(cell(&ds, 2, "status"), Cell::from("ok"));
    }

    #[test]
    fn optimize_reference_points() {
        let mut cfg = SweepConfig::default_for(Mode::Optimize);
        cfg.fixed.eta = Some(vec![0.6]);
        let ds = run(&cfg).unwrap();
        assert!((num(&ds, 0, "closed_form") - 0.506).abs() < 1e-3);
        assert!(num(&ds, 0, "abs_diff") < 1e-6);

        cfg.fixed.nu = Some(1.0);
        let ds = run(&cfg).unwrap();
        assert_eq!(num(&ds, 0, "closed_form"), 0.0);
        assert!(num(&ds, 0, "abs_diff") < 1e-6);
        assert_eq!(cell(&ds, 0, "note"), Cell::from("boundary optimum at r = 0"));

        cfg.fixed.eta = Some(vec![0.4]);
        let ds = run(&cfg).unwrap();
        assert_eq!(cell(&ds, 0, "status"), Cell::from("closed_form_unavailable"));

        let mut cfg = SweepConfig::from_json(r#"{"mode":"optimize","fixed":{"target":"gamma_o","eta":[0.8]}}"#).unwrap();
        cfg.resolve().unwrap();
        let ds = run(&cfg).unwrap();
        assert!((num(&ds, 0, "closed_form") - 330.0).abs() < 1.0);
    }

    #[test]
    fn range_summary() {
        let ds = run(&SweepConfig::default_for(Mode::Range)).unwrap();
        let half = ds.summary["half_transmission_length_km"].as_f64().unwrap();
        assert!((half - 21.50).abs() < 0.01);
        assert!(ds.summary["note"].as_str().unwrap().contains("21.21"));
    }

    #[test]
    fn bad_fixed_parameters_are_physics_errors() {
        let mut cfg = SweepConfig::default_for(Mode::Tmst);
        cfg.fixed.kappa = 1.5;
        assert_eq!(run(&cfg).unwrap_err().exit_code(), 3);
        let mut cfg = SweepConfig::default_for(Mode::Receiver);
        cfg.fixed.converter.gamma_o = 1000.0;
        assert_eq!(run(&cfg).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn rows_echo_fixed_parameters() {
        let mut cfg = SweepConfig::default_for(Mode::Coop);
        cfg.grids.gamma_o = Some(Axis::log(1.0, 100.0, 3));
        cfg.grids.gamma_w = Some(Axis::log(10.0, 100.0, 2));
        let ds = run(&cfg).unwrap();
        for i in 0..ds.rows.len() {
            assert_eq!(num(&ds, i, "kappa"), 0.01);
            assert_eq!(num(&ds, i, "n_b"), 600.0);
            assert_eq!(num(&ds, i, "t_eom"), 0.03);
        }
    }
}
