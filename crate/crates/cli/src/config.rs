//! JSON run configuration.
//!
//! Every section rejects unknown keys. Optional fields are filled with
//! per-mode defaults by [`SweepConfig::resolve`], so the echoed configuration
//! is always fully explicit.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use qimem::smpc_receiver::Resolution;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Tmst,
    Coop,
    Receiver,
    Montecarlo,
    Range,
    Optimize,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Tmst => "tmst",
            Mode::Coop => "coop",
            Mode::Receiver => "receiver",
            Mode::Montecarlo => "montecarlo",
            Mode::Range => "range",
            Mode::Optimize => "optimize",
        }
    }

    /// Grid axes the mode sweeps.
    fn axes(self) -> &'static [&'static str] {
        match self {
            Mode::Tmst => &["nu", "r"],
            Mode::Coop => &["gamma_o", "gamma_w"],
            Mode::Receiver => &["n_s"],
            Mode::Range => &["length_km"],
            Mode::Montecarlo | Mode::Optimize => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Axis {
    pub const fn linear(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps, scale: Scale::Linear }
    }

    pub const fn log(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps, scale: Scale::Log }
    }

    fn validate(&self, field: &str) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::config(Some(field.to_string()), msg));
        if !(self.min.is_finite() && self.max.is_finite()) {
            return bad("bounds must be finite".into());
        }
        if self.steps < 2 {
            return bad(format!("steps must be >= 2 (got {})", self.steps));
        }
        if !(self.min < self.max) {
            return bad(format!("min must be < max (got {} .. {})", self.min, self.max));
        }
        if self.scale == Scale::Log && !(self.min > 0.0) {
            return bad(format!("log-scale axis needs positive bounds (got min = {})", self.min));
        }
        Ok(())
    }

    /// Grid points; endpoints are exact.
    pub fn points(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == last {
                    return self.max;
                }
                let t = i as f64 / last as f64;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * t,
                    Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grids {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_o: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_w: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_s: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_km: Option<Axis>,
}

impl Grids {
    fn entries(&self) -> [(&'static str, Option<Axis>); 6] {
        [
            ("nu", self.nu),
            ("r", self.r),
            ("gamma_o", self.gamma_o),
            ("gamma_w", self.gamma_w),
            ("n_s", self.n_s),
            ("length_km", self.length_km),
        ]
    }

    /// Unwraps an axis that `resolve` has filled in.
    pub fn axis(&self, name: &str) -> Axis {
        self.entries()
            .into_iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, a)| a)
            .unwrap_or_else(|| panic!("grid axis {name} not resolved"))
    }
}

/// Cooperativity pair of an EOM device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoopPair {
    pub gamma_o: f64,
    pub gamma_w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    R,
    GammaO,
}

/// Detector resolution as written in a config: a positive integer or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KSpec(pub Resolution);

impl Serialize for KSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.cap() {
            Some(k) => s.serialize_u32(k),
            None => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for KSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = KSpec;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<KSpec, E> {
                let k = u32::try_from(v).map_err(|_| E::custom("resolution too large"))?;
                Resolution::bounded(k).map(KSpec).map_err(|_| E::custom("resolution must be >= 1"))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<KSpec, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom("resolution must be >= 1"))
                    .and_then(|v| self.visit_u64(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<KSpec, E> {
                if v == "inf" {
                    Ok(KSpec(Resolution::Unbounded))
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Fixed (non-swept) parameters. Unset options take per-mode defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixed {
    #[serde(default = "defaults::kappa")]
    pub kappa: f64,
    #[serde(default = "defaults::n_b")]
    pub n_b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<f64>>,
    /// EOM temperature (K).
    #[serde(default = "defaults::t_eom")]
    pub t_eom: f64,
    /// Mechanical frequency (Hz).
    #[serde(default = "defaults::freq_mech")]
    pub freq_mech: f64,
    /// Microwave frequency (Hz).
    #[serde(default = "defaults::freq_microwave")]
    pub freq_microwave: f64,
    /// Optical pump wavelength (m).
    #[serde(default = "defaults::pump_wavelength")]
    pub pump_wavelength: f64,
    /// Receiver-side converter.
    #[serde(default = "defaults::converter")]
    pub converter: CoopPair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    /// Transmitter microwave cooperativity: the `optimize` target `gamma_o`
    /// uses it, and in `coop` mode it replaces the `gamma_w` axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolutions: Option<Vec<KSpec>>,
    /// Signal energy of the Monte-Carlo operating point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_s: Option<f64>,
    #[serde(default = "defaults::shots")]
    pub shots: Vec<u64>,
    #[serde(default = "defaults::trials")]
    pub trials: u64,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    #[serde(default = "defaults::alpha")]
    pub alpha_db_per_km: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
}

impl Default for Fixed {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields have defaults")
    }
}

mod defaults {
    use super::CoopPair;
    pub fn kappa() -> f64 {
        0.01
    }
    pub fn n_b() -> f64 {
        600.0
    }
    pub fn t_eom() -> f64 {
        0.03
    }
    pub fn freq_mech() -> f64 {
        10e6
    }
    pub fn freq_microwave() -> f64 {
        10e9
    }
    pub fn pump_wavelength() -> f64 {
        1064e-9
    }
    pub fn converter() -> CoopPair {
        CoopPair { gamma_o: 60.0, gamma_w: 600.0 }
    }
    pub fn shots() -> Vec<u64> {
        vec![20_000, 40_000, 80_000]
    }
    pub fn trials() -> u64 {
        100_000
    }
    pub fn seed() -> u64 {
        1
    }
    pub fn alpha() -> f64 {
        0.14
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub mode: Mode,
    #[serde(default)]
    pub grids: Grids,
    #[serde(default)]
    pub fixed: Fixed,
    #[serde(default)]
    pub output: OutputSpec,
}

impl SweepConfig {
    /// All-default configuration for `mode`, already resolved.
    pub fn default_for(mode: Mode) -> Self {
        let mut cfg = Self {
            mode,
            grids: Grids::default(),
            fixed: Fixed::default(),
            output: OutputSpec::default(),
        };
        cfg.resolve().expect("defaults are valid");
        cfg
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = (path != ".").then_some(path);
            CliError::config(field, e.into_inner().to_string())
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(None, format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Fills per-mode defaults and checks the schema invariants. Physical
    /// ranges (κ, η, ...) are left to the library.
    pub fn resolve(&mut self) -> Result<(), CliError> {
        let mode = self.mode;
        let g = &mut self.grids;
        for (name, axis) in g.entries() {
            if axis.is_some() && !mode.axes().contains(&name) {
                return Err(CliError::config(
                    Some(format!("grids.{name}")),
                    format!("axis is not swept in mode {}", mode.name()),
                ));
            }
        }
        match mode {
            Mode::Tmst => {
                g.nu.get_or_insert(Axis::linear(1.0, 1.1, 201));
                g.r.get_or_insert(Axis::linear(0.01, 1.0, 201));
            }
            Mode::Coop => {
                g.gamma_o.get_or_insert(Axis::log(1.0, 2000.0, 201));
                // A fixed gamma_w replaces the gamma_w axis (F-vs-gamma_o curves).
                match (self.fixed.gamma_w, g.gamma_w) {
                    (Some(_), Some(_)) => {
                        return Err(CliError::config(
                            Some("fixed.gamma_w".into()),
                            "gamma_w is either fixed or swept, not both".into(),
                        ))
                    }
                    (None, None) => g.gamma_w = Some(Axis::log(10.0, 1e4, 201)),
                    _ => {}
                }
            }
            Mode::Receiver => {
                g.n_s.get_or_insert(Axis::log(1e-6, 1e-1, 201));
            }
            Mode::Range => {
                g.length_km.get_or_insert(Axis::linear(0.0, 50.0, 201));
            }
            Mode::Montecarlo | Mode::Optimize => {}
        }
        for (name, axis) in g.entries() {
            if let Some(a) = axis {
                a.validate(&format!("grids.{name}"))?;
            }
        }

        let f = &mut self.fixed;
        let eta_default: &[f64] = match mode {
            Mode::Receiver | Mode::Optimize => &[1.0, 0.8, 0.6],
            _ => &[1.0],
        };
        let eta = f.eta.get_or_insert_with(|| eta_default.to_vec());
        if eta.is_empty() {
            return Err(CliError::config(Some("fixed.eta".into()), "list must not be empty".into()));
        }
        if mode == Mode::Optimize {
            let target = *f.target.get_or_insert(Target::R);
            match target {
                Target::R => {
                    f.nu.get_or_insert(1.02);
                }
                Target::GammaO => {
                    f.gamma_w.get_or_insert(3000.0);
                }
            }
        } else if f.target.is_some() {
            return Err(CliError::config(Some("fixed.target".into()), "only used by mode optimize".into()));
        }
        if matches!(mode, Mode::Receiver | Mode::Montecarlo) {
            f.nu.get_or_insert(1.0);
            let ks = f.resolutions.get_or_insert_with(|| match mode {
                Mode::Receiver => vec![KSpec(Resolution::ON_OFF), KSpec(Resolution::Unbounded)],
                _ => vec![KSpec(Resolution::ON_OFF)],
            });
            if ks.is_empty() {
                return Err(CliError::config(Some("fixed.resolutions".into()), "list must not be empty".into()));
            }
        }
        if mode == Mode::Montecarlo {
            f.n_s.get_or_insert(1e-4);
            if f.shots.is_empty() || f.shots.contains(&0) {
                return Err(CliError::config(Some("fixed.shots".into()), "need a non-empty list of positive shot counts".into()));
            }
            if f.trials == 0 {
                return Err(CliError::config(Some("fixed.trials".into()), "must be >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn eta(&self) -> &[f64] {
        self.fixed.eta.as_deref().expect("resolved")
    }

    pub fn resolutions(&self) -> Vec<Resolution> {
        self.fixed.resolutions.as_ref().expect("resolved").iter().map(|k| k.0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_points() {
        let a = Axis::log(1e-6, 1e-1, 6);
        let p = a.points();
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], 1e-6);
        assert_eq!(p[5], 1e-1);
        assert!((p[2] / 1e-4 - 1.0).abs() < 1e-12);
        let l = Axis::linear(0.0, 1.0, 3).points();
        assert_eq!(l, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn defaults_fill_in() {
        let c = SweepConfig::default_for(Mode::Tmst);
        assert_eq!(c.grids.axis("nu").steps, 201);
        assert_eq!(c.eta(), &[1.0]);
        let c = SweepConfig::default_for(Mode::Optimize);
        assert_eq!(c.fixed.target, Some(Target::R));
        assert_eq!(c.fixed.nu, Some(1.02));
        let c = SweepConfig::default_for(Mode::Receiver);
        assert_eq!(c.resolutions(), vec![Resolution::ON_OFF, Resolution::Unbounded]);
    }

    #[test]
    fn unknown_key_reports_path() {
        let err = SweepConfig::from_json(r#"{"mode":"tmst","fixed":{"kapa":0.1}}"#).unwrap_err();
        match err {
            CliError::Config { field, message } => {
                assert_eq!(field.as_deref(), Some("fixed.kapa"));
                assert!(message.contains("unknown field"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_area_axis_rejected() {
        let mut c = SweepConfig::from_json(
            r#"{"mode":"tmst","grids":{"r":{"min":0.5,"max":0.5,"steps":2}}}"#,
        )
        .unwrap();
        let err = c.resolve().unwrap_err();
        assert!(matches!(err, CliError::Config { field: Some(ref f), .. } if f == "grids.r"));
    }

    #[test]
    fn axis_validation() {
        for bad in [
            r#"{"mode":"tmst","grids":{"r":{"min":0.0,"max":1.0,"steps":1}}}"#,
            r#"{"mode":"coop","grids":{"gamma_o":{"min":0.0,"max":10.0,"steps":5,"scale":"log"}}}"#,
            r#"{"mode":"coop","grids":{"r":{"min":0.0,"max":1.0,"steps":5}}}"#,
            r#"{"mode":"tmst","fixed":{"eta":[]}}"#,
            r#"{"mode":"tmst","fixed":{"target":"r"}}"#,
            r#"{"mode":"montecarlo","fixed":{"shots":[0]}}"#,
        ] {
            let mut c = SweepConfig::from_json(bad).unwrap();
            assert!(c.resolve().is_err(), "{bad}");
        }
    }

    #[test]
    fn coop_gamma_w_fixed_or_swept() {
        let mut c = SweepConfig::from_json(r#"{"mode":"coop","fixed":{"gamma_w":3000}}"#).unwrap();
        c.resolve().unwrap();
        assert!(c.grids.gamma_w.is_none());
        let mut c = SweepConfig::from_json(
            r#"{"mode":"coop","fixed":{"gamma_w":3000},"grids":{"gamma_w":{"min":1,"max":2,"steps":2}}}"#,
        )
        .unwrap();
        assert!(c.resolve().is_err());
    }

    #[test]
    fn resolutions_parse() {
        let c = SweepConfig::from_json(r#"{"mode":"receiver","fixed":{"resolutions":[1,3,"inf"]}}"#).unwrap();
        let ks = c.fixed.resolutions.unwrap();
        assert_eq!(ks[1].0.cap(), Some(3));
        assert_eq!(ks[2].0, Resolution::Unbounded);
        for bad in [r#"[0]"#, r#"["infinite"]"#, r#"[-2]"#] {
            let text = format!(r#"{{"mode":"receiver","fixed":{{"resolutions":{bad}}}}}"#);
            assert!(SweepConfig::from_json(&text).is_err(), "{bad}");
        }
    }

    #[test]
    fn echo_roundtrips() {
        let c = SweepConfig::default_for(Mode::Receiver);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(SweepConfig::from_json(&text).unwrap(), c);
    }
}
