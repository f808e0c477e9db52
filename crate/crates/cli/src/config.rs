//! Run configuration: JSON in, validated `RunConfig` out.

use std::path::PathBuf;

use krylovlab::chaos::{DisorderSpec, DisorderTarget, SffKind, DEFAULT_BINS};
use krylovlab::fits::{SweepProbe, DEFAULT_GROWTH_RANGE};
use krylovlab::krylov::{LanczosOptions, TimeGrid};
use krylovlab::pipeline::SeedSpec;
use krylovlab::{ModelSpec, SectorSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::RunError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub sector: SectorSpec,
    pub seed_operator: SeedSpec,
    pub probe: Probe,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disorder: Option<DisorderConfig>,
    #[serde(default)]
    pub time_grid: TimeGrid,
    #[serde(default)]
    pub fit: FitConfig,
    #[serde(default)]
    pub lanczos: LanczosOptions,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub threads: Threads,
    /// Free-form preset metadata; ignored by the runner.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<PresetMeta>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Probe {
    /// Lanczos coefficients only.
    Lanczos,
    /// Lanczos coefficients, wavefunction and complexity.
    Complexity,
    /// Level-spacing ratios, optionally disorder averaged.
    RStats {
        #[serde(default = "default_bins")]
        bins: usize,
    },
    /// Spectral form factor of the disorder ensemble.
    Sff {
        #[serde(default)]
        beta: f64,
        #[serde(default = "default_sff_kind")]
        average: SffKind,
    },
    /// One scalar metric per power-law exponent.
    SweepAlpha { alphas: Vec<f64>, metric: SweepProbe },
}

fn default_bins() -> usize {
    DEFAULT_BINS
}

fn default_sff_kind() -> SffKind {
    SffKind::Annealed
}

/// Disorder ensemble; the RNG seed comes from the run's `master_seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderConfig {
    pub n_samples: usize,
    pub sigma: f64,
    #[serde(default)]
    pub mu: f64,
    pub target: DisorderTarget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FitConfig {
    /// Inclusive `[n_lo, n_hi]` for `b_n = delta n / ln n + c`.
    pub growth_range: [usize; 2],
    /// Trailing fraction of the log-time span used for saturation.
    pub saturation_window: f64,
    /// Ramp window `[t_lo, t_hi]`; detected from the curve when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ramp_window: Option<[f64; 2]>,
    /// Trailing decades averaged for the SFF plateau.
    pub plateau_decades: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            growth_range: DEFAULT_GROWTH_RANGE,
            saturation_window: 0.1,
            ramp_window: None,
            plateau_decades: 2.0,
        }
    }
}

/// Worker count: `"auto"` or a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Threads {
    #[default]
    Auto,
    Count(usize),
}

impl Serialize for Threads {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Threads::Auto => s.serialize_str("auto"),
            Threads::Count(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Name(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(0) => Err(serde::de::Error::custom("threads must be positive")),
            Raw::Count(n) => Ok(Threads::Count(n)),
            Raw::Name(s) if s == "auto" => Ok(Threads::Auto),
            Raw::Name(s) => Err(serde::de::Error::custom(format!(
                "threads must be \"auto\" or a positive integer, got \"{s}\""
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetMeta {
    pub description: String,
    /// Partial config merged over the preset by `--ci`, with the reason.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_overrides: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_note: Option<String>,
}

impl RunConfig {
    pub fn disorder_spec(&self) -> Option<DisorderSpec> {
        self.disorder.as_ref().map(|d| DisorderSpec {
            n_samples: d.n_samples,
            sigma: d.sigma,
            mu: d.mu,
            master_seed: self.master_seed,
            target: d.target,
        })
    }

    /// Cross-field checks that serde cannot express.
    pub fn validate(&self) -> Result<(), RunError> {
        let invalid = |path: &str, msg: String| RunError::Schema {
            path: path.to_string(),
            message: msg,
        };
        self.model
            .validate()
            .map_err(|e| invalid("model", e.to_string()))?;
        self.sector
            .validate_for(self.model.family, self.model.sites, self.model.h.unwrap_or(0.0))
            .map_err(|e| invalid("sector", e.to_string()))?;
        let site = self.seed_operator.site;
        if site < 1 || site > self.model.sites {
            return Err(invalid(
                "seed_operator.site",
                format!("site {site} is outside 1..={}", self.model.sites),
            ));
        }
        self.time_grid
            .validate()
            .map_err(|e| invalid("time_grid", e.to_string()))?;
        if !(self.lanczos.tol_rel > 0.0) {
            return Err(invalid("lanczos.tol_rel", "must be positive".into()));
        }
        let [lo, hi] = self.fit.growth_range;
        if lo < 1 || hi <= lo {
            return Err(invalid(
                "fit.growth_range",
                format!("need 1 <= n_lo < n_hi, got [{lo}, {hi}]"),
            ));
        }
        let w = self.fit.saturation_window;
        if !(w > 0.0 && w < 1.0) {
            return Err(invalid("fit.saturation_window", format!("{w} is not in (0, 1)")));
        }
        if !(self.fit.plateau_decades > 0.0) {
            return Err(invalid("fit.plateau_decades", "must be positive".into()));
        }
        if let Some(d) = self.disorder_spec() {
            d.validate().map_err(|e| invalid("disorder", e.to_string()))?;
            d.perturb(&self.model, 0.0)
                .map_err(|e| invalid("disorder.target", e.to_string()))?;
        }
        match &self.probe {
            Probe::RStats { bins } if *bins == 0 => {
                return Err(invalid("probe.bins", "must be positive".into()));
            }
            Probe::Sff { beta, .. } if !(*beta >= 0.0) || !beta.is_finite() => {
                return Err(invalid("probe.beta", format!("{beta} must be finite and >= 0")));
            }
            Probe::SweepAlpha { alphas, metric } => {
                if self.model.alpha.is_none() {
                    return Err(invalid(
                        "probe",
                        format!("{:?} has no exponent alpha to sweep", self.model.family),
                    ));
                }
                if alphas.is_empty() {
                    return Err(invalid("probe.alphas", "empty list".into()));
                }
                if let Some(a) = alphas.iter().find(|a| !(**a >= 0.0) || !a.is_finite()) {
                    return Err(invalid("probe.alphas", format!("alpha = {a} must be >= 0")));
                }
                if *metric == SweepProbe::MeanRTilde && self.disorder.is_none() {
                    return Err(invalid("disorder", "mean_r_tilde sweep needs a disorder block".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Recursively overlays `patch` onto `base`; objects merge, other values replace.
pub fn merge(base: &mut Value, patch: &Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                merge(b.entry(k.clone()).or_insert(Value::Null), v);
            }
        }
        (b, p) => *b = p.clone(),
    }
}

/// Parses and validates a config. With `ci` set, `meta.ci_overrides` is
/// merged in first.
pub fn parse_config(text: &str, ci: bool) -> Result<RunConfig, RunError> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| RunError::Schema {
        path: String::new(),
        message: format!("malformed JSON: {e}"),
    })?;
    if ci {
        let patch = value
            .pointer("/meta/ci_overrides")
            .cloned()
            .filter(|v| !v.is_null());
        if let Some(patch) = patch {
            merge(&mut value, &patch);
        }
    }
    let config: RunConfig = serde_path_to_error::deserialize(value).map_err(|e| RunError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "model": {"family": "local_tfim", "L": 5, "g": 1.0, "h": 0.0},
        "sector": {"parity": 1},
        "seed_operator": {"kind": "single_sz", "site": 3},
        "probe": {"kind": "lanczos"}
    }"#;

    #[test]
    fn defaults_fill_in() {
        let c = parse_config(MINIMAL, false).unwrap();
        assert_eq!(c.threads, Threads::Auto);
        assert_eq!(c.fit.growth_range, [2, 25]);
        assert_eq!(c.time_grid, TimeGrid::default());
        assert_eq!(c.output_dir, PathBuf::from("out"));
    }

    #[test]
    fn round_trip() {
        let c = parse_config(MINIMAL, false).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(parse_config(&text, false).unwrap(), c);
    }

    #[test]
    fn unknown_key_reports_path() {
        let text = MINIMAL.replace(r#""g": 1.0"#, r#""gg": 1.0"#);
        match parse_config(&text, false) {
            Err(RunError::Schema { path, .. }) => assert!(path.starts_with("model"), "{path}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn threads_forms() {
        let t: Threads = serde_json::from_str("\"auto\"").unwrap();
        assert_eq!(t, Threads::Auto);
        let t: Threads = serde_json::from_str("4").unwrap();
        assert_eq!(t, Threads::Count(4));
        assert!(serde_json::from_str::<Threads>("0").is_err());
        assert!(serde_json::from_str::<Threads>("\"many\"").is_err());
    }

    #[test]
    fn merge_overlays_nested_keys() {
        let mut a: Value = serde_json::json!({"model": {"L": 13, "g": 1.0}, "x": 1});
        merge(&mut a, &serde_json::json!({"model": {"L": 9}}));
        assert_eq!(a, serde_json::json!({"model": {"L": 9, "g": 1.0}, "x": 1}));
    }

    #[test]
    fn sweep_requires_alpha() {
        let text = MINIMAL.replace(
            r#"{"kind": "lanczos"}"#,
            r#"{"kind": "sweep_alpha", "alphas": [1.0], "metric": "growth_rate"}"#,
        );
        assert!(parse_config(&text, false).is_err());
    }
}
