//! Least-squares fits and summary statistics for Lanczos and complexity data.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chaos::{ensemble_r_statistics, DisorderSpec};
use crate::csv::{fmt_f64, write_rows};
use crate::error::{Error, Result};
use crate::krylov::{evolve_wavefunction, ComplexityCurve, LanczosOptions, TimeGrid};
use crate::pipeline::{lanczos_in_sector, SeedSpec};
use crate::spin_models::ModelSpec;
use crate::symmetry::SectorSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of the data from the line.
    pub residual: f64,
    pub slope_stderr: f64,
    pub points: usize,
}

/// Ordinary least squares `y = slope * x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("linear fit needs 2 points, got {n}")));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let slope_stderr = if n > 2 {
        (ssr / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LinearFit {
        slope,
        intercept,
        residual: (ssr / nf).sqrt(),
        slope_stderr,
        points: n,
    })
}

/// Parameters of `b_n = delta * n / ln(n) + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub delta: f64,
    pub c: f64,
    pub n_range: [usize; 2],
    pub residual: f64,
    pub delta_stderr: f64,
}

/// Default inclusive fit range for [`fit_growth_rate`].
pub const DEFAULT_GROWTH_RANGE: [usize; 2] = [2, 25];

/// Fits `b_n = delta * n / ln(n) + c` over `n_min..=n_max`, where `b[0]` is `b_1`.
pub fn fit_growth_rate(b: &[f64], n_range: [usize; 2]) -> Result<GrowthFit> {
    let [lo, hi] = n_range;
    if lo < 2 {
        return Err(Error::InvalidArgument(format!(
            "n_min = {lo}: n / ln(n) is undefined below 2"
        )));
    }
    if hi > b.len() {
        return Err(Error::InsufficientData(format!(
            "fit range ends at n = {hi} but only {} coefficients exist",
            b.len()
        )));
    }
    if hi < lo + 2 {
        return Err(Error::InsufficientData(format!(
            "fit range [{lo}, {hi}] has fewer than 3 points"
        )));
    }
    let xs: Vec<f64> = (lo..=hi).map(|n| n as f64 / (n as f64).ln()).collect();
    let fit = linear_fit(&xs, &b[lo - 1..hi])?;
    Ok(GrowthFit {
        delta: fit.slope,
        c: fit.intercept,
        n_range,
        residual: fit.residual,
        delta_stderr: fit.slope_stderr,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Saturation {
    pub mean: f64,
    pub std: f64,
    pub points: usize,
    /// Relative spread of the window is at most [`PLATEAU_REL_STD`].
    pub plateaued: bool,
}

pub const PLATEAU_REL_STD: f64 = 0.05;

/// Mean and spread of `values` over the trailing `window_fraction` of the
/// logarithmic time span.
pub fn saturation_of(times: &[f64], values: &[f64], window_fraction: f64) -> Result<Saturation> {
    if !(window_fraction > 0.0 && window_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "window_fraction = {window_fraction} must lie in (0, 1)"
        )));
    }
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            found: values.len(),
        });
    }
    let positive: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(t, _)| **t > 0.0)
        .map(|(&t, &v)| (t, v))
        .collect();
    let (t_lo, t_hi) = positive.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(t, _)| {
        (lo.min(t), hi.max(t))
    });
    if positive.len() < 2 || t_hi <= t_lo {
        return Err(Error::InsufficientData("need a positive time range".into()));
    }
    let cut = t_hi.ln() - window_fraction * (t_hi.ln() - t_lo.ln());
    let window: Vec<f64> = positive
        .iter()
        .filter(|(t, _)| t.ln() >= cut)
        .map(|&(_, v)| v)
        .collect();
    let n = window.len() as f64;
    let mean = window.iter().sum::<f64>() / n;
    let std = (window.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let plateaued = std <= PLATEAU_REL_STD * mean.abs();
    Ok(Saturation {
        mean,
        std,
        points: window.len(),
        plateaued,
    })
}

pub fn saturation_value(curve: &ComplexityCurve, window_fraction: f64) -> Result<Saturation> {
    saturation_of(&curve.times, &curve.c_k, window_fraction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepProbe {
    GrowthRate,
    Saturation,
    MeanRTilde,
}

impl SweepProbe {
    pub fn metric(self) -> &'static str {
        match self {
            SweepProbe::GrowthRate => "delta",
            SweepProbe::Saturation => "saturation",
            SweepProbe::MeanRTilde => "mean_r_tilde",
        }
    }
}

/// Everything a sweep point needs besides `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSettings {
    pub sector: SectorSpec,
    pub seed: SeedSpec,
    pub lanczos: LanczosOptions,
    pub n_range: [usize; 2],
    pub time_grid: TimeGrid,
    pub window_fraction: f64,
    pub disorder: Option<DisorderSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub metric: String,
    pub value: f64,
    pub stderr: f64,
}

/// One α point; a failure is kept alongside the successful rows.
#[derive(Debug)]
pub struct SweepPoint {
    pub alpha: f64,
    pub outcome: Result<SweepRow>,
}

fn sweep_one(base: &ModelSpec, alpha: f64, probe: SweepProbe, s: &SweepSettings) -> Result<SweepRow> {
    if base.alpha.is_none() {
        return Err(Error::InvalidModel(format!(
            "{:?} has no exponent alpha to sweep",
            base.family
        )));
    }
    let spec = base.clone().with_alpha(alpha);
    let (value, stderr) = match probe {
        SweepProbe::GrowthRate => {
            let r = lanczos_in_sector(&spec, &s.sector, s.seed, &s.lanczos)?;
            let fit = fit_growth_rate(&r.b, s.n_range)?;
            (fit.delta, fit.delta_stderr)
        }
        SweepProbe::Saturation => {
            let r = lanczos_in_sector(&spec, &s.sector, s.seed, &s.lanczos)?;
            let curve = evolve_wavefunction(&r.b, &s.time_grid.values()?)?;
            let sat = saturation_value(&curve, s.window_fraction)?;
            (sat.mean, sat.std / (sat.points as f64).sqrt())
        }
        SweepProbe::MeanRTilde => {
            let disorder = s
                .disorder
                .clone()
                .ok_or_else(|| Error::InvalidArgument("mean_r_tilde sweep needs a disorder spec".into()))?;
            let stats = ensemble_r_statistics(&spec, &disorder, &s.sector)?;
            (stats.mean_r_tilde, stats.stderr)
        }
    };
    Ok(SweepRow {
        alpha,
        metric: probe.metric().to_string(),
        value,
        stderr,
    })
}

/// Runs `probe` for every exponent in parallel, in input order.
pub fn sweep_alpha(
    base: &ModelSpec,
    alphas: &[f64],
    probe: SweepProbe,
    settings: &SweepSettings,
) -> Result<Vec<SweepPoint>> {
    if alphas.is_empty() {
        return Err(Error::InvalidArgument("empty alpha list".into()));
    }
    Ok(alphas
        .par_iter()
        .map(|&alpha| SweepPoint {
            alpha,
            outcome: sweep_one(base, alpha, probe, settings),
        })
        .collect())
}

/// CSV `alpha,metric,value,stderr` for the successful points.
pub fn write_sweep_csv<W: Write>(w: W, points: &[SweepPoint]) -> Result<()> {
    write_rows(
        w,
        &["alpha", "metric", "value", "stderr"],
        points.iter().filter_map(|p| p.outcome.as_ref().ok()).map(|r| {
            [
                fmt_f64(r.alpha),
                r.metric.clone(),
                fmt_f64(r.value),
                fmt_f64(r.stderr),
            ]
        }),
    )
}
