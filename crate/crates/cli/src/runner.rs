//! Executes a validated [`RunConfig`] and writes its artifacts.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use krylovlab::chaos::{
    disorder_map, pool_r_statistics, r_statistics, r_tilde_histogram, ramp_fit, ramp_window, sff,
    write_histogram_csv, Ensemble, RStats, Spectrum,
};
use krylovlab::fits::{
    fit_growth_rate, saturation_value, sweep_alpha, write_sweep_csv, SweepSettings,
};
use krylovlab::krylov::{evolve_wavefunction, krylov_dim_bound, LanczosResult};
use krylovlab::pipeline::{lanczos_in_sector, sector_spectrum};
use krylovlab::build_sector_basis;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Probe, RunConfig, Threads};
use crate::error::RunError;

pub const SUMMARY_FILE: &str = "summary.json";

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub version: String,
    /// Fully resolved configuration; running it again reproduces the artifacts.
    pub config: RunConfig,
    pub wall_time_s: f64,
    pub metrics: Value,
    pub artifacts: Vec<String>,
}

struct Artifacts<'a> {
    dir: &'a Path,
    written: Vec<String>,
}

impl Artifacts<'_> {
    fn write<F>(&mut self, name: &str, f: F) -> Result<(), RunError>
    where
        F: FnOnce(&mut BufWriter<File>) -> krylovlab::Result<()>,
    {
        let path = self.dir.join(name);
        let io_err = |source| RunError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut w = BufWriter::new(File::create(&path).map_err(io_err)?);
        f(&mut w)?;
        w.flush().map_err(io_err)?;
        self.written.push(name.to_string());
        Ok(())
    }
}

/// Runs `config`, writing CSV artifacts and `summary.json` into its output directory.
pub fn run(config: &RunConfig) -> Result<Summary, RunError> {
    config.validate()?;
    let start = Instant::now();
    let dir = config.output_dir.as_path();
    fs::create_dir_all(dir).map_err(|source| RunError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut artifacts = Artifacts {
        dir,
        written: Vec::new(),
    };
    let threads = match config.threads {
        Threads::Auto => 0,
        Threads::Count(n) => n,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| RunError::Resource(format!("thread pool: {e}")))?;
    let metrics = pool.install(|| execute(config, &mut artifacts))?;
    let summary = Summary {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        wall_time_s: start.elapsed().as_secs_f64(),
        metrics,
        artifacts: artifacts.written,
    };
    let path = dir.join(SUMMARY_FILE);
    let io_err = |source| RunError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut w = BufWriter::new(File::create(&path).map_err(io_err)?);
    serde_json::to_writer_pretty(&mut w, &summary)
        .map_err(|e| io_err(std::io::Error::other(e)))?;
    w.flush().map_err(io_err)?;
    Ok(summary)
}

fn execute(c: &RunConfig, out: &mut Artifacts) -> Result<Value, RunError> {
    match &c.probe {
        Probe::Lanczos => {
            let res = lanczos_in_sector(&c.model, &c.sector, c.seed_operator, &c.lanczos)?;
            out.write("bn.csv", |w| res.write_csv(w))?;
            lanczos_metrics(c, &res)
        }
        Probe::Complexity => {
            let res = lanczos_in_sector(&c.model, &c.sector, c.seed_operator, &c.lanczos)?;
            out.write("bn.csv", |w| res.write_csv(w))?;
            let curve = evolve_wavefunction(&res.b, &c.time_grid.values()?)?;
            out.write("ck.csv", |w| curve.write_csv(w))?;
            let sat = saturation_value(&curve, c.fit.saturation_window)?;
            let mut m = lanczos_metrics(c, &res)?;
            m["saturation"] = json!(sat);
            m["normalization_error"] = json!(curve.normalization_error());
            Ok(m)
        }
        Probe::RStats { bins } => {
            let reference = reference_spectrum(c)?;
            out.write("spectrum.csv", |w| reference.write_csv(w))?;
            let per_sample: Vec<RStats> = match c.disorder_spec() {
                Some(d) => disorder_map(&c.model, &d, &c.sector, |_, s| r_statistics(&s.eigenvalues))?,
                None => vec![r_statistics(&reference.eigenvalues)?],
            };
            let pooled = pool_r_statistics(&per_sample)?;
            out.write("rstats.csv", |w| {
                krylovlab::csv::write_rows(
                    w,
                    &["r_tilde"],
                    pooled
                        .r_tilde_values
                        .iter()
                        .map(|v| [krylovlab::csv::fmt_f64(*v)]),
                )
            })?;
            let hist = r_tilde_histogram(&pooled.r_tilde_values, *bins)?;
            out.write("rstats_hist.csv", |w| write_histogram_csv(w, &hist))?;
            Ok(json!({
                "sector_dim": reference.len(),
                "n_samples": per_sample.len(),
                "mean_r_tilde": pooled.mean_r_tilde,
                "mean_r_tilde_stderr": pooled.stderr,
                "dropped_spacings": pooled.dropped_spacings,
                "reference_poisson": Ensemble::Poisson.mean_r_tilde(),
                "reference_goe": Ensemble::Goe.mean_r_tilde(),
            }))
        }
        Probe::Sff { beta, average } => {
            let reference = reference_spectrum(c)?;
            out.write("spectrum.csv", |w| reference.write_csv(w))?;
            let spectra: Vec<Vec<f64>> = match c.disorder_spec() {
                Some(d) => disorder_map(&c.model, &d, &c.sector, |_, s| Ok(s.eigenvalues))?,
                None => vec![reference.eigenvalues.clone()],
            };
            let times = c.time_grid.values()?;
            let curve = sff(&spectra, &reference.eigenvalues, *beta, &times, *average)?;
            out.write("sff.csv", |w| curve.write_csv(w))?;
            let late = curve.late_time_average(c.fit.plateau_decades)?;
            let window = c.fit.ramp_window.or_else(|| ramp_window(&curve));
            let ramp = match window {
                Some(w) => match ramp_fit(&curve, w) {
                    Ok(fit) => json!({"window": w, "fit": fit}),
                    Err(e) => json!({"window": w, "error": e.to_string()}),
                },
                None => Value::Null,
            };
            Ok(json!({
                "sector_dim": reference.len(),
                "n_samples": curve.n_samples,
                "plateau_prediction": curve.plateau_prediction,
                "plateau_reliable": curve.plateau_reliable,
                "late_time_average": late,
                "ramp": ramp,
            }))
        }
        Probe::SweepAlpha { alphas, metric } => {
            let settings = SweepSettings {
                sector: c.sector,
                seed: c.seed_operator,
                lanczos: c.lanczos,
                n_range: c.fit.growth_range,
                time_grid: c.time_grid,
                window_fraction: c.fit.saturation_window,
                disorder: c.disorder_spec(),
            };
            let points = sweep_alpha(&c.model, alphas, *metric, &settings)?;
            out.write("sweep.csv", |w| write_sweep_csv(w, &points))?;
            let mut rows = Vec::new();
            let mut first_error = None;
            for p in points {
                match p.outcome {
                    Ok(row) => rows.push(json!(row)),
                    Err(e) => {
                        rows.push(json!({"alpha": p.alpha, "error": e.to_string()}));
                        first_error.get_or_insert(e);
                    }
                }
            }
            if let Some(e) = first_error {
                return Err(e.into());
            }
            Ok(json!({"metric": metric.metric(), "rows": rows}))
        }
    }
}

fn reference_spectrum(c: &RunConfig) -> Result<Spectrum, RunError> {
    let basis = build_sector_basis(&c.sector, c.model.sites)?;
    Ok(Spectrum {
        eigenvalues: sector_spectrum(&c.model, &basis)?,
        sector: c.sector,
        model: c.model.clone(),
    })
}

fn lanczos_metrics(c: &RunConfig, res: &LanczosResult<f64>) -> Result<Value, RunError> {
    let d = build_sector_basis(&c.sector, c.model.sites)?.dim();
    let growth = fit_growth_rate(&res.b, c.fit.growth_range).ok();
    Ok(json!({
        "sector_dim": d,
        "krylov_dim": res.krylov_dim,
        "krylov_dim_bound": krylov_dim_bound(d),
        "termination": res.termination,
        "reorthogonalization": res.reorthogonalization,
        "growth": growth,
    }))
}
