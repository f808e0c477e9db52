//! Spectral chaos diagnostics: level-spacing ratios and the spectral form factor,
//! with disorder ensembles over a single model parameter.

use std::f64::consts::{LN_2, PI};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::csv::{fmt_f64, write_rows, write_xy};
use crate::error::{Error, Result};
use crate::fits::{linear_fit, LinearFit};
use crate::pipeline::sector_spectrum;
use crate::spin_models::{ModelFamily, ModelSpec};
use crate::symmetry::{build_sector_basis, SectorBasis, SectorSpec};

/// Ascending eigenvalues of one sector Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub sector: SectorSpec,
    pub model: ModelSpec,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// CSV `index,energy`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_rows(
            w,
            &["index", "energy"],
            self.eigenvalues
                .iter()
                .enumerate()
                .map(|(i, &e)| [i.to_string(), fmt_f64(e)]),
        )
    }
}

/// Spacings below this fraction of the spectral width count as degenerate.
pub const DEGENERACY_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RStats {
    pub r_values: Vec<f64>,
    pub r_tilde_values: Vec<f64>,
    pub mean_r_tilde: f64,
    /// Zero spacings removed before forming ratios.
    pub dropped_spacings: usize,
}

impl RStats {
    /// CSV `r_tilde`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_rows(w, &["r_tilde"], self.r_tilde_values.iter().map(|&r| [fmt_f64(r)]))
    }
}

/// Ratios of consecutive level spacings of an ascending spectrum.
pub fn r_statistics(eigenvalues: &[f64]) -> Result<RStats> {
    let n = eigenvalues.len();
    if n < 3 {
        return Err(Error::TooFewLevels(n));
    }
    if eigenvalues.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidArgument("non-finite eigenvalue".into()));
    }
    if eigenvalues.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("eigenvalues must be ascending".into()));
    }
    let width = eigenvalues[n - 1] - eigenvalues[0];
    let tol = DEGENERACY_REL_TOL * width;
    let all: Vec<f64> = eigenvalues.windows(2).map(|w| w[1] - w[0]).collect();
    let spacings: Vec<f64> = all.iter().copied().filter(|&s| s > tol).collect();
    let dropped = all.len() - spacings.len();
    if spacings.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} nondegenerate spacings, need 2",
            spacings.len()
        )));
    }
    let r_values: Vec<f64> = spacings.windows(2).map(|w| w[1] / w[0]).collect();
    let r_tilde_values: Vec<f64> = r_values.iter().map(|&r| r.min(1.0 / r)).collect();
    let mean_r_tilde = r_tilde_values.iter().sum::<f64>() / r_tilde_values.len() as f64;
    Ok(RStats {
        r_values,
        r_tilde_values,
        mean_r_tilde,
        dropped_spacings: dropped,
    })
}

/// Level-statistics reference ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    Poisson,
    Goe,
    Gue,
    Gse,
}

impl Ensemble {
    pub const ALL: [Ensemble; 4] = [Ensemble::Poisson, Ensemble::Goe, Ensemble::Gue, Ensemble::Gse];

    pub fn dyson_index(self) -> Option<i32> {
        match self {
            Ensemble::Poisson => None,
            Ensemble::Goe => Some(1),
            Ensemble::Gue => Some(2),
            Ensemble::Gse => Some(4),
        }
    }

    /// Normalization `Z_beta` of the Wigner-like surmise for `P(r)`.
    pub fn surmise_normalization(self) -> Option<f64> {
        let s3 = 3f64.sqrt();
        match self {
            Ensemble::Poisson => None,
            Ensemble::Goe => Some(8.0 / 27.0),
            Ensemble::Gue => Some(4.0 * PI / (81.0 * s3)),
            Ensemble::Gse => Some(4.0 * PI / (729.0 * s3)),
        }
    }

    /// Closed-form `<r~>`.
    pub fn mean_r_tilde(self) -> f64 {
        let s3 = 3f64.sqrt();
        match self {
            Ensemble::Poisson => 2.0 * LN_2 - 1.0,
            Ensemble::Goe => 4.0 - 2.0 * s3,
            Ensemble::Gue => 2.0 * s3 / PI - 0.5,
            Ensemble::Gse => 32.0 * s3 / (15.0 * PI) - 0.5,
        }
    }
}

/// Density `P(r)` of the spacing ratio.
pub fn reference_distribution(kind: Ensemble, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("ratio r = {r} must be positive")));
    }
    Ok(match (kind.dyson_index(), kind.surmise_normalization()) {
        (Some(beta), Some(z)) => {
            let b = beta as f64;
            (r + r * r).powi(beta) / (1.0 + r + r * r).powf(1.0 + 1.5 * b) / z
        }
        _ => 1.0 / (1.0 + r).powi(2),
    })
}

/// Density of `r~ = min(r, 1/r)`, i.e. `2 P(r~)` on `(0, 1]`.
pub fn reference_r_tilde_density(kind: Ensemble, r_tilde: f64) -> Result<f64> {
    if r_tilde > 1.0 {
        return Ok(0.0);
    }
    Ok(2.0 * reference_distribution(kind, r_tilde)?)
}

/// Draws `r~` values from the reference density by rejection sampling.
pub fn sample_r_tilde<R: Rng>(kind: Ensemble, n: usize, rng: &mut R) -> Vec<f64> {
    let grid_max = (1..=1000)
        .map(|i| reference_r_tilde_density(kind, i as f64 / 1000.0).unwrap())
        .fold(0.0, f64::max);
    let bound = 1.1 * grid_max;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
        let y: f64 = rng.random::<f64>() * bound;
        if y < reference_r_tilde_density(kind, x).unwrap() {
            out.push(x);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub density: f64,
}

/// Default bin count for `r~` histograms.
pub const DEFAULT_BINS: usize = 25;

/// Density-normalized histogram on `(0, 1]` with right-closed bins.
pub fn r_tilde_histogram(values: &[f64], bins: usize) -> Result<Vec<HistogramBin>> {
    if bins == 0 {
        return Err(Error::InvalidArgument("histogram needs at least one bin".into()));
    }
    if values.is_empty() {
        return Err(Error::InsufficientData("no values to histogram".into()));
    }
    let mut counts = vec![0usize; bins];
    for &v in values {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::InvalidArgument(format!("r~ = {v} outside (0, 1]")));
        }
        let i = ((v * bins as f64).ceil() as usize).clamp(1, bins) - 1;
        counts[i] += 1;
    }
    let width = 1.0 / bins as f64;
    let total = values.len() as f64;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistogramBin {
            lo: i as f64 * width,
            hi: (i + 1) as f64 * width,
            density: c as f64 / (total * width),
        })
        .collect())
}

/// CSV `bin_lo,bin_hi,density`.
pub fn write_histogram_csv<W: Write>(w: W, bins: &[HistogramBin]) -> Result<()> {
    write_rows(
        w,
        &["bin_lo", "bin_hi", "density"],
        bins.iter()
            .map(|b| [fmt_f64(b.lo), fmt_f64(b.hi), fmt_f64(b.density)]),
    )
}

/// Model parameter that receives the random shift `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisorderTarget {
    /// `h -> h + eps` (TFIM families).
    LongitudinalField,
    /// `gamma -> gamma + eps` (non-local TFIM).
    NonLocalCoupling,
}

/// Gaussian disorder. Sample `k` draws from ChaCha20 seeded with
/// `master_seed` on stream `k`, so every sample is reproducible on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderSpec {
    pub n_samples: usize,
    pub sigma: f64,
    #[serde(default)]
    pub mu: f64,
    pub master_seed: u64,
    pub target: DisorderTarget,
}

impl DisorderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidArgument("n_samples must be at least 1".into()));
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() || !self.mu.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "invalid disorder distribution (mu = {}, sigma = {})",
                self.mu, self.sigma
            )));
        }
        Ok(())
    }

    /// `eps_k` for sample `k`.
    pub fn draw(&self, k: usize) -> Result<f64> {
        let mut rng = ChaCha20Rng::seed_from_u64(self.master_seed);
        rng.set_stream(k as u64);
        let normal = Normal::new(self.mu, self.sigma)
            .map_err(|e| Error::InvalidArgument(format!("normal distribution: {e}")))?;
        Ok(normal.sample(&mut rng))
    }

    /// Copy of `spec` with the target parameter shifted by `eps`.
    pub fn perturb(&self, spec: &ModelSpec, eps: f64) -> Result<ModelSpec> {
        let mut out = spec.clone();
        match self.target {
            DisorderTarget::LongitudinalField if spec.family.is_tfim() => {
                out.h = Some(spec.h() + eps);
            }
            DisorderTarget::NonLocalCoupling if spec.family == ModelFamily::NonLocalTfim => {
                out.gamma = Some(spec.gamma() + eps);
            }
            target => {
                return Err(Error::InvalidArgument(format!(
                    "disorder target {target:?} is not a parameter of {:?}",
                    spec.family
                )))
            }
        }
        Ok(out)
    }
}

/// Applies `f` to the spectrum of every disorder sample; results in sample order.
pub fn disorder_map<R, F>(
    spec: &ModelSpec,
    disorder: &DisorderSpec,
    sector: &SectorSpec,
    f: F,
) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize, Spectrum) -> Result<R> + Sync,
{
    spec.validate()?;
    disorder.validate()?;
    disorder.perturb(spec, 0.0)?;
    let basis = build_sector_basis(sector, spec.sites)?;
    (0..disorder.n_samples)
        .into_par_iter()
        .map(|k| f(k, sample_spectrum(spec, disorder, sector, &basis, k)?))
        .collect()
}

fn sample_spectrum(
    spec: &ModelSpec,
    disorder: &DisorderSpec,
    sector: &SectorSpec,
    basis: &SectorBasis,
    k: usize,
) -> Result<Spectrum> {
    let model = disorder.perturb(spec, disorder.draw(k)?)?;
    let eigenvalues = sector_spectrum(&model, basis)?;
    Ok(Spectrum {
        eigenvalues,
        sector: *sector,
        model,
    })
}

/// Spectra of all disorder samples, in sample order.
pub fn disorder_ensemble(
    spec: &ModelSpec,
    disorder: &DisorderSpec,
    sector: &SectorSpec,
) -> Result<Vec<Spectrum>> {
    disorder_map(spec, disorder, sector, |_, s| Ok(s))
}

/// Ratio statistics pooled over a disorder ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRStats {
    pub mean_r_tilde: f64,
    /// Standard error from the spread of per-sample means.
    pub stderr: f64,
    pub sample_means: Vec<f64>,
    pub r_tilde_values: Vec<f64>,
    pub dropped_spacings: usize,
}

pub fn pool_r_statistics(per_sample: &[RStats]) -> Result<EnsembleRStats> {
    if per_sample.is_empty() {
        return Err(Error::InsufficientData("empty ensemble".into()));
    }
    let r_tilde_values: Vec<f64> = per_sample
        .iter()
        .flat_map(|s| s.r_tilde_values.iter().copied())
        .collect();
    let mean = r_tilde_values.iter().sum::<f64>() / r_tilde_values.len() as f64;
    let sample_means: Vec<f64> = per_sample.iter().map(|s| s.mean_r_tilde).collect();
    let m = sample_means.len() as f64;
    let sm = sample_means.iter().sum::<f64>() / m;
    let stderr = if sample_means.len() > 1 {
        (sample_means.iter().map(|x| (x - sm).powi(2)).sum::<f64>() / (m - 1.0) / m).sqrt()
    } else {
        0.0
    };
    Ok(EnsembleRStats {
        mean_r_tilde: mean,
        stderr,
        sample_means,
        r_tilde_values,
        dropped_spacings: per_sample.iter().map(|s| s.dropped_spacings).sum(),
    })
}

/// Disorder-averaged ratio statistics without keeping the spectra.
pub fn ensemble_r_statistics(
    spec: &ModelSpec,
    disorder: &DisorderSpec,
    sector: &SectorSpec,
) -> Result<EnsembleRStats> {
    let per = disorder_map(spec, disorder, sector, |_, s| r_statistics(&s.eigenvalues))?;
    pool_r_statistics(&per)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SffKind {
    /// `E|Z(beta,t)|^2 / E|Z(beta,0)|^2`
    Annealed,
    /// `E[|Z(beta,t)|^2 / |Z(beta,0)|^2]`
    Quenched,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SffCurve {
    pub times: Vec<f64>,
    pub g_values: Vec<f64>,
    pub beta: f64,
    pub kind: SffKind,
    /// `Z(2 beta) / Z(beta)^2` of the reference spectrum.
    pub plateau_prediction: f64,
    /// False when the reference spectrum has degenerate levels.
    pub plateau_reliable: bool,
    pub n_samples: usize,
}

impl SffCurve {
    /// CSV `t,g`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_xy(w, ["t", "g"], &self.times, &self.g_values)
    }

    /// Mean of `g` over `t >= t_max / 10^decades`.
    pub fn late_time_average(&self, decades: f64) -> Result<f64> {
        let t_max = self.times.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let cut = t_max / 10f64.powf(decades);
        let w: Vec<f64> = self
            .times
            .iter()
            .zip(&self.g_values)
            .filter(|(t, _)| **t >= cut)
            .map(|(_, &g)| g)
            .collect();
        if w.is_empty() {
            return Err(Error::InsufficientData("no late-time points".into()));
        }
        Ok(w.iter().sum::<f64>() / w.len() as f64)
    }
}

fn check_spectrum(e: &[f64]) -> Result<()> {
    if e.is_empty() {
        return Err(Error::InsufficientData("empty spectrum".into()));
    }
    if e.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("non-finite eigenvalue".into()));
    }
    Ok(())
}

/// `Z(2 beta) / Z(beta)^2`; equals `1/D` at `beta = 0`.
pub fn plateau_prediction(eigenvalues: &[f64], beta: f64) -> Result<f64> {
    check_spectrum(eigenvalues)?;
    let e0 = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let z1: f64 = eigenvalues.iter().map(|e| (-beta * (e - e0)).exp()).sum();
    let z2: f64 = eigenvalues.iter().map(|e| (-2.0 * beta * (e - e0)).exp()).sum();
    Ok(z2 / (z1 * z1))
}

/// `|Z(beta, t)|^2` on the grid, with energies measured from the ground state.
fn partition_modulus_sqr(eigenvalues: &[f64], beta: f64, times: &[f64]) -> (Vec<f64>, f64) {
    let e0 = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let shifted: Vec<f64> = eigenvalues.iter().map(|e| e - e0).collect();
    let weights: Vec<f64> = shifted.iter().map(|e| (-beta * e).exp()).collect();
    let z0: f64 = weights.iter().sum();
    let values = times
        .iter()
        .map(|&t| {
            let (mut re, mut im) = (0.0, 0.0);
            for (e, w) in shifted.iter().zip(&weights) {
                let (s, c) = (e * t).sin_cos();
                re += w * c;
                im -= w * s;
            }
            re * re + im * im
        })
        .collect();
    (values, z0 * z0)
}

/// Spectral form factor of an ensemble of spectra.
pub fn sff(
    spectra: &[Vec<f64>],
    reference: &[f64],
    beta: f64,
    times: &[f64],
    kind: SffKind,
) -> Result<SffCurve> {
    if spectra.is_empty() {
        return Err(Error::InsufficientData("empty ensemble".into()));
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!("beta = {beta} must be >= 0")));
    }
    for s in spectra {
        check_spectrum(s)?;
    }
    check_spectrum(reference)?;
    let per_sample: Vec<(Vec<f64>, f64)> = spectra
        .par_iter()
        .map(|e| partition_modulus_sqr(e, beta, times))
        .collect();
    // fixed-order reduction
    let n = spectra.len() as f64;
    let mut acc = vec![0.0; times.len()];
    let mut z0_acc = 0.0;
    for (values, z0sq) in &per_sample {
        match kind {
            SffKind::Annealed => {
                acc.iter_mut().zip(values).for_each(|(a, v)| *a += v);
                z0_acc += z0sq;
            }
            SffKind::Quenched => {
                acc.iter_mut().zip(values).for_each(|(a, v)| *a += v / z0sq);
            }
        }
    }
    let g_values = match kind {
        SffKind::Annealed => acc.iter().map(|a| a / z0_acc).collect(),
        SffKind::Quenched => acc.iter().map(|a| a / n).collect(),
    };
    let mut sorted = reference.to_vec();
    sorted.sort_by(f64::total_cmp);
    let width = sorted[sorted.len() - 1] - sorted[0];
    let degenerate = sorted.windows(2).any(|w| w[1] - w[0] <= DEGENERACY_REL_TOL * width);
    Ok(SffCurve {
        times: times.to_vec(),
        g_values,
        beta,
        kind,
        plateau_prediction: plateau_prediction(reference, beta)?,
        plateau_reliable: !degenerate,
        n_samples: spectra.len(),
    })
}

/// Least-squares line through `g(t)` for `t_lo <= t <= t_hi`, in linear coordinates.
pub fn ramp_fit(curve: &SffCurve, window: [f64; 2]) -> Result<LinearFit> {
    let [lo, hi] = window;
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("empty window [{lo}, {hi}]")));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = curve
        .times
        .iter()
        .zip(&curve.g_values)
        .filter(|(t, _)| **t >= lo && **t <= hi)
        .map(|(&t, &g)| (t, g))
        .unzip();
    if xs.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "ramp window [{lo}, {hi}] holds {} points, need 10",
            xs.len()
        )));
    }
    linear_fit(&xs, &ys)
}

/// Window from the dip (global minimum of `g` before it first reaches the
/// plateau) to the first time `g` reaches the plateau prediction.
pub fn ramp_window(curve: &SffCurve) -> Option<[f64; 2]> {
    let p = curve.plateau_prediction;
    let g = &curve.g_values;
    let first_plateau = |from: usize| (from..g.len()).find(|&i| g[i] >= p);
    // skip the initial decay from g(0) = 1
    let start = (0..g.len()).find(|&i| g[i] < p)?;
    let end_guess = first_plateau(start)?;
    let dip = (start..end_guess).min_by(|&a, &b| g[a].total_cmp(&g[b]))?;
    let end = first_plateau(dip)?;
    (end > dip).then(|| [curve.times[dip], curve.times[end]])
}
