//! Spin-1/2 chain Hamiltonians and seed operators on the full `2^L` space.
//!
//! Basis convention: site 1 is the most significant bit of the basis index and
//! a cleared bit is spin up (`σ^z = +1`). All chains use open boundaries.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::SparseOperator;

/// Largest chain handled by the full-space builders.
pub const MAX_SITES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFamily {
    LocalTfim,
    NonLocalTfim,
    MixedFieldTfim,
    LocalXxz,
    MixedFieldXxz,
}

impl ModelFamily {
    pub fn is_tfim(self) -> bool {
        matches!(
            self,
            ModelFamily::LocalTfim | ModelFamily::NonLocalTfim | ModelFamily::MixedFieldTfim
        )
    }

    pub fn is_xxz(self) -> bool {
        !self.is_tfim()
    }
}

/// Declarative description of one Hamiltonian.
///
/// Only the parameters used by `family` may be set. `J` and `kappa` default to
/// 1, `eps_d` to 0, and `defect_site` to `⌊(L+1)/2⌋`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub family: ModelFamily,
    #[serde(rename = "L")]
    pub sites: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(rename = "J_zz", default, skip_serializing_if = "Option::is_none")]
    pub j_zz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect_site: Option<usize>,
}

impl ModelSpec {
    fn bare(family: ModelFamily, sites: usize) -> Self {
        ModelSpec {
            family,
            sites,
            g: None,
            h: None,
            gamma: None,
            alpha: None,
            j: None,
            j_zz: None,
            kappa: None,
            eps_d: None,
            defect_site: None,
        }
    }

    pub fn local_tfim(sites: usize, g: f64, h: f64) -> Self {
        ModelSpec {
            g: Some(g),
            h: Some(h),
            ..Self::bare(ModelFamily::LocalTfim, sites)
        }
    }

    pub fn non_local_tfim(sites: usize, g: f64, h: f64, gamma: f64) -> Self {
        ModelSpec {
            g: Some(g),
            h: Some(h),
            gamma: Some(gamma),
            ..Self::bare(ModelFamily::NonLocalTfim, sites)
        }
    }

    pub fn mixed_field_tfim(sites: usize, g: f64, h: f64, alpha: f64) -> Self {
        ModelSpec {
            g: Some(g),
            h: Some(h),
            alpha: Some(alpha),
            ..Self::bare(ModelFamily::MixedFieldTfim, sites)
        }
    }

    pub fn local_xxz(sites: usize, j: f64, j_zz: f64) -> Self {
        ModelSpec {
            j: Some(j),
            j_zz: Some(j_zz),
            ..Self::bare(ModelFamily::LocalXxz, sites)
        }
    }

    pub fn mixed_field_xxz(sites: usize, alpha: f64, j: f64, j_zz: f64, eps_d: f64) -> Self {
        ModelSpec {
            alpha: Some(alpha),
            j: Some(j),
            j_zz: Some(j_zz),
            eps_d: Some(eps_d),
            ..Self::bare(ModelFamily::MixedFieldXxz, sites)
        }
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = Some(kappa);
        self
    }

    pub fn with_defect(mut self, eps_d: f64, site: usize) -> Self {
        self.eps_d = Some(eps_d);
        self.defect_site = Some(site);
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn g(&self) -> f64 {
        self.g.unwrap_or(0.0)
    }

    pub fn h(&self) -> f64 {
        self.h.unwrap_or(0.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma.unwrap_or(0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(f64::INFINITY)
    }

    pub fn j(&self) -> f64 {
        self.j.unwrap_or(1.0)
    }

    pub fn j_zz(&self) -> f64 {
        self.j_zz.unwrap_or(0.0)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa.unwrap_or(1.0)
    }

    pub fn eps_d(&self) -> f64 {
        self.eps_d.unwrap_or(0.0)
    }

    pub fn defect_site(&self) -> usize {
        self.defect_site.unwrap_or(self.sites.div_ceil(2).max(1))
    }

    /// Checks ranges and that every set parameter belongs to the family.
    pub fn validate(&self) -> Result<()> {
        use ModelFamily::*;
        let l = self.sites;
        if l < 2 {
            return Err(Error::InvalidModel(format!("L = {l}, need L >= 2")));
        }
        if l > MAX_SITES {
            return Err(Error::InvalidModel(format!(
                "L = {l} exceeds the supported maximum {MAX_SITES}"
            )));
        }
        let (required, optional): (&[&str], &[&str]) = match self.family {
            LocalTfim => (&["g", "h"], &[]),
            NonLocalTfim => (&["g", "h", "gamma"], &[]),
            MixedFieldTfim => (&["g", "h", "alpha"], &["J", "kappa"]),
            LocalXxz => (&["J_zz"], &["J", "eps_d", "defect_site"]),
            MixedFieldXxz => (&["alpha", "J_zz"], &["J", "kappa", "eps_d", "defect_site"]),
        };
        let present = self.present_fields();
        for name in required {
            if !present.contains(name) {
                return Err(Error::InvalidModel(format!(
                    "{:?} requires `{name}`",
                    self.family
                )));
            }
        }
        for name in &present {
            if !required.contains(name) && !optional.contains(name) {
                return Err(Error::InvalidModel(format!(
                    "`{name}` is not a parameter of {:?}",
                    self.family
                )));
            }
        }
        let finite = [
            ("g", self.g),
            ("h", self.h),
            ("gamma", self.gamma),
            ("alpha", self.alpha),
            ("J", self.j),
            ("J_zz", self.j_zz),
            ("kappa", self.kappa),
            ("eps_d", self.eps_d),
        ];
        for (name, v) in finite {
            if let Some(v) = v {
                if !v.is_finite() {
                    return Err(Error::InvalidModel(format!("`{name}` = {v} is not finite")));
                }
            }
        }
        if self.kappa() <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "kappa = {} must be positive",
                self.kappa()
            )));
        }
        if let Some(a) = self.alpha {
            if a < 0.0 {
                return Err(Error::InvalidModel(format!("alpha = {a} must be >= 0")));
            }
        }
        if self.family.is_xxz() {
            let d = self.defect_site();
            if d < 1 || d > l {
                return Err(Error::SiteOutOfRange { site: d, sites: l });
            }
        }
        Ok(())
    }

    fn present_fields(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        let opts = [
            ("g", self.g.is_some()),
            ("h", self.h.is_some()),
            ("gamma", self.gamma.is_some()),
            ("alpha", self.alpha.is_some()),
            ("J", self.j.is_some()),
            ("J_zz", self.j_zz.is_some()),
            ("kappa", self.kappa.is_some()),
            ("eps_d", self.eps_d.is_some()),
            ("defect_site", self.defect_site.is_some()),
        ];
        for (name, set) in opts {
            if set {
                v.push(name);
            }
        }
        v
    }
}

/// `J / (kappa |i - j|^alpha)`.
pub fn power_law_coupling(j: f64, kappa: f64, alpha: f64, site_i: usize, site_j: usize) -> Result<f64> {
    if site_i == site_j {
        return Err(Error::DegeneratePair(site_i));
    }
    if kappa <= 0.0 {
        return Err(Error::InvalidArgument(format!("kappa = {kappa} must be positive")));
    }
    let dist = site_i.abs_diff(site_j) as f64;
    Ok(j / (kappa * dist.powf(alpha)))
}

/// Symmetric pair-coupling table with zero diagonal, indexed by 1-based sites.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    sites: usize,
    values: Vec<f64>,
}

impl CouplingMatrix {
    pub fn power_law(sites: usize, j: f64, kappa: f64, alpha: f64) -> Result<Self> {
        let mut values = vec![0.0; sites * sites];
        for a in 1..=sites {
            for b in (a + 1)..=sites {
                let v = power_law_coupling(j, kappa, alpha, a, b)?;
                values[(a - 1) * sites + (b - 1)] = v;
                values[(b - 1) * sites + (a - 1)] = v;
            }
        }
        Ok(CouplingMatrix { sites, values })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i - 1) * self.sites + (j - 1)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Product of single-site Paulis (0-based sites) with a real prefactor.
#[derive(Debug, Clone)]
pub struct PauliTerm {
    pub coeff: f64,
    pub ops: Vec<(usize, Pauli)>,
}

impl PauliTerm {
    pub fn new(coeff: f64, ops: Vec<(usize, Pauli)>) -> Self {
        PauliTerm { coeff, ops }
    }
}

#[inline]
fn site_mask(sites: usize, site0: usize) -> usize {
    1 << (sites - 1 - site0)
}

/// Image of a basis state under a Pauli string and its phase.
fn apply_string(sites: usize, state: usize, ops: &[(usize, Pauli)]) -> (usize, Complex64) {
    let mut s = state;
    let mut phase = Complex64::new(1.0, 0.0);
    for &(site, p) in ops {
        let m = site_mask(sites, site);
        let down = s & m != 0;
        match p {
            Pauli::X => s ^= m,
            Pauli::Z => {
                if down {
                    phase = -phase;
                }
            }
            Pauli::Y => {
                phase *= if down {
                    Complex64::new(0.0, -1.0)
                } else {
                    Complex64::new(0.0, 1.0)
                };
                s ^= m;
            }
        }
    }
    (s, phase)
}

/// Assembles `Σ coeff · string` on the full space.
pub fn operator_from_terms(sites: usize, terms: &[PauliTerm]) -> Result<SparseOperator> {
    if sites == 0 || sites > MAX_SITES {
        return Err(Error::InvalidArgument(format!("unsupported site count {sites}")));
    }
    for t in terms {
        for &(site, _) in &t.ops {
            if site >= sites {
                return Err(Error::SiteOutOfRange {
                    site: site + 1,
                    sites,
                });
            }
        }
    }
    let dim = 1usize << sites;
    let terms: Vec<&PauliTerm> = terms.iter().filter(|t| t.coeff != 0.0).collect();
    let mut triplets = Vec::with_capacity(dim * terms.len());
    for col in 0..dim {
        for t in &terms {
            let (row, phase) = apply_string(sites, col, &t.ops);
            triplets.push((row, col, phase * t.coeff));
        }
    }
    SparseOperator::from_triplets(dim, triplets)
}

/// Single-site Pauli operator at 1-based `site`.
pub fn pauli(sites: usize, site: usize, p: Pauli) -> Result<SparseOperator> {
    if site < 1 || site > sites {
        return Err(Error::SiteOutOfRange { site, sites });
    }
    operator_from_terms(sites, &[PauliTerm::new(1.0, vec![(site - 1, p)])])
}

fn tfim_fields(sites: usize, g: f64, h: f64, terms: &mut Vec<PauliTerm>) {
    for s in 0..sites {
        terms.push(PauliTerm::new(-g, vec![(s, Pauli::X)]));
        terms.push(PauliTerm::new(-h, vec![(s, Pauli::Z)]));
    }
}

fn xxz_pair(a: usize, b: usize, jxy: f64, jzz: f64, terms: &mut Vec<PauliTerm>) {
    terms.push(PauliTerm::new(jxy / 4.0, vec![(a, Pauli::X), (b, Pauli::X)]));
    terms.push(PauliTerm::new(jxy / 4.0, vec![(a, Pauli::Y), (b, Pauli::Y)]));
    terms.push(PauliTerm::new(jzz / 4.0, vec![(a, Pauli::Z), (b, Pauli::Z)]));
}

/// Pauli-term expansion of the model.
pub fn hamiltonian_terms(spec: &ModelSpec) -> Result<Vec<PauliTerm>> {
    spec.validate()?;
    let l = spec.sites;
    let mut terms = Vec::new();
    match spec.family {
        ModelFamily::LocalTfim | ModelFamily::NonLocalTfim => {
            for s in 0..l - 1 {
                terms.push(PauliTerm::new(-1.0, vec![(s, Pauli::Z), (s + 1, Pauli::Z)]));
            }
            tfim_fields(l, spec.g(), spec.h(), &mut terms);
            if spec.family == ModelFamily::NonLocalTfim {
                let c = -spec.gamma() / (l as f64).sqrt();
                for a in 0..l {
                    for b in a + 1..l {
                        terms.push(PauliTerm::new(c, vec![(a, Pauli::Z), (b, Pauli::Z)]));
                    }
                }
            }
        }
        ModelFamily::MixedFieldTfim => {
            let jm = CouplingMatrix::power_law(l, spec.j(), spec.kappa(), spec.alpha())?;
            for a in 0..l {
                for b in a + 1..l {
                    terms.push(PauliTerm::new(
                        -jm.get(a + 1, b + 1),
                        vec![(a, Pauli::Z), (b, Pauli::Z)],
                    ));
                }
            }
            tfim_fields(l, spec.g(), spec.h(), &mut terms);
        }
        ModelFamily::LocalXxz => {
            for s in 0..l - 1 {
                xxz_pair(s, s + 1, spec.j(), spec.j_zz(), &mut terms);
            }
        }
        ModelFamily::MixedFieldXxz => {
            let jxy = CouplingMatrix::power_law(l, spec.j(), spec.kappa(), spec.alpha())?;
            let jzz = CouplingMatrix::power_law(l, spec.j_zz(), spec.kappa(), spec.alpha())?;
            for a in 0..l {
                for b in a + 1..l {
                    xxz_pair(a, b, jxy.get(a + 1, b + 1), jzz.get(a + 1, b + 1), &mut terms);
                }
            }
        }
    }
    if spec.family.is_xxz() {
        // ε_d S^z_d with S^z = σ^z / 2
        terms.push(PauliTerm::new(
            spec.eps_d() / 2.0,
            vec![(spec.defect_site() - 1, Pauli::Z)],
        ));
    }
    Ok(terms)
}

/// Hermitian `2^L x 2^L` matrix of the model.
pub fn build_hamiltonian(spec: &ModelSpec) -> Result<SparseOperator> {
    let terms = hamiltonian_terms(spec)?;
    operator_from_terms(spec.sites, &terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedKind {
    /// `S^z_i`
    SingleSz,
    /// `S^z_i + S^z_{L-i+1}`
    ParitySymmetricSz,
}

pub fn seed_operator(kind: SeedKind, site: usize, sites: usize) -> Result<SparseOperator> {
    if site < 1 || site > sites {
        return Err(Error::SiteOutOfRange { site, sites });
    }
    let mut terms = vec![PauliTerm::new(0.5, vec![(site - 1, Pauli::Z)])];
    if kind == SeedKind::ParitySymmetricSz {
        terms.push(PauliTerm::new(0.5, vec![(sites - site, Pauli::Z)]));
    }
    operator_from_terms(sites, &terms)
}
