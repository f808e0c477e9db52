//! Glue from a model description to sector matrices, spectra and Lanczos runs.

use faer::{Mat, Side};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::krylov::{lanczos, LanczosOptions, LanczosResult, OperatorVector};
use crate::sparse::Csr;
use crate::spin_models::{build_hamiltonian, seed_operator, ModelSpec, SeedKind};
use crate::symmetry::{build_sector_basis, project_sparse, SectorBasis, SectorSpec};

/// Tolerance for `H = H^dagger` in [`diagonalize`].
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub kind: SeedKind,
    pub site: usize,
}

/// A sector-restricted operator; real whenever every entry is real.
#[derive(Debug, Clone)]
pub enum SectorMatrix {
    Real(Csr<f64>),
    Complex(Csr<Complex64>),
}

impl SectorMatrix {
    pub fn from_complex(m: Csr<Complex64>) -> Self {
        if m.max_imag() == 0.0 {
            SectorMatrix::Real(m.to_real())
        } else {
            SectorMatrix::Complex(m)
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SectorMatrix::Real(m) => m.dim(),
            SectorMatrix::Complex(m) => m.dim(),
        }
    }
}

pub fn sector_operator(op: &crate::sparse::SparseOperator, basis: &SectorBasis) -> Result<SectorMatrix> {
    Ok(SectorMatrix::from_complex(project_sparse(op, basis)?))
}

pub fn sector_hamiltonian(spec: &ModelSpec, basis: &SectorBasis) -> Result<SectorMatrix> {
    spec.validate()?;
    if spec.sites != basis.sites() {
        return Err(Error::DimensionMismatch {
            expected: basis.sites(),
            found: spec.sites,
        });
    }
    sector_operator(&build_hamiltonian(spec)?, basis)
}

fn check_hermitian(residual: f64) -> Result<()> {
    if residual > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Ascending eigenvalues of a real symmetric matrix.
pub fn diagonalize_real(h: &Mat<f64>) -> Result<Vec<f64>> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.ncols(),
        });
    }
    let mut residual = 0.0f64;
    for j in 0..n {
        for i in j + 1..n {
            residual = residual.max((h[(i, j)] - h[(j, i)]).abs());
        }
    }
    check_hermitian(residual)?;
    let mut ev = h
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::Eigensolver)?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn diagonalize(h: &Mat<Complex64>) -> Result<Vec<f64>> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.ncols(),
        });
    }
    let mut residual = 0.0f64;
    let mut imag = 0.0f64;
    for j in 0..n {
        for i in j..n {
            residual = residual.max((h[(i, j)] - h[(j, i)].conj()).norm());
            imag = imag.max(h[(i, j)].im.abs());
        }
    }
    check_hermitian(residual)?;
    if imag == 0.0 {
        return diagonalize_real(&Mat::from_fn(n, n, |i, j| h[(i, j)].re));
    }
    let mut ev = h
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::Eigensolver)?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

pub fn diagonalize_sector(m: &SectorMatrix) -> Result<Vec<f64>> {
    match m {
        SectorMatrix::Real(m) => diagonalize_real(&m.to_dense()),
        SectorMatrix::Complex(m) => diagonalize(&m.to_dense()),
    }
}

/// Sector spectrum of `spec`.
pub fn sector_spectrum(spec: &ModelSpec, basis: &SectorBasis) -> Result<Vec<f64>> {
    diagonalize_sector(&sector_hamiltonian(spec, basis)?)
}

/// Lanczos run for `seed` evolving under `spec`, restricted to `sector`.
///
/// Complex sectors are handled, but only the coefficients are returned.
pub fn lanczos_in_sector(
    spec: &ModelSpec,
    sector: &SectorSpec,
    seed: SeedSpec,
    opts: &LanczosOptions,
) -> Result<LanczosResult<f64>> {
    let basis = build_sector_basis(sector, spec.sites)?;
    let h = sector_hamiltonian(spec, &basis)?;
    let o = sector_operator(&seed_operator(seed.kind, seed.site, spec.sites)?, &basis)?;
    match (h, o) {
        (SectorMatrix::Real(h), SectorMatrix::Real(o)) => {
            lanczos(&h, &OperatorVector::from_csr(&o), opts)
        }
        (h, o) => {
            let h = match h {
                SectorMatrix::Real(m) => m.to_complex(),
                SectorMatrix::Complex(m) => m,
            };
            let o = match o {
                SectorMatrix::Real(m) => m.to_complex(),
                SectorMatrix::Complex(m) => m,
            };
            let r = lanczos(&h, &OperatorVector::from_csr(&o), opts)?;
            Ok(LanczosResult {
                b: r.b,
                krylov_dim: r.krylov_dim,
                basis: None,
                termination: r.termination,
                reorthogonalization: r.reorthogonalization,
            })
        }
    }
}
