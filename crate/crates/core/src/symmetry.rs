//! Symmetry sectors: spatial parity, global spin flip and total magnetization.
//!
//! Sector vectors are symmetrized combinations of computational basis states
//! over the orbit generated by the requested reflections. Columns are ordered
//! by the smallest state in each orbit, and that state carries a positive
//! amplitude.

use std::io::Write;

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::csv::fmt_f64;
use crate::error::{Error, Result, Symmetry};
use crate::sparse::{Csr, SparseOperator};
use crate::spin_models::{ModelFamily, MAX_SITES};

/// Tolerance of the commutator check run before projecting.
pub const COMMUTATOR_TOL: f64 = 1e-10;

/// Quantum numbers selecting a sector.
///
/// `magnetization` is the total `S^z = (n_up - n_down) / 2`; it must be an
/// integer for even `L` and a half-integer for odd `L`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_reflection: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub magnetization: Option<f64>,
}

impl SectorSpec {
    pub fn parity(p: i8) -> Self {
        SectorSpec {
            parity: Some(p),
            ..Default::default()
        }
    }

    pub fn parity_z(p: i8, z: i8) -> Self {
        SectorSpec {
            parity: Some(p),
            z_reflection: Some(z),
            magnetization: None,
        }
    }

    pub fn parity_magnetization(p: i8, m: f64) -> Self {
        SectorSpec {
            parity: Some(p),
            z_reflection: None,
            magnetization: Some(m),
        }
    }

    pub fn with_z(mut self, z: i8) -> Self {
        self.z_reflection = Some(z);
        self
    }

    /// `n_up - n_down` for the requested magnetization.
    fn twice_sz(&self, sites: usize) -> Result<Option<i64>> {
        let Some(m) = self.magnetization else {
            return Ok(None);
        };
        let twice = 2.0 * m;
        if !twice.is_finite() || twice.fract() != 0.0 {
            return Err(Error::InvalidSector(format!(
                "magnetization {m} is not a multiple of 1/2"
            )));
        }
        let twice = twice as i64;
        if twice.abs() > sites as i64 || (twice - sites as i64) % 2 != 0 {
            return Err(Error::InvalidSector(format!(
                "magnetization {m} is impossible for L = {sites}"
            )));
        }
        Ok(Some(twice))
    }

    pub fn validate(&self, sites: usize) -> Result<()> {
        if self.parity.is_none() && self.z_reflection.is_none() && self.magnetization.is_none() {
            return Err(Error::InvalidSector(
                "at least one quantum number must be set".into(),
            ));
        }
        for (name, v) in [("parity", self.parity), ("z_reflection", self.z_reflection)] {
            if let Some(v) = v {
                if v != 1 && v != -1 {
                    return Err(Error::InvalidSector(format!("{name} = {v}, expected ±1")));
                }
            }
        }
        if let (Some(_), Some(tw)) = (self.z_reflection, self.twice_sz(sites)?) {
            if tw != 0 {
                return Err(Error::InvalidSector(
                    "z_reflection maps magnetization M to -M; only M = 0 is compatible".into(),
                ));
            }
        }
        self.twice_sz(sites)?;
        Ok(())
    }

    /// Checks the quantum numbers against the model family's symmetries.
    pub fn validate_for(&self, family: ModelFamily, sites: usize, h: f64) -> Result<()> {
        self.validate(sites)?;
        if self.magnetization.is_some() && !family.is_xxz() {
            return Err(Error::InvalidSector(format!(
                "magnetization is not conserved by {family:?}"
            )));
        }
        if self.z_reflection.is_some() && !(family.is_tfim() && h == 0.0) {
            return Err(Error::InvalidSector(format!(
                "z_reflection requires a TFIM family with h = 0 ({family:?}, h = {h})"
            )));
        }
        Ok(())
    }
}

#[inline]
fn reverse_bits(state: usize, sites: usize) -> usize {
    state.reverse_bits() >> (usize::BITS as usize - sites)
}

#[inline]
fn flip_all(state: usize, sites: usize) -> usize {
    state ^ ((1usize << sites) - 1)
}

fn permutation_operator(sites: usize, f: impl Fn(usize) -> usize) -> Result<SparseOperator> {
    if sites == 0 || sites > MAX_SITES {
        return Err(Error::InvalidArgument(format!("unsupported site count {sites}")));
    }
    let dim = 1usize << sites;
    SparseOperator::from_triplets(dim, (0..dim).map(|s| (f(s), s, Complex64::new(1.0, 0.0))))
}

/// Reflection `|s_1 ... s_L> -> |s_L ... s_1>`.
pub fn parity_operator(sites: usize) -> Result<SparseOperator> {
    permutation_operator(sites, |s| reverse_bits(s, sites))
}

/// Global spin flip `∏_i σ^x_i`.
pub fn z_reflection_operator(sites: usize) -> Result<SparseOperator> {
    permutation_operator(sites, |s| flip_all(s, sites))
}

/// Total `S^z = Σ_i σ^z_i / 2`.
pub fn total_sz_operator(sites: usize) -> Result<SparseOperator> {
    if sites == 0 || sites > MAX_SITES {
        return Err(Error::InvalidArgument(format!("unsupported site count {sites}")));
    }
    let dim = 1usize << sites;
    SparseOperator::from_triplets(
        dim,
        (0..dim).map(|s| {
            let down = s.count_ones() as f64;
            (s, s, Complex64::new((sites as f64 - 2.0 * down) / 2.0, 0.0))
        }),
    )
}

const NO_COLUMN: u32 = u32::MAX;

/// Orthonormal basis of a symmetry sector embedded in the full space.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    sites: usize,
    spec: SectorSpec,
    columns: Vec<Vec<(usize, f64)>>,
    column_of: Vec<u32>,
    amplitude_of: Vec<f64>,
}

impl SectorBasis {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn spec(&self) -> &SectorSpec {
        &self.spec
    }

    pub fn dim_full(&self) -> usize {
        1 << self.sites
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// Nonzero `(state, amplitude)` pairs of one basis vector, sorted by state.
    pub fn column(&self, i: usize) -> &[(usize, f64)] {
        &self.columns[i]
    }

    /// Sector column containing `state`, with the amplitude it carries there.
    pub fn locate(&self, state: usize) -> Option<(usize, f64)> {
        let c = self.column_of[state];
        (c != NO_COLUMN).then(|| (c as usize, self.amplitude_of[state]))
    }

    /// Maps a sector vector back into the full space.
    pub fn embed(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim_full()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(s, a) in col {
                out[s] += v[c] * a;
            }
        }
        out
    }

    /// CSV with header `column_index,basis_state_bits,amplitude_re,amplitude_im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "column_index,basis_state_bits,amplitude_re,amplitude_im")?;
        for (c, col) in self.columns.iter().enumerate() {
            for &(s, a) in col {
                writeln!(
                    w,
                    "{c},{:0width$b},{},{}",
                    s,
                    fmt_f64(a),
                    fmt_f64(0.0),
                    width = self.sites
                )?;
            }
        }
        Ok(())
    }

    fn symmetries(&self) -> Vec<Symmetry> {
        let mut v = Vec::new();
        if self.spec.parity.is_some() {
            v.push(Symmetry::Parity);
        }
        if self.spec.z_reflection.is_some() {
            v.push(Symmetry::ZReflection);
        }
        if self.spec.magnetization.is_some() {
            v.push(Symmetry::Magnetization);
        }
        v
    }
}

pub fn build_sector_basis(spec: &SectorSpec, sites: usize) -> Result<SectorBasis> {
    if sites < 2 || sites > MAX_SITES {
        return Err(Error::InvalidArgument(format!("unsupported site count {sites}")));
    }
    spec.validate(sites)?;
    let dim_full = 1usize << sites;
    let twice_sz = spec.twice_sz(sites)?;

    // (map, character) for each non-identity group element
    let mut group: Vec<(Box<dyn Fn(usize) -> usize>, f64)> = Vec::new();
    if let Some(p) = spec.parity {
        group.push((Box::new(move |s| reverse_bits(s, sites)), p as f64));
    }
    if let Some(z) = spec.z_reflection {
        group.push((Box::new(move |s| flip_all(s, sites)), z as f64));
    }
    if let (Some(p), Some(z)) = (spec.parity, spec.z_reflection) {
        group.push((
            Box::new(move |s| flip_all(reverse_bits(s, sites), sites)),
            (p * z) as f64,
        ));
    }

    let mut columns = Vec::new();
    let mut column_of = vec![NO_COLUMN; dim_full];
    let mut amplitude_of = vec![0.0; dim_full];
    let mut coeffs: Vec<(usize, f64)> = Vec::with_capacity(4);
    for s in 0..dim_full {
        if let Some(tw) = twice_sz {
            if sites as i64 - 2 * s.count_ones() as i64 != tw {
                continue;
            }
        }
        if group.iter().any(|(g, _)| g(s) < s) {
            continue;
        }
        coeffs.clear();
        coeffs.push((s, 1.0));
        for (g, chi) in &group {
            let t = g(s);
            match coeffs.iter_mut().find(|(u, _)| *u == t) {
                Some(entry) => entry.1 += chi,
                None => coeffs.push((t, *chi)),
            }
        }
        coeffs.retain(|&(_, a)| a != 0.0);
        let norm = coeffs.iter().map(|&(_, a)| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let mut col: Vec<(usize, f64)> = coeffs.iter().map(|&(t, a)| (t, a / norm)).collect();
        col.sort_by_key(|&(t, _)| t);
        let idx = columns.len() as u32;
        for &(t, a) in &col {
            column_of[t] = idx;
            amplitude_of[t] = a;
        }
        columns.push(col);
    }
    if columns.is_empty() {
        return Err(Error::EmptySector);
    }
    Ok(SectorBasis {
        sites,
        spec: *spec,
        columns,
        column_of,
        amplitude_of,
    })
}

/// Largest deviation of `op` from commuting with `symmetry`.
pub fn commutator_residual(op: &SparseOperator, symmetry: Symmetry, sites: usize) -> f64 {
    let image = |s: usize| match symmetry {
        Symmetry::Parity => reverse_bits(s, sites),
        Symmetry::ZReflection => flip_all(s, sites),
        Symmetry::Magnetization => s,
    };
    op.entries()
        .iter()
        .map(|&(r, c, v)| match symmetry {
            Symmetry::Magnetization => {
                if r.count_ones() != c.count_ones() {
                    v.norm()
                } else {
                    0.0
                }
            }
            _ => (op.get(image(r), image(c)) - v).norm(),
        })
        .fold(0.0, f64::max)
}

/// Checks `[op, S] = 0` for every symmetry defining `basis`.
pub fn check_symmetries(op: &SparseOperator, basis: &SectorBasis) -> Result<()> {
    if op.dim() != basis.dim_full() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim_full(),
            found: op.dim(),
        });
    }
    for symmetry in basis.symmetries() {
        let residual = commutator_residual(op, symmetry, basis.sites);
        if residual > COMMUTATOR_TOL {
            return Err(Error::SymmetryViolation { symmetry, residual });
        }
    }
    Ok(())
}

/// `V^dagger op V` in sparse form.
pub fn project_sparse(op: &SparseOperator, basis: &SectorBasis) -> Result<Csr<Complex64>> {
    check_symmetries(op, basis)?;
    // column access into op
    let mut by_col: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); op.dim()];
    for &(r, c, v) in op.entries() {
        by_col[c].push((r, v));
    }
    let mut triplets = Vec::new();
    for (c, col) in basis.columns.iter().enumerate() {
        for &(s, a) in col {
            for &(r, v) in &by_col[s] {
                if let Some((row, b)) = basis.locate(r) {
                    triplets.push((row, c, v * (a * b)));
                }
            }
        }
    }
    Ok(Csr::from_triplets(basis.dim(), triplets))
}

/// `V^dagger op V` as a dense Hermitian-shaped matrix.
pub fn project(op: &SparseOperator, basis: &SectorBasis) -> Result<Mat<Complex64>> {
    Ok(project_sparse(op, basis)?.to_dense())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_models::{build_hamiltonian, seed_operator, ModelSpec, SeedKind};

    fn palindromes(sites: usize) -> usize {
        (0..1usize << sites)
            .filter(|&s| reverse_bits(s, sites) == s)
            .count()
    }

    #[test]
    fn parity_two_sites() {
        let p = parity_operator(2).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(p.get(0, 0), one);
        assert_eq!(p.get(3, 3), one);
        assert_eq!(p.get(1, 2), one);
        assert_eq!(p.get(2, 1), one);
        assert_eq!(p.nnz(), 4);
    }

    #[test]
    fn parity_is_an_involution() {
        let p = parity_operator(5).unwrap();
        assert_eq!(p.matmul(&p).unwrap(), SparseOperator::identity(32).unwrap());
        assert!(p.is_hermitian());
    }

    #[test]
    fn parity_trace_counts_palindromes() {
        let p = parity_operator(3).unwrap();
        let trace: f64 = (0..8).map(|s| p.get(s, s).re).sum();
        assert_eq!(trace as usize, palindromes(3));
        assert_eq!(palindromes(3), 4);
    }

    #[test]
    fn sector_dimensions() {
        let b = build_sector_basis(&SectorSpec::parity(1), 7).unwrap();
        assert_eq!(b.dim(), (128 + palindromes(7)) / 2);
        assert_eq!(b.dim(), 72);

        let b = build_sector_basis(&SectorSpec::parity(-1), 2).unwrap();
        assert_eq!(b.dim(), 1);
        let col = b.column(0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!((col[0].0, col[1].0), (1, 2));
        assert!((col[0].1 - r).abs() < 1e-15 && (col[1].1 + r).abs() < 1e-15);
    }

    #[test]
    fn high_magnetization_block_l12() {
        // brute force: states with n_up - n_down = 10 and their reflection orbits
        let states: Vec<usize> = (0..1usize << 12).filter(|s| s.count_ones() == 1).collect();
        assert_eq!(states.len(), 12);
        let mut orbits: Vec<usize> = states
            .iter()
            .map(|&s| s.min(reverse_bits(s, 12)))
            .collect();
        orbits.sort();
        orbits.dedup();
        let b = build_sector_basis(&SectorSpec::parity_magnetization(1, 5.0), 12).unwrap();
        assert_eq!(b.dim(), orbits.len());
        assert_eq!(b.dim(), 6);
    }

    #[test]
    fn representatives_are_positive_and_ordered() {
        let b = build_sector_basis(&SectorSpec::parity_z(1, -1), 6).unwrap();
        let mut last = None;
        for i in 0..b.dim() {
            let col = b.column(i);
            assert!(col[0].1 > 0.0);
            let norm: f64 = col.iter().map(|e| e.1 * e.1).sum();
            assert!((norm - 1.0).abs() < 1e-14);
            if let Some(prev) = last {
                assert!(col[0].0 > prev);
            }
            last = Some(col[0].0);
        }
    }

    #[test]
    fn sector_dims_sum_to_full_space() {
        let l = 6;
        let mut total = 0;
        for p in [1, -1] {
            for z in [1, -1] {
                total += build_sector_basis(&SectorSpec::parity_z(p, z), l)
                    .map(|b| b.dim())
                    .unwrap_or(0);
            }
        }
        assert_eq!(total, 64);
        let mut total = 0;
        for p in [1, -1] {
            for tw in (-6..=6).step_by(2) {
                let spec = SectorSpec::parity_magnetization(p, tw as f64 / 2.0);
                total += build_sector_basis(&spec, l).map(|b| b.dim()).unwrap_or(0);
            }
        }
        assert_eq!(total, 64);
    }

    #[test]
    fn invalid_sectors() {
        assert!(build_sector_basis(&SectorSpec::default(), 4).is_err());
        assert!(build_sector_basis(&SectorSpec::parity(2), 4).is_err());
        let spec = SectorSpec::parity_magnetization(1, 0.5);
        assert!(matches!(build_sector_basis(&spec, 4), Err(Error::InvalidSector(_))));
        let spec = SectorSpec::parity_magnetization(1, 1.0).with_z(1);
        assert!(build_sector_basis(&spec, 4).is_err());
        // all-up state is a palindrome: the odd-parity block is empty
        let spec = SectorSpec::parity_magnetization(-1, 2.0);
        assert!(matches!(build_sector_basis(&spec, 4), Err(Error::EmptySector)));
    }

    #[test]
    fn tfim_two_site_even_block() {
        let h = build_hamiltonian(&ModelSpec::local_tfim(2, 1.0, 0.0)).unwrap();
        let basis = build_sector_basis(&SectorSpec::parity(1), 2).unwrap();
        let m = project(&h, &basis).unwrap();
        let s = std::f64::consts::SQRT_2;
        // basis {|00>, (|01>+|10>)/√2, |11>}
        let want = [[-1.0, -s, 0.0], [-s, 1.0, -s], [0.0, -s, -1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[(i, j)] - Complex64::new(want[i][j], 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn projection_rejects_broken_symmetry() {
        let h = build_hamiltonian(&ModelSpec::local_tfim(4, 1.0, 0.3)).unwrap();
        let basis = build_sector_basis(&SectorSpec::parity_z(1, 1), 4).unwrap();
        match project(&h, &basis) {
            Err(Error::SymmetryViolation { symmetry, .. }) => {
                assert_eq!(symmetry, Symmetry::ZReflection)
            }
            other => panic!("expected symmetry violation, got {other:?}"),
        }
        let seed = seed_operator(SeedKind::SingleSz, 1, 4).unwrap();
        let basis = build_sector_basis(&SectorSpec::parity(1), 4).unwrap();
        assert!(matches!(
            project(&seed, &basis),
            Err(Error::SymmetryViolation { symmetry: Symmetry::Parity, .. })
        ));
    }

    #[test]
    fn basis_csv() {
        let basis = build_sector_basis(&SectorSpec::parity(-1), 2).unwrap();
        let mut buf = Vec::new();
        basis.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "column_index,basis_state_bits,amplitude_re,amplitude_im");
        assert!(lines[1].starts_with("0,01,0.70710678118654"));
        assert!(lines[2].starts_with("0,10,-0.70710678118654"));
    }
}
