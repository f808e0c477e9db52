//! Sparse storage for full-space operators and sector-restricted matrices.

use std::io::Write;

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::csv::fmt_f64;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tolerance for the Hermitian flag on [`SparseOperator`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Operator on the full `2^L`-dimensional Hilbert space in coordinate form.
///
/// Entries are unique, nonzero and sorted lexicographically by `(row, col)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
    hermitian: bool,
}

impl SparseOperator {
    /// Builds an operator from possibly repeated triplets, summing duplicates.
    pub fn from_triplets<I>(dim: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        if !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "operator dimension {dim} is not a power of two"
            )));
        }
        let mut raw: Vec<(usize, usize, Complex64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::InvalidArgument(format!(
                    "entry ({r}, {c}) outside a {dim}x{dim} operator"
                )));
            }
            raw.push((r, c, v));
        }
        raw.sort_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, Complex64)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2.norm_sqr() != 0.0);
        let mut op = SparseOperator {
            dim,
            entries,
            hermitian: false,
        };
        op.hermitian = op.hermiticity_residual() < HERMITIAN_TOL;
        Ok(op)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_triplets(dim, (0..dim).map(|i| (i, i, Complex64::new(1.0, 0.0))))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Matrix element lookup by binary search.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        match self
            .entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
        {
            Ok(i) => self.entries[i].2,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// `max |A - A^dagger|` over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::from_triplets(self.dim, self.entries.iter().map(|&(r, c, v)| (r, c, v * s)))
            .expect("scaling preserves dimension")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        Self::from_triplets(
            self.dim,
            self.entries.iter().chain(other.entries.iter()).copied(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let rhs = other.to_csr();
        let mut out = Vec::new();
        for &(r, k, a) in &self.entries {
            let (cols, vals) = rhs.row(k);
            for (&c, &b) in cols.iter().zip(vals) {
                out.push((r, c, a * b));
            }
        }
        Self::from_triplets(self.dim, out)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn to_csr(&self) -> Csr<Complex64> {
        Csr::from_sorted_unique(self.dim, &self.entries)
    }

    pub fn to_dense(&self) -> Mat<Complex64> {
        let mut m = Mat::<Complex64>::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }

    /// Coordinate-list CSV with header `row,col,re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "row,col,re,im")?;
        for &(r, c, v) in &self.entries {
            writeln!(w, "{r},{c},{},{}", fmt_f64(v.re), fmt_f64(v.im))?;
        }
        Ok(())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Square compressed-sparse-row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Csr<T> {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Scalar> Csr<T> {
    /// Builds from arbitrary triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, T)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, T)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < n && c < n, "entry ({r}, {c}) outside {n}x{n}");
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2.abs_sqr() != 0.0);
        Self::from_sorted_unique(n, &merged)
    }

    fn from_sorted_unique(n: usize, entries: &[(usize, usize, T)]) -> Self {
        let mut row_ptr = vec![0usize; n + 1];
        for &(r, _, _) in entries {
            row_ptr[r + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Csr {
            n,
            row_ptr,
            cols: entries.iter().map(|e| e.1).collect(),
            vals: entries.iter().map(|e| e.2).collect(),
        }
    }

    pub fn from_dense(m: &Mat<T>) -> Self
    where
        T: faer::traits::ComplexField,
    {
        assert_eq!(m.nrows(), m.ncols());
        let n = m.nrows();
        let mut t = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = m[(i, j)];
                if v.abs_sqr() != 0.0 {
                    t.push((i, j, v));
                }
            }
        }
        Self::from_sorted_unique(n, &t)
    }

    pub fn identity(n: usize) -> Self {
        let t: Vec<_> = (0..n).map(|i| (i, i, T::from_f64(1.0))).collect();
        Self::from_sorted_unique(n, &t)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    #[inline]
    pub fn row(&self, r: usize) -> (&[usize], &[T]) {
        let s = self.row_ptr[r];
        let e = self.row_ptr[r + 1];
        (&self.cols[s..e], &self.vals[s..e])
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(i) => vals[i],
            Err(_) => T::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.n).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    /// `max |A - A^dagger|`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.triplets()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.vals.iter().map(|v| v.im().abs()).fold(0.0, f64::max)
    }

    /// Upper bound on the spectral norm (max absolute row sum).
    pub fn norm_bound(&self) -> f64 {
        (0..self.n)
            .map(|r| self.row(r).1.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn to_real(&self) -> Csr<f64> {
        Csr {
            n: self.n,
            row_ptr: self.row_ptr.clone(),
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|v| v.re()).collect(),
        }
    }

    pub fn to_complex(&self) -> Csr<Complex64> {
        Csr {
            n: self.n,
            row_ptr: self.row_ptr.clone(),
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|v| v.to_complex()).collect(),
        }
    }

    pub fn to_dense(&self) -> Mat<T>
    where
        T: faer::traits::ComplexField,
    {
        let mut m = Mat::<T>::zeros(self.n, self.n);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    /// `out = A X` for a row-major `n x m` block `x`.
    pub fn mul_dense(&self, x: &[T], m: usize, out: &mut [T]) {
        assert_eq!(x.len(), self.n * m);
        assert_eq!(out.len(), self.n * m);
        out.par_chunks_mut(m.max(1))
            .enumerate()
            .for_each(|(r, out_row)| {
                out_row.iter_mut().for_each(|o| *o = T::zero());
                let (cols, vals) = self.row(r);
                for (&k, &a) in cols.iter().zip(vals) {
                    let x_row = &x[k * m..(k + 1) * m];
                    for (o, &xv) in out_row.iter_mut().zip(x_row) {
                        *o += a * xv;
                    }
                }
            });
    }

    /// `out = X A` for a row-major `m x n` block `x`.
    pub fn dense_mul(&self, x: &[T], m: usize, out: &mut [T]) {
        let n = self.n;
        assert_eq!(x.len(), m * n);
        assert_eq!(out.len(), m * n);
        out.par_chunks_mut(n.max(1))
            .zip(x.par_chunks(n.max(1)))
            .for_each(|(out_row, x_row)| {
                out_row.iter_mut().for_each(|o| *o = T::zero());
                for (k, &xv) in x_row.iter().enumerate() {
                    if xv.abs_sqr() == 0.0 {
                        continue;
                    }
                    let (cols, vals) = self.row(k);
                    for (&c, &a) in cols.iter().zip(vals) {
                        out_row[c] += xv * a;
                    }
                }
            });
    }

    /// Sparse product `A B`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut t = Vec::new();
        for (r, k, a) in self.triplets() {
            let (cols, vals) = other.row(k);
            for (&c, &b) in cols.iter().zip(vals) {
                t.push((r, c, a * b));
            }
        }
        Self::from_triplets(self.n, t)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        let a = self
            .triplets()
            .map(|(r, c, v)| (v - other.get(r, c)).abs())
            .fold(0.0, f64::max);
        let b = other
            .triplets()
            .map(|(r, c, v)| (v - self.get(r, c)).abs())
            .fold(0.0, f64::max);
        a.max(b)
    }
}
