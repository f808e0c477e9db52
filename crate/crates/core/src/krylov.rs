//! Lanczos tridiagonalization of the Liouvillian `L O = [H, O]` and Krylov
//! complexity of the resulting chain.
//!
//! Operators live in a symmetry sector of dimension `D` and are stored as dense
//! row-major `D x D` blocks. The inner product is `(A|B) = Tr[A^dagger B] / D`.
//!
//! When the seed satisfies `O^dagger = ±O` every Krylov vector inherits the
//! property with alternating sign, so `O H = ±(H O)^dagger` and one sparse
//! product per step suffices. In real arithmetic vectors of opposite index
//! parity are then orthogonal by symmetry and are skipped during
//! reorthogonalization.

use std::io::Write;

use faer::{Mat, Side};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::csv::{fmt_f64, write_rows, write_xy};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::Csr;

/// Operator in a `D`-dimensional sector, viewed as a vector of length `D^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorVector<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> OperatorVector<T> {
    pub fn zeros(dim: usize) -> Self {
        OperatorVector {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut o = Self::zeros(dim);
        for i in 0..dim {
            o.data[i * dim + i] = T::from_f64(1.0);
        }
        o
    }

    /// Wraps a row-major `dim x dim` block.
    pub fn from_row_major(dim: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(OperatorVector { dim, data })
    }

    pub fn from_csr(m: &Csr<T>) -> Self {
        let mut o = Self::zeros(m.dim());
        for (r, c, v) in m.triplets() {
            o.data[r * o.dim + c] = v;
        }
        o
    }

    pub fn from_mat(m: &Mat<T>) -> Self
    where
        T: faer::traits::ComplexField,
    {
        assert_eq!(m.nrows(), m.ncols());
        let dim = m.nrows();
        let mut o = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                o.data[i * dim + j] = m[(i, j)];
            }
        }
        o
    }

    pub fn to_mat(&self) -> Mat<T>
    where
        T: faer::traits::ComplexField,
    {
        Mat::from_fn(self.dim, self.dim, |i, j| self.data[i * self.dim + j])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    /// `sqrt((A|A))`.
    pub fn norm(&self) -> f64 {
        (sum_abs_sqr(&self.data) / self.dim as f64).sqrt()
    }

    pub fn scaled(&self, s: T) -> Self {
        OperatorVector {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        Ok(OperatorVector {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        })
    }

    pub fn to_complex(&self) -> OperatorVector<Complex64> {
        OperatorVector {
            dim: self.dim,
            data: self.data.iter().map(|v| v.to_complex()).collect(),
        }
    }

    /// `+1` if `A^dagger = A`, `-1` if `A^dagger = -A`, within `rel_tol * max|A|`.
    pub fn hermiticity_sign(&self, rel_tol: f64) -> Option<i8> {
        let scale = self.data.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let d = self.dim;
        [1i8, -1].into_iter().find(|&s| {
            (0..d).all(|i| {
                (i..d).all(|j| {
                    let a = self.data[i * d + j];
                    let b = self.data[j * d + i].conj().scale(s as f64);
                    (a - b).abs() <= rel_tol * scale
                })
            })
        })
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `(A|B) = Tr[A^dagger B] / D`.
pub fn frobenius_inner<T: Scalar>(a: &OperatorVector<T>, b: &OperatorVector<T>) -> Result<T> {
    check_dims(a.dim, b.dim)?;
    Ok(dot(&a.data, &b.data).scale(1.0 / a.dim as f64))
}

/// `[H, O] = H O - O H`.
pub fn liouvillian_apply<T: Scalar>(h: &Csr<T>, o: &OperatorVector<T>) -> Result<OperatorVector<T>> {
    check_dims(h.dim(), o.dim)?;
    let d = o.dim;
    let mut out = vec![T::zero(); d * d];
    let mut tmp = vec![T::zero(); d * d];
    h.mul_dense(&o.data, d, &mut out);
    h.dense_mul(&o.data, d, &mut tmp);
    out.iter_mut().zip(&tmp).for_each(|(a, &b)| *a -= b);
    Ok(OperatorVector { dim: d, data: out })
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    const CHUNK: usize = 4096;
    if a.len() <= CHUNK {
        return dot_serial(a, b);
    }
    a.par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| dot_serial(x, y))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(T::zero(), |s, x| s + x)
}

#[inline]
fn dot_serial<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = [T::zero(); 4];
    let mut ca = a.chunks_exact(4);
    let mut cb = b.chunks_exact(4);
    for (x, y) in (&mut ca).zip(&mut cb) {
        for k in 0..4 {
            acc[k] += x[k].conj() * y[k];
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (&x, &y) in ca.remainder().iter().zip(cb.remainder()) {
        s += x.conj() * y;
    }
    s
}

fn sum_abs_sqr<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.abs_sqr()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// `b_K` fell below the relative tolerance.
    ToleranceHit,
    /// The requested number of coefficients was produced.
    MaxIterations,
    /// `b_K` vanished to rounding level, or `K` reached `D^2 - D + 1`.
    ExactBreakdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reorthogonalization {
    /// Two classical Gram-Schmidt passes against every previous vector.
    Full,
    /// Two passes against the previous two vectors only. Memory stays at a
    /// few operators, which makes early coefficients reachable for large `D`.
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StoreBasis {
    /// Keep the basis when `D <= 256`.
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LanczosOptions {
    /// Stop once `b_n < tol_rel * max(b_1..b_{n-1})`.
    pub tol_rel: f64,
    /// Maximum number of coefficients `b_n`.
    pub max_iter: Option<usize>,
    pub reorthogonalization: Reorthogonalization,
    pub store_basis: StoreBasis,
    /// Upper bound on memory held by Krylov vectors.
    pub max_basis_bytes: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            tol_rel: 1e-10,
            max_iter: None,
            reorthogonalization: Reorthogonalization::Full,
            store_basis: StoreBasis::Auto,
            max_basis_bytes: 2 << 30,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LanczosResult<T> {
    /// `b_1 .. b_{K-1}`.
    pub b: Vec<f64>,
    pub krylov_dim: usize,
    pub basis: Option<Vec<OperatorVector<T>>>,
    pub termination: Termination,
    pub reorthogonalization: Reorthogonalization,
}

impl<T> LanczosResult<T> {
    /// Whether `b` describes the whole Krylov chain.
    pub fn extent(&self) -> ChainExtent {
        match self.termination {
            Termination::MaxIterations => ChainExtent::Truncated,
            _ => ChainExtent::Closed,
        }
    }

    /// CSV `n,b_n` with `n` starting at 1.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_rows(
            w,
            &["n", "b_n"],
            self.b
                .iter()
                .enumerate()
                .map(|(i, &b)| [(i + 1).to_string(), fmt_f64(b)]),
        )
    }
}

/// Largest Krylov dimension possible in a `D`-dimensional sector.
pub fn krylov_dim_bound(d: usize) -> usize {
    d * d - d + 1
}

struct Liouvillian<'a, T> {
    h: &'a Csr<T>,
    tmp: Vec<T>,
}

impl<T: Scalar> Liouvillian<'_, T> {
    /// `out = [H, o]`; `sign` is the hermiticity sign of `o` when known.
    fn apply(&mut self, o: &[T], sign: Option<i8>, out: &mut [T]) {
        let d = self.h.dim();
        match sign {
            Some(s) => {
                let s = s as f64;
                self.h.mul_dense(o, d, &mut self.tmp);
                let hx = &self.tmp;
                out.par_chunks_mut(d).enumerate().for_each(|(i, row)| {
                    for (j, v) in row.iter_mut().enumerate() {
                        *v = hx[i * d + j] - hx[j * d + i].conj().scale(s);
                    }
                });
            }
            None => {
                self.h.mul_dense(o, d, out);
                self.h.dense_mul(o, d, &mut self.tmp);
                out.iter_mut().zip(&self.tmp).for_each(|(a, &b)| *a -= b);
            }
        }
    }
}

/// Two classical Gram-Schmidt passes of `a` against `qs` (unit vectors).
fn reorthogonalize<T: Scalar>(a: &mut [T], qs: &[&[T]], dim: usize) {
    if qs.is_empty() {
        return;
    }
    let inv_d = 1.0 / dim as f64;
    for _ in 0..2 {
        let coeffs: Vec<T> = qs
            .par_iter()
            .map(|q| dot_serial(q, a).scale(inv_d))
            .collect();
        const CHUNK: usize = 2048;
        a.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, chunk)| {
            let off = ci * CHUNK;
            for (q, &c) in qs.iter().zip(&coeffs) {
                let qc = &q[off..off + chunk.len()];
                for (x, &y) in chunk.iter_mut().zip(qc) {
                    *x -= c * y;
                }
            }
        });
    }
}

/// Lanczos recursion `A_n = L O_{n-1} - b_{n-1} O_{n-2}`, `b_n = ||A_n||`.
pub fn lanczos<T: Scalar>(
    h: &Csr<T>,
    seed: &OperatorVector<T>,
    opts: &LanczosOptions,
) -> Result<LanczosResult<T>> {
    let d = h.dim();
    check_dims(d, seed.dim)?;
    if !(opts.tol_rel > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol_rel must be positive, got {}",
            opts.tol_rel
        )));
    }
    let seed_norm = seed.norm();
    if !seed_norm.is_finite() {
        return Err(Error::InvalidArgument("seed has non-finite entries".into()));
    }
    if seed_norm == 0.0 {
        return Err(Error::ZeroSeed);
    }

    let n2 = d * d;
    let vec_bytes = n2 * std::mem::size_of::<T>();
    let k_cap = krylov_dim_bound(d);
    let max_b = opts.max_iter.unwrap_or(usize::MAX);
    let full = opts.reorthogonalization == Reorthogonalization::Full;
    let keep_all = match opts.store_basis {
        StoreBasis::Always => true,
        StoreBasis::Never => false,
        StoreBasis::Auto => d <= 256,
    };
    let retain = full || keep_all;

    let mut o0 = seed.data.iter().map(|&x| x.scale(1.0 / seed_norm)).collect::<Vec<T>>();
    let sign0 = seed.hermiticity_sign(1e-13);
    if let Some(s) = sign0 {
        // make the symmetry exact so it survives the recursion bit for bit
        let s = s as f64;
        for i in 0..d {
            for j in i..d {
                let a = o0[i * d + j];
                let b = o0[j * d + i].conj().scale(s);
                let m = (a + b).scale(0.5);
                o0[i * d + j] = m;
                o0[j * d + i] = m.conj().scale(s);
            }
        }
    }
    let parity_skip = T::IS_REAL && sign0.is_some();
    let sign_of = |k: usize| sign0.map(|s| if k % 2 == 0 { s } else { -s });

    // vectors[k - first] = O_k
    let mut vectors: Vec<Vec<T>> = vec![o0];
    let mut first = 0usize;
    let mut b: Vec<f64> = Vec::new();
    let mut liou = Liouvillian {
        h,
        tmp: vec![T::zero(); n2],
    };
    let l_bound = 2.0 * h.norm_bound();
    let termination;

    loop {
        let k = b.len() + 1; // basis vectors held so far
        if b.len() >= max_b {
            termination = Termination::MaxIterations;
            break;
        }
        if k >= k_cap {
            termination = Termination::ExactBreakdown;
            break;
        }
        let n = k; // index of the vector being built
        let mut a = vec![T::zero(); n2];
        liou.apply(&vectors[n - 1 - first], sign_of(n - 1), &mut a);
        if n >= 2 {
            let bp = b[n - 2];
            let prev = &vectors[n - 2 - first];
            a.par_iter_mut().zip(prev.par_iter()).for_each(|(x, &p)| *x -= p.scale(bp));
        }
        {
            let lo = if full { first } else { n.saturating_sub(2).max(first) };
            let qs: Vec<&[T]> = (lo..n)
                .filter(|&j| !parity_skip || j % 2 == n % 2)
                .map(|j| vectors[j - first].as_slice())
                .collect();
            reorthogonalize(&mut a, &qs, d);
        }
        let bn = (sum_abs_sqr(&a) / d as f64).sqrt();
        let b_max = b.iter().copied().fold(0.0, f64::max);
        let breakdown_scale = b_max.max(l_bound);
        let tol_scale = if b.is_empty() { l_bound } else { b_max };
        if !bn.is_finite() {
            return Err(Error::InvalidArgument("Lanczos produced a non-finite norm".into()));
        }
        if bn <= 1e3 * f64::EPSILON * breakdown_scale {
            termination = Termination::ExactBreakdown;
            break;
        }
        if bn < opts.tol_rel * tol_scale {
            termination = Termination::ToleranceHit;
            break;
        }
        let inv = 1.0 / bn;
        a.par_iter_mut().for_each(|x| *x = x.scale(inv));
        b.push(bn);
        if retain && (vectors.len() + 1) * vec_bytes > opts.max_basis_bytes {
            return Err(Error::ResourceExhausted(format!(
                "storing {} Krylov vectors of dimension {d}x{d} exceeds {} bytes",
                vectors.len() + 1,
                opts.max_basis_bytes
            )));
        }
        vectors.push(a);
        if !retain && vectors.len() > 2 {
            vectors.remove(0);
            first += 1;
        }
    }

    let krylov_dim = b.len() + 1;
    let basis = keep_all.then(|| {
        vectors
            .into_iter()
            .map(|data| OperatorVector { dim: d, data })
            .collect()
    });
    Ok(LanczosResult {
        b,
        krylov_dim,
        basis,
        termination,
        reorthogonalization: opts.reorthogonalization,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for TimeGrid {
    fn default() -> Self {
        TimeGrid {
            t_min: 1e-2,
            t_max: 1e7,
            points: 400,
            spacing: Spacing::Log,
        }
    }
}

impl TimeGrid {
    pub fn log(t_min: f64, t_max: f64, points: usize) -> Self {
        TimeGrid {
            t_min,
            t_max,
            points,
            spacing: Spacing::Log,
        }
    }

    pub fn linear(t_min: f64, t_max: f64, points: usize) -> Self {
        TimeGrid {
            t_min,
            t_max,
            points,
            spacing: Spacing::Linear,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.points < 2 {
            return bad(format!("time grid needs at least 2 points, got {}", self.points));
        }
        if !(self.t_min.is_finite() && self.t_max.is_finite() && self.t_max > self.t_min) {
            return bad(format!("invalid time range [{}, {}]", self.t_min, self.t_max));
        }
        if self.spacing == Spacing::Log && self.t_min <= 0.0 {
            return bad("log-spaced grid needs t_min > 0".into());
        }
        if self.t_min < 0.0 {
            return bad("times must be non-negative".into());
        }
        Ok(())
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.points;
        let last = (n - 1) as f64;
        Ok(match self.spacing {
            Spacing::Linear => (0..n)
                .map(|i| self.t_min + (self.t_max - self.t_min) * i as f64 / last)
                .collect(),
            Spacing::Log => {
                let (a, b) = (self.t_min.log10(), self.t_max.log10());
                (0..n)
                    .map(|i| match i {
                        0 => self.t_min,
                        _ if i == n - 1 => self.t_max,
                        _ => 10f64.powf(a + (b - a) * i as f64 / last),
                    })
                    .collect()
            }
        })
    }
}

/// Krylov-chain wavefunction and complexity on a time grid.
#[derive(Debug, Clone)]
pub struct ComplexityCurve {
    pub times: Vec<f64>,
    pub krylov_dim: usize,
    /// `phi[t * krylov_dim + n] = φ_n(times[t])`.
    pub phi: Vec<Complex64>,
    pub c_k: Vec<f64>,
}

impl ComplexityCurve {
    pub fn amplitudes_at(&self, t_index: usize) -> &[Complex64] {
        let k = self.krylov_dim;
        &self.phi[t_index * k..(t_index + 1) * k]
    }

    /// `max_t |Σ_n |φ_n(t)|^2 - 1|`.
    pub fn normalization_error(&self) -> f64 {
        (0..self.times.len())
            .map(|t| (self.amplitudes_at(t).iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// CSV `t,c_k`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_xy(w, ["t", "c_k"], &self.times, &self.c_k)
    }

    /// Wide CSV `t,phi_0_re,phi_0_im,...`.
    pub fn write_amplitudes_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut header = vec!["t".to_string()];
        for n in 0..self.krylov_dim {
            header.push(format!("phi_{n}_re"));
            header.push(format!("phi_{n}_im"));
        }
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        write_rows(
            w,
            &header,
            self.times.iter().enumerate().map(|(i, &t)| {
                let mut row = vec![fmt_f64(t)];
                for z in self.amplitudes_at(i) {
                    row.push(fmt_f64(z.re));
                    row.push(fmt_f64(z.im));
                }
                row
            }),
        )
    }
}

fn check_coefficients(b: &[f64]) -> Result<()> {
    for (i, &v) in b.iter().enumerate() {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::NonPositiveCoefficient {
                index: i + 1,
                value: v,
            });
        }
    }
    Ok(())
}

fn tridiagonal(b: &[f64]) -> Mat<f64> {
    let k = b.len() + 1;
    let mut t = Mat::<f64>::zeros(k, k);
    for (i, &v) in b.iter().enumerate() {
        t[(i, i + 1)] = v;
        t[(i + 1, i)] = v;
    }
    t
}

/// Wavefunction `φ_n(t) = i^{-n} [exp(i T t)]_{n0}` of the Krylov chain with
/// hoppings `b`, from the eigendecomposition of the tridiagonal `T`.
pub fn evolve_wavefunction(b: &[f64], times: &[f64]) -> Result<ComplexityCurve> {
    check_coefficients(b)?;
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite time {t}")));
    }
    let k = b.len() + 1;
    let nt = times.len();
    let eig = tridiagonal(b)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::Eigensolver)?;
    let u = eig.U();
    let lambda: Vec<f64> = (0..k).map(|i| eig.S()[i]).collect();

    let c = Mat::<f64>::from_fn(k, nt, |j, t| u[(0, j)] * (lambda[j] * times[t]).cos());
    let s = Mat::<f64>::from_fn(k, nt, |j, t| u[(0, j)] * (lambda[j] * times[t]).sin());
    let re = u * &c;
    let im = u * &s;

    let mut phi = vec![Complex64::new(0.0, 0.0); k * nt];
    phi.par_chunks_mut(k).enumerate().for_each(|(t, row)| {
        if times[t] == 0.0 {
            row[0] = Complex64::new(1.0, 0.0);
            return;
        }
        for (n, z) in row.iter_mut().enumerate() {
            let w = Complex64::new(re[(n, t)], im[(n, t)]);
            // multiply by i^{-n}
            *z = match n % 4 {
                0 => w,
                1 => Complex64::new(w.im, -w.re),
                2 => -w,
                _ => Complex64::new(-w.im, w.re),
            };
        }
    });
    let mut curve = ComplexityCurve {
        times: times.to_vec(),
        krylov_dim: k,
        phi,
        c_k: Vec::new(),
    };
    curve.c_k = complexity(&curve);
    Ok(curve)
}

/// `C_K(t) = Σ_n n |φ_n(t)|^2`.
pub fn complexity(curve: &ComplexityCurve) -> Vec<f64> {
    (0..curve.times.len())
        .into_par_iter()
        .map(|t| {
            curve
                .amplitudes_at(t)
                .iter()
                .enumerate()
                .map(|(n, z)| n as f64 * z.norm_sqr())
                .sum()
        })
        .collect()
}

/// Whether a coefficient list ends because the chain closes or was cut short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainExtent {
    Closed,
    Truncated,
}

/// `(O_0|L^order|O_0)` as the `(0,0)` entry of `T^order`.
///
/// A truncated chain determines the moment only while `order / 2 <= b.len()`.
pub fn moments_from_b(b: &[f64], order: usize, extent: ChainExtent) -> Result<f64> {
    if order % 2 == 1 {
        return Ok(0.0);
    }
    let half = order / 2;
    if extent == ChainExtent::Truncated && half > b.len() {
        return Err(Error::InsufficientData(format!(
            "moment of order {order} needs {half} coefficients, have {}",
            b.len()
        )));
    }
    // ||T^half e_0||^2; only the first half + 1 sites can be reached
    let k = (b.len() + 1).min(half + 1);
    let mut v = vec![0.0; k];
    v[0] = 1.0;
    for _ in 0..half {
        let mut w = vec![0.0; k];
        for i in 0..k {
            if i + 1 < k {
                w[i] += b[i] * v[i + 1];
                w[i + 1] += b[i] * v[i];
            }
        }
        v = w;
    }
    Ok(v.iter().map(|x| x * x).sum())
}
