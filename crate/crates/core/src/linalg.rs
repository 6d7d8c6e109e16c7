//! Dense complex linear algebra, self-contained.
//!
//! Everything downstream rests on [`ComplexMatrix`]: a square, row-major,
//! heap-allocated complex matrix with the handful of operations a density
//! matrix pipeline needs — Kronecker products, partial traces over the
//! leading or trailing subsystem, partial transposition, and a cyclic Jacobi
//! eigensolver for Hermitian input. No BLAS/LAPACK; the matrices here are
//! small enough (dimension ≤ [`DENSE_DIM_CAP`]) that a tight O(dim³) Jacobi
//! loop is both adequate and easy to audit.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on dense dimension (2^12). Anything larger must go through the
/// structured spectral representations instead.
pub const DENSE_DIM_CAP: usize = 4096;

/// Tolerance for treating a matrix as Hermitian: max |a_ij - conj(a_ji)|.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Jacobi convergence threshold on the off-diagonal Frobenius norm.
const JACOBI_OFF_TOL: f64 = 1e-12;

/// Jacobi sweep budget before reporting non-convergence.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Max |Im| tolerated on the converged diagonal before it is taken real.
const DIAG_IMAG_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension. Fails above [`DENSE_DIM_CAP`].
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("dimension must be positive".into()));
        }
        if dim > DENSE_DIM_CAP {
            return Err(Error::Capacity { dim, cap: DENSE_DIM_CAP });
        }
        Ok(Self { dim, data: vec![ZERO; dim * dim] })
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        Ok(m)
    }

    /// Build from an element function `f(row, col)`.
    pub fn from_fn<F>(dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self { dim: d, data: vec![ZERO; d * d] };
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    /// Max |a_ij - conj(a_ji)| over all pairs; zero for exactly Hermitian input.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut max_sq = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let dev = (self.data[i * d + j] - self.data[j * d + i].conj()).norm_sqr();
                max_sq = max_sq.max(dev);
            }
        }
        max_sq.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    fn require_hermitian(&self) -> Result<()> {
        let dev = self.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { max_dev: dev, tol: HERMITICITY_TOL });
        }
        Ok(())
    }

    /// Elementwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("add: {} vs {}", self.dim, other.dim)));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { dim: self.dim, data })
    }

    /// Scalar multiple.
    pub fn scale(&self, k: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * k).collect() }
    }

    /// Plain O(dim³) matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("matmul: {} vs {}", self.dim, other.dim)));
        }
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let acc = &mut out[i * d..(i + 1) * d];
                for (o, b) in acc.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: d, data: out })
    }

    /// Largest elementwise |difference| against another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Σ |a_ij|²; for a Hermitian ρ this equals tr(ρ²).
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Kronecker product `self ⊗ other`. The result ordering puts `self` on
    /// the slow (leading) index.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let (da, db) = (self.dim, other.dim);
        let dim = da
            .checked_mul(db)
            .ok_or(Error::Capacity { dim: usize::MAX, cap: DENSE_DIM_CAP })?;
        let mut out = Self::zeros(dim)?;
        for i in 0..da {
            for j in 0..da {
                let a = self.data[i * da + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out.data[(i * db + k) * dim + (j * db + l)] = a * other.data[k * db + l];
                    }
                }
            }
        }
        Ok(out)
    }

    fn split_dims(&self, dim_a: usize, dim_b: usize, what: &str) -> Result<()> {
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != self.dim {
            return Err(Error::Dimension(format!(
                "{what}: {dim_a}×{dim_b} does not factor dimension {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// Trace out the trailing subsystem: ρ_A with (ρ_A)_ij = Σ_k ρ_(ik),(jk).
    pub fn partial_trace_b(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        self.split_dims(dim_a, dim_b, "partial_trace_b")?;
        let mut out = Self::zeros(dim_a)?;
        for i in 0..dim_a {
            for j in 0..dim_a {
                let mut acc = ZERO;
                for k in 0..dim_b {
                    acc += self.data[(i * dim_b + k) * self.dim + (j * dim_b + k)];
                }
                out.data[i * dim_a + j] = acc;
            }
        }
        Ok(out)
    }

    /// Trace out the leading subsystem: ρ_B with (ρ_B)_kl = Σ_i ρ_(ik),(il).
    pub fn partial_trace_a(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        self.split_dims(dim_a, dim_b, "partial_trace_a")?;
        let mut out = Self::zeros(dim_b)?;
        for k in 0..dim_b {
            for l in 0..dim_b {
                let mut acc = ZERO;
                for i in 0..dim_a {
                    acc += self.data[(i * dim_b + k) * self.dim + (i * dim_b + l)];
                }
                out.data[k * dim_b + l] = acc;
            }
        }
        Ok(out)
    }

    /// Partial transpose on the trailing subsystem:
    /// ρ^(T_B)_(ik),(jl) = ρ_(il),(jk). Involutive and trace-preserving.
    pub fn partial_transpose_b(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        self.split_dims(dim_a, dim_b, "partial_transpose_b")?;
        let mut out = Self::zeros(self.dim)?;
        for i in 0..dim_a {
            for j in 0..dim_a {
                for k in 0..dim_b {
                    for l in 0..dim_b {
                        out.data[(i * dim_b + k) * self.dim + (j * dim_b + l)] =
                            self.data[(i * dim_b + l) * self.dim + (j * dim_b + k)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Eigenvalues of a Hermitian matrix, descending. Input is validated
    /// against [`HERMITICITY_TOL`] first.
    pub fn eig_hermitian(&self) -> Result<Spectrum> {
        self.require_hermitian()?;
        let mut work = self.clone();
        jacobi_diagonalize(&mut work, None)?;
        let mut eigenvalues = extract_diagonal(&work)?;
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum { eigenvalues })
    }

    /// Full eigendecomposition of a Hermitian matrix: eigenvalues descending
    /// with matching eigenvector columns.
    pub fn eigendecompose(&self) -> Result<Eigendecomposition> {
        self.require_hermitian()?;
        let mut work = self.clone();
        let mut vectors = Self::identity(self.dim)?;
        jacobi_diagonalize(&mut work, Some(&mut vectors))?;
        let values = extract_diagonal(&work)?;

        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));

        let sorted_values: Vec<f64> = order.iter().map(|&c| values[c]).collect();
        let d = self.dim;
        let mut sorted_vectors = Self { dim: d, data: vec![ZERO; d * d] };
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..d {
                sorted_vectors.data[row * d + new_col] = vectors.data[row * d + old_col];
            }
        }
        Ok(Eigendecomposition { values: sorted_values, vectors: sorted_vectors })
    }

    /// Trace norm ‖A‖₁ = Σ |λ_i| for Hermitian A.
    pub fn trace_norm(&self) -> Result<f64> {
        let spectrum = self.eig_hermitian()?;
        Ok(spectrum.eigenvalues.iter().map(|v| v.abs()).sum())
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Wrap precomputed eigenvalues; sorts them descending.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    /// Max elementwise gap between two spectra viewed as sorted multisets.
    /// Panics if lengths differ — compare like with like.
    pub fn multiset_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len(), "multiset_distance: length mismatch");
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Paired eigenvalues (descending) and eigenvector columns of a Hermitian
/// matrix.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    values: Vec<f64>,
    vectors: ComplexMatrix,
}

impl Eigendecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Unitary whose columns are the eigenvectors, ordered to match
    /// [`Self::values`].
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum { eigenvalues: self.values.clone() }
    }

    /// Reassemble V diag(λ) V†; equals the input up to rounding.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let d = self.vectors.dim();
        let scaled = ComplexMatrix::from_fn(d, |i, j| {
            self.vectors.get(i, j) * Complex64::new(self.values[j], 0.0)
        })?;
        scaled.matmul(&self.vectors.adjoint())
    }
}

/// Frobenius norm of the strictly off-diagonal part (both triangles).
fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let d = m.dim;
    let mut acc = 0.0f64;
    for i in 0..d {
        for j in (i + 1)..d {
            acc += m.data[i * d + j].norm_sqr();
        }
    }
    (2.0 * acc).sqrt()
}

/// Cyclic Jacobi for Hermitian matrices. Each rotation zeroes one pivot pair
/// with the unitary
///
/// ```text
/// R_pp = c        R_pq = s·e^{iα}
/// R_qp = -s·e^{-iα}   R_qq = c
/// ```
///
/// where a_pq = r·e^{iα} and (c, s) come from the standard stable choice of
/// tan of the rotation angle, the root of t² + 2tθ − 1 with
/// θ = (a_qq − a_pp)/(2r). Diagonal updates reduce to a_pp − t·r and
/// a_qq + t·r, so the trace is preserved exactly. Pivots already exactly
/// zero are skipped, which makes the sparse corner-structured matrices from
/// the state builders converge in a couple of sweeps.
fn jacobi_diagonalize(a: &mut ComplexMatrix, mut v: Option<&mut ComplexMatrix>) -> Result<()> {
    let d = a.dim;
    if d == 1 {
        return Ok(());
    }
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(a) <= JACOBI_OFF_TOL {
            return Ok(());
        }
        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = a.data[p * d + q];
                let r_sq = apq.norm_sqr();
                if r_sq == 0.0 {
                    continue;
                }
                let r = r_sq.sqrt();
                let phase = apq / r;
                let theta = (a.data[q * d + q].re - a.data[p * d + p].re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let app = a.data[p * d + p];
                let aqq = a.data[q * d + q];
                a.data[p * d + p] = app - Complex64::new(t * r, 0.0);
                a.data[q * d + q] = aqq + Complex64::new(t * r, 0.0);
                a.data[p * d + q] = ZERO;
                a.data[q * d + p] = ZERO;

                for j in 0..d {
                    if j == p || j == q {
                        continue;
                    }
                    let ajp = a.data[j * d + p];
                    let ajq = a.data[j * d + q];
                    let new_jp = ajp * c - ajq * (phase.conj() * s);
                    let new_jq = ajp * (phase * s) + ajq * c;
                    a.data[j * d + p] = new_jp;
                    a.data[p * d + j] = new_jp.conj();
                    a.data[j * d + q] = new_jq;
                    a.data[q * d + j] = new_jq.conj();
                }

                if let Some(vm) = v.as_deref_mut() {
                    for j in 0..d {
                        let vjp = vm.data[j * d + p];
                        let vjq = vm.data[j * d + q];
                        vm.data[j * d + p] = vjp * c - vjq * (phase.conj() * s);
                        vm.data[j * d + q] = vjp * (phase * s) + vjq * c;
                    }
                }
            }
        }
    }
    let off_norm = off_diagonal_norm(a);
    if off_norm <= JACOBI_OFF_TOL {
        Ok(())
    } else {
        Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS, off_norm })
    }
}

/// Pull the (real) diagonal of a converged Jacobi iterate.
fn extract_diagonal(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let d = a.dim;
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let v = a.data[i * d + i];
        if v.im.abs() > DIAG_IMAG_TOL {
            return Err(Error::NotHermitian { max_dev: v.im.abs(), tol: DIAG_IMAG_TOL });
        }
        out.push(v.re);
    }
    Ok(out)
}
