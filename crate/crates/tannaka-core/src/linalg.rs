//! Dense complex matrices and the handful of decompositions the rest of the crate needs.
//!
//! Matrices are row-major. Tensor products follow [`kron`]'s convention: basis vector
//! `e_x ⊗ e_y` of `ℂ^{d1} ⊗ ℂ^{d2}` has index `x * d2 + y`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Combined absolute/relative comparison contract.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { absolute: 1e-9, relative: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64) -> Self {
        assert!(absolute.is_finite() && relative.is_finite() && absolute >= 0.0 && relative >= 0.0);
        Self { absolute, relative }
    }

    /// A residual of size `residual` between quantities of size `scale` is acceptable.
    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.absolute + self.relative * scale
    }

    pub fn close(&self, x: &CMatrix, y: &CMatrix) -> bool {
        let scale = x.norm().max(y.norm());
        self.accepts(x.dist(y), scale)
    }

    pub fn close_scalar(&self, x: C64, y: C64) -> bool {
        self.accepts((x - y).norm(), x.norm().max(y.norm()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn scalar(c: C64) -> Self {
        Self { rows: 1, cols: 1, data: vec![c] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Column vector.
    pub fn column(entries: Vec<C64>) -> Self {
        let n = entries.len();
        Self::from_vec(n, 1, entries)
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Matrix unit `e_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    /// Reinterpret the row-major entries with a new shape.
    pub fn reshape(mut self, rows: usize, cols: usize) -> Self {
        assert_eq!(rows * cols, self.data.len());
        self.rows = rows;
        self.cols = cols;
        self
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "dist: shape mismatch");
        libm::sqrt(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum())
    }

    /// Hilbert-Schmidt inner product `Tr(self* other)`.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.shape(), other.shape());
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn col(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)])
    }

    pub fn col_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Columns side by side.
    pub fn hstack(cols: &[Self]) -> Self {
        assert!(!cols.is_empty());
        let rows = cols[0].rows;
        let total: usize = cols.iter().map(|c| c.cols).sum();
        let mut m = Self::zeros(rows, total);
        let mut off = 0;
        for c in cols {
            assert_eq!(c.rows, rows, "hstack: row mismatch");
            for i in 0..rows {
                for j in 0..c.cols {
                    m[(i, off + j)] = c[(i, j)];
                }
            }
            off += c.cols;
        }
        m
    }

    pub fn vstack(blocks: &[Self]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack: column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Self::from_vec(rows, cols, data)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: {:?} x {:?}", self.shape(), other.shape());
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// General inverse via LU; `None` when numerically singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let inv = self.to_nalgebra().lu().try_inverse()?;
        let out = Self::from_nalgebra(&inv);
        out.is_finite().then_some(out)
    }

    /// Solve `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        let x = self.to_nalgebra().lu().solve(&b.to_nalgebra())?;
        let out = Self::from_nalgebra(&x);
        out.is_finite().then_some(out)
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.dist(&self.adjoint())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        self.matmul(&rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        CMatrix::from_vec(self.rows, self.cols, data)
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        CMatrix::from_vec(self.rows, self.cols, data)
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `kron` of several factors, left to right.
pub fn kron_all(factors: &[&CMatrix]) -> CMatrix {
    factors.iter().fold(CMatrix::identity(1), |acc, f| kron(&acc, f))
}

/// The flip `ℂ^{d1} ⊗ ℂ^{d2} → ℂ^{d2} ⊗ ℂ^{d1}`, `x ⊗ y ↦ y ⊗ x`.
pub fn flip(d1: usize, d2: usize) -> CMatrix {
    assert!(d1 >= 1 && d2 >= 1);
    let mut m = CMatrix::zeros(d1 * d2, d1 * d2);
    for x in 0..d1 {
        for y in 0..d2 {
            m[(y * d1 + x, x * d2 + y)] = ONE;
        }
    }
    m
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors whose residual norm falls
/// below `tol.absolute · √dim` are treated as dependent and dropped.
pub fn orthonormalize(vectors: &[CMatrix], tol: Tolerance) -> Vec<CMatrix> {
    let Some(first) = vectors.first() else { return Vec::new() };
    let dim = first.rows() * first.cols();
    let cutoff = tol.absolute * libm::sqrt(dim as f64);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        assert_eq!(v.rows() * v.cols(), dim, "orthonormalize: length mismatch");
        let mut w = v.data().to_vec();
        for _pass in 0..2 {
            for b in &basis {
                let c: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let n = libm::sqrt(w.iter().map(|z| z.norm_sqr()).sum());
        if n > cutoff {
            basis.push(w.into_iter().map(|z| z / n).collect());
        }
    }
    basis.into_iter().map(|b| CMatrix::from_vec(first.rows(), first.cols(), b)).collect()
}

/// Orthonormal basis of the null space of the linear map given by `rows` (each row an equation
/// in `n` unknowns). Rows are folded into a square triangular factor by repeated QR so that the
/// final SVD is only `n × n`.
pub fn nullspace(n: usize, rows: &mut dyn Iterator<Item = Vec<C64>>, tol: Tolerance) -> Vec<Vec<C64>> {
    if n == 0 {
        return Vec::new();
    }
    const CHUNK: usize = 512;
    let mut r = DMatrix::<C64>::zeros(n, n);
    let mut buf: Vec<Vec<C64>> = Vec::with_capacity(CHUNK);
    let fold = |r: &mut DMatrix<C64>, buf: &mut Vec<Vec<C64>>| {
        if buf.is_empty() {
            return;
        }
        let m = DMatrix::<C64>::from_fn(n + buf.len(), n, |i, j| {
            if i < n {
                r[(i, j)]
            } else {
                buf[i - n][j]
            }
        });
        let qr_r = m.qr().r();
        *r = DMatrix::zeros(n, n);
        let k = qr_r.nrows().min(n);
        for i in 0..k {
            for j in 0..n {
                r[(i, j)] = qr_r[(i, j)];
            }
        }
        buf.clear();
    };
    for row in rows {
        debug_assert_eq!(row.len(), n);
        buf.push(row);
        if buf.len() == CHUNK {
            fold(&mut r, &mut buf);
        }
    }
    fold(&mut r, &mut buf);
    let svd = r.svd(false, true);
    let vt = svd.v_t.expect("svd computed v_t");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol.absolute + tol.relative * smax;
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= cutoff {
            out.push((0..n).map(|j| vt[(k, j)].conj()).collect());
        }
    }
    out
}

/// Orthonormal (Hilbert-Schmidt) basis of `{T : T·a[l] = b[l]·T for all l}`, where `a[l]` act on
/// `V` and `b[l]` on `W`, so each `T` is `dim W × dim V`.
pub fn solve_intertwiners(a: &[CMatrix], b: &[CMatrix], tol: Tolerance) -> Vec<CMatrix> {
    assert_eq!(a.len(), b.len(), "solve_intertwiners: generator count mismatch");
    let Some(a0) = a.first() else {
        // No constraints at all: every T works; this never happens in practice.
        panic!("solve_intertwiners needs at least one generator pair");
    };
    let nv = a0.rows();
    let nw = b[0].rows();
    let unknowns = nw * nv;
    let mut eqs = a.iter().zip(b).flat_map(move |(al, bl)| {
        assert!(al.is_square() && al.rows() == nv && bl.is_square() && bl.rows() == nw);
        (0..nw).flat_map(move |p| {
            (0..nv).map(move |c| {
                // (T a)[p][c] - (b T)[p][c]
                let mut row = vec![ZERO; unknowns];
                for s in 0..nv {
                    row[p * nv + s] += al[(s, c)];
                }
                for r in 0..nw {
                    row[r * nv + c] -= bl[(p, r)];
                }
                row
            })
        })
    });
    nullspace(unknowns, &mut eqs, tol)
        .into_iter()
        .map(|v| CMatrix::from_vec(nw, nv, v))
        .collect()
}

/// Least-squares solution of `m · x = b` with singular values below tolerance discarded.
pub fn lstsq(m: &CMatrix, b: &CMatrix, tol: Tolerance) -> Option<CMatrix> {
    let svd = m.to_nalgebra().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let x = svd.solve(&b.to_nalgebra(), tol.absolute + tol.relative * smax).ok()?;
    let out = CMatrix::from_nalgebra(&x);
    out.is_finite().then_some(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spectral {
    Sqrt,
    InvSqrt,
    Inverse,
    Abs,
}

/// Hermitian eigendecomposition: eigenvalues and the unitary whose columns are eigenvectors.
pub fn eigh(m: &CMatrix, tol: Tolerance) -> Result<(Vec<f64>, CMatrix)> {
    let residual = m.hermitian_residual();
    if !tol.accepts(residual, m.norm()) {
        return Err(Error::NotHermitian { residual });
    }
    let sym = (m + &m.adjoint()).scale_real(0.5);
    let eig = sym.to_nalgebra().symmetric_eigen();
    let vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    Ok((vals, CMatrix::from_nalgebra(&eig.eigenvectors)))
}

/// Apply a spectral function to a Hermitian matrix.
pub fn hermitian_calc(m: &CMatrix, f: Spectral, tol: Tolerance) -> Result<CMatrix> {
    let (vals, u) = eigh(m, tol)?;
    let scale = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let floor = tol.absolute + tol.relative * scale;
    let min_abs = vals.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    let mut mapped = Vec::with_capacity(vals.len());
    for &v in &vals {
        let y = match f {
            Spectral::Abs => v.abs(),
            Spectral::Sqrt => {
                if v < -floor {
                    return Err(Error::NotHermitian { residual: -v });
                }
                libm::sqrt(v.max(0.0))
            }
            Spectral::Inverse | Spectral::InvSqrt => {
                if v.abs() <= floor || (f == Spectral::InvSqrt && v < 0.0) {
                    return Err(Error::SingularToTolerance { min_abs_eig: min_abs });
                }
                if f == Spectral::Inverse {
                    1.0 / v
                } else {
                    1.0 / libm::sqrt(v)
                }
            }
        };
        mapped.push(C64::new(y, 0.0));
    }
    Ok(&(&u * &CMatrix::diag(&mapped)) * &u.adjoint())
}

/// Numerical rank of a collection of equally sized matrices viewed as vectors.
pub fn span_rank(vectors: &[CMatrix], tol: Tolerance) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].rows() * vectors[0].cols();
    let m = DMatrix::<C64>::from_fn(vectors.len(), n, |i, j| vectors[i].data()[j]);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol.absolute + tol.relative * smax).count()
}
