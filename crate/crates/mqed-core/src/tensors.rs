//! Complex tensor and matrix algebra shared by every other module.
//!
//! Two-point kernels are represented as dense complex matrices. The
//! generalized real and imaginary parts of a kernel T are
//!
//! ```text
//! Re T = (T + T†)/2,     Im T = (T - T†)/(2i),
//! ```
//!
//! where for a discretized kernel the adjoint of the full matrix realizes
//! the combined (r <-> r', transpose, conjugate) exchange. Both parts are
//! Hermitian matrices; for symmetric kernels (T^T(r',r) = T(r,r')) they
//! reduce to the elementwise real and imaginary parts.

use nalgebra::allocator::Allocator;
use nalgebra::storage::Storage;
use nalgebra::{DMatrix, DefaultAllocator, Dim, Matrix, Matrix3, OMatrix, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
/// 3x3 complex tensor (responses, per-(k, omega) kernels).
pub type CTensor3 = Matrix3<C64>;
/// Dense square complex matrix (discretized kernels, 6x6 covariances).
pub type CMatrix = DMatrix<C64>;

/// Relative tolerance for accepting a matrix as Hermitian.
pub const TOL_HERM: f64 = 1e-10;
/// Eigenvalues above `-TOL_PSD_FACTOR * max|lambda|` are clipped to zero.
pub const TOL_PSD_FACTOR: f64 = 1e-10;

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cre(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Generalized real part (T + T†)/2. Hermitian by construction.
pub fn hermitian_part<D, S>(a: &Matrix<C64, D, D, S>) -> OMatrix<C64, D, D>
where
    D: Dim,
    S: Storage<C64, D, D>,
    DefaultAllocator: Allocator<D, D>,
{
    (a.clone_owned() + a.adjoint()) * cre(0.5)
}

/// Generalized imaginary part (T - T†)/(2i). Also Hermitian.
pub fn antihermitian_part<D, S>(a: &Matrix<C64, D, D, S>) -> OMatrix<C64, D, D>
where
    D: Dim,
    S: Storage<C64, D, D>,
    DefaultAllocator: Allocator<D, D>,
{
    (a.clone_owned() - a.adjoint()) * c64(0.0, -0.5)
}

/// Frobenius distance of A from its Hermitian projection, relative to |A|.
pub fn hermiticity_residual<D, S>(a: &Matrix<C64, D, D, S>) -> f64
where
    D: Dim,
    S: Storage<C64, D, D>,
    DefaultAllocator: Allocator<D, D>,
{
    let scale = a.norm();
    if scale == 0.0 {
        return 0.0;
    }
    (a.clone_owned() - a.adjoint()).norm() / scale
}

fn require_hermitian(a: &CMatrix) -> Result<()> {
    let residual = hermiticity_residual(a);
    if residual > TOL_HERM {
        return Err(Error::NotHermitian {
            residual,
            tol: TOL_HERM,
        });
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    require_hermitian(a)?;
    let eig = SymmetricEigen::new(hermitian_part(a));
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| x.total_cmp(y));
    Ok(vals)
}

/// Result of a positive-semidefiniteness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

/// Test min eigenvalue >= -tol; always reports the minimum eigenvalue.
/// Errors if the input is not Hermitian to [`TOL_HERM`].
pub fn is_psd(a: &CMatrix, tol: f64) -> Result<PsdReport> {
    let vals = hermitian_eigenvalues(a)?;
    let min_eigenvalue = vals.first().copied().unwrap_or(0.0);
    Ok(PsdReport {
        is_psd: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}

/// Principal Hermitian PSD square root: R = V sqrt(max(diag, 0)) V†, so
/// that R R† = A. Negative eigenvalues within tolerance are clipped;
/// anything below `-TOL_PSD_FACTOR * max|lambda|` is an error carrying the
/// offending eigenvalue.
pub fn psd_root(a: &CMatrix) -> Result<CMatrix> {
    require_hermitian(a)?;
    let eig = SymmetricEigen::new(hermitian_part(a));
    let max_abs = eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, &l| acc.max(l.abs()));
    let tol_psd = TOL_PSD_FACTOR * max_abs;
    let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -tol_psd {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    let n = a.nrows();
    let mut root = CMatrix::zeros(n, n);
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let s = lambda.max(0.0).sqrt();
        let v = eig.eigenvectors.column(j);
        // rank-1 update: root += s * v v†
        for r in 0..n {
            for c in 0..n {
                root[(r, c)] += cre(s) * v[r] * v[c].conj();
            }
        }
    }
    Ok(root)
}

/// Relative Frobenius difference |a - b| / max(|b|, floor).
pub fn rel_diff<D, S1, S2>(a: &Matrix<C64, D, D, S1>, b: &Matrix<C64, D, D, S2>) -> f64
where
    D: Dim,
    S1: Storage<C64, D, D>,
    S2: Storage<C64, D, D>,
    DefaultAllocator: Allocator<D, D>,
{
    let denom = b.norm().max(1e-300);
    (a.clone_owned() - b.clone_owned()).norm() / denom
}

/// Cross-product matrix K with K v = k x v.
pub fn cross_matrix(k: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -k.z, k.y, k.z, 0.0, -k.x, -k.y, k.x, 0.0)
}

/// Cross-product matrix promoted to complex entries.
pub fn cross_matrix_c(k: &Vector3<f64>) -> CTensor3 {
    cross_matrix(k).map(cre)
}

pub fn identity3() -> CTensor3 {
    CTensor3::identity()
}

/// Scalar multiple of the 3x3 identity.
pub fn scalar3(s: C64) -> CTensor3 {
    CTensor3::identity() * s
}

pub fn tensor_to_dmatrix(t: &CTensor3) -> CMatrix {
    CMatrix::from_fn(3, 3, |r, c| t[(r, c)])
}

pub fn dmatrix_to_tensor(m: &CMatrix) -> Result<CTensor3> {
    if m.nrows() != 3 || m.ncols() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected a 3x3 matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(CTensor3::from_fn(|r, c| m[(r, c)]))
}

/// Assemble a 6x6 matrix from four 3x3 blocks (row-major block order).
pub fn block2x2(tl: &CTensor3, tr: &CTensor3, bl: &CTensor3, br: &CTensor3) -> CMatrix {
    let mut m = CMatrix::zeros(6, 6);
    for r in 0..3 {
        for c in 0..3 {
            m[(r, c)] = tl[(r, c)];
            m[(r, c + 3)] = tr[(r, c)];
            m[(r + 3, c)] = bl[(r, c)];
            m[(r + 3, c + 3)] = br[(r, c)];
        }
    }
    m
}

/// Condition-number estimate of a 3x3 complex tensor via SVD.
pub fn condition_number3(t: &CTensor3) -> f64 {
    let sv = t.singular_values();
    let smax = sv.max();
    let smin = sv.min();
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// True when every entry is finite.
pub fn all_finite<D, S>(a: &Matrix<C64, D, D, S>) -> bool
where
    D: Dim,
    S: Storage<C64, D, D>,
{
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
