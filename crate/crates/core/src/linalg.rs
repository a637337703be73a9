//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::C64;

pub type CMatrix = DMatrix<C64>;

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// `Im M = (M − M*)/(2i)`, Hermitian.
pub fn imag_part(m: &CMatrix) -> CMatrix {
    (m - m.adjoint()) / C64::new(0.0, 2.0)
}

/// `(H + H*)/2`, removing round-off asymmetry.
pub fn hermitian_symmetrize(h: &CMatrix) -> CMatrix {
    (h + h.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigenvalues of the Hermitian part of `h`, ascending.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    if h.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = hermitian_symmetrize(h)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Smallest eigenvalue of the Hermitian part; `+∞` for an empty matrix.
pub fn min_eigenvalue(h: &CMatrix) -> f64 {
    hermitian_eigenvalues(h)
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// Operator norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Determinant through LU with partial pivoting. The empty matrix has
/// determinant one.
pub fn det(m: &CMatrix) -> C64 {
    if m.nrows() == 0 {
        return C64::new(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    if m.nrows() == 0 {
        return Ok(m.clone());
    }
    m.clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::SingularMatrix(format!("{}x{} inverse", m.nrows(), m.ncols())))
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius mass drops below
/// `tol · ‖A‖_F` or 100 sweeps pass. Returned ascending.
pub fn jacobi_eigenvalues(a: &DMatrix<f64>, tol: f64) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "jacobi needs a square matrix");
    let mut m = (a + a.transpose()) * 0.5;
    let scale = m.norm().max(f64::MIN_POSITIVE);
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)] * m[(p, q)])
            .sum::<f64>()
            .sqrt();
        if off <= tol * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|k| m[(k, k)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Operator norm of a real symmetric matrix: largest absolute eigenvalue.
pub fn symmetric_op_norm(a: &DMatrix<f64>) -> f64 {
    jacobi_eigenvalues(a, 1e-14)
        .iter()
        .fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Orthonormalizes the columns of `m` in order by modified Gram–Schmidt,
/// applied twice. Columns must be linearly independent.
pub fn modified_gram_schmidt(m: &CMatrix) -> Result<CMatrix> {
    let mut q = m.clone();
    for _pass in 0..2 {
        for j in 0..q.ncols() {
            for k in 0..j {
                let qk = q.column(k).clone_owned();
                let proj = qk.dotc(&q.column(j));
                let mut cj = q.column_mut(j);
                cj -= qk * proj;
            }
            let norm = q.column(j).norm();
            if norm < 1e-12 {
                return Err(Error::SingularMatrix("dependent columns in Gram-Schmidt".into()));
            }
            let mut cj = q.column_mut(j);
            cj /= C64::new(norm, 0.0);
        }
    }
    Ok(q)
}

/// `S^{-1/2}` for a Hermitian positive definite `S`.
pub fn inverse_sqrt_psd(s: &CMatrix, min_eig: f64) -> Result<CMatrix> {
    let eig = hermitian_symmetrize(s).symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l <= min_eig) {
        return Err(Error::SingularMatrix("matrix not safely positive definite".into()));
    }
    let v = &eig.eigenvectors;
    let diag = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::new(1.0 / l.sqrt(), 0.0)));
    Ok(v * diag * v.adjoint())
}

/// Entries with real and imaginary parts uniform in `[-1, 1]`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
    })
}

/// A unitary from Gram–Schmidt on a random matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    loop {
        if let Ok(u) = modified_gram_schmidt(&random_matrix(rng, d, d)) {
            return u;
        }
    }
}

/// Random matrix rescaled to operator norm `norm`.
pub fn random_contraction<R: Rng + ?Sized>(rng: &mut R, d: usize, norm: f64) -> CMatrix {
    let m = random_matrix(rng, d, d);
    let n = op_norm(&m);
    if n == 0.0 {
        return m;
    }
    m * C64::new(norm / n, 0.0)
}

/// Block `[r0..r0+rows) × [c0..c0+cols)` as an owned matrix.
pub fn block(m: &CMatrix, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
    m.view((r0, c0), (rows, cols)).clone_owned()
}
