//! Determinantal representations of stable polynomials.
//!
//! A [`DetRep`] is data `(c, A, B₁, …, Bₙ)` with `Im A ⪰ 0`, every
//! `B_j ⪰ 0` and `Σ B_j = I`, representing `p(z) = c·det(A + Σ z_j B_j)`.
//! Such polynomials are stable.
//!
//! A [`BidiskRep`] `(c, D, n, m)` with `D` a contraction represents a
//! polynomial without zeros on the open bidisk as `q(w) = c·det(I − DΔ(w))`
//! where `Δ(w) = w₁P₁ + w₂P₂` and `P₁ = diag(I_n, 0)`, `P₂ = diag(0, I_m)`.
//! [`bidisk_to_halfplane`] carries it to a half-plane representation of
//! `p(z) = q(φ⁻¹(z₁), φ⁻¹(z₂))(z₁ + i)ⁿ(z₂ + i)ᵐ`, `φ⁻¹(ζ) = (ζ − i)/(ζ + i)`:
//!
//! 1. split off the eigenvalue-one space of `D`: `D = U diag(I_s, K) U*`;
//! 2. `A = i(I + K)(I − K)⁻¹`;
//! 3. `B_j` = bottom-right `k×k` block of `U*P_jU`;
//! 4. `c₀ = c·det(I − K)·(2i)^s`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, block, CMatrix};
use crate::poly::MultiPoly;
use crate::C64;

/// Default tolerance for invariant checks on representations.
pub const CHECK_EPS: f64 = 1e-8;

/// `(c, A, B₁..Bₙ)` representing `c·det(A + Σ z_j B_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetRep {
    #[serde(with = "complex_pair")]
    c: C64,
    #[serde(with = "matrix_file")]
    a: CMatrix,
    #[serde(with = "matrix_list")]
    b: Vec<CMatrix>,
}

/// Measured slack of each representation invariant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetRepCheck {
    /// Smallest eigenvalue of `Im A`.
    pub imag_a_min_eig: f64,
    /// Smallest eigenvalue of each `B_j`.
    pub b_min_eigs: Vec<f64>,
    /// `max_j ‖B_j − B_j*‖`.
    pub b_hermitian_defect: f64,
    /// `‖Σ B_j − I‖`.
    pub sum_b_deviation: f64,
    pub eps: f64,
    pub pass: bool,
}

impl DetRep {
    pub fn new(c: C64, a: CMatrix, b: Vec<CMatrix>) -> Result<Self> {
        let d = a.nrows();
        if a.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: a.ncols() });
        }
        if b.is_empty() {
            return Err(Error::InvalidParameter("need at least one B matrix".into()));
        }
        for bj in &b {
            if bj.nrows() != d || bj.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, got: bj.nrows() });
            }
        }
        Ok(DetRep { c, a, b })
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &[CMatrix] {
        &self.b
    }

    /// Matrix size `d`.
    pub fn size(&self) -> usize {
        self.a.nrows()
    }

    pub fn nvars(&self) -> usize {
        self.b.len()
    }

    /// The pencil `A + Σ z_j B_j`.
    pub fn pencil(&self, z: &[C64]) -> Result<CMatrix> {
        if z.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: z.len() });
        }
        let mut m = self.a.clone();
        for (bj, &zj) in self.b.iter().zip(z) {
            m += bj * zj;
        }
        Ok(m)
    }

    /// `c·det(A + Σ z_j B_j)`.
    pub fn eval(&self, z: &[C64]) -> Result<C64> {
        Ok(self.c * linalg::det(&self.pencil(z)?))
    }

    pub fn check(&self, eps: f64) -> DetRepCheck {
        let d = self.size();
        let imag_a_min_eig = linalg::min_eigenvalue(&linalg::imag_part(&self.a));
        let b_min_eigs: Vec<f64> = self.b.iter().map(linalg::min_eigenvalue).collect();
        let b_hermitian_defect = self
            .b
            .iter()
            .map(|bj| linalg::op_norm(&(bj - bj.adjoint())))
            .fold(0.0, f64::max);
        let sum = self.b.iter().fold(CMatrix::zeros(d, d), |acc, bj| acc + bj);
        let sum_b_deviation = linalg::op_norm(&(sum - linalg::identity(d)));
        let pass = imag_a_min_eig >= -eps
            && b_min_eigs.iter().all(|&l| l >= -eps)
            && b_hermitian_defect <= eps
            && sum_b_deviation <= eps;
        DetRepCheck {
            imag_a_min_eig,
            b_min_eigs,
            b_hermitian_defect,
            sum_b_deviation,
            eps,
            pass,
        }
    }

    /// Expands the determinant into a polynomial.
    ///
    /// Values on a tensor grid of `d + 1` Chebyshev nodes per variable are
    /// interpolated by solving the tensor Vandermonde system one axis at a
    /// time. The result is checked against direct evaluation at 20 fresh
    /// points. Limited to `d ≤ 10`, `n ≤ 3`.
    pub fn to_poly(&self) -> Result<MultiPoly> {
        let d = self.size();
        let n = self.nvars();
        if d > 10 || n > 3 {
            return Err(Error::SizeLimit(format!("expansion needs d <= 10 and n <= 3, got d = {d}, n = {n}")));
        }
        let nodes: Vec<f64> = (0..=d)
            .map(|k| (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * (d + 1)) as f64).cos())
            .collect();
        let base = d + 1;
        let total = base.pow(n as u32);

        let mut values = vec![C64::new(0.0, 0.0); total];
        let mut z = vec![C64::new(0.0, 0.0); n];
        for (flat, v) in values.iter_mut().enumerate() {
            let mut rem = flat;
            for zj in z.iter_mut() {
                *zj = C64::new(nodes[rem % base], 0.0);
                rem /= base;
            }
            *v = self.eval(&z)?;
        }

        let vander = DMatrix::from_fn(base, base, |r, c| C64::new(nodes[r].powi(c as i32), 0.0));
        let vinv = linalg::inverse(&vander)?;
        let mut stride = 1;
        for _axis in 0..n {
            let mut fiber = DVector::<C64>::zeros(base);
            for start in 0..total {
                if (start / stride) % base != 0 {
                    continue;
                }
                for k in 0..base {
                    fiber[k] = values[start + k * stride];
                }
                let solved = &vinv * &fiber;
                for k in 0..base {
                    values[start + k * stride] = solved[k];
                }
            }
            stride *= base;
        }

        let max_coeff = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let cutoff = 1e-12 * max_coeff;
        let mut terms = Vec::new();
        for (flat, &v) in values.iter().enumerate() {
            let mut rem = flat;
            let exp: Vec<u32> = (0..n)
                .map(|_| {
                    let e = (rem % base) as u32;
                    rem /= base;
                    e
                })
                .collect();
            if exp.iter().sum::<u32>() as usize <= d && v.norm() > cutoff {
                terms.push((exp, v));
            }
        }
        let p = MultiPoly::from_terms(n, terms)?;

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..20 {
            let z: Vec<C64> = (0..n)
                .map(|_| C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
                .collect();
            let direct = self.eval(&z)?;
            let expanded = p.evaluate(&z)?;
            let scale: f64 = p
                .terms()
                .map(|(e, c)| c.norm() * e.iter().zip(&z).map(|(&b, zj)| zj.norm().powi(b as i32)).product::<f64>())
                .sum::<f64>()
                .max(direct.norm());
            if (direct - expanded).norm() > 1e-8 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::InvariantCheckFailed(format!(
                    "interpolation residual {:e} at scale {scale:e}",
                    (direct - expanded).norm()
                )));
            }
        }
        Ok(p)
    }

    /// Derivatives at the origin from the matrices alone: with
    /// `X_j = B_j A⁻¹`, `p_j(0) = tr X_j` and
    /// `p_{jk}(0) = −tr(X_j X_k) + tr X_j tr X_k`.
    ///
    /// Requires `c·det A = 1`.
    pub fn trace_identities(&self) -> Result<TraceIdentities> {
        let p0 = self.c * linalg::det(&self.a);
        if (p0 - C64::new(1.0, 0.0)).norm() > 1e-8 {
            return Err(Error::Normalization { re: p0.re, im: p0.im });
        }
        let a_inv = linalg::inverse(&self.a)?;
        let xs: Vec<CMatrix> = self.b.iter().map(|bj| bj * &a_inv).collect();
        let traces: Vec<C64> = xs.iter().map(|x| x.trace()).collect();
        let n = xs.len();
        let hessian = CMatrix::from_fn(n, n, |j, k| -(&xs[j] * &xs[k]).trace() + traces[j] * traces[k]);
        Ok(TraceIdentities { gradient: traces, hessian })
    }
}

/// Output of [`DetRep::trace_identities`].
#[derive(Clone, Debug, PartialEq)]
pub struct TraceIdentities {
    pub gradient: Vec<C64>,
    pub hessian: CMatrix,
}

/// `(c, D, n, m)` representing `q(w) = c·det(I − DΔ(w))` on the bidisk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BidiskRep {
    #[serde(with = "complex_pair")]
    c: C64,
    #[serde(with = "matrix_file")]
    d: CMatrix,
    n: usize,
    m: usize,
}

impl BidiskRep {
    pub fn new(c: C64, d: CMatrix, n: usize, m: usize) -> Result<Self> {
        if d.nrows() != n + m || d.ncols() != n + m {
            return Err(Error::DimensionMismatch { expected: n + m, got: d.nrows() });
        }
        Ok(BidiskRep { c, d, n, m })
    }

    /// A random strict contraction of norm `≤ max_norm`.
    pub fn random_strict(n: usize, m: usize, max_norm: f64, rng_seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let norm = rng.random_range(0.1 * max_norm..=max_norm);
        let d = linalg::random_contraction(&mut rng, n + m, norm);
        let c = C64::new(rng.random_range(0.5..=2.0), rng.random_range(-1.0..=1.0));
        BidiskRep { c, d, n, m }
    }

    /// `D = U diag(I_s, K) U*` with a random unitary `U` and `‖K‖ ≤ max_norm`,
    /// so `D` has an `s`-dimensional fixed space.
    pub fn random_with_fixed_space(n: usize, m: usize, s: usize, max_norm: f64, rng_seed: u64) -> Result<Self> {
        let size = n + m;
        if s > size {
            return Err(Error::InvalidParameter(format!("fixed space {s} exceeds size {size}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let k = linalg::random_contraction(&mut rng, size - s, max_norm);
        let mut inner = linalg::identity(size);
        inner.view_mut((s, s), (size - s, size - s)).copy_from(&k);
        let u = linalg::random_unitary(&mut rng, size);
        let d = &u * inner * u.adjoint();
        Ok(BidiskRep { c: C64::new(1.0, 0.0), d, n, m })
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    pub fn d(&self) -> &CMatrix {
        &self.d
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    /// `P₁ = diag(I_n, 0)` and `P₂ = diag(0, I_m)`.
    pub fn projections(&self) -> [CMatrix; 2] {
        let size = self.n + self.m;
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let p1 = CMatrix::from_fn(size, size, |r, c| if r == c && r < self.n { one } else { zero });
        let p2 = CMatrix::from_fn(size, size, |r, c| if r == c && r >= self.n { one } else { zero });
        [p1, p2]
    }

    /// `q(w) = c·det(I − DΔ(w))`.
    pub fn eval(&self, w: &[C64]) -> Result<C64> {
        if w.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: w.len() });
        }
        let [p1, p2] = self.projections();
        let delta = p1 * w[0] + p2 * w[1];
        let size = self.n + self.m;
        Ok(self.c * linalg::det(&(linalg::identity(size) - &self.d * delta)))
    }

    /// `p(z) = q(φ⁻¹(z₁), φ⁻¹(z₂))(z₁ + i)ⁿ(z₂ + i)ᵐ`, evaluated directly.
    pub fn eval_transferred(&self, z: &[C64]) -> Result<C64> {
        if z.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: z.len() });
        }
        let i = C64::i();
        let w = [(z[0] - i) / (z[0] + i), (z[1] - i) / (z[1] + i)];
        Ok(self.eval(&w)? * (z[0] + i).powu(self.n as u32) * (z[1] + i).powu(self.m as u32))
    }
}

/// `U*DU = diag(I_s, K)` for a contraction `D`.
#[derive(Clone, Debug)]
pub struct FixedSpaceSplit {
    pub u: CMatrix,
    pub k: CMatrix,
    /// Dimension of the eigenvalue-one space.
    pub fixed_dim: usize,
}

/// Splits off the eigenvalue-one space of a contraction.
///
/// For a contraction that space equals the null space of `I − D`, and it
/// reduces `D`. Singular values of `I − D` at most `tol·‖I − D‖` count as
/// zero; the matching right singular vectors come first in `U`, the rest
/// follow, and the columns are re-orthonormalized.
pub fn fixed_space_split(d: &CMatrix, tol: f64) -> Result<FixedSpaceSplit> {
    let size = d.nrows();
    let norm = linalg::op_norm(d);
    if norm > 1.0 + tol {
        return Err(Error::NotAContraction(norm));
    }
    let gap = linalg::identity(size) - d;
    let gap_norm = linalg::op_norm(&gap);
    let threshold = tol * gap_norm;
    let (u, fixed_dim) = null_space_first(&gap, threshold)?;

    let t = u.adjoint() * d * &u;
    let k_dim = size - fixed_dim;
    let off = linalg::op_norm(&block(&t, 0, fixed_dim, fixed_dim, k_dim))
        .max(linalg::op_norm(&block(&t, fixed_dim, 0, k_dim, fixed_dim)));
    let limit = 10.0 * tol;
    if off > limit {
        return Err(Error::NearDefectiveSplit { norm: off, limit });
    }
    let k = block(&t, fixed_dim, fixed_dim, k_dim, k_dim);
    if k_dim > 0 {
        let smin = (linalg::identity(k_dim) - &k)
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if smin <= threshold {
            return Err(Error::SingularMatrix(format!("I - K has singular value {smin:e}")));
        }
    }
    Ok(FixedSpaceSplit { u, k, fixed_dim })
}

/// Unitary whose first columns span the numerical null space of `m`
/// (singular values `≤ threshold`) and whose remaining columns span its
/// complement. With a trivial null space the identity is returned.
fn null_space_first(m: &CMatrix, threshold: f64) -> Result<(CMatrix, usize)> {
    let size = m.nrows();
    if size == 0 {
        return Ok((CMatrix::zeros(0, 0), 0));
    }
    let svd = m.clone().svd(false, true);
    let sv = &svd.singular_values;
    let null_dim = sv.iter().filter(|&&s| s <= threshold).count();
    if null_dim == 0 {
        return Ok((linalg::identity(size), 0));
    }
    let v = svd.v_t.expect("requested V").adjoint();
    // singular values come sorted in decreasing order
    let mut cols = Vec::with_capacity(size);
    for j in (size - null_dim)..size {
        cols.push(v.column(j).clone_owned());
    }
    for j in 0..(size - null_dim) {
        cols.push(v.column(j).clone_owned());
    }
    let u = linalg::modified_gram_schmidt(&CMatrix::from_columns(&cols))?;
    Ok((u, null_dim))
}

/// Full result of [`convert_bidisk`].
#[derive(Clone, Debug)]
pub struct Conversion {
    pub rep: DetRep,
    pub split: FixedSpaceSplit,
    pub check: DetRepCheck,
}

impl Conversion {
    /// `‖Im A − (I − K)⁻¹(I − KK*)(I − K*)⁻¹‖`.
    pub fn imag_identity_residual(&self) -> Result<f64> {
        let k = &self.split.k;
        let d = k.nrows();
        let inv = linalg::inverse(&(linalg::identity(d) - k))?;
        let rhs = &inv * (linalg::identity(d) - k * k.adjoint()) * inv.adjoint();
        Ok(linalg::op_norm(&(linalg::imag_part(self.rep.a()) - rhs)))
    }
}

/// The bidisk-to-half-plane pipeline; see the module docs.
pub fn bidisk_to_halfplane(brep: &BidiskRep, tol: f64) -> Result<DetRep> {
    convert_bidisk(brep, tol).map(|c| c.rep)
}

/// [`bidisk_to_halfplane`] keeping the intermediate split and the check.
pub fn convert_bidisk(brep: &BidiskRep, tol: f64) -> Result<Conversion> {
    let split = fixed_space_split(&brep.d, tol)?;
    let size = brep.n + brep.m;
    let s = split.fixed_dim;
    let k_dim = size - s;
    if k_dim == 0 {
        return Err(Error::ConstantPolynomial("D = I represents a constant".into()));
    }
    let eye = linalg::identity(k_dim);
    let gap = &eye - &split.k;
    let gap_inv = linalg::inverse(&gap)?;
    let a = (&eye + &split.k) * &gap_inv * C64::i();
    let b: Vec<CMatrix> = brep
        .projections()
        .iter()
        .map(|p| {
            let rotated = split.u.adjoint() * p * &split.u;
            linalg::hermitian_symmetrize(&block(&rotated, s, s, k_dim, k_dim))
        })
        .collect();
    let c0 = brep.c * linalg::det(&gap) * C64::new(0.0, 2.0).powu(s as u32);
    let rep = DetRep::new(c0, a, b)?;
    let check = rep.check(tol.max(CHECK_EPS));
    if !check.pass {
        return Err(Error::InvariantCheckFailed(format!("{check:?}")));
    }
    Ok(Conversion { rep, split, check })
}

/// `U*AU = diag(0_s, C)` for `Im A ⪰ 0`, `s = dim ker A`.
#[derive(Clone, Debug)]
pub struct KernelSplit {
    pub u: CMatrix,
    pub c: CMatrix,
    pub kernel_dim: usize,
    /// Norm of the upper-right block, which vanishes in exact arithmetic.
    pub off_block_norm: f64,
}

/// Splits off the kernel of a matrix with positive semidefinite imaginary
/// part. Singular values at most `tol·‖A‖` count as zero.
pub fn kernel_split_psd_imag(a: &CMatrix, tol: f64) -> Result<KernelSplit> {
    let size = a.nrows();
    let norm = linalg::op_norm(a);
    let scale = norm.max(1.0);
    let (u, s) = null_space_first(a, tol * norm)?;
    let t = u.adjoint() * a * &u;
    let rest = size - s;
    let off_block_norm = linalg::op_norm(&block(&t, 0, s, s, rest));
    let limit = 10.0 * tol * scale;
    if off_block_norm > limit {
        return Err(Error::NearDefectiveSplit { norm: off_block_norm, limit });
    }
    let c = block(&t, s, s, rest, rest);
    if rest > 0 {
        let im_min = linalg::min_eigenvalue(&linalg::imag_part(&c));
        if im_min < -limit {
            return Err(Error::InvariantCheckFailed(format!("Im C has eigenvalue {im_min:e}")));
        }
        let smin = c
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if smin <= tol * norm {
            return Err(Error::SingularMatrix(format!("C has singular value {smin:e}")));
        }
    }
    Ok(KernelSplit { u, c, kernel_dim: s, off_block_norm })
}

mod complex_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::C64;

    pub fn serialize<S: Serializer>(c: &C64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

/// Row-major `{"rows": r, "cols": c, "data": [[re, im], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&CMatrix> for MatrixFile {
    fn from(m: &CMatrix) -> Self {
        let mut data = Vec::with_capacity(m.len());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let v = m[(r, c)];
                data.push([v.re, v.im]);
            }
        }
        MatrixFile { rows: m.nrows(), cols: m.ncols(), data }
    }
}

impl TryFrom<MatrixFile> for CMatrix {
    type Error = Error;

    fn try_from(f: MatrixFile) -> Result<Self> {
        if f.data.len() != f.rows * f.cols {
            return Err(Error::DimensionMismatch { expected: f.rows * f.cols, got: f.data.len() });
        }
        Ok(CMatrix::from_row_iterator(
            f.rows,
            f.cols,
            f.data.iter().map(|&[re, im]| C64::new(re, im)),
        ))
    }
}

mod matrix_file {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::MatrixFile;
    use crate::linalg::CMatrix;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        MatrixFile::from(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
        CMatrix::try_from(MatrixFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

mod matrix_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::MatrixFile;
    use crate::linalg::CMatrix;

    pub fn serialize<S: Serializer>(ms: &[CMatrix], s: S) -> Result<S::Ok, S::Error> {
        ms.iter().map(MatrixFile::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<CMatrix>, D::Error> {
        Vec::<MatrixFile>::deserialize(d)?
            .into_iter()
            .map(|f| CMatrix::try_from(f).map_err(serde::de::Error::custom))
            .collect()
    }
}
