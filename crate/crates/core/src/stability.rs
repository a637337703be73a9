//! Stability tests and generators of stable polynomials.
//!
//! "Stable" means no zeros with every coordinate in the open upper
//! half-plane. One-variable stability is decided from the roots. In several
//! variables nothing is certified numerically: the generators produce
//! polynomials that are stable by construction and [`refute_stability`]
//! can only find counterexamples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::detrep::DetRep;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::poly::MultiPoly;
use crate::C64;

/// Default slack on root imaginary parts in [`is_stable_1d`].
pub const ROOT_IMAG_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityStatus {
    Stable,
    Unstable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    /// A point of the open upper polydisk where `|p|` is below tolerance.
    pub witness: Option<Vec<C64>>,
    /// All roots, for one-variable verdicts.
    pub roots: Option<Vec<C64>>,
}

/// All complex roots with multiplicity, from the eigenvalues of the
/// companion matrix of the monic normalization, each polished by a few
/// Newton steps.
pub fn roots_1d(p: &MultiPoly) -> Result<Vec<C64>> {
    let coeffs = p.coeffs_1d()?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Err(Error::ConstantPolynomial("no roots to compute".into()));
    }
    let lead = coeffs[deg];
    let companion = CMatrix::from_fn(deg, deg, |r, c| {
        if c == deg - 1 {
            -coeffs[r] / lead
        } else if r == c + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let eig = companion
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::InvariantCheckFailed("companion eigenvalues did not converge".into()))?;

    let dp: Vec<C64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();
    let horner = |cs: &[C64], z: C64| cs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let max_coeff = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);

    let mut roots = Vec::with_capacity(deg);
    for &z0 in eig.iter() {
        let mut z = z0;
        let mut best = horner(&coeffs, z).norm();
        for _ in 0..5 {
            let d = horner(&dp, z);
            if d.norm() == 0.0 {
                break;
            }
            let cand = z - horner(&coeffs, z) / d;
            let val = horner(&coeffs, cand).norm();
            if !(val < best) {
                break;
            }
            z = cand;
            best = val;
        }
        let limit = 1e-6 * (1.0 + max_coeff) * (1.0 + z.norm()).powi(deg as i32);
        if best > limit {
            return Err(Error::InvariantCheckFailed(format!(
                "root residual {best:e} exceeds {limit:e}"
            )));
        }
        roots.push(z);
    }
    Ok(roots)
}

/// Stable iff every root has imaginary part at most `tol`.
pub fn is_stable_1d(p: &MultiPoly, tol: f64) -> Result<StabilityVerdict> {
    if p.nvars() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: p.nvars(),
        });
    }
    if p.is_zero() {
        return Ok(StabilityVerdict {
            status: StabilityStatus::Unstable,
            witness: Some(vec![C64::i()]),
            roots: None,
        });
    }
    if p.total_degree() == 0 {
        return Ok(StabilityVerdict {
            status: StabilityStatus::Stable,
            witness: None,
            roots: Some(Vec::new()),
        });
    }
    let roots = roots_1d(p)?;
    let worst = roots
        .iter()
        .copied()
        .max_by(|a, b| a.im.total_cmp(&b.im))
        .expect("degree >= 1");
    let (status, witness) = if worst.im > tol {
        (StabilityStatus::Unstable, Some(vec![worst]))
    } else {
        (StabilityStatus::Stable, None)
    };
    Ok(StabilityVerdict {
        status,
        witness,
        roots: Some(roots),
    })
}

/// `Π_k (1 + Σ_j α_{kj} z_j)` with every `α_{kj}` uniform in `[0, 2]`.
///
/// Each factor has positive imaginary part on the open upper polydisk
/// (unless all its α vanish), so the product is stable and `p(0) = 1`.
/// The coefficients must be nonnegative: mixed signs break stability, e.g.
/// `1 + z₁ − z₂` vanishes at points of the upper bidisk.
pub fn generate_stable_product(nvars: usize, nfactors: usize, rng_seed: u64) -> MultiPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut p = MultiPoly::one(nvars);
    for _ in 0..nfactors {
        let factor = affine_form(&mut rng, nvars, true);
        p = &p * &factor;
    }
    p
}

/// `Π_k (1 + α_k z)` with `Re α_k ∈ [-2, 2]`, `Im α_k ∈ [-2, 0]`.
///
/// Each root `−1/α_k` lies in the closed lower half-plane, so the
/// polynomial is stable with complex coefficients and `p(0) = 1`.
pub fn generate_stable_1d(degree: usize, rng_seed: u64) -> MultiPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for _ in 0..degree {
        let alpha = C64::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=0.0));
        let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c * alpha;
        }
        coeffs = next;
    }
    MultiPoly::from_coeffs_1d(&coeffs)
}

/// A stable product times `order` homogeneous linear forms `Σ_j α_j z_j`
/// with `α_j ≥ 0`, so that the result vanishes to exactly that order at 0.
pub fn generate_vanishing_product(nvars: usize, nfactors: usize, order: u32, rng_seed: u64) -> MultiPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut p = generate_stable_product(nvars, nfactors, rng_seed);
    for _ in 0..order {
        let form = affine_form(&mut rng, nvars, false);
        p = &p * &form;
    }
    p
}

fn affine_form(rng: &mut ChaCha8Rng, nvars: usize, with_constant: bool) -> MultiPoly {
    loop {
        let alphas: Vec<f64> = (0..nvars).map(|_| rng.random_range(0.0..=2.0)).collect();
        if !with_constant && alphas.iter().all(|&a| a == 0.0) {
            continue;
        }
        let mut terms: Vec<(Vec<u32>, C64)> = alphas
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                let mut e = vec![0; nvars];
                e[j] = 1;
                (e, C64::new(a, 0.0))
            })
            .collect();
        if with_constant {
            terms.push((vec![0; nvars], C64::new(1.0, 0.0)));
        }
        return MultiPoly::from_terms(nvars, terms).expect("well-formed affine form");
    }
}

/// Random PSD family `B_j = S^{-1/2} W_j W_j* S^{-1/2}` with `Σ B_j = I`.
pub(crate) fn random_psd_partition(rng: &mut ChaCha8Rng, nvars: usize, size: usize) -> Result<Vec<CMatrix>> {
    for _ in 0..16 {
        // ranks must add up to at least `size` for the sum to be invertible
        let mut total = 0;
        let gs: Vec<CMatrix> = (0..nvars)
            .map(|j| {
                let floor = if j + 1 == nvars { size.saturating_sub(total).max(1) } else { 1 };
                let rank = rng.random_range(floor..=size);
                total += rank;
                let w = linalg::random_matrix(rng, size, rank);
                &w * w.adjoint()
            })
            .collect();
        let s = gs.iter().fold(CMatrix::zeros(size, size), |acc, g| acc + g);
        let Ok(s_inv_half) = linalg::inverse_sqrt_psd(&s, 1e-6) else {
            continue;
        };
        return Ok(gs
            .iter()
            .map(|g| linalg::hermitian_symmetrize(&(&s_inv_half * g * &s_inv_half)))
            .collect());
    }
    Err(Error::SingularMatrix("could not draw an invertible sum of PSD matrices".into()))
}

/// `A = R + iWW*` with `R` Hermitian, so `Im A = WW* ⪰ 0`.
pub(crate) fn random_psd_imag_matrix(rng: &mut ChaCha8Rng, size: usize) -> CMatrix {
    let m = linalg::random_matrix(rng, size, size);
    let r = linalg::hermitian_symmetrize(&m);
    let w = linalg::random_matrix(rng, size, size);
    r + (&w * w.adjoint()) * C64::i()
}

/// A random determinantal representation and its expanded polynomial.
///
/// `A = R + iWW*` (Hermitian `R`), `B_j` a random PSD partition of the
/// identity, and `c = 1/det A` so that `p(0) = 1`. For `z` in the open upper
/// polydisk, `Im(A + Σ z_j B_j) ⪰ (min_j Im z_j)·I ≻ 0`, so `p` is stable.
pub fn generate_stable_detrep(nvars: usize, size: usize, rng_seed: u64) -> Result<(DetRep, MultiPoly)> {
    if size == 0 || nvars == 0 {
        return Err(Error::InvalidParameter("size and nvars must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..16 {
        let a = random_psd_imag_matrix(&mut rng, size);
        let det_a = linalg::det(&a);
        if det_a.norm() < 1e-6 {
            continue;
        }
        let b = random_psd_partition(&mut rng, nvars, size)?;
        let rep = DetRep::new(det_a.inv(), a, b)?;
        let p = rep.to_poly()?;
        return Ok((rep, p));
    }
    Err(Error::SingularMatrix("could not draw an invertible A".into()))
}

/// Like [`generate_stable_detrep`] but `A = U diag(0_s, C) U*` has a kernel of
/// dimension `kernel_dim`, so the polynomial vanishes to order `kernel_dim`
/// at the origin. `c = 1/det C`, which makes `P_r(1⃗) = 1`.
pub fn generate_vanishing_detrep(
    nvars: usize,
    size: usize,
    kernel_dim: usize,
    rng_seed: u64,
) -> Result<(DetRep, MultiPoly)> {
    if kernel_dim > size || size == 0 || nvars == 0 {
        return Err(Error::InvalidParameter(format!(
            "kernel dimension {kernel_dim} with size {size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let k = size - kernel_dim;
    for _ in 0..16 {
        let c_block = random_psd_imag_matrix(&mut rng, k);
        let det_c = linalg::det(&c_block);
        if det_c.norm() < 1e-6 {
            continue;
        }
        let mut inner = CMatrix::zeros(size, size);
        inner.view_mut((kernel_dim, kernel_dim), (k, k)).copy_from(&c_block);
        let u = linalg::random_unitary(&mut rng, size);
        let a = &u * inner * u.adjoint();
        let b = random_psd_partition(&mut rng, nvars, size)?;
        let rep = DetRep::new(det_c.inv(), a, b)?;
        let p = rep.to_poly()?;
        return Ok((rep, p));
    }
    Err(Error::SingularMatrix("could not draw an invertible block".into()))
}

/// Searches the box `|Re z_j| ≤ radius`, `0 < Im z_j ≤ radius` for a point
/// with `|p(z)| < tol`.
///
/// Uniform samples are followed by 50 rounds of coordinate-wise
/// golden-section refinement from the best sample. The imaginary parts are
/// kept above `radius/1000`, away from the real boundary where stable
/// polynomials may legitimately vanish. Returns `Unstable` with a witness or
/// `Unknown`; a sampling search never returns `Stable`.
pub fn refute_stability(p: &MultiPoly, radius: f64, samples: usize, rng_seed: u64, tol: f64) -> StabilityVerdict {
    let unknown = StabilityVerdict {
        status: StabilityStatus::Unknown,
        witness: None,
        roots: None,
    };
    if p.total_degree() == 0 && !p.is_zero() {
        return unknown;
    }
    let n = p.nvars();
    let y_floor = radius * 1e-3;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let abs_at = |coords: &[f64]| -> f64 {
        let z: Vec<C64> = coords.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
        p.evaluate(&z).map(|v| v.norm()).unwrap_or(f64::INFINITY)
    };

    let mut best: Vec<f64> = Vec::new();
    let mut best_val = f64::INFINITY;
    let mut coords = vec![0.0; 2 * n];
    for _ in 0..samples.max(1) {
        for j in 0..n {
            coords[2 * j] = rng.random_range(-radius..=radius);
            coords[2 * j + 1] = rng.random_range(y_floor..=radius);
        }
        let v = abs_at(&coords);
        if v < best_val {
            best_val = v;
            best.clone_from(&coords);
        }
    }

    let bounds = |k: usize| if k.is_multiple_of(2) { (-radius, radius) } else { (y_floor, radius) };
    let mut h = radius;
    for _ in 0..50 {
        for k in 0..2 * n {
            let (lo_b, hi_b) = bounds(k);
            let lo = (best[k] - h).max(lo_b);
            let hi = (best[k] + h).min(hi_b);
            let mut trial = best.clone();
            let x = golden_section(lo, hi, 40, |t| {
                trial[k] = t;
                abs_at(&trial)
            });
            trial[k] = x;
            let v = abs_at(&trial);
            if v < best_val {
                best_val = v;
                best = trial;
            }
        }
        h *= 0.8;
        if best_val < tol * 1e-3 {
            break;
        }
    }

    let interior = (0..n).all(|j| best[2 * j + 1] > 2.0 * y_floor);
    if best_val < tol && interior {
        StabilityVerdict {
            status: StabilityStatus::Unstable,
            witness: Some(best.chunks(2).map(|c| C64::new(c[0], c[1])).collect()),
            roots: None,
        }
    } else {
        unknown
    }
}

fn golden_section(mut a: f64, mut b: f64, iters: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// `(|p(x + iy)|, max over sign patterns σ of |p(x + iσy)|)`.
///
/// For stable `p` and `y ≥ 0` the first entry is the maximum.
pub fn check_reflection(p: &MultiPoly, z: &[C64]) -> Result<(f64, f64)> {
    let n = p.nvars();
    if z.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: z.len() });
    }
    if n > 20 {
        return Err(Error::SizeLimit(format!("2^{n} sign patterns")));
    }
    let plus = p.evaluate(z)?.norm();
    let mut worst: f64 = 0.0;
    let mut w = z.to_vec();
    for mask in 0u32..(1 << n) {
        for (j, wj) in w.iter_mut().enumerate() {
            let sign = if mask >> j & 1 == 1 { -1.0 } else { 1.0 };
            *wj = C64::new(z[j].re, sign * z[j].im);
        }
        worst = worst.max(p.evaluate(&w)?.norm());
    }
    Ok((plus, worst))
}

/// `(|p(x + iy)|, |p(x + iỹ)|)` for `0 ≤ y ≤ ỹ`. Stable `p` gives
/// first ≤ second.
pub fn check_y_monotonicity(p: &MultiPoly, x: &[f64], y: &[f64], y_tilde: &[f64]) -> Result<(f64, f64)> {
    let n = p.nvars();
    for len in [x.len(), y.len(), y_tilde.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, got: len });
        }
    }
    if y.iter().zip(y_tilde).any(|(&a, &b)| !(0.0 <= a && a <= b)) {
        return Err(Error::InvalidParameter("need 0 <= y <= y_tilde componentwise".into()));
    }
    let at = |ys: &[f64]| -> Result<f64> {
        let z: Vec<C64> = x.iter().zip(ys).map(|(&a, &b)| C64::new(a, b)).collect();
        Ok(p.evaluate(&z)?.norm())
    };
    Ok((at(y)?, at(y_tilde)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn textbook_roots() {
        let r = roots_1d(&MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(1.0, 0.0)])).unwrap();
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-12);

        let r = sorted(roots_1d(&MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])).unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_of_factored_product() {
        let f1 = MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let f2 = MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(0.0, -1.0)]);
        let r = sorted(roots_1d(&(&f1 * &f2)).unwrap());
        let want = sorted(vec![c(-0.5, 0.0), c(0.0, -1.0)]);
        for (a, b) in r.iter().zip(&want) {
            assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn complex_1d_generator_is_stable() {
        for seed in 0..20 {
            let p = generate_stable_1d(1 + seed as usize % 8, seed);
            assert_eq!(p.constant_term(), c(1.0, 0.0));
            assert_eq!(is_stable_1d(&p, ROOT_IMAG_TOL).unwrap().status, StabilityStatus::Stable);
        }
    }

    #[test]
    fn roots_reject_constants() {
        assert!(matches!(roots_1d(&MultiPoly::one(1)), Err(Error::ConstantPolynomial(_))));
        assert!(matches!(roots_1d(&MultiPoly::zero(1)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn stability_verdicts() {
        let v = is_stable_1d(&MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(1.0, 0.0)]), ROOT_IMAG_TOL).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);

        let v = is_stable_1d(&MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]), ROOT_IMAG_TOL)
            .unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
        assert!((v.witness.unwrap()[0] - C64::i()).norm() < 1e-10);

        let v = is_stable_1d(&MultiPoly::constant(1, c(3.0, 1.0)), ROOT_IMAG_TOL).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert_eq!(is_stable_1d(&MultiPoly::zero(1), ROOT_IMAG_TOL).unwrap().status, StabilityStatus::Unstable);
    }

    #[test]
    fn product_of_lower_half_plane_factors_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut p = MultiPoly::one(1);
        for _ in 0..50 {
            let alpha = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..=0.0));
            p = &p * &MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), alpha]);
        }
        let v = is_stable_1d(&p, 1e-6).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
    }

    #[test]
    fn product_generator_basics() {
        assert_eq!(generate_stable_product(3, 0, 1), MultiPoly::one(3));
        let p = generate_stable_product(1, 6, 42);
        assert_eq!(p.constant_term(), c(1.0, 0.0));
        assert_eq!(is_stable_1d(&p, ROOT_IMAG_TOL).unwrap().status, StabilityStatus::Stable);
        assert_eq!(generate_stable_product(2, 4, 9), generate_stable_product(2, 4, 9));
    }

    #[test]
    fn vanishing_product_has_requested_order() {
        let p = generate_vanishing_product(3, 3, 2, 5);
        let h = p.homogeneous_parts(crate::poly::ORDER_TOL).unwrap();
        assert_eq!(h.vanishing_order(), 2);
    }

    #[test]
    fn refutation_cannot_refute_stable_inputs() {
        let v = refute_stability(&MultiPoly::one(2), 2.0, 1000, 1, 1e-6);
        assert_eq!(v.status, StabilityStatus::Unknown);
        let p = generate_stable_product(2, 4, 3);
        let v = refute_stability(&p, 2.0, 10_000, 3, 1e-6);
        assert_eq!(v.status, StabilityStatus::Unknown);
    }

    #[test]
    fn refutation_finds_interior_zero() {
        let p = MultiPoly::from_terms(2, [(vec![0, 0], c(1.0, 0.0)), (vec![1, 1], c(1.0, 0.0))]).unwrap();
        let v = refute_stability(&p, 2.0, 100_000, 17, 1e-6);
        assert_eq!(v.status, StabilityStatus::Unstable);
        let w = v.witness.unwrap();
        assert!(w.iter().all(|z| z.im > 0.0));
        assert!(p.evaluate(&w).unwrap().norm() < 1e-6);
    }

    #[test]
    fn mixed_sign_affine_form_is_refuted() {
        let p = MultiPoly::from_terms(
            2,
            [(vec![0, 0], c(1.0, 0.0)), (vec![1, 0], c(1.0, 0.0)), (vec![0, 1], c(-1.0, 0.0))],
        )
        .unwrap();
        let v = refute_stability(&p, 2.0, 10_000, 2, 1e-6);
        assert_eq!(v.status, StabilityStatus::Unstable);
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(check_reflection(&MultiPoly::one(2), &[C64::i(), C64::i()]).unwrap(), (1.0, 1.0));
        let p = MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(1.0, 0.0)]);
        let (a, b) = check_reflection(&p, &[C64::i()]).unwrap();
        assert!((a - 2f64.sqrt()).abs() < 1e-15 && (b - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn monotonicity_examples() {
        let p = MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c(1.0, 0.0)]);
        let (a, b) = check_y_monotonicity(&p, &[0.0], &[1.0], &[2.0]).unwrap();
        assert!((a - 2f64.sqrt()).abs() < 1e-15 && (b - 5f64.sqrt()).abs() < 1e-15);
        let (a, b) = check_y_monotonicity(&p, &[0.3], &[1.0], &[1.0]).unwrap();
        assert_eq!(a, b);
        assert!(check_y_monotonicity(&p, &[0.0], &[2.0], &[1.0]).is_err());
    }

    #[test]
    fn detrep_generator_yields_stable_normalized_polynomials() {
        for seed in 0..5 {
            let (rep, p) = generate_stable_detrep(2, 3, seed).unwrap();
            assert!((p.constant_term() - c(1.0, 0.0)).norm() < 1e-9);
            assert_eq!(p.total_degree(), 3);
            assert!(rep.check(1e-8).pass);
            let v = refute_stability(&p, 2.0, 10_000, seed, 1e-8);
            assert_eq!(v.status, StabilityStatus::Unknown);
        }
    }

    #[test]
    fn diagonal_detrep_expands_to_product() {
        let i = C64::i();
        let a = CMatrix::from_diagonal_element(2, 2, i);
        let b1 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        let b2 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]));
        let rep = DetRep::new(c(1.0, 0.0), a, vec![b1, b2]).unwrap();
        let p = rep.to_poly().unwrap();
        let z1 = &MultiPoly::var(2, 0) + &MultiPoly::constant(2, i);
        let z2 = &MultiPoly::var(2, 1) + &MultiPoly::constant(2, i);
        assert!((&p - &(&z1 * &z2)).max_abs_coeff() < 1e-12);
    }

    #[test]
    fn size_one_detrep_root_in_closed_lower_half_plane() {
        let a = c(0.7, 0.4);
        let rep = DetRep::new(
            c(2.0, 0.0),
            CMatrix::from_element(1, 1, a),
            vec![CMatrix::from_element(1, 1, c(1.0, 0.0))],
        )
        .unwrap();
        let p = rep.to_poly().unwrap();
        let r = roots_1d(&p).unwrap();
        assert!((r[0] + a).norm() < 1e-10);
        assert!(r[0].im <= 0.0);
    }
}
