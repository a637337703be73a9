//! Exponential growth bounds for stable polynomials.
//!
//! Every bound has the shape
//!
//! ```text
//! |p(z)| ≤ N(z)^r · exp(c₀ + Re Σ c_j z_j + κ·N(z) + λ·N(z)²)
//! ```
//!
//! with `N` either the sup norm or the Euclidean norm, and is returned as an
//! [`ExpBound`]. The evaluators only read coefficients; none of them tests
//! stability. A certificate is valid *if* the polynomial is stable.
//!
//! Double sums over coefficient pairs run over ordered pairs `(j, k)`: an
//! off-diagonal `a(e_j + e_k)` is counted twice and the diagonal term is
//! `a(2e_j)`. Hessian entries follow `p_{jj}(0) = 2a(2e_j)`.

use std::f64::consts::{E, SQRT_2};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{HomogeneousExpansion, MultiPoly, ORDER_TOL};
use crate::C64;

/// Allowed deviation of `p(0)` from one.
pub const NORMALIZATION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    #[serde(rename = "sup")]
    SupNorm,
    #[serde(rename = "euclid")]
    EuclidNorm,
}

impl NormKind {
    pub fn of(self, z: &[C64]) -> f64 {
        match self {
            NormKind::SupNorm => z.iter().map(|v| v.norm()).fold(0.0, f64::max),
            NormKind::EuclidNorm => z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundDomain {
    #[serde(rename = "all")]
    AllComplex,
    #[serde(rename = "real")]
    RealPointsOnly,
}

/// `N(z)^r · exp(c₀ + Re Σ c_j z_j + κN(z) + λN(z)²)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpBound {
    pub lead_degree: u32,
    pub log_prefactor: f64,
    #[serde(with = "complex_list")]
    pub linear_complex: Vec<C64>,
    pub linear_abs: f64,
    pub quad: f64,
    pub norm: NormKind,
    pub domain: BoundDomain,
}

impl ExpBound {
    /// The certificate `|p| ≤ 1` in `nvars` variables.
    pub fn trivial(nvars: usize, norm: NormKind) -> Self {
        ExpBound {
            lead_degree: 0,
            log_prefactor: 0.0,
            linear_complex: vec![C64::new(0.0, 0.0); nvars],
            linear_abs: 0.0,
            quad: 0.0,
            norm,
            domain: BoundDomain::AllComplex,
        }
    }

    pub fn nvars(&self) -> usize {
        self.linear_complex.len()
    }

    /// Logarithm of the bound at `z`; `-∞` when `r > 0` and `N(z) = 0`.
    pub fn evaluate_log(&self, z: &[C64]) -> Result<f64> {
        if z.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: z.len() });
        }
        if self.domain == BoundDomain::RealPointsOnly && z.iter().any(|v| v.im.abs() > 1e-12) {
            return Err(Error::DomainViolation("bound only holds at real points".into()));
        }
        let n = self.norm.of(z);
        let lead = if self.lead_degree == 0 {
            0.0
        } else if n == 0.0 {
            return Ok(f64::NEG_INFINITY);
        } else {
            self.lead_degree as f64 * n.ln()
        };
        let linear: f64 = self
            .linear_complex
            .iter()
            .zip(z)
            .map(|(c, zj)| (c * zj).re)
            .sum();
        Ok(lead + self.log_prefactor + linear + self.linear_abs * n + self.quad * n * n)
    }

    pub fn evaluate(&self, z: &[C64]) -> Result<f64> {
        self.evaluate_log(z).map(f64::exp)
    }
}

mod complex_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::C64;

    pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
        Ok(Vec::<[f64; 2]>::deserialize(d)?
            .into_iter()
            .map(|[re, im]| C64::new(re, im))
            .collect())
    }
}

/// The inequalities this crate can certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Szász's original one-variable bound.
    Original,
    /// Sharpened one-variable bound.
    Improved,
    /// One-variable bound for a zero of order k at the origin.
    Vanishing1d,
    /// Borcea–Brändén polydisk bound.
    Bb,
    /// Two-variable bound from determinantal representations.
    Det,
    /// Two-variable coefficient corollary of `det`.
    Coeff2,
    /// n-variable coefficient corollary.
    Coeffn,
    /// n-variable Euclidean bound.
    Msz,
    /// n-variable bound at real points.
    Real,
    /// Two-variable bound for a zero of order r at the origin, as stated.
    Bisz2,
    /// The same bound with the corrected linear coefficient.
    #[value(name = "bisz2-corrected")]
    #[serde(rename = "bisz2-corrected")]
    Bisz2Corrected,
    /// n-variable bound for a zero of order r at the origin.
    Msz2,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::Original,
        Theorem::Improved,
        Theorem::Vanishing1d,
        Theorem::Bb,
        Theorem::Det,
        Theorem::Coeff2,
        Theorem::Coeffn,
        Theorem::Msz,
        Theorem::Real,
        Theorem::Bisz2,
        Theorem::Bisz2Corrected,
        Theorem::Msz2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Original => "original",
            Theorem::Improved => "improved",
            Theorem::Vanishing1d => "vanishing1d",
            Theorem::Bb => "bb",
            Theorem::Det => "det",
            Theorem::Coeff2 => "coeff2",
            Theorem::Coeffn => "coeffn",
            Theorem::Msz => "msz",
            Theorem::Real => "real",
            Theorem::Bisz2 => "bisz2",
            Theorem::Bisz2Corrected => "bisz2-corrected",
            Theorem::Msz2 => "msz2",
        }
    }

    /// Whether the certificate needs `p(0) = 1` (otherwise it handles a zero
    /// at the origin).
    pub fn needs_normalization(self) -> bool {
        !matches!(self, Theorem::Vanishing1d | Theorem::Bisz2 | Theorem::Bisz2Corrected | Theorem::Msz2)
    }

    /// Computes the certificate, deriving the homogeneous expansion or the
    /// vanishing order where needed.
    pub fn certificate(self, p: &MultiPoly) -> Result<ExpBound> {
        match self {
            Theorem::Original => szasz_original(p),
            Theorem::Improved => szasz_improved(p),
            Theorem::Vanishing1d => {
                let k = p.homogeneous_parts(ORDER_TOL)?.vanishing_order();
                szasz_1d_vanishing(p, k)
            }
            Theorem::Bb => bb_bound(p),
            Theorem::Det => det_bound(p),
            Theorem::Coeff2 => two_var_coeff_bound(p),
            Theorem::Coeffn => nvar_coeff_bound(p),
            Theorem::Msz => msz_bound(p),
            Theorem::Real => real_axis_bound(p),
            Theorem::Bisz2 => bisz2_bound(p, &p.homogeneous_parts(ORDER_TOL)?),
            Theorem::Bisz2Corrected => bisz2_bound_corrected(p, &p.homogeneous_parts(ORDER_TOL)?),
            Theorem::Msz2 => msz2_bound(p, &p.homogeneous_parts(ORDER_TOL)?),
        }
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn require_normalized(p: &MultiPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p0 = p.constant_term();
    if (p0 - C64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL {
        return Err(Error::Normalization { re: p0.re, im: p0.im });
    }
    Ok(())
}

fn require_nvars(p: &MultiPoly, n: usize) -> Result<()> {
    if p.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.nvars() });
    }
    Ok(())
}

/// `exp(|c₁||z| + 3|z|²(|c₁|² + |c₂|))`.
pub fn szasz_original(p: &MultiPoly) -> Result<ExpBound> {
    require_nvars(p, 1)?;
    require_normalized(p)?;
    let c1 = p.coefficient(&[1]).norm();
    let c2 = p.coefficient(&[2]).norm();
    Ok(ExpBound {
        linear_abs: c1,
        quad: 3.0 * (c1 * c1 + c2),
        ..ExpBound::trivial(1, NormKind::EuclidNorm)
    })
}

/// `exp(Re(p₁z) + ½(|p₁|² − 2 Re p₂)|z|²)`.
pub fn szasz_improved(p: &MultiPoly) -> Result<ExpBound> {
    require_nvars(p, 1)?;
    require_normalized(p)?;
    let p1 = p.coefficient(&[1]);
    let p2 = p.coefficient(&[2]);
    Ok(ExpBound {
        linear_complex: vec![p1],
        quad: 0.5 * (p1.norm_sqr() - 2.0 * p2.re),
        ..ExpBound::trivial(1, NormKind::EuclidNorm)
    })
}

/// One-variable bound for `p = p_k z^k + p_{k+1} z^{k+1} + …`:
///
/// `|p_k| exp(k(|z| − 1) + Re(p_{k+1}/p_k · z) + ½|z|²(|p_{k+1}/p_k|² − 2 Re(p_{k+2}/p_k)))`.
///
/// `log|z|^k` is replaced by its upper bound `k(|z| − 1)`, so the
/// certificate has lead degree 0.
pub fn szasz_1d_vanishing(p: &MultiPoly, k: u32) -> Result<ExpBound> {
    require_nvars(p, 1)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pk = p.coefficient(&[k]);
    if pk.norm() == 0.0 {
        return Err(Error::BadVanishingOrder { order: k });
    }
    let scale = p.max_abs_coeff();
    if (0..k).any(|j| p.coefficient(&[j]).norm() > ORDER_TOL * scale) {
        return Err(Error::BadVanishingOrder { order: k });
    }
    let r1 = p.coefficient(&[k + 1]) / pk;
    let r2 = p.coefficient(&[k + 2]) / pk;
    Ok(ExpBound {
        log_prefactor: pk.norm().ln() - k as f64,
        linear_complex: vec![r1],
        linear_abs: k as f64,
        quad: 0.5 * (r1.norm_sqr() - 2.0 * r2.re),
        ..ExpBound::trivial(1, NormKind::EuclidNorm)
    })
}

/// `a(e_j + e_k)` for the ordered pair `(j, k)`, diagonal `a(2e_j)`.
fn pair_coefficient(p: &MultiPoly, j: usize, k: usize) -> C64 {
    let mut e = vec![0; p.nvars()];
    e[j] += 1;
    e[k] += 1;
    p.coefficient(&e)
}

fn linear_abs_sum(p: &MultiPoly) -> f64 {
    p.gradient_at_zero().iter().map(|c| c.norm()).sum()
}

/// `B = 2^{n−1}·√(2e² − e)/(e − 1)`.
pub fn bb_prefactor(nvars: usize) -> f64 {
    2f64.powi(nvars as i32 - 1) * (2.0 * E * E - E).sqrt() / (E - 1.0)
}

/// `B·exp(C‖z‖∞²)` with `C = 6e²(Σ|a(e_i)|)² + 4e² Σ_{i,j} |a(e_i + e_j)|`.
pub fn bb_bound(p: &MultiPoly) -> Result<ExpBound> {
    require_normalized(p)?;
    let n = p.nvars();
    let lin = linear_abs_sum(p);
    let pairs: f64 = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .map(|(j, k)| pair_coefficient(p, j, k).norm())
        .sum();
    Ok(ExpBound {
        log_prefactor: bb_prefactor(n).ln(),
        quad: 6.0 * E * E * lin * lin + 4.0 * E * E * pairs,
        ..ExpBound::trivial(n, NormKind::SupNorm)
    })
}

/// Two-variable bound
/// `exp(Re Σ z_j p_j(0) + ½‖z‖∞²(|Σ p_j(0)|² − Re Σ_{j,k} p_{jk}(0)))`.
pub fn det_bound(p: &MultiPoly) -> Result<ExpBound> {
    require_nvars(p, 2)?;
    det_bound_nvar(p)
}

/// The same certificate in any number of variables. Valid for
/// polynomials that admit a determinantal representation.
pub fn det_bound_nvar(p: &MultiPoly) -> Result<ExpBound> {
    require_normalized(p)?;
    let grad = p.gradient_at_zero();
    let hess = p.hessian_at_zero();
    let grad_sum: C64 = grad.iter().sum();
    let hess_sum: C64 = hess.iter().sum();
    Ok(ExpBound {
        linear_complex: grad,
        quad: 0.5 * (grad_sum.norm_sqr() - hess_sum.re),
        ..ExpBound::trivial(p.nvars(), NormKind::SupNorm)
    })
}

fn pair_real_abs_sum(p: &MultiPoly) -> f64 {
    let n = p.nvars();
    (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .map(|(j, k)| pair_coefficient(p, j, k).re.abs())
        .sum()
}

/// `√e·exp(C‖z‖∞²)`, `C = (Σ|a(e_j)|)² + Σ_{j,k} |Re a(e_j + e_k)|`.
pub fn two_var_coeff_bound(p: &MultiPoly) -> Result<ExpBound> {
    require_nvars(p, 2)?;
    require_normalized(p)?;
    let lin = linear_abs_sum(p);
    Ok(ExpBound {
        log_prefactor: 0.5,
        quad: lin * lin + pair_real_abs_sum(p),
        ..ExpBound::trivial(2, NormKind::SupNorm)
    })
}

/// `√e·exp(C‖z‖∞²)`, `C = 2(Σ|a(e_j)|)² + 2Σ_{j,k} |Re a(e_j + e_k)|`.
pub fn nvar_coeff_bound(p: &MultiPoly) -> Result<ExpBound> {
    require_normalized(p)?;
    let lin = linear_abs_sum(p);
    Ok(ExpBound {
        log_prefactor: 0.5,
        quad: 2.0 * lin * lin + 2.0 * pair_real_abs_sum(p),
        ..ExpBound::trivial(p.nvars(), NormKind::SupNorm)
    })
}

/// `‖Re Hp(0)‖`, the largest absolute eigenvalue of the entrywise real part.
pub fn real_hessian_norm(p: &MultiPoly) -> f64 {
    let re: DMatrix<f64> = p.hessian_at_zero().map(|v| v.re);
    linalg::symmetric_op_norm(&re)
}

fn euclid_len(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `exp(√2|∇p(0)||z| + (|∇p(0)|² + ‖Re Hp(0)‖)|z|²)`.
pub fn msz_bound(p: &MultiPoly) -> Result<ExpBound> {
    require_normalized(p)?;
    let g = euclid_len(&p.gradient_at_zero());
    Ok(ExpBound {
        linear_abs: SQRT_2 * g,
        quad: g * g + real_hessian_norm(p),
        ..ExpBound::trivial(p.nvars(), NormKind::EuclidNorm)
    })
}

/// At real `x`: `exp(Re(∇p(0)·x) + ½(|∇p(0)|² + ‖Re Hp(0)‖)|x|²)`.
pub fn real_axis_bound(p: &MultiPoly) -> Result<ExpBound> {
    require_normalized(p)?;
    let grad = p.gradient_at_zero();
    let g = euclid_len(&grad);
    Ok(ExpBound {
        linear_complex: grad,
        quad: 0.5 * (g * g + real_hessian_norm(p)),
        domain: BoundDomain::RealPointsOnly,
        ..ExpBound::trivial(p.nvars(), NormKind::EuclidNorm)
    })
}

/// `P_r(1⃗)`, `∇P_r(1⃗)`, `P_{r+1}(1⃗)`, `∇P_{r+1}(1⃗)` and `P_{r+2}(1⃗)`.
struct LeadingData {
    r: u32,
    lead: C64,
    lead_grad: Vec<C64>,
    next: C64,
    next_grad: Vec<C64>,
    next2: C64,
}

fn leading_data(h: &HomogeneousExpansion) -> Result<LeadingData> {
    let r = h.vanishing_order();
    let (lead, lead_grad) = h.at_ones(r);
    let scale = h.part(r).map(|p| p.max_abs_coeff()).unwrap_or(0.0);
    if !(lead.norm() > 1e-12 * scale) || lead.norm() == 0.0 {
        return Err(Error::DegenerateLeadingValue(lead.norm()));
    }
    let (next, next_grad) = h.at_ones(r + 1);
    let (next2, _) = h.at_ones(r + 2);
    Ok(LeadingData { r, lead, lead_grad, next, next_grad, next2 })
}

/// Which linear coefficient the vanishing-order bound uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bisz2Form {
    /// `c_j = [∂_jP_r(1⃗)(1 − P_{r+1}(1⃗)/P_r(1⃗)) + ∂_jP_{r+1}(1⃗)] / P_r(1⃗)`,
    /// as the inequality is usually stated. Not a valid bound in general:
    /// `p = z₁` at `z = (−1, 0)` gives `e^{−1} < |p| = 1`.
    AsStated,
    /// `c_j = [∂_jP_{r+1}(1⃗) − ∂_jP_r(1⃗)·P_{r+1}(1⃗)/P_r(1⃗)] / P_r(1⃗)`.
    ///
    /// In `log|det(J + Σ z_jX_j)| ≤ ½ tr((J + Z)*(J + Z) − I)` the cross
    /// term is `2 Re tr(JZ)`, which only sees the block outside the kernel
    /// of `A`; its trace is exactly this coefficient. The stated form adds
    /// `∂_jP_r(1⃗)/P_r(1⃗)`, the kernel block.
    Corrected,
}

/// Two-variable bound for a zero of order `r` at the origin:
///
/// `|P_r(1⃗)| e^{−r/2} exp(Re Σ c_j z_j + B‖z‖∞²)` with
/// `c_j = [∂_jP_r(1⃗)(1 − P_{r+1}(1⃗)/P_r(1⃗)) + ∂_jP_{r+1}(1⃗)] / P_r(1⃗)` and
/// `B = ½(|P_{r+1}(1⃗)/P_r(1⃗)|² − 2 Re(P_{r+2}(1⃗)/P_r(1⃗)) + r)`.
///
/// This is the [`Bisz2Form::AsStated`] coefficient; see
/// [`bisz2_bound_corrected`] for one that holds for every stable `p`.
pub fn bisz2_bound(p: &MultiPoly, h: &HomogeneousExpansion) -> Result<ExpBound> {
    require_nvars(p, 2)?;
    bisz2_bound_nvar(p, h, Bisz2Form::AsStated)
}

/// [`bisz2_bound`] with the [`Bisz2Form::Corrected`] linear coefficient.
pub fn bisz2_bound_corrected(p: &MultiPoly, h: &HomogeneousExpansion) -> Result<ExpBound> {
    require_nvars(p, 2)?;
    bisz2_bound_nvar(p, h, Bisz2Form::Corrected)
}

/// The vanishing-order bound in any number of variables, for polynomials
/// with a determinantal representation.
pub fn bisz2_bound_nvar(p: &MultiPoly, h: &HomogeneousExpansion, form: Bisz2Form) -> Result<ExpBound> {
    if h.nvars() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), got: h.nvars() });
    }
    let d = leading_data(h)?;
    let ratio1 = d.next / d.lead;
    let ratio2 = d.next2 / d.lead;
    let one = C64::new(1.0, 0.0);
    let linear: Vec<C64> = d
        .lead_grad
        .iter()
        .zip(&d.next_grad)
        .map(|(&gr, &gn)| match form {
            Bisz2Form::AsStated => (gr * (one - ratio1) + gn) / d.lead,
            Bisz2Form::Corrected => (gn - gr * ratio1) / d.lead,
        })
        .collect();
    Ok(ExpBound {
        log_prefactor: d.lead.norm().ln() - d.r as f64 / 2.0,
        linear_complex: linear,
        quad: 0.5 * (ratio1.norm_sqr() - 2.0 * ratio2.re + d.r as f64),
        ..ExpBound::trivial(p.nvars(), NormKind::SupNorm)
    })
}

/// The constants `(C₀, C₁, C₂)` of the n-variable vanishing-order bound.
pub fn msz2_constants(h: &HomogeneousExpansion) -> Result<(f64, f64, f64)> {
    let d = leading_data(h)?;
    let l1 = |v: &[C64]| v.iter().map(|c| c.norm()).sum::<f64>();
    let lead_abs = d.lead.norm();
    let ratio1 = d.next / d.lead;
    let ratio2 = d.next2 / d.lead;
    let r = d.r as f64;
    let c0 = r * (2f64.ln() - 0.25) + l1(&d.lead_grad) / (SQRT_2 * lead_abs);
    let c1 = SQRT_2 / lead_abs * (l1(&d.lead_grad) * ratio1.norm() + l1(&d.next_grad));
    let c2 = ratio1.norm_sqr() - 2.0 * ratio2.re;
    Ok((c0, c1, c2))
}

/// `‖z‖∞^r |P_r(1⃗)| exp(C₀ + C₁‖z‖∞ + C₂‖z‖∞²)` for a zero of order `r`.
pub fn msz2_bound(p: &MultiPoly, h: &HomogeneousExpansion) -> Result<ExpBound> {
    if h.nvars() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), got: h.nvars() });
    }
    let d = leading_data(h)?;
    let (c0, c1, c2) = msz2_constants(h)?;
    Ok(ExpBound {
        lead_degree: d.r,
        log_prefactor: d.lead.norm().ln() + c0,
        linear_abs: c1,
        quad: c2,
        ..ExpBound::trivial(p.nvars(), NormKind::SupNorm)
    })
}
