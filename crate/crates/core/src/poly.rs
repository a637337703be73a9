//! Sparse multivariate polynomials with complex coefficients.
//!
//! A [`MultiPoly`] maps exponent vectors to coefficients. Terms live in a
//! `BTreeMap`, so iteration, evaluation and serialization all follow the
//! lexicographic order of the exponent vectors and are bit-reproducible.
//!
//! Variable indices are zero-based throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Default magnitude below which a coefficient counts as zero when deciding
/// vanishing orders and ranks.
pub const ORDER_TOL: f64 = 1e-9;

/// Default magnitude used by [`MultiPoly::prune`] for canonicalization.
pub const ZERO_TOL: f64 = 1e-12;

/// Sparse polynomial in `nvars` complex variables.
///
/// No stored coefficient is exactly zero; the zero polynomial has an empty
/// term map.
#[derive(Clone, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C64>,
}

impl MultiPoly {
    /// The zero polynomial.
    ///
    /// # Panics
    /// If `nvars == 0`.
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars > 0, "a polynomial needs at least one variable");
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C64::new(1.0, 0.0))
    }

    /// The coordinate function `z_j`.
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable index {j} out of range");
        let mut exp = vec![0; nvars];
        exp[j] = 1;
        Self::monomial(exp, C64::new(1.0, 0.0))
    }

    pub fn monomial(exp: Vec<u32>, c: C64) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs in any order.
    /// Repeated exponents are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C64)>,
    {
        if nvars == 0 {
            return Err(Error::InvalidParameter("nvars must be positive".into()));
        }
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: exp.len(),
                });
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    /// One-variable polynomial `Σ coeffs[k] z^k`.
    pub fn from_coeffs_1d(coeffs: &[C64]) -> Self {
        let mut p = Self::zero(1);
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c);
        }
        p
    }

    /// Dense coefficient list of a one-variable polynomial, lowest degree first.
    pub fn coeffs_1d(&self) -> Result<Vec<C64>> {
        if self.nvars != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.nvars,
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.total_degree() as usize + 1];
        for (exp, &c) in &self.terms {
            out[exp[0] as usize] = c;
        }
        Ok(out)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: C64) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum == C64::new(0.0, 0.0) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], C64)> + '_ {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exp: &[u32]) -> C64 {
        self.terms.get(exp).copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> C64 {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Max total degree over stored terms; 0 for the zero polynomial (check
    /// [`is_zero`](Self::is_zero) to tell it apart from constants).
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Degree in the single variable `j`.
    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|e| e[j]).max().unwrap_or(0)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops every coefficient with magnitude at or below `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Direct evaluation `Σ a(β) Π z_k^{β_k}`, summed in lexicographic order.
    pub fn evaluate(&self, z: &[C64]) -> Result<C64> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: z.len(),
            });
        }
        let mut sum = C64::new(0.0, 0.0);
        for (exp, &c) in &self.terms {
            let mut term = c;
            for (zk, &bk) in z.iter().zip(exp) {
                if bk > 0 {
                    term *= zk.powu(bk);
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    pub fn partial_derivative(&self, j: usize) -> Result<Self> {
        if j >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: j,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (exp, &c) in &self.terms {
            if exp[j] == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[j] -= 1;
            out.add_term(e, c * exp[j] as f64);
        }
        Ok(out)
    }

    /// `∇p(0)`: the coefficients of the linear monomials.
    pub fn gradient_at_zero(&self) -> Vec<C64> {
        (0..self.nvars)
            .map(|j| {
                let mut e = vec![0; self.nvars];
                e[j] = 1;
                self.coefficient(&e)
            })
            .collect()
    }

    /// `Hp(0)` with entries `p_{jk}(0)`: `2·a(2e_j)` on the diagonal and
    /// `a(e_j + e_k)` off it.
    pub fn hessian_at_zero(&self) -> DMatrix<C64> {
        let n = self.nvars;
        DMatrix::from_fn(n, n, |j, k| {
            let mut e = vec![0; n];
            e[j] += 1;
            e[k] += 1;
            let a = self.coefficient(&e);
            if j == k {
                a * 2.0
            } else {
                a
            }
        })
    }

    /// Groups terms by total degree.
    ///
    /// Every degree that carries terms gets a part, so the parts always sum
    /// back to `self`. The vanishing order is the smallest degree whose part
    /// has a coefficient of magnitude above `zero_tol`.
    pub fn homogeneous_parts(&self, zero_tol: f64) -> Result<HomogeneousExpansion> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut by_degree: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (exp, &c) in &self.terms {
            let deg = exp.iter().sum::<u32>();
            by_degree
                .entry(deg)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .add_term(exp.clone(), c);
        }
        let vanishing_order = by_degree
            .iter()
            .find(|(_, part)| part.max_abs_coeff() > zero_tol)
            .map(|(&d, _)| d)
            .ok_or(Error::ZeroPolynomial)?;
        Ok(HomogeneousExpansion {
            nvars: self.nvars,
            parts: by_degree.into_iter().collect(),
            vanishing_order,
        })
    }

    /// Restriction to the complex plane spanned by `u` and `v`: the
    /// two-variable polynomial `q(w₁, w₂) = p(w₁u + w₂v)`, expanded exactly.
    pub fn restrict_to_plane(&self, u: &[C64], v: &[C64]) -> Result<Self> {
        for len in [u.len(), v.len()] {
            if len != self.nvars {
                return Err(Error::DimensionMismatch {
                    expected: self.nvars,
                    got: len,
                });
            }
        }
        let forms: Vec<MultiPoly> = (0..self.nvars)
            .map(|k| {
                MultiPoly::from_terms(2, [(vec![1, 0], u[k]), (vec![0, 1], v[k])])
                    .expect("two-variable linear form")
            })
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = forms.iter().map(|f| vec![MultiPoly::one(2), f.clone()]).collect();
        let mut out = MultiPoly::zero(2);
        for (exp, &c) in &self.terms {
            let mut term = MultiPoly::constant(2, c);
            for (k, &b) in exp.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                while powers[k].len() <= b as usize {
                    let next = powers[k].last().unwrap() * &forms[k];
                    powers[k].push(next);
                }
                term = &term * &powers[k][b as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `(n, m)`: degrees in `z₁` and `z₂` of a two-variable polynomial.
    pub fn bidegree(&self) -> Result<(u32, u32)> {
        if self.nvars != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.nvars,
            });
        }
        Ok((self.degree_in(0), self.degree_in(1)))
    }

    /// Transfers a two-variable polynomial from the upper half-plane to the
    /// bidisk:
    ///
    /// `q(z₁, z₂) = p(φ(z₁), φ(z₂)) ((1 − z₁)/2i)ⁿ ((1 − z₂)/2i)ᵐ`,
    /// `φ(ζ) = i(1 + ζ)/(1 − ζ)`.
    ///
    /// `bidegree = None` uses the polynomial's own bidegree. An explicit
    /// `(n, m)` may exceed it but not fall below it.
    pub fn cayley_substitute(&self, bidegree: Option<(u32, u32)>) -> Result<Self> {
        let (n, m) = self.checked_bidegree(bidegree)?;
        let i = C64::i();
        let one = C64::new(1.0, 0.0);
        let scale = (C64::new(0.0, 2.0)).powu(n + m).inv();
        let mut out = MultiPoly::zero(2);
        for (exp, &c) in &self.terms {
            let (a, b) = (exp[0], exp[1]);
            let f1 = linear_power_product((one, one), a, (one, -one), n - a);
            let f2 = linear_power_product((one, one), b, (one, -one), m - b);
            let k = c * i.powu(a + b) * scale;
            out = &out + &outer_product(&f1, &f2, k);
        }
        Ok(out)
    }

    /// Inverse of [`cayley_substitute`](Self::cayley_substitute):
    /// `p(z₁, z₂) = q(φ⁻¹(z₁), φ⁻¹(z₂)) (z₁ + i)ⁿ (z₂ + i)ᵐ` with
    /// `φ⁻¹(ζ) = (ζ − i)/(ζ + i)`.
    pub fn cayley_inverse(&self, bidegree: (u32, u32)) -> Result<Self> {
        let (n, m) = self.checked_bidegree(Some(bidegree))?;
        let i = C64::i();
        let one = C64::new(1.0, 0.0);
        let mut out = MultiPoly::zero(2);
        for (exp, &c) in &self.terms {
            let (a, b) = (exp[0], exp[1]);
            let f1 = linear_power_product((-i, one), a, (i, one), n - a);
            let f2 = linear_power_product((-i, one), b, (i, one), m - b);
            out = &out + &outer_product(&f1, &f2, c);
        }
        Ok(out)
    }

    fn checked_bidegree(&self, bidegree: Option<(u32, u32)>) -> Result<(u32, u32)> {
        let (an, am) = self.bidegree()?;
        match bidegree {
            None => Ok((an, am)),
            Some((n, m)) if n >= an && m >= am => Ok((n, m)),
            Some((n, m)) => Err(Error::BidegreeTooSmall {
                declared_n: n,
                declared_m: m,
                actual_n: an,
                actual_m: am,
            }),
        }
    }
}

/// Coefficients (lowest first) of `(x0 + x1·z)^a · (y0 + y1·z)^b`.
fn linear_power_product(x: (C64, C64), a: u32, y: (C64, C64), b: u32) -> Vec<C64> {
    let mut out = vec![C64::new(1.0, 0.0)];
    let mut mul = |f: (C64, C64)| {
        let mut next = vec![C64::new(0.0, 0.0); out.len() + 1];
        for (k, &c) in out.iter().enumerate() {
            next[k] += c * f.0;
            next[k + 1] += c * f.1;
        }
        out = next;
    };
    for _ in 0..a {
        mul(x);
    }
    for _ in 0..b {
        mul(y);
    }
    out
}

fn outer_product(f1: &[C64], f2: &[C64], k: C64) -> MultiPoly {
    let mut out = MultiPoly::zero(2);
    for (a, &c1) in f1.iter().enumerate() {
        for (b, &c2) in f2.iter().enumerate() {
            out.add_term(vec![a as u32, b as u32], k * c1 * c2);
        }
    }
    out
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}](", self.nvars)?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (exp, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)·z^{:?}", c.re, c.im, exp)?;
        }
        write!(f, ")")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// `p = Σ_j P_j` with `P_j` homogeneous of degree `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousExpansion {
    nvars: usize,
    parts: Vec<(u32, MultiPoly)>,
    vanishing_order: u32,
}

impl HomogeneousExpansion {
    /// `(degree, P_degree)` in increasing degree order.
    pub fn parts(&self) -> &[(u32, MultiPoly)] {
        &self.parts
    }

    pub fn vanishing_order(&self) -> u32 {
        self.vanishing_order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn part(&self, degree: u32) -> Option<&MultiPoly> {
        self.parts
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, p)| p)
    }

    /// `(P_j(1⃗), ∇P_j(1⃗))`; zeros when degree `j` is absent.
    pub fn at_ones(&self, degree: u32) -> (C64, Vec<C64>) {
        let mut value = C64::new(0.0, 0.0);
        let mut grad = vec![C64::new(0.0, 0.0); self.nvars];
        if let Some(part) = self.part(degree) {
            for (exp, c) in part.terms() {
                value += c;
                for (g, &b) in grad.iter_mut().zip(exp) {
                    *g += c * b as f64;
                }
            }
        }
        (value, grad)
    }

    pub fn reassemble(&self) -> MultiPoly {
        self.parts
            .iter()
            .fold(MultiPoly::zero(self.nvars), |acc, (_, p)| &acc + p)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    nvars: usize,
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exp: Vec<u32>,
    re: f64,
    im: f64,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyFile {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRecord {
                    exp: e.clone(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = PolyFile::deserialize(d)?;
        MultiPoly::from_terms(
            file.nvars,
            file.terms
                .into_iter()
                .map(|t| (t.exp, C64::new(t.re, t.im))),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn p2(terms: &[([u32; 2], C64)]) -> MultiPoly {
        MultiPoly::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn constant_evaluates_to_itself() {
        let p = MultiPoly::one(2);
        assert_eq!(p.evaluate(&[c(7.0, 3.0), c(-2.0, 0.0)]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn linear_evaluation() {
        let p = &(&MultiPoly::one(2) + &MultiPoly::var(2, 0)) + &MultiPoly::var(2, 1);
        assert_eq!(p.evaluate(&[C64::i(), C64::i()]).unwrap(), c(1.0, 2.0));
    }

    #[test]
    fn expanded_square_matches_factored() {
        let lin = &MultiPoly::one(1) + &MultiPoly::var(1, 0);
        let sq = lin.pow(2);
        let direct = sq.evaluate(&[C64::i()]).unwrap();
        let factored = (c(1.0, 1.0)).powu(2);
        assert!((direct - factored).norm() < 1e-15);
        assert!((direct - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn evaluate_rejects_wrong_length() {
        let p = MultiPoly::one(2);
        assert!(matches!(
            p.evaluate(&[C64::i()]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn derivative_basics() {
        let z1z2 = p2(&[([1, 1], c(1.0, 0.0))]);
        assert_eq!(z1z2.partial_derivative(0).unwrap(), MultiPoly::var(2, 1));
        assert!(matches!(
            z1z2.partial_derivative(2),
            Err(Error::IndexOutOfRange { index: 2, nvars: 2 })
        ));

        let (c1, c2) = (c(0.3, -1.0), c(2.0, 0.5));
        let p = MultiPoly::from_coeffs_1d(&[c(1.0, 0.0), c1, c2]);
        let dp = p.partial_derivative(0).unwrap();
        assert_eq!(dp.evaluate(&[C64::new(0.0, 0.0)]).unwrap(), c1);
    }

    #[test]
    fn mixed_second_derivative_matches_finite_difference() {
        let p = p2(&[
            ([0, 0], c(1.0, 0.0)),
            ([1, 0], c(1.0, 0.0)),
            ([1, 1], c(1.0, 0.0)),
            ([0, 2], c(3.0, 0.0)),
        ]);
        let exact = p
            .partial_derivative(0)
            .unwrap()
            .partial_derivative(1)
            .unwrap()
            .evaluate(&[c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert_eq!(exact, c(1.0, 0.0));
        let h = 1e-5;
        let f = |a: f64, b: f64| p.evaluate(&[c(a, 0.0), c(b, 0.0)]).unwrap();
        let fd = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
        assert!((fd - exact).norm() < 1e-6, "fd = {fd}");
    }

    #[test]
    fn gradient_and_hessian_at_zero() {
        assert_eq!(MultiPoly::one(2).gradient_at_zero(), vec![c(0.0, 0.0); 2]);
        let p = p2(&[([0, 0], c(1.0, 0.0)), ([1, 0], c(2.0, 0.0)), ([0, 1], c(0.0, -1.0))]);
        assert_eq!(p.gradient_at_zero(), vec![c(2.0, 0.0), c(0.0, -1.0)]);

        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let one = MultiPoly::one(2);
        let prod = &(&one + &x) * &(&one + &y);
        assert_eq!(prod.gradient_at_zero(), vec![c(1.0, 0.0); 2]);
        let h = prod.hessian_at_zero();
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]));

        let q = p2(&[
            ([0, 0], c(1.0, 0.0)),
            ([1, 0], c(1.0, 0.0)),
            ([1, 1], c(1.0, 0.0)),
            ([0, 2], c(3.0, 0.0)),
        ]);
        let hq = q.hessian_at_zero();
        assert_eq!(hq, DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(6.0, 0.0)]));
        assert!(MultiPoly::one(3).hessian_at_zero().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn homogeneous_parts_examples() {
        let p = p2(&[([1, 1], c(1.0, 0.0)), ([3, 0], c(1.0, 0.0))]);
        let h = p.homogeneous_parts(ORDER_TOL).unwrap();
        assert_eq!(h.vanishing_order(), 2);
        assert_eq!(h.parts().len(), 2);
        assert_eq!(h.part(2).unwrap(), &p2(&[([1, 1], c(1.0, 0.0))]));
        assert_eq!(h.part(3).unwrap(), &p2(&[([3, 0], c(1.0, 0.0))]));
        assert_eq!(h.reassemble(), p);

        let q = &MultiPoly::one(2) + &MultiPoly::var(2, 0);
        let hq = q.homogeneous_parts(ORDER_TOL).unwrap();
        assert_eq!(hq.vanishing_order(), 0);
        assert_eq!(hq.parts().iter().map(|(d, _)| *d).collect::<Vec<_>>(), vec![0, 1]);

        let single = p2(&[([2, 1], c(1.0, 0.0))]);
        let hs = single.homogeneous_parts(ORDER_TOL).unwrap();
        assert_eq!(hs.vanishing_order(), 3);
        assert_eq!(hs.at_ones(3).0, c(1.0, 0.0));

        assert!(matches!(MultiPoly::zero(2).homogeneous_parts(ORDER_TOL), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn vanishing_order_skips_negligible_parts() {
        let p = p2(&[([0, 0], c(1e-14, 0.0)), ([1, 0], c(2.0, 0.0))]);
        let h = p.homogeneous_parts(ORDER_TOL).unwrap();
        assert_eq!(h.vanishing_order(), 1);
        assert_eq!(h.reassemble(), p);
    }

    #[test]
    fn data_at_ones() {
        let h = p2(&[([1, 1], c(1.0, 0.0))]).homogeneous_parts(ORDER_TOL).unwrap();
        assert_eq!(h.at_ones(2), (c(1.0, 0.0), vec![c(1.0, 0.0), c(1.0, 0.0)]));
        assert_eq!(h.at_ones(5), (c(0.0, 0.0), vec![c(0.0, 0.0); 2]));

        let lin = p2(&[([1, 0], c(2.0, 0.0)), ([0, 1], c(0.0, -1.0))]);
        let hl = lin.homogeneous_parts(ORDER_TOL).unwrap();
        assert_eq!(hl.at_ones(1), (c(2.0, -1.0), vec![c(2.0, 0.0), c(0.0, -1.0)]));
    }

    #[test]
    fn restrict_to_coordinate_plane_and_diagonal() {
        let z1z2 = p2(&[([1, 1], c(1.0, 0.0))]);
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let q = z1z2.restrict_to_plane(&[one, zero], &[zero, one]).unwrap();
        assert_eq!(q, z1z2);

        let p = p2(&[([0, 0], one), ([1, 0], one), ([0, 1], one)]);
        let q = p.restrict_to_plane(&[one, one], &[one, one]).unwrap();
        assert_eq!(q, p2(&[([0, 0], one), ([1, 0], c(2.0, 0.0)), ([0, 1], c(2.0, 0.0))]));
        assert!(p.restrict_to_plane(&[one], &[one, one]).is_err());
    }

    #[test]
    fn cayley_examples() {
        let q = MultiPoly::one(2).cayley_substitute(None).unwrap();
        assert_eq!(q, MultiPoly::one(2));

        let z1 = MultiPoly::var(2, 0);
        let q = z1.cayley_substitute(None).unwrap();
        let expect = p2(&[([0, 0], c(0.5, 0.0)), ([1, 0], c(0.5, 0.0))]);
        assert!((&q - &expect).max_abs_coeff() < 1e-15, "{q:?}");

        assert!(matches!(
            z1.cayley_substitute(Some((0, 0))),
            Err(Error::BidegreeTooSmall { .. })
        ));
    }

    #[test]
    fn cayley_round_trip_with_declared_bidegree() {
        let p = p2(&[
            ([0, 0], c(1.0, 0.0)),
            ([1, 0], c(0.5, -0.2)),
            ([1, 1], c(2.0, 1.0)),
            ([0, 2], c(-1.0, 0.3)),
        ]);
        for bideg in [None, Some((2, 3))] {
            let q = p.cayley_substitute(bideg).unwrap();
            let nm = bideg.unwrap_or((1, 2));
            let back = q.cayley_inverse(nm).unwrap();
            assert!((&back - &p).max_abs_coeff() < 1e-10, "{back:?}");
        }
    }

    #[test]
    fn canonical_cancellation() {
        let p = p2(&[([0, 0], c(1.0, 2.0)), ([2, 1], c(-3.0, 0.5))]);
        let z = &p + &(-&p);
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn file_format_sorts_and_sums() {
        let json = r#"{"nvars": 2, "terms": [
            {"exp": [1,1], "re": 1.0, "im": 0.0},
            {"exp": [0,0], "re": 2.0, "im": -1.0},
            {"exp": [1,1], "re": 0.5, "im": 0.0}]}"#;
        let p: MultiPoly = serde_json::from_str(json).unwrap();
        assert_eq!(p.coefficient(&[1, 1]), c(1.5, 0.0));
        let out = serde_json::to_string(&p).unwrap();
        assert_eq!(
            out,
            r#"{"nvars":2,"terms":[{"exp":[0,0],"re":2.0,"im":-1.0},{"exp":[1,1],"re":1.5,"im":0.0}]}"#
        );
        let bad = r#"{"nvars": 2, "terms": [{"exp": [1], "re": 1.0, "im": 0.0}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
    }
}
