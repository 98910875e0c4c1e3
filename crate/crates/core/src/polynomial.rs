//! Dense polynomials over `K_N` and over the residue field `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::valued_field::{FieldElement, FieldParams, Valuation};

/// `binomial(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A polynomial `sum a_i T^i` over `K_N`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    params: FieldParams,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(params: FieldParams) -> Self {
        Poly { params, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::from_coeffs(c.params(), vec![c])
    }

    /// The coordinate `T`.
    pub fn t(params: FieldParams) -> Self {
        Poly::monomial(FieldElement::one(params), 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let params = c.params();
        let mut coeffs = vec![FieldElement::zero(params); k];
        coeffs.push(c);
        Poly::from_coeffs(params, coeffs)
    }

    pub fn from_coeffs(params: FieldParams, coeffs: Vec<FieldElement>) -> Self {
        assert!(coeffs.iter().all(|c| c.params() == params), "mixed field parameters");
        let mut p = Poly { params, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElement::zero(self.params))
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| FieldElement::zero(self.params))
    }

    /// Valuations of the coefficients, index `i` for `T^i`.
    pub fn coeff_valuations(&self) -> Vec<Valuation> {
        self.coeffs.iter().map(FieldElement::valuation).collect()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::zero(self.params), |acc, c| &(&acc * x) + c)
    }

    /// The Hasse derivative `f^[i] = (1/i!) d^i f / dT^i`, computed as
    /// `sum_j binomial(i+j, i) a_{i+j} T^j`.
    pub fn hasse_derivative(&self, i: usize) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(i)
            .map(|(k, c)| c.scale(&BigRational::from_integer(binomial(k, i))))
            .collect();
        Poly::from_coeffs(self.params, coeffs)
    }

    /// Ordinary first derivative.
    pub fn derivative(&self) -> Poly {
        self.hasse_derivative(1)
    }

    /// `g(T) = f(T + a) - f(a)`, by repeated synthetic division. The
    /// coefficient of `T^i` in `g` is `f^[i](a)`.
    pub fn recenter(&self, a: &FieldElement) -> Poly {
        let mut work = self.coeffs.clone();
        let n = work.len();
        for start in 0..n {
            for k in (start..n - 1).rev() {
                let add = a * &work[k + 1];
                work[k] = &work[k] + &add;
            }
        }
        if let Some(c0) = work.first_mut() {
            *c0 = FieldElement::zero(self.params);
        }
        Poly::from_coeffs(self.params, work)
    }

    /// `leading * prod (T - r)`.
    pub fn from_roots(params: FieldParams, roots: &[FieldElement], leading: &FieldElement) -> Poly {
        let mut acc = Poly::constant(leading.clone());
        for r in roots {
            let lin = Poly::from_coeffs(params, vec![-r, FieldElement::one(params)]);
            acc = acc.mul(&lin);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Poly::from_coeffs(self.params, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Poly::from_coeffs(self.params, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.params);
        }
        let mut coeffs = vec![FieldElement::zero(self.params); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.params, coeffs)
    }

    /// Composition `self(inner(T))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(self.params), |acc, c| acc.mul(inner).add(&Poly::constant(c.clone())))
    }

    /// Coefficientwise reduction to `F_p`.
    pub fn reduce_residue(&self) -> Result<FpPoly> {
        let coeffs = self.coeffs.iter().map(FieldElement::residue).collect::<Result<Vec<_>>>()?;
        Ok(FpPoly::new(self.params.p(), coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("[{c}]"),
                1 => format!("[{c}]*T"),
                _ => format!("[{c}]*T^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A polynomial over `F_p` with coefficients in `0..p`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p as u64;
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| ((k as u64 % p) * c as u64 % p) as u32).collect();
        FpPoly::new(self.p, coeffs)
    }
}

/// Canonical ascending-degree form, e.g. `1 + 2*T + T^3`.
impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "T".to_string(),
                (1, c) => format!("{c}*T"),
                (k, 1) => format!("T^{k}"),
                (k, c) => format!("{c}*T^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
