//! Exact arithmetic in the totally ramified extension `K_N = Q(pi)`, `pi^N = p`.
//!
//! Elements are stored as `N` rational coordinates in the basis
//! `1, pi, ..., pi^(N-1)`. The valuation is normalized so that `v(p) = 1`,
//! hence `v(pi) = 1/N` and the value group is `(1/N)Z`.
//!
//! `x^N - p` is Eisenstein at `p`, so the quotient `Q[x]/(x^N - p)` is a
//! field and the `p`-adic valuation extends uniquely to it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p`-adic valuation of a nonzero integer.
pub fn vp_int(n: &BigInt, p: u32) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `p`-adic valuation of a rational, `None` for zero.
pub fn vp_rational(x: &Rational, p: u32) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(vp_int(x.numer(), p) - vp_int(x.denom(), p))
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The pair `(p, N)` fixing the field `K_N = Q(pi)`, `pi^N = p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    ram: u32,
}

impl FieldParams {
    pub fn new(p: u32, ram: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if ram == 0 {
            return Err(Error::InvalidParams("ramification index must be >= 1".into()));
        }
        Ok(FieldParams { p, ram })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Ramification index `N`.
    pub fn ram(&self) -> u32 {
        self.ram
    }

    /// True iff `lambda` lies in the value group `(1/N)Z`.
    pub fn in_value_group(&self, lambda: &Rational) -> bool {
        (lambda * rat_int(self.ram as i64)).is_integer()
    }
}

/// A valuation: an exact rational or `+inf`.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub fn zero() -> Self {
        Valuation::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(q) => Some(q),
            Valuation::Infinite => None,
        }
    }

    pub fn into_finite(self) -> Option<Rational> {
        match self {
            Valuation::Finite(q) => Some(q),
            Valuation::Infinite => None,
        }
    }

    /// Compare with a finite rational.
    pub fn cmp_rational(&self, other: &Rational) -> Ordering {
        match self {
            Valuation::Finite(q) => q.cmp(other),
            Valuation::Infinite => Ordering::Greater,
        }
    }
}

impl From<Rational> for Valuation {
    fn from(q: Rational) -> Self {
        Valuation::Finite(q)
    }
}

impl Add for &Valuation {
    type Output = Valuation;
    fn add(self, rhs: &Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        &self + &rhs
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(q) => write!(f, "{q}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// An element `sum_e c_e pi^e` of `K_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    params: FieldParams,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(params: FieldParams) -> Self {
        FieldElement { params, coeffs: vec![Rational::zero(); params.ram as usize] }
    }

    pub fn one(params: FieldParams) -> Self {
        Self::from_rational(params, Rational::one())
    }

    pub fn from_int(params: FieldParams, n: i64) -> Self {
        Self::from_rational(params, rat_int(n))
    }

    pub fn from_rational(params: FieldParams, q: Rational) -> Self {
        let mut x = Self::zero(params);
        x.coeffs[0] = q;
        x
    }

    /// The uniformizer `pi`.
    pub fn pi(params: FieldParams) -> Self {
        Self::pi_pow(params, 1)
    }

    /// `pi^k` for any `k >= 0`, reduced with `pi^N = p`.
    pub fn pi_pow(params: FieldParams, k: u32) -> Self {
        Self::monomial(params, Rational::one(), k)
    }

    /// `c * pi^k`, reduced with `pi^N = p`.
    pub fn monomial(params: FieldParams, c: Rational, k: u32) -> Self {
        let n = params.ram;
        let q = k / n;
        let e = (k % n) as usize;
        let mut x = Self::zero(params);
        x.coeffs[e] = c * Rational::from_integer(BigInt::from(params.p).pow(q));
        x
    }

    /// Builds an element from `(c, e)` pairs meaning `sum c * pi^e`; exponents
    /// may exceed `N - 1`.
    pub fn from_terms(params: FieldParams, terms: &[(Rational, u32)]) -> Self {
        terms.iter().fold(Self::zero(params), |acc, (c, e)| &acc + &Self::monomial(params, c.clone(), *e))
    }

    /// Coordinates in the basis `1, pi, ..., pi^(N-1)`; missing entries are zero.
    pub fn from_coeffs(params: FieldParams, mut coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() > params.ram as usize {
            return Err(Error::InvalidParams(format!(
                "{} coordinates for ramification index {}",
                coeffs.len(),
                params.ram
            )));
        }
        coeffs.resize(params.ram as usize, Rational::zero());
        Ok(FieldElement { params, coeffs })
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `v(x) = min_e (v_p(c_e) + e/N)`. The candidates have pairwise distinct
    /// fractional parts, so no cancellation can occur and the minimum is exact.
    pub fn valuation(&self) -> Valuation {
        let n = self.params.ram as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(e, c)| vp_rational(c, self.params.p).map(|v| rat(v * n + e as i64, n)))
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    /// Reduction to the residue field `F_p`.
    pub fn residue(&self) -> Result<u32> {
        match self.valuation() {
            Valuation::Infinite => Ok(0),
            Valuation::Finite(v) if v.is_negative() => Err(Error::NegativeValuation(v.to_string())),
            Valuation::Finite(v) if v.is_positive() => Ok(0),
            Valuation::Finite(_) => {
                // v = 0 forces v_p(c_0) = 0; the other terms lie in the maximal ideal.
                let p = BigInt::from(self.params.p);
                let c0 = &self.coeffs[0];
                let num = c0.numer().mod_floor(&p);
                let den = c0.denom().mod_floor(&p);
                let inv = den.modpow(&(&p - 2u32), &p);
                Ok((num * inv).mod_floor(&p).to_u32().expect("residue fits in u32"))
            }
        }
    }

    fn check_params(&self, other: &Self) {
        assert_eq!(self.params, other.params, "mixed field parameters");
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement { params: self.params, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.params);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, by solving the linear system `x * y = 1` over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.params.ram as usize;
        // Column j of the multiplication matrix is x * pi^j.
        let mut cols: Vec<FieldElement> = Vec::with_capacity(n);
        let mut cur = self.clone();
        let pi = Self::pi(self.params);
        for _ in 0..n {
            cols.push(cur.clone());
            cur = &cur * &pi;
        }
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::InvariantViolation("singular multiplication matrix".into()))?;
            m.swap(col, pivot);
            let pv = m[col][col].clone();
            for entry in m[col].iter_mut() {
                *entry = &*entry / &pv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= &factor * y;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|row| row[n].clone()).collect();
        Ok(FieldElement { params: self.params, coeffs })
    }

    /// Integer coordinates and a common denominator.
    fn integral_coords(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (nums, den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }
}

/// A unit (valuation 0) drawn from `rng`: the constant term is a random integer
/// prime to `p`, the other coordinates are small random integers.
pub fn random_unit_from<R: Rng>(params: FieldParams, rng: &mut R) -> FieldElement {
    let p = params.p as i64;
    let residue = rng.gen_range(1..p);
    let lift = rng.gen_range(0..p);
    let mut coeffs = vec![rat_int(residue + p * lift)];
    for _ in 1..params.ram {
        coeffs.push(rat_int(rng.gen_range(-p..=p)));
    }
    FieldElement { params, coeffs }
}

/// Deterministic random unit for a given seed.
pub fn random_unit(params: FieldParams, seed: u64) -> FieldElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unit_from(params, &mut rng)
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_params(rhs);
        FieldElement { params: self.params, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_params(rhs);
        FieldElement { params: self.params, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_params(rhs);
        let n = self.params.ram as usize;
        // Integer convolution over common denominators, normalized once.
        let (a, da) = self.integral_coords();
        let (b, db) = rhs.integral_coords();
        let mut low = vec![BigInt::zero(); n];
        let mut high = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if i + j < n {
                    low[i + j] += x * y;
                } else {
                    high[i + j - n] += x * y;
                }
            }
        }
        let p = BigInt::from(self.params.p);
        let den = da * db;
        let coeffs = low.into_iter().zip(high).map(|(l, h)| Rational::new(l + h * &p, den.clone())).collect();
        FieldElement { params: self.params, coeffs }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { params: self.params, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("({c})*pi"),
                _ => format!("({c})*pi^{e}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
