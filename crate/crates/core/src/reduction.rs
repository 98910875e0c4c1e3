//! Reduction at the Gauss point and the residual split `f~ = g(T^(p^r))`.
//!
//! The residue field of `K_N` is `F_p`, on which Frobenius is the identity,
//! so the Frobenius twist in the split is plain reindexing.

use crate::error::{Error, Result};
use crate::polynomial::{FpPoly, Poly};
use crate::valued_field::Valuation;

/// Coefficientwise residue of an integral polynomial whose leading
/// coefficient is a unit.
pub fn reduce_at_gauss(f: &Poly) -> Result<FpPoly> {
    let d = f.degree().ok_or(Error::ConstantInput)?;
    for (i, v) in f.coeff_valuations().iter().enumerate() {
        if *v < Valuation::zero() {
            return Err(Error::NotIntegral(i));
        }
    }
    if f.leading().valuation() != Valuation::zero() {
        return Err(Error::DegreeDrop);
    }
    let reduced = f.reduce_residue()?;
    debug_assert_eq!(reduced.degree(), Some(d));
    Ok(reduced)
}

/// Largest `r` with `f~` a polynomial in `T^(p^r)`, and the `g` with
/// `g(T^(p^r)) = f~`.
pub fn insep_sep_split(f_tilde: &FpPoly) -> Result<(u32, FpPoly)> {
    match f_tilde.degree() {
        None | Some(0) => return Err(Error::ConstantInput),
        Some(_) => {}
    }
    let p = f_tilde.p() as usize;
    let coeffs = f_tilde.coeffs();
    let mut r = 0;
    let mut step = 1usize;
    while coeffs.iter().enumerate().all(|(i, c)| *c == 0 || i % (step * p) == 0) {
        r += 1;
        step *= p;
    }
    let g: Vec<u32> = coeffs.iter().step_by(step).copied().collect();
    Ok((r, FpPoly::new(f_tilde.p(), g)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualClass {
    /// Purely inseparable reduction (`s = 1`).
    Radicial,
    /// Separable reduction (`i = 1`) whose derivative still vanishes somewhere.
    Separable,
    /// Separable reduction with constant nonzero derivative.
    Etale,
    /// Both parts nontrivial.
    Mixed,
}

impl ResidualClass {
    pub fn name(&self) -> &'static str {
        match self {
            ResidualClass::Radicial => "radicial",
            ResidualClass::Separable => "separable",
            ResidualClass::Etale => "etale",
            ResidualClass::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub f_tilde: FpPoly,
    pub r: u32,
    pub g: FpPoly,
    /// Degree of the separable part.
    pub s_deg: usize,
    /// Degree `p^r` of the inseparable part.
    pub i_deg: usize,
    pub class: ResidualClass,
    pub uniformly_ramified: bool,
}

/// Degrees and classification from a computed split.
pub fn classify(f_tilde: &FpPoly, r: u32, g: &FpPoly) -> ResidualReport {
    let s_deg = g.degree().expect("separable part is nonconstant");
    let i_deg = (f_tilde.p() as usize).pow(r);
    let uniformly_ramified = g.derivative().degree() == Some(0);
    let class = if i_deg == 1 && uniformly_ramified {
        ResidualClass::Etale
    } else if s_deg == 1 {
        ResidualClass::Radicial
    } else if i_deg == 1 {
        ResidualClass::Separable
    } else {
        ResidualClass::Mixed
    };
    ResidualReport { f_tilde: f_tilde.clone(), r, g: g.clone(), s_deg, i_deg, class, uniformly_ramified }
}

/// Reduction, split and classification in one step.
pub fn residual_report(f: &Poly) -> Result<ResidualReport> {
    let f_tilde = reduce_at_gauss(f)?;
    let (r, g) = insep_sep_split(&f_tilde)?;
    Ok(classify(&f_tilde, r, &g))
}
