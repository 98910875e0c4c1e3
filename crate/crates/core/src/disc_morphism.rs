//! Finite polynomial self-maps of the open unit disc and their per-point
//! invariants.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polygon::{Domain, NewtonPolygon};
use crate::polynomial::Poly;
use crate::valued_field::{random_unit_from, FieldElement, FieldParams, Rational, Valuation};

/// A polynomial `f = a_1 T + ... + a_d T^d` with `v(a_d) = 0` and
/// `v(a_i) > 0` for `0 < i < d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscMorphism {
    f: Poly,
    degree: usize,
}

/// The point `zeta_{center, p^-lambda}`; `lambda = inf` is the rational point
/// `center` itself.
#[derive(Clone, Debug)]
pub struct DiscPoint {
    pub center: FieldElement,
    pub lambda: Valuation,
}

impl DiscPoint {
    pub fn new(center: FieldElement, lambda: Valuation) -> Result<Self> {
        check_in_disc(&center)?;
        if let Valuation::Finite(l) = &lambda {
            if l.is_negative() {
                return Err(Error::BadLambda(l.to_string()));
            }
        }
        Ok(DiscPoint { center, lambda })
    }

    pub fn rational(center: FieldElement) -> Result<Self> {
        Self::new(center, Valuation::Infinite)
    }
}

impl PartialEq for DiscPoint {
    fn eq(&self, other: &Self) -> bool {
        self.lambda == other.lambda && (&self.center - &other.center).valuation() >= self.lambda
    }
}

impl Eq for DiscPoint {}

pub(crate) fn check_in_disc(a: &FieldElement) -> Result<()> {
    match a.valuation() {
        Valuation::Finite(v) if !v.is_positive() => Err(Error::NotInDisc(v.to_string())),
        _ => Ok(()),
    }
}

fn check_lambda(lambda: &Rational) -> Result<()> {
    if lambda.is_positive() {
        Ok(())
    } else {
        Err(Error::BadLambda(lambda.to_string()))
    }
}

fn finite_lambda(pt: &DiscPoint) -> Result<&Rational> {
    match &pt.lambda {
        Valuation::Finite(l) => {
            check_lambda(l)?;
            Ok(l)
        }
        Valuation::Infinite => Err(Error::BadLambda("inf".into())),
    }
}

impl DiscMorphism {
    pub fn validate(f: Poly) -> Result<Self> {
        let degree = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::NotFinite("inf".into())),
        };
        if !f.coeff(0).is_zero() {
            return Err(Error::NotCompatible);
        }
        let lead = f.leading().valuation();
        if lead != Valuation::zero() {
            return Err(Error::NotFinite(lead.to_string()));
        }
        for i in 1..degree {
            if let Valuation::Finite(v) = f.coeff(i).valuation() {
                if v.is_negative() {
                    return Err(Error::NegativeValuation(v.to_string()));
                }
                if v.is_zero() {
                    return Err(Error::BoundaryZeros(i));
                }
            }
        }
        Ok(DiscMorphism { f, degree })
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn params(&self) -> FieldParams {
        self.f.params()
    }

    pub fn evaluate(&self, x: &FieldElement) -> FieldElement {
        self.f.evaluate(x)
    }

    /// `v_a(f, .)`: envelope of `v(f^[i](a)) + i * lambda` on `lambda > 0`.
    pub fn local_polygon(&self, a: &FieldElement) -> Result<NewtonPolygon> {
        check_in_disc(a)?;
        let g = self.f.recenter(a);
        let lines: Vec<(Valuation, u32)> = (1..=self.degree).map(|i| (g.coeff(i).valuation(), i as u32)).collect();
        NewtonPolygon::from_lines(&lines, Domain::Positive)
    }

    /// The profile at `a` in valuation coordinates; invert it to go from
    /// image radii back to source radii.
    pub fn profile(&self, a: &FieldElement) -> Result<NewtonPolygon> {
        self.local_polygon(a)
    }

    /// Ramification index at `pt`: the left slope of the local polygon.
    pub fn multiplicity(&self, pt: &DiscPoint) -> Result<u32> {
        let l = finite_lambda(pt)?;
        self.local_polygon(&pt.center)?.slope_left(l)
    }

    /// Degree of `f` on the open disc `D(center, p^-lambda)`: the right slope.
    pub fn restriction_degree(&self, pt: &DiscPoint) -> Result<u32> {
        let l = finite_lambda(pt)?;
        self.local_polygon(&pt.center)?.slope_right(l)
    }

    /// `mu` with `f(D(a, p^-lambda)) = D(f(a), p^-mu)`.
    pub fn image_lambda(&self, a: &FieldElement, lambda: &Rational) -> Result<Rational> {
        check_lambda(lambda)?;
        self.local_polygon(a)?.eval(lambda)
    }

    /// True iff `f'` has no zero in the open unit disc.
    pub fn is_etale(&self) -> bool {
        let df = self.f.derivative();
        if df.coeff(0).is_zero() {
            return false;
        }
        let lines: Vec<(Valuation, u32)> =
            df.coeff_valuations().into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        let poly = NewtonPolygon::from_lines(&lines, Domain::All).expect("f' is nonzero");
        poly.root_distribution().iter().all(|(l, _)| !l.is_positive())
    }

    /// Sampled `min v(f(a + t) - f(a))` over `trials` points `t` with
    /// `v(t) = lambda`. Never below the polygon value; equal to it for generic
    /// samples.
    pub fn generic_eval_valuation(
        &self,
        a: &FieldElement,
        lambda: &Rational,
        seed: u64,
        trials: usize,
    ) -> Result<Valuation> {
        check_in_disc(a)?;
        check_lambda(lambda)?;
        let params = self.params();
        if !params.in_value_group(lambda) {
            return Err(Error::LambdaNotInValueGroup(lambda.to_string(), params.ram()));
        }
        let k = (lambda * Rational::from_integer(params.ram().into()))
            .to_integer()
            .to_u32()
            .ok_or_else(|| Error::BadLambda(lambda.to_string()))?;
        let step = FieldElement::pi_pow(params, k);
        let fa = self.f.evaluate(a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = Valuation::Infinite;
        for _ in 0..trials {
            let t = &random_unit_from(params, &mut rng) * &step;
            let v = (&self.f.evaluate(&(a + &t)) - &fa).valuation();
            best = best.min(v);
        }
        Ok(best)
    }
}

/// A random valid morphism of degree `d`: unit leading coefficient and each
/// middle coefficient either zero or a unit times `pi^k` with `k >= 1`.
pub fn random_disc_morphism<R: Rng>(params: FieldParams, d: usize, rng: &mut R) -> DiscMorphism {
    assert!(d >= 1);
    let mut coeffs = vec![FieldElement::zero(params)];
    for _ in 1..d {
        if rng.gen_bool(0.25) {
            coeffs.push(FieldElement::zero(params));
        } else {
            let k = rng.gen_range(1..=2 * params.ram());
            coeffs.push(&random_unit_from(params, rng) * &FieldElement::pi_pow(params, k));
        }
    }
    coeffs.push(random_unit_from(params, rng));
    DiscMorphism::validate(Poly::from_coeffs(params, coeffs)).expect("valid by construction")
}

/// A random point of the open disc: zero or a unit times `pi^k`, `k >= 1`.
pub fn random_disc_point<R: Rng>(params: FieldParams, rng: &mut R) -> FieldElement {
    if rng.gen_bool(0.1) {
        return FieldElement::zero(params);
    }
    let k = rng.gen_range(1..=3 * params.ram());
    &random_unit_from(params, rng) * &FieldElement::pi_pow(params, k)
}
