//! Fibers of a disc morphism over rational points and the count function
//! `N(mu) = #f^{-1}(zeta_{c, p^-mu})`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::disc_morphism::{DiscMorphism, DiscPoint};
use crate::error::{Error, Result};
use crate::polynomial::Poly;
use crate::valued_field::{rat_int, FieldElement, Rational, Valuation};

/// A morphism together with the complete list of preimages of `center`,
/// repeated according to multiplicity.
#[derive(Clone, Debug)]
pub struct FiberData {
    morphism: DiscMorphism,
    center: FieldElement,
    roots: Vec<FieldElement>,
}

impl FiberData {
    pub fn morphism(&self) -> &DiscMorphism {
        &self.morphism
    }

    pub fn center(&self) -> &FieldElement {
        &self.center
    }

    pub fn roots(&self) -> &[FieldElement] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.morphism.degree()
    }
}

/// Checks that `roots` is exactly the fiber of `f` over `center`: `d` roots in
/// the open disc, each mapping to `center`, and `f - center` equal to the
/// leading coefficient times `prod (T - r_i)`.
pub fn validate_fiber(f: &DiscMorphism, center: FieldElement, roots: Vec<FieldElement>) -> Result<FiberData> {
    let d = f.degree();
    if roots.len() != d {
        return Err(Error::WrongCount(format!("expected {d} roots, got {}", roots.len())));
    }
    for (index, r) in roots.iter().enumerate() {
        if r.valuation() <= Valuation::zero() {
            return Err(Error::RootOutsideDisc { index });
        }
    }
    for (index, r) in roots.iter().enumerate() {
        if f.evaluate(r) != center {
            return Err(Error::RootMismatch { index });
        }
    }
    let params = f.params();
    let lhs = f.poly().sub(&Poly::constant(center.clone()));
    let rhs = Poly::from_roots(params, &roots, &f.poly().leading());
    if lhs != rhs {
        return Err(Error::WrongCount("roots do not account for the whole fiber".into()));
    }
    Ok(FiberData { morphism: f.clone(), center, roots })
}

fn check_target(mu: &Rational) -> Result<()> {
    if mu.is_positive() {
        Ok(())
    } else {
        Err(Error::BadLambda(mu.to_string()))
    }
}

/// The `d` points `zeta_{r_i, lambda_i}` over `zeta_{c, p^-mu}`, one per root,
/// before merging equal points.
pub fn preimage_points(fd: &FiberData, mu: &Rational) -> Result<Vec<DiscPoint>> {
    check_target(mu)?;
    fd.roots
        .iter()
        .map(|r| {
            let lambda = fd.morphism.profile(r)?.invert()?.eval(mu)?;
            DiscPoint::new(r.clone(), Valuation::Finite(lambda))
        })
        .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    /// Class representative of every element, in first-seen order.
    fn classes(&mut self) -> Vec<usize> {
        let mut reps = Vec::new();
        for i in 0..self.parent.len() {
            if self.find(i) == i {
                reps.push(i);
            }
        }
        reps
    }
}

/// Distinct preimage points, each with the indices of the roots under it.
fn distinct_preimages(fd: &FiberData, mu: &Rational) -> Result<Vec<(DiscPoint, Vec<usize>)>> {
    let points = preimage_points(fd, mu)?;
    let mut uf = UnionFind::new(points.len());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                uf.union(i, j);
            }
        }
    }
    let reps = uf.classes();
    let mut out: Vec<(DiscPoint, Vec<usize>)> = reps.iter().map(|&r| (points[r].clone(), Vec::new())).collect();
    for i in 0..points.len() {
        let root = uf.find(i);
        let k = reps.iter().position(|&r| r == root).expect("every root has a class");
        out[k].1.push(i);
    }
    Ok(out)
}

/// `N(mu)`: the number of distinct preimages of `zeta_{c, p^-mu}`.
pub fn count_at(fd: &FiberData, mu: &Rational) -> Result<usize> {
    Ok(distinct_preimages(fd, mu)?.len())
}

/// A nondecreasing step function of `mu > 0`: `values[0]` on `(0, jumps[0]]`,
/// `values[k]` on `(jumps[k-1], jumps[k]]`, and the last value beyond the
/// last jump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountFunction {
    jumps: Vec<Rational>,
    values: Vec<usize>,
}

impl CountFunction {
    pub fn new(jumps: Vec<Rational>, values: Vec<usize>) -> Result<Self> {
        if values.len() != jumps.len() + 1 {
            return Err(Error::InconsistentCount(format!(
                "{} jumps need {} values, got {}",
                jumps.len(),
                jumps.len() + 1,
                values.len()
            )));
        }
        if jumps.first().is_some_and(|j| !j.is_positive()) || jumps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InconsistentCount("jumps must be positive and increasing".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InconsistentCount("values must increase at every jump".into()));
        }
        Ok(CountFunction { jumps, values })
    }

    pub fn constant(value: usize) -> Self {
        CountFunction { jumps: Vec::new(), values: vec![value] }
    }

    pub fn jumps(&self) -> &[Rational] {
        &self.jumps
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value_at(&self, mu: &Rational) -> usize {
        let k = self.jumps.iter().take_while(|j| *j < mu).count();
        self.values[k]
    }
}

/// The exact count function of a fiber. Candidate jumps are the images of
/// the pairwise root distances; values are read off with `count_at`.
pub fn count_function(fd: &FiberData) -> Result<CountFunction> {
    let mut candidates: Vec<Rational> = Vec::new();
    for (i, ri) in fd.roots.iter().enumerate() {
        for rj in &fd.roots[i + 1..] {
            if let Valuation::Finite(delta) = (ri - rj).valuation() {
                candidates.push(fd.morphism.image_lambda(ri, &delta)?);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let Some(first) = candidates.first() else {
        return Ok(CountFunction::constant(count_at(fd, &rat_int(1))?));
    };
    let mut jumps = Vec::new();
    let mut values = vec![count_at(fd, first)?];
    for (k, c) in candidates.iter().enumerate() {
        let probe = match candidates.get(k + 1) {
            Some(next) => (c + next) / rat_int(2),
            None => c + Rational::one(),
        };
        let value = count_at(fd, &probe)?;
        if value != *values.last().expect("nonempty") {
            jumps.push(c.clone());
            values.push(value);
        }
    }
    CountFunction::new(jumps, values)
}

#[derive(Clone, Debug)]
pub struct MultSumReport {
    pub mu: Rational,
    /// Distinct preimages with their multiplicities.
    pub points: Vec<(DiscPoint, u32)>,
    pub total: u32,
    /// The common multiplicity, when all are equal.
    pub uniform: Option<u32>,
}

/// Checks that multiplicities over the distinct preimages of
/// `zeta_{c, p^-mu}` add up to the degree, and that the number of preimages is
/// `d / nu` when all multiplicities equal `nu`.
pub fn check_mult_sum(fd: &FiberData, mu: &Rational) -> Result<MultSumReport> {
    let d = fd.degree() as u32;
    let mut points = Vec::new();
    for (pt, _) in distinct_preimages(fd, mu)? {
        let nu = fd.morphism.multiplicity(&pt)?;
        points.push((pt, nu));
    }
    let total: u32 = points.iter().map(|(_, nu)| nu).sum();
    if total != d {
        return Err(Error::InvariantViolation(format!("multiplicities at {mu} add up to {total}, degree is {d}")));
    }
    let first = points[0].1;
    let uniform = points.iter().all(|(_, nu)| *nu == first).then_some(first);
    if let Some(nu) = uniform {
        if points.len() as u32 * nu != d {
            return Err(Error::InvariantViolation(format!(
                "{} preimages of multiplicity {nu} at {mu}, degree is {d}",
                points.len()
            )));
        }
    }
    Ok(MultSumReport { mu: mu.clone(), points, total, uniform })
}

fn inverse_mod(b: &BigInt, m: &BigInt) -> BigInt {
    let e = b.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Drops terms of valuation `>= k`: each `p`-integral coordinate is replaced
/// by an integer congruent to it modulo `p^k`.
fn truncate(x: &FieldElement, k: u32) -> FieldElement {
    let params = x.params();
    let p = BigInt::from(params.p());
    if x.coeffs().iter().any(|c| c.denom().is_multiple_of(&p)) {
        return x.clone();
    }
    let m = num_traits::pow(p, k as usize);
    let coeffs = x
        .coeffs()
        .iter()
        .map(|c| {
            let inv = inverse_mod(c.denom(), &m);
            Rational::from_integer((c.numer() * inv).mod_floor(&m))
        })
        .collect();
    FieldElement::from_coeffs(params, coeffs).expect("same length")
}

/// Newton iteration for `f(x) = c` from `approx`, stopping once
/// `v(f(x) - c) >= target`. Never produces roots out of nothing: the
/// starting point must already be in the basin of a simple root.
pub fn newton_refine(f: &Poly, c: &FieldElement, approx: &FieldElement, target: &Rational) -> Result<FieldElement> {
    let df = f.derivative();
    // Intermediate results only need to be exact to well past the target.
    let keep = target.ceil().to_integer().try_into().unwrap_or(0u32).saturating_add(2);
    let mut x = approx.clone();
    for _ in 0..64 {
        let residual = &f.evaluate(&x) - c;
        if residual.valuation().cmp_rational(target).is_ge() {
            return Ok(x);
        }
        let step = residual.div(&df.evaluate(&x))?;
        x = truncate(&(&x - &step), keep);
    }
    Err(Error::NoConvergence(target.to_string()))
}
