//! Radiality: does the local polygon `v_a(f, .)` depend on the center `a`?
//!
//! Weak n-radiality is only ever refuted or supported by sampling. Full
//! radiality has an exact certificate: with `P = v_0(f, .)` and
//! `g_i = f^[i]`,
//!
//! * (C1) for every slope `i` of `P`, the constant term of `g_i` has minimal
//!   valuation among its coefficients, so `v(g_i(a))` is constant on the disc;
//! * (C2) for every `i`, `min_j v(coeff_j(g_i)) + i * lambda >= P(lambda)`.
//!
//! Together they force `v_a(f, .) = P` for every `a`: the lines of `P` keep
//! their intercepts and every other line stays on or above `P`. When the
//! certificate fails, sampled centers are searched for a differing polygon.

use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::disc_morphism::{check_in_disc, DiscMorphism};
use crate::error::{Error, Result};
use crate::polygon::NewtonPolygon;
use crate::valued_field::{random_unit_from, FieldElement, FieldParams, Rational, Valuation};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 1729;

/// Sample centers: `0` and `u * pi^j` for `j = 1..=min(3N, 36)`, with `u = 1`
/// and three seeded random units.
pub fn default_probes(params: FieldParams, seed: u64) -> Vec<FieldElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut units = vec![FieldElement::one(params)];
    units.extend((0..3).map(|_| random_unit_from(params, &mut rng)));
    let top = (3 * params.ram()).min(36);
    let mut out = vec![FieldElement::zero(params)];
    for j in 1..=top {
        let step = FieldElement::pi_pow(params, j);
        out.extend(units.iter().map(|u| u * &step));
    }
    out
}

/// Centers used when hunting for a witness of non-radiality: the default
/// probes and every residue class representative times `pi^j`.
fn witness_candidates(params: FieldParams, seed: u64) -> Vec<FieldElement> {
    let mut out = default_probes(params, seed);
    for j in 1..=(3 * params.ram()).min(36) {
        let step = FieldElement::pi_pow(params, j);
        for u in 2..params.p() {
            out.push(&FieldElement::from_int(params, u.into()) * &step);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRadialReport {
    pub n: usize,
    /// `i_1 > i_2 > ...`, at most `n` entries; `i_1 = d`.
    pub dominating_slopes: Vec<u32>,
    /// The first `n - 1` breaks, shared by all probes.
    pub shared_breaks: Vec<Rational>,
    /// Smallest `n`-th break over the probes (the border of n-radiality in
    /// valuation coordinates); `inf` when no probe has an `n`-th break.
    pub border: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NRadialOutcome {
    Consistent(NRadialReport),
    /// Two centers whose polygons differ in the first `n` slopes or first
    /// `n - 1` breaks.
    Refuted {
        a: FieldElement,
        b: FieldElement,
    },
}

/// First `n` slopes and first `n - 1` breaks.
type PrefixKey = (Vec<u32>, Vec<Rational>);

fn prefix_key(poly: &NewtonPolygon, n: usize) -> PrefixKey {
    let slopes = poly.slopes();
    let breaks = poly.breaks();
    let ns = n.min(slopes.len());
    let nb = (n - 1).min(breaks.len());
    (slopes[..ns].to_vec(), breaks[..nb].to_vec())
}

/// Compares the first `n` slopes and first `n - 1` breaks of the local
/// polygons at `probes`. Agreement is evidence, not proof.
pub fn weak_n_radial(f: &DiscMorphism, n: usize, probes: &[FieldElement]) -> Result<NRadialOutcome> {
    assert!(n >= 1, "n starts at 1");
    if probes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut first: Option<(FieldElement, PrefixKey)> = None;
    let mut border = Valuation::Infinite;
    for a in probes {
        let poly = f.local_polygon(a)?;
        let key = prefix_key(&poly, n);
        if let Some(b) = poly.breaks().get(n - 1) {
            border = border.min(Valuation::Finite(b.clone()));
        }
        match &first {
            None => first = Some((a.clone(), key)),
            Some((a0, k0)) if *k0 != key => {
                return Ok(NRadialOutcome::Refuted { a: a0.clone(), b: a.clone() });
            }
            Some(_) => {}
        }
    }
    let (_, (dominating_slopes, shared_breaks)) = first.expect("probes are nonempty");
    Ok(NRadialOutcome::Consistent(NRadialReport { n, dominating_slopes, shared_breaks, border }))
}

fn require_weak(f: &DiscMorphism, n: usize, probes: &[FieldElement]) -> Result<()> {
    match weak_n_radial(f, n, probes)? {
        NRadialOutcome::Consistent(_) => Ok(()),
        NRadialOutcome::Refuted { .. } => Err(Error::NotWeaklyNRadial(n)),
    }
}

/// `theta_n(a)` in valuation coordinates: the `n`-th break of `v_a(f, .)`, or
/// `inf` when there is none.
pub fn theta_n(f: &DiscMorphism, a: &FieldElement, n: usize, probes: &[FieldElement]) -> Result<Valuation> {
    check_in_disc(a)?;
    require_weak(f, n, probes)?;
    let poly = f.local_polygon(a)?;
    Ok(poly.breaks().get(n - 1).cloned().map_or(Valuation::Infinite, Valuation::Finite))
}

/// `theta_n(a)` from Hasse derivative values: with `i_n` the `n`-th slope and
/// `v_i = v(f^[i](a))`, the minimum of `(v_i - v_{i_n}) / (i_n - i)` over
/// `i < i_n`.
pub fn theta_n_formula(f: &DiscMorphism, a: &FieldElement, n: usize) -> Result<Valuation> {
    let poly = f.local_polygon(a)?;
    let slopes = poly.slopes();
    let Some(&i_n) = slopes.get(n - 1) else {
        return Ok(Valuation::Infinite);
    };
    let g = f.poly().recenter(a);
    let v_n = g.coeff(i_n as usize).valuation().into_finite().expect("active line is finite");
    let mut best = Valuation::Infinite;
    for i in 1..i_n {
        if let Valuation::Finite(v_i) = g.coeff(i as usize).valuation() {
            let t = (v_i - &v_n) / Rational::from_integer((i_n - i).into());
            best = best.min(Valuation::Finite(t));
        }
    }
    Ok(best)
}

/// `i_{n+1}(a)`: the slope right after the `n`-th break.
pub fn i_next(f: &DiscMorphism, a: &FieldElement, n: usize, probes: &[FieldElement]) -> Result<u32> {
    match theta_n(f, a, n, probes)? {
        Valuation::Infinite => Err(Error::ThetaIsZero(n)),
        Valuation::Finite(theta) => f.local_polygon(a)?.slope_right(&theta),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialStatus {
    CertifiedRadial,
    Refuted,
    Undetermined,
}

impl RadialStatus {
    pub fn name(&self) -> &'static str {
        match self {
            RadialStatus::CertifiedRadial => "CertifiedRadial",
            RadialStatus::Refuted => "Refuted",
            RadialStatus::Undetermined => "Undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RadialityVerdict {
    pub status: RadialStatus,
    /// Two centers with different local polygons (`Refuted` only).
    pub witness: Option<(FieldElement, FieldElement)>,
    /// The polygon at 0; the shared profile when certified.
    pub profile: NewtonPolygon,
    /// Failed certificate conditions, one line each.
    pub failures: Vec<String>,
    /// Number of centers examined by the witness search.
    pub probes_checked: usize,
}

/// Checks (C1) and (C2) against `p = v_0(f, .)`; returns the failures.
fn certificate_failures(f: &DiscMorphism, p: &NewtonPolygon) -> Vec<String> {
    let mut failures = Vec::new();
    let active = p.slopes();
    let start = p.segments()[0].at(&Rational::zero());
    let last_slope = p.slope_after_last_break();
    for i in 1..=f.degree() as u32 {
        let vals = f.poly().hasse_derivative(i as usize).coeff_valuations();
        if active.contains(&i) {
            let c0 = &vals[0];
            if let Some(j) = vals.iter().skip(1).position(|v| v < c0) {
                failures.push(format!("C1: coefficient {} of f^[{i}] is below the constant term", j + 1));
            }
        }
        let Some(m) = vals.iter().min().and_then(|v| v.finite()).cloned() else {
            continue;
        };
        let line = |l: &Rational| &m + l * Rational::from_integer(i.into());
        if line(&Rational::zero()) < start {
            failures.push(format!("C2: line {m} + {i}l is below the polygon near 0"));
            continue;
        }
        if let Some(v) = p.vertices().iter().find(|v| line(&v.lambda) < v.value) {
            failures.push(format!("C2: line {m} + {i}l is below the polygon at {}", v.lambda));
            continue;
        }
        if i < last_slope {
            failures.push(format!("C2: line {m} + {i}l falls below the polygon for large lambda"));
        }
    }
    failures
}

pub fn radial_certificate(f: &DiscMorphism) -> RadialityVerdict {
    radial_certificate_with_seed(f, DEFAULT_SEED)
}

pub fn radial_certificate_with_seed(f: &DiscMorphism, seed: u64) -> RadialityVerdict {
    let params = f.params();
    let zero = FieldElement::zero(params);
    let profile = f.local_polygon(&zero).expect("0 is in the disc");
    let failures = certificate_failures(f, &profile);
    if failures.is_empty() {
        return RadialityVerdict {
            status: RadialStatus::CertifiedRadial,
            witness: None,
            profile,
            failures,
            probes_checked: 0,
        };
    }
    let candidates = witness_candidates(params, seed);
    for (k, a) in candidates.iter().enumerate() {
        let local = f.local_polygon(a).expect("candidates lie in the disc");
        if local != profile {
            assert_ne!(f.local_polygon(&zero).unwrap(), f.local_polygon(a).unwrap());
            return RadialityVerdict {
                status: RadialStatus::Refuted,
                witness: Some((zero, a.clone())),
                profile,
                failures,
                probes_checked: k + 1,
            };
        }
    }
    RadialityVerdict {
        status: RadialStatus::Undetermined,
        witness: None,
        profile,
        failures,
        probes_checked: candidates.len(),
    }
}

/// The polygon shared by all centers; fails unless the certificate holds.
pub fn profile_of_radial(f: &DiscMorphism) -> Result<NewtonPolygon> {
    let verdict = radial_certificate(f);
    match verdict.status {
        RadialStatus::CertifiedRadial => Ok(verdict.profile),
        _ => Err(Error::NotCertified),
    }
}
