//! Multiradius of the pushforward of the trivial connection along a disc
//! morphism, read off from fiber count functions.

use num_traits::{ToPrimitive, Zero};

use crate::disc_morphism::DiscMorphism;
use crate::error::{Error, Result};
use crate::fiber::{CountFunction, FiberData};
use crate::polygon::{InversePiece, InverseProfile, NewtonPolygon};
use crate::radiality::{radial_certificate, RadialStatus};
use crate::valued_field::{rat_int, Rational, Valuation};

/// Radii `p^-lambda`, nondecreasing; stored as `lambda`, so entries are
/// nonincreasing in `lambda`. `lambda = 0` is radius 1 and `lambda = inf`
/// radius 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiradius {
    entries: Vec<Valuation>,
}

impl Multiradius {
    /// Sorts `entries` into nondecreasing radius order.
    pub fn new(mut entries: Vec<Valuation>) -> Self {
        entries.sort_by(|a, b| b.cmp(a));
        Multiradius { entries }
    }

    pub fn entries(&self) -> &[Valuation] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of entries equal to radius 1.
    pub fn ones(&self) -> usize {
        self.entries.iter().filter(|e| **e == Valuation::zero()).count()
    }

    /// Decimal radii `p^-lambda`, for display.
    pub fn radii(&self, p: u32) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| match e {
                Valuation::Infinite => 0.0,
                Valuation::Finite(l) => (p as f64).powf(-l.to_f64().unwrap_or(f64::INFINITY)),
            })
            .collect()
    }
}

/// Block formula: for each jump `mu_k` (from the largest down) the radius
/// `p^-mu_k` repeated by the size of the jump, then a single radius 1. Fibers
/// with repeated roots get `d - N(inf)` extra entries of radius 0.
pub fn multiradius_from_count(nf: &CountFunction, d: usize) -> Result<Multiradius> {
    let values = nf.values();
    if values[0] != 1 {
        return Err(Error::InconsistentCount(format!("count near the boundary is {}, not 1", values[0])));
    }
    let last = *values.last().expect("count functions have a value");
    if last > d {
        return Err(Error::InconsistentCount(format!("{last} preimages exceed degree {d}")));
    }
    let mut entries = vec![Valuation::Infinite; d - last];
    for (k, jump) in nf.jumps().iter().enumerate().rev() {
        let size = values[k + 1] - values[k];
        entries.extend(std::iter::repeat_n(Valuation::Finite(jump.clone()), size));
    }
    entries.push(Valuation::zero());
    Ok(Multiradius { entries })
}

/// Number of connected components of `f^{-1}(D(c, p^-mu)^-)`: the open discs
/// `D(r_i, p^-lambda_i)^-` counted up to equality.
fn open_components(fd: &FiberData, mu: &Rational) -> Result<usize> {
    let lambdas: Vec<Rational> =
        fd.roots().iter().map(|r| fd.morphism().profile(r)?.invert()?.eval(mu)).collect::<Result<_>>()?;
    let roots = fd.roots();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..roots.len() {
        let same = |j: &usize| {
            lambdas[*j] == lambdas[i] && (&roots[i] - &roots[*j]).valuation() > Valuation::Finite(lambdas[i].clone())
        };
        if !reps.iter().any(same) {
            reps.push(i);
        }
    }
    Ok(reps.len())
}

/// `R_i = sup { s : #components of f^{-1}(D(c, s)^-) >= d - i + 1 }`, with the
/// supremum taken over every radius where two preimage discs can separate.
pub fn multiradius_bruteforce(fd: &FiberData) -> Result<Multiradius> {
    let d = fd.degree();
    let roots = fd.roots();
    let mut candidates = Vec::new();
    for ri in roots {
        for rj in roots {
            if let Valuation::Finite(delta) = (ri - rj).valuation() {
                candidates.push(fd.morphism().image_lambda(ri, &delta)?);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let counts: Vec<(Rational, usize)> =
        candidates.iter().map(|c| Ok((c.clone(), open_components(fd, c)?))).collect::<Result<_>>()?;
    let near_boundary = match candidates.first() {
        Some(c) => open_components(fd, &(c / rat_int(2)))?,
        None => open_components(fd, &rat_int(1))?,
    };
    let mut entries = Vec::with_capacity(d);
    for i in 1..=d {
        let need = d - i + 1;
        let entry = if need <= near_boundary {
            Valuation::zero()
        } else {
            counts.iter().find(|(_, n)| *n >= need).map_or(Valuation::Infinite, |(c, _)| Valuation::Finite(c.clone()))
        };
        entries.push(entry);
    }
    Ok(Multiradius { entries })
}

/// Concatenation, resorted into nondecreasing radius order.
pub fn star_product(u: &Multiradius, v: &Multiradius) -> Multiradius {
    Multiradius::new(u.entries.iter().chain(&v.entries).cloned().collect())
}

/// Star product of the multiradii of several disc components.
pub fn multiradius_multi_component(parts: &[(CountFunction, usize)]) -> Result<Multiradius> {
    let mut acc = Multiradius { entries: Vec::new() };
    for (nf, d) in parts {
        acc = star_product(&acc, &multiradius_from_count(nf, *d)?);
    }
    Ok(acc)
}

/// Recovers the profile of a radial morphism from its count function: the
/// source `lambda` at target `mu` is `int_0^mu N / d`, and every slope `N / d`
/// must be `1 / i` for an integer `i`.
pub fn reconstruct_profile_from_count(nf: &CountFunction, d: usize) -> Result<NewtonPolygon> {
    let d_big = rat_int(d as i64);
    let mut pieces = Vec::new();
    let mut start = Rational::zero();
    let mut base = Rational::zero();
    for (k, &n) in nf.values().iter().enumerate() {
        if n == 0 || !d.is_multiple_of(n) {
            return Err(Error::NotRealizable(format!("slope {n}/{d} is not 1/i")));
        }
        let slope = rat_int(n as i64) / &d_big;
        if let Some(end) = nf.jumps().get(k) {
            let next_base = &base + &slope * (end - &start);
            pieces.push(InversePiece { start: start.clone(), base: base.clone(), slope });
            start = end.clone();
            base = next_base;
        } else {
            pieces.push(InversePiece { start: start.clone(), base: base.clone(), slope });
        }
    }
    InverseProfile::from_pieces(pieces)?.invert()
}

#[derive(Clone, Debug)]
pub struct MainTheoremReport {
    pub status: RadialStatus,
    pub multiradii: Vec<Multiradius>,
    pub all_equal: bool,
}

/// Compares the radiality verdict with per-fiber multiradii: a certified
/// radial morphism must have the same multiradius over every fiber.
pub fn check_main_theorem_disc(f: &DiscMorphism, fibers: &[FiberData]) -> Result<MainTheoremReport> {
    if fibers.len() < 2 {
        return Err(Error::InsufficientFibers(fibers.len()));
    }
    if fibers.iter().any(|fd| fd.morphism() != f) {
        return Err(Error::InvariantViolation("fiber belongs to a different morphism".into()));
    }
    let status = radial_certificate(f).status;
    let multiradii: Vec<Multiradius> = fibers
        .iter()
        .map(|fd| multiradius_from_count(&crate::fiber::count_function(fd)?, f.degree()))
        .collect::<Result<_>>()?;
    let all_equal = multiradii.windows(2).all(|w| w[0] == w[1]);
    if status == RadialStatus::CertifiedRadial && !all_equal {
        return Err(Error::InvariantViolation("certified radial morphism with differing multiradii".into()));
    }
    Ok(MainTheoremReport { status, multiradii, all_equal })
}
