//! Valuation polygons: lower envelopes `lambda -> min_i (v_i + i * lambda)`.
//!
//! The envelope is computed from the lower convex hull of the points
//! `(i, v_i)`; a hull edge between `(i, v_i)` and `(j, v_j)` with `i < j` is
//! a break of the envelope at `lambda = (v_i - v_j) / (j - i)`. Left to right
//! in `lambda` the active slopes strictly decrease, so the envelope is
//! concave and `slope_left >= slope_right` everywhere.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::valued_field::{Rational, Valuation};

/// Where a polygon is considered to live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// All of `R`: root counts see every nonzero root.
    All,
    /// `lambda >= 0`.
    NonNegative,
    /// `lambda > 0`: root counts see only roots in the open unit disc.
    Positive,
}

impl Domain {
    pub fn contains(&self, lambda: &Rational) -> bool {
        match self {
            Domain::All => true,
            Domain::NonNegative => !lambda.is_negative(),
            Domain::Positive => lambda.is_positive(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::All => "all",
            Domain::NonNegative => "nonnegative",
            Domain::Positive => "positive",
        }
    }
}

/// An affine piece `intercept + slope * lambda` of an envelope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub slope: u32,
    pub intercept: Rational,
}

impl Segment {
    pub fn at(&self, lambda: &Rational) -> Rational {
        &self.intercept + lambda * Rational::from_integer(self.slope.into())
    }
}

/// A breakpoint of the envelope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub lambda: Rational,
    pub value: Rational,
}

#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    domain: Domain,
    lines: Vec<(Valuation, u32)>,
    /// Active pieces restricted to the domain, in order of decreasing slope.
    hull: Vec<Segment>,
    /// `breaks[k]` separates `hull[k]` and `hull[k + 1]`.
    breaks: Vec<Vertex>,
}

/// Equality of envelopes on the domain, not of input lines.
impl PartialEq for NewtonPolygon {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.hull == other.hull
    }
}

impl Eq for NewtonPolygon {}

fn cross(o: &(u32, Rational), a: &(u32, Rational), b: &(u32, Rational)) -> Rational {
    let ax = Rational::from_integer((a.0 as i64 - o.0 as i64).into());
    let bx = Rational::from_integer((b.0 as i64 - o.0 as i64).into());
    ax * (&b.1 - &o.1) - (&a.1 - &o.1) * bx
}

impl NewtonPolygon {
    /// Lower envelope of the lines `v + slope * lambda` on `domain`. Lines with
    /// `v = inf` are ignored.
    pub fn from_lines(lines: &[(Valuation, u32)], domain: Domain) -> Result<Self> {
        let mut pts: Vec<(u32, Rational)> = Vec::new();
        let mut sorted: Vec<(u32, Rational)> =
            lines.iter().filter_map(|(v, i)| v.finite().map(|q| (*i, q.clone()))).collect();
        if sorted.is_empty() {
            return Err(Error::EmptyInput);
        }
        sorted.sort();
        for (i, v) in sorted {
            // Sorted, so the first entry for each slope carries the least value.
            if pts.last().is_some_and(|(j, _)| *j == i) {
                continue;
            }
            while pts.len() >= 2 && !cross(&pts[pts.len() - 2], &pts[pts.len() - 1], &(i, v.clone())).is_positive() {
                pts.pop();
            }
            pts.push((i, v));
        }
        pts.reverse();
        let full: Vec<Segment> = pts.into_iter().map(|(slope, intercept)| Segment { slope, intercept }).collect();
        let full_breaks: Vec<Rational> = full
            .windows(2)
            .map(|w| {
                (&w[1].intercept - &w[0].intercept)
                    / Rational::from_integer((w[0].slope as i64 - w[1].slope as i64).into())
            })
            .collect();
        let lo = match domain {
            Domain::All => 0,
            Domain::NonNegative | Domain::Positive => {
                full_breaks.iter().position(|b| b.is_positive()).unwrap_or(full_breaks.len())
            }
        };
        let hull = full[lo..].to_vec();
        let breaks = full_breaks[lo..]
            .iter()
            .zip(&hull)
            .map(|(b, seg)| Vertex { lambda: b.clone(), value: seg.at(b) })
            .collect();
        Ok(NewtonPolygon { domain, lines: lines.to_vec(), hull, breaks })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// The input lines as given.
    pub fn lines(&self) -> &[(Valuation, u32)] {
        &self.lines
    }

    pub fn segments(&self) -> &[Segment] {
        &self.hull
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.breaks
    }

    /// Break abscissae, increasing.
    pub fn breaks(&self) -> Vec<Rational> {
        self.breaks.iter().map(|v| v.lambda.clone()).collect()
    }

    /// Active slopes from left to right (strictly decreasing).
    pub fn slopes(&self) -> Vec<u32> {
        self.hull.iter().map(|s| s.slope).collect()
    }

    pub fn slope_before_first_break(&self) -> u32 {
        self.hull[0].slope
    }

    pub fn slope_after_last_break(&self) -> u32 {
        self.hull[self.hull.len() - 1].slope
    }

    fn check(&self, lambda: &Rational) -> Result<()> {
        if self.domain.contains(lambda) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(lambda.to_string()))
        }
    }

    fn finite_lines(&self) -> impl Iterator<Item = (&Rational, u32)> {
        self.lines.iter().filter_map(|(v, i)| v.finite().map(|q| (q, *i)))
    }

    pub fn eval(&self, lambda: &Rational) -> Result<Rational> {
        self.check(lambda)?;
        Ok(self.value_unchecked(lambda))
    }

    fn value_unchecked(&self, lambda: &Rational) -> Rational {
        self.finite_lines()
            .map(|(v, i)| v + lambda * Rational::from_integer(i.into()))
            .min()
            .expect("at least one finite line")
    }

    fn minimizing_slopes(&self, lambda: &Rational) -> (u32, u32) {
        let value = self.value_unchecked(lambda);
        let mut lo = u32::MAX;
        let mut hi = 0;
        for (v, i) in self.finite_lines() {
            if v + lambda * Rational::from_integer(i.into()) == value {
                lo = lo.min(i);
                hi = hi.max(i);
            }
        }
        (hi, lo)
    }

    /// Left derivative `d^- v` at `lambda`.
    pub fn slope_left(&self, lambda: &Rational) -> Result<u32> {
        self.check(lambda)?;
        Ok(self.minimizing_slopes(lambda).0)
    }

    /// Right derivative `d^+ v` at `lambda`.
    pub fn slope_right(&self, lambda: &Rational) -> Result<u32> {
        self.check(lambda)?;
        Ok(self.minimizing_slopes(lambda).1)
    }

    /// Number of roots of valuation `lambda`, counted with multiplicity.
    pub fn root_count_at(&self, lambda: &Rational) -> Result<u32> {
        self.check(lambda)?;
        let (left, right) = self.minimizing_slopes(lambda);
        Ok(left - right)
    }

    /// Multiplicity of the root at `0`: the slope as `lambda -> +inf`.
    pub fn roots_at_infinity(&self) -> u32 {
        self.slope_after_last_break()
    }

    /// `(lambda, count)` for every valuation carrying roots inside the domain,
    /// not counting the root at 0.
    pub fn root_distribution(&self) -> Vec<(Rational, u32)> {
        let mut out: Vec<(Rational, u32)> = self
            .breaks
            .iter()
            .map(|v| (v.lambda.clone(), self.minimizing_slopes(&v.lambda)))
            .map(|(l, (a, b))| (l, a - b))
            .collect();
        // A break sitting on the closed end of `NonNegative` is not between
        // two kept pieces but still carries roots.
        if self.domain == Domain::NonNegative {
            let zero = Rational::zero();
            let (a, b) = self.minimizing_slopes(&zero);
            if a > b && out.first().is_none_or(|(l, _)| !l.is_zero()) {
                out.insert(0, (zero, a - b));
            }
        }
        out
    }

    /// Inverse of an increasing envelope on `lambda > 0`.
    pub fn invert(&self) -> Result<InverseProfile> {
        if self.domain == Domain::All {
            return Err(Error::NotInvertible("domain must be lambda > 0 or lambda >= 0".into()));
        }
        if let Some(s) = self.hull.iter().find(|s| s.slope == 0) {
            return Err(Error::NotInvertible(format!("constant piece with value {}", s.intercept)));
        }
        let mut pieces = Vec::with_capacity(self.hull.len());
        for (k, seg) in self.hull.iter().enumerate() {
            let (start, base) = if k == 0 {
                (seg.intercept.clone(), Rational::zero())
            } else {
                let v = &self.breaks[k - 1];
                (v.value.clone(), v.lambda.clone())
            };
            pieces.push(InversePiece { start, base, slope: Rational::new(1.into(), seg.slope.into()) });
        }
        Ok(InverseProfile { pieces })
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = self
            .hull
            .iter()
            .map(|s| match (s.intercept.is_zero(), s.slope) {
                (true, 1) => "l".to_string(),
                (true, i) => format!("{i}l"),
                (false, 0) => format!("{}", s.intercept),
                (false, 1) => format!("{} + l", s.intercept),
                (false, i) => format!("{} + {i}l", s.intercept),
            })
            .collect();
        if pieces.len() == 1 {
            write!(f, "{}", pieces[0])
        } else {
            write!(f, "min({})", pieces.join(", "))
        }
    }
}

/// One piece `lambda = base + slope * (mu - start)` of an inverse profile.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InversePiece {
    pub start: Rational,
    pub base: Rational,
    pub slope: Rational,
}

/// The inverse `mu -> lambda` of an increasing valuation polygon: convex,
/// piecewise affine with slopes `1/i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InverseProfile {
    pieces: Vec<InversePiece>,
}

impl InverseProfile {
    /// Builds an inverse profile from its pieces; starts must increase and the
    /// pieces must join continuously.
    pub fn from_pieces(pieces: Vec<InversePiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyInput);
        }
        for w in pieces.windows(2) {
            let joined = &w[0].base + &w[0].slope * (&w[1].start - &w[0].start);
            if w[1].start <= w[0].start || joined != w[1].base {
                return Err(Error::NotInvertible("pieces do not join".into()));
            }
        }
        Ok(InverseProfile { pieces })
    }

    pub fn pieces(&self) -> &[InversePiece] {
        &self.pieces
    }

    /// Left end of the domain (`mu` must be strictly larger).
    pub fn start(&self) -> &Rational {
        &self.pieces[0].start
    }

    pub fn eval(&self, mu: &Rational) -> Result<Rational> {
        if mu <= self.start() {
            return Err(Error::OutOfDomain(mu.to_string()));
        }
        let piece = self.pieces.iter().rev().find(|p| &p.start < mu).expect("mu is past the first start");
        Ok(&piece.base + &piece.slope * (mu - &piece.start))
    }

    /// Back to a valuation polygon on `lambda > 0`; every slope must be `1/i`.
    pub fn invert(&self) -> Result<NewtonPolygon> {
        let mut lines = Vec::with_capacity(self.pieces.len());
        for piece in &self.pieces {
            if !piece.slope.is_positive() || !piece.slope.numer().is_one() {
                return Err(Error::NotInvertible(format!("slope {} is not 1/i", piece.slope)));
            }
            let i: u32 = piece
                .slope
                .denom()
                .try_into()
                .map_err(|_| Error::NotInvertible("slope denominator too large".into()))?;
            let intercept = &piece.start - &piece.base * Rational::from_integer(i.into());
            lines.push((Valuation::Finite(intercept), i));
        }
        NewtonPolygon::from_lines(&lines, Domain::Positive)
    }
}
