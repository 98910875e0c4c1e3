//! Built-in fixtures with known radiality. Every fiber is constructed so that
//! it splits in `K_N` and is checked by `validate_fiber`.

use crate::disc_morphism::DiscMorphism;
use crate::error::Result;
use crate::fiber::{validate_fiber, FiberData};
use crate::json::Fixture;
use crate::polynomial::Poly;
use crate::radiality::RadialStatus;
use crate::valued_field::{rat, FieldElement, FieldParams};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub fixture: Fixture,
    pub expected: RadialStatus,
}

impl CorpusEntry {
    pub fn name(&self) -> &str {
        self.fixture.name.as_deref().unwrap_or("")
    }
}

fn int(params: FieldParams, n: i64) -> FieldElement {
    FieldElement::from_int(params, n)
}

fn entry(
    name: &str,
    f: Poly,
    fibers: Vec<(FieldElement, Vec<FieldElement>)>,
    expected: RadialStatus,
) -> Result<CorpusEntry> {
    let morphism = DiscMorphism::validate(f)?;
    let fibers =
        fibers.into_iter().map(|(c, roots)| validate_fiber(&morphism, c, roots)).collect::<Result<Vec<FiberData>>>()?;
    Ok(CorpusEntry { fixture: Fixture { name: Some(name.into()), morphism, fibers }, expected })
}

/// The full fiber of `f` through `b` when `f - f(b) = (T - b) * q` and `q`'s
/// roots are supplied.
fn fiber_through(f: &Poly, b: FieldElement, others: Vec<FieldElement>) -> (FieldElement, Vec<FieldElement>) {
    let c = f.evaluate(&b);
    let mut roots = vec![b];
    roots.extend(others);
    (c, roots)
}

/// `T^3 - pi^2 T` over `K_N`; every fiber through `b` splits when
/// `4 - pi^(N-2) b^2` is a square. On the conic `s^2 + pi^(N-2) b^2 = 4` the
/// line `s = 2 + m b` gives `b = -4m / (m^2 + pi^(N-2))`, and the other two
/// roots are `(-b +- pi s) / 2`.
fn cubic(name: &str, ram: u32, slopes: &[i64]) -> Result<CorpusEntry> {
    let p = FieldParams::new(3, ram)?;
    let pi = FieldElement::pi(p);
    let pi2 = &pi * &pi;
    let f = Poly::from_coeffs(p, vec![int(p, 0), -&pi2, int(p, 0), int(p, 1)]);
    let mut fibers = vec![(int(p, 0), vec![int(p, 0), pi.clone(), -&pi])];
    let tail = FieldElement::pi_pow(p, ram - 2);
    let half = rat(1, 2);
    for &m in slopes {
        let m = int(p, m);
        let b = (&int(p, -4) * &m).div(&(&(&m * &m) + &tail))?;
        let s = &int(p, 2) + &(&m * &b);
        let r1 = (&-&b + &(&pi * &s)).scale(&half);
        let r2 = (&-&b - &(&pi * &s)).scale(&half);
        fibers.push(fiber_through(&f, b, vec![r1, r2]));
    }
    entry(name, f, fibers, RadialStatus::CertifiedRadial)
}

/// `T^2 - pi T`: the fiber through `b` is `{b, pi - b}`, so the root distance
/// is `v(pi - 2b)` and changes with `b`.
fn quadratic(name: &str, prime: u32) -> Result<CorpusEntry> {
    let p = FieldParams::new(prime, 2)?;
    let pi = FieldElement::pi(p);
    let f = Poly::from_coeffs(p, vec![int(p, 0), -&pi, int(p, 1)]);
    let b = &pi.scale(&rat(1, 2)) + &int(p, prime as i64);
    let fibers = vec![(int(p, 0), vec![int(p, 0), pi.clone()]), fiber_through(&f, b.clone(), vec![&pi - &b])];
    entry(name, f, fibers, RadialStatus::Refuted)
}

/// `w (w + pi^7)` with `w = T (T - sigma)`, `sigma = pi + pi^6`, over `K_12`:
/// the fiber over 0 is `{0, pi^6, pi, pi + pi^6}` with two distance scales.
/// Fibers are cut out by lines `y = pi^6 + m s` through the point `(0, pi^6)`
/// of the conic `w(s) + w(y) = -pi^7`, giving roots `s`, `sigma - s`, `y` and
/// `sigma - y` with `s = (sigma (1 + m) - 2 m pi^6) / (1 + m^2)`. Over `F_3`
/// every such fiber keeps a close pair; `m = 1 + pi` moves it from distance
/// `1/2` to `1/6`.
fn quartic_two_scales() -> Result<CorpusEntry> {
    let p = FieldParams::new(3, 12)?;
    let pi = FieldElement::pi(p);
    let pi6 = FieldElement::pi_pow(p, 6);
    let sigma = &pi + &pi6;
    let w = Poly::from_coeffs(p, vec![int(p, 0), -&sigma, int(p, 1)]);
    let f = w.mul(&w.add(&Poly::constant(FieldElement::pi_pow(p, 7))));
    let m = &int(p, 1) + &pi;
    let num = &(&sigma * &(&int(p, 1) + &m)) - &(&(&int(p, 2) * &m) * &pi6);
    let s = num.div(&(&int(p, 1) + &(&m * &m)))?;
    let y = &pi6 + &(&m * &s);
    let fibers = vec![
        (int(p, 0), vec![int(p, 0), pi6.clone(), pi.clone(), sigma.clone()]),
        fiber_through(&f, s.clone(), vec![&sigma - &s, y.clone(), &sigma - &y]),
    ];
    entry("quartic_two_scales", f, fibers, RadialStatus::Refuted)
}

/// `T^6 + pi^6 T` over `K_12` with `p = 3`: weakly 1-radial but not radial.
pub fn sextic_poly() -> Poly {
    let p = FieldParams::new(3, 12).expect("valid parameters");
    let mut coeffs = vec![int(p, 0), FieldElement::pi_pow(p, 6)];
    coeffs.extend((0..4).map(|_| int(p, 0)));
    coeffs.push(int(p, 1));
    Poly::from_coeffs(p, coeffs)
}

/// `prod_{k=0}^{4} (T - k pi)` over `K_4` with `p = 5`.
fn quintic() -> Result<CorpusEntry> {
    let p = FieldParams::new(5, 4)?;
    let roots: Vec<FieldElement> = (0..5).map(|k| &int(p, k) * &FieldElement::pi(p)).collect();
    let f = Poly::from_roots(p, &roots, &int(p, 1));
    entry("quintic_p5", f, vec![(int(p, 0), roots)], RadialStatus::CertifiedRadial)
}

pub fn corpus() -> Vec<CorpusEntry> {
    let build = || -> Result<Vec<CorpusEntry>> {
        let p = FieldParams::new(3, 2)?;
        let pi = FieldElement::pi(p);
        let identity = entry(
            "identity",
            Poly::t(p),
            vec![(int(p, 0), vec![int(p, 0)]), (pi.clone(), vec![pi])],
            RadialStatus::CertifiedRadial,
        )?;
        Ok(vec![
            identity,
            cubic("cubic_p3", 2, &[3, 6])?,
            cubic("cubic_ram4", 4, &[3])?,
            cubic("cubic_ram6", 6, &[3])?,
            quadratic("quadratic_p3", 3)?,
            quartic_two_scales()?,
            quadratic("quadratic_p5", 5)?,
            entry("sextic_p3", sextic_poly(), vec![], RadialStatus::Refuted)?,
            quintic()?,
        ])
    };
    build().expect("corpus fixtures are valid")
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name() == name)
}
