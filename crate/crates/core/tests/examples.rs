//! Worked cases checked end to end against values computed by hand.

use berkdisc::corpus::sextic_poly;
use berkdisc::fiber::{check_mult_sum, count_function, preimage_points, validate_fiber};
use berkdisc::polygon::{Domain, NewtonPolygon};
use berkdisc::pushforward::{
    multiradius_from_count, multiradius_multi_component, reconstruct_profile_from_count, star_product,
};
use berkdisc::radiality::{
    default_probes, i_next, profile_of_radial, theta_n, theta_n_formula, weak_n_radial, NRadialOutcome, DEFAULT_SEED,
};
use berkdisc::reduction::{insep_sep_split, residual_report};
use berkdisc::valued_field::rat;
use berkdisc::{
    DiscMorphism, DiscPoint, Error, FieldElement, FieldParams, FpPoly, Multiradius, Poly, RadialStatus, Rational,
    ResidualClass, Valuation,
};

fn k32() -> FieldParams {
    FieldParams::new(3, 2).unwrap()
}

fn int(n: i64) -> FieldElement {
    FieldElement::from_int(k32(), n)
}

fn cubic() -> DiscMorphism {
    DiscMorphism::validate(Poly::from_coeffs(k32(), vec![int(0), int(-3), int(0), int(1)])).unwrap()
}

fn sextic() -> DiscMorphism {
    DiscMorphism::validate(sextic_poly()).unwrap()
}

fn fin(n: i64, d: i64) -> Valuation {
    Valuation::Finite(rat(n, d))
}

fn envelope(lines: &[(i64, i64, u32)]) -> NewtonPolygon {
    let lines: Vec<(Valuation, u32)> = lines.iter().map(|&(n, d, i)| (fin(n, d), i)).collect();
    NewtonPolygon::from_lines(&lines, Domain::Positive).unwrap()
}

#[test]
fn cubic_expands_from_its_roots() {
    let pi = FieldElement::pi(k32());
    let f = Poly::from_roots(k32(), &[int(0), pi.clone(), -&pi], &int(1));
    assert_eq!(&f, cubic().poly());
    // pi^3 = 3 pi, so pi is a zero.
    assert!(cubic().evaluate(&pi).is_zero());
}

#[test]
fn cubic_polygon_at_pi() {
    let f = cubic();
    let pi = FieldElement::pi(k32());
    let g = f.poly().recenter(&pi);
    let vals: Vec<Valuation> = (1..=3).map(|i| g.coeff(i).valuation()).collect();
    assert_eq!(vals, vec![fin(1, 1), fin(3, 2), fin(0, 1)]);
    assert_eq!(f.local_polygon(&pi).unwrap(), envelope(&[(0, 1, 3), (1, 1, 1)]));
}

#[test]
fn multiplicities_follow_the_slopes() {
    let f = cubic();
    let at = |l: Rational| DiscPoint::new(int(0), Valuation::Finite(l)).unwrap();
    assert_eq!(f.multiplicity(&at(rat(1, 4))).unwrap(), 3);
    assert_eq!(f.multiplicity(&at(rat(1, 2))).unwrap(), 3);
    assert_eq!(f.restriction_degree(&at(rat(1, 2))).unwrap(), 1);
    assert_eq!(f.multiplicity(&at(rat(3, 4))).unwrap(), 1);
    assert_eq!(f.image_lambda(&int(0), &rat(1, 1)).unwrap(), rat(2, 1));

    let s = sextic();
    let pi = FieldElement::pi(s.params());
    let mid = DiscPoint::new(pi, fin(1, 10)).unwrap();
    assert_eq!(s.multiplicity(&mid).unwrap(), 3);
}

#[test]
fn n_radiality_of_the_sextic() {
    let s = sextic();
    let p = s.params();
    let probes = default_probes(p, DEFAULT_SEED);
    let (pi, pi3) = (FieldElement::pi(p), FieldElement::pi_pow(p, 3));
    assert_eq!(i_next(&s, &pi, 1, &probes).unwrap(), 3);
    assert_eq!(i_next(&s, &pi3, 1, &probes).unwrap(), 1);
    assert_eq!(theta_n(&s, &pi, 1, &probes).unwrap(), fin(1, 12));
    assert_eq!(theta_n(&s, &pi3, 1, &probes).unwrap(), fin(1, 10));
    assert_eq!(theta_n_formula(&s, &pi3, 1).unwrap(), fin(1, 10));

    let two = weak_n_radial(&s, 2, &[pi.clone(), pi3.clone()]).unwrap();
    assert_eq!(two, NRadialOutcome::Refuted { a: pi, b: pi3 });
    assert!(matches!(i_next(&s, &FieldElement::pi(p), 2, &probes), Err(Error::NotWeaklyNRadial(2))));
}

#[test]
fn cubic_is_weakly_two_radial() {
    let f = cubic();
    let NRadialOutcome::Consistent(report) = weak_n_radial(&f, 2, &default_probes(k32(), DEFAULT_SEED)).unwrap() else {
        panic!("cubic refuted");
    };
    assert_eq!(report.dominating_slopes, vec![3, 1]);
    assert_eq!(report.shared_breaks, vec![rat(1, 2)]);
    assert_eq!(i_next(&f, &int(0), 1, &default_probes(k32(), DEFAULT_SEED)).unwrap(), 1);
}

#[test]
fn cubic_fiber_over_zero() {
    let f = cubic();
    let pi = FieldElement::pi(k32());
    let fd = validate_fiber(&f, int(0), vec![int(0), pi.clone(), -&pi]).unwrap();
    assert!(validate_fiber(&f, int(0), vec![int(0), pi.clone(), pi.clone()]).is_err());

    // Inverting min(3l, 1 + l): mu / 3 below 3/2, mu - 1 above.
    let above = preimage_points(&fd, &rat(2, 1)).unwrap();
    assert_eq!(above.len(), 3);
    assert!(above.iter().all(|pt| pt.lambda == fin(1, 1)));
    let below = preimage_points(&fd, &rat(3, 4)).unwrap();
    assert!(below.iter().all(|pt| pt.lambda == fin(1, 4) && *pt == below[0]));
    assert_eq!(berkdisc::fiber::count_at(&fd, &rat(3, 4)).unwrap(), 1);

    let one = check_mult_sum(&fd, &rat(1, 1)).unwrap();
    assert_eq!((one.points.len(), one.uniform), (1, Some(3)));
    let two = check_mult_sum(&fd, &rat(2, 1)).unwrap();
    assert_eq!((two.points.len(), two.uniform), (3, Some(1)));
}

#[test]
fn multiradius_and_profile_from_the_count() {
    let f = cubic();
    let pi = FieldElement::pi(k32());
    let fd = validate_fiber(&f, int(0), vec![int(0), pi.clone(), -&pi]).unwrap();
    let nf = count_function(&fd).unwrap();
    let mr = multiradius_from_count(&nf, 3).unwrap();
    assert_eq!(mr.entries(), [fin(3, 2), fin(3, 2), fin(0, 1)]);

    let squared = multiradius_multi_component(&[(nf.clone(), 3), (nf.clone(), 3)]).unwrap();
    assert_eq!(squared, star_product(&mr, &mr));
    assert_eq!((squared.len(), squared.ones()), (6, 2));

    let merged = star_product(&Multiradius::new(vec![fin(1, 2), fin(0, 1)]), &Multiradius::new(vec![fin(3, 2)]));
    assert_eq!(merged.entries(), [fin(3, 2), fin(1, 2), fin(0, 1)]);

    let rebuilt = reconstruct_profile_from_count(&nf, 3).unwrap();
    assert_eq!(rebuilt, envelope(&[(0, 1, 3), (1, 1, 1)]));
    assert_eq!(rebuilt, profile_of_radial(&f).unwrap());
}

#[test]
fn residual_data() {
    let s = residual_report(&sextic_poly()).unwrap();
    assert_eq!(s.f_tilde, FpPoly::new(3, vec![0, 0, 0, 0, 0, 0, 1]));
    assert_eq!(s.g, FpPoly::new(3, vec![0, 0, 1]));
    assert_eq!(s.class, ResidualClass::Mixed);

    assert_eq!(insep_sep_split(&FpPoly::new(3, vec![0, 0, 0, 1])).unwrap(), (1, FpPoly::new(3, vec![0, 1])));
    assert_eq!(insep_sep_split(&FpPoly::new(3, vec![0, 1, 1])).unwrap(), (0, FpPoly::new(3, vec![0, 1, 1])));

    let c = residual_report(cubic().poly()).unwrap();
    assert_eq!(c.class, ResidualClass::Radicial);
    assert_eq!(berkdisc::radiality::radial_certificate(&cubic()).status, RadialStatus::CertifiedRadial);
}
