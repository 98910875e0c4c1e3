//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use berkdisc::corpus::{corpus, sextic_poly};
use berkdisc::disc_morphism::random_disc_morphism;
use berkdisc::fiber::{check_mult_sum, count_at, count_function};
use berkdisc::json::{parse_fixture, Fixture};
use berkdisc::polygon::{Domain, NewtonPolygon};
use berkdisc::pushforward::{
    check_main_theorem_disc, multiradius_bruteforce, multiradius_from_count, reconstruct_profile_from_count,
};
use berkdisc::radiality::{default_probes, profile_of_radial, radial_certificate, DEFAULT_SEED};
use berkdisc::reduction::residual_report;
use berkdisc::valued_field::{random_unit_from, rat};
use berkdisc::{DiscMorphism, FieldElement, FieldParams, Poly, RadialStatus, Rational, ResidualClass, Valuation};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn params(p: u32, n: u32) -> FieldParams {
    FieldParams::new(p, n).expect("valid parameters")
}

fn fin(n: i64, d: i64) -> Valuation {
    Valuation::Finite(rat(n, d))
}

fn err(e: berkdisc::Error) -> String {
    e.to_string()
}

/// The JSON fixture files, in file-name order.
fn fixtures() -> Result<Vec<Fixture>, String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut paths: Vec<_> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    paths
        .iter()
        .map(|path| {
            let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
            parse_fixture(&text).map_err(|e| format!("{}: {e}", path.display()))
        })
        .collect()
}

fn expected_status(name: &str) -> Option<RadialStatus> {
    corpus().into_iter().find(|e| e.name() == name).map(|e| e.expected)
}

fn criterion_1() -> Outcome {
    let p = params(3, 12);
    let f = DiscMorphism::validate(sextic_poly()).map_err(err)?;
    let alpha = fin(1, 2);
    ensure!(f.poly().coeff(1).valuation() == alpha, "unexpected coefficient of T");

    let a = FieldElement::pi(p);
    let at_pi = f.local_polygon(&a).map_err(err)?;
    // b1 = v(a), b2 = (v(alpha) - p v(a)) / (p - 1).
    let va = rat(1, 12);
    let b2 = (rat(1, 2) - rat(3, 1) * &va) / rat(2, 1);
    ensure!(at_pi.slopes() == vec![6, 3, 1], "slopes at pi: {:?}", at_pi.slopes());
    ensure!(at_pi.breaks() == vec![va.clone(), b2.clone()], "breaks at pi: {:?}", at_pi.breaks());
    ensure!(b2 == rat(1, 8), "second break {b2}");

    let at_pi3 = f.local_polygon(&FieldElement::pi_pow(p, 3)).map_err(err)?;
    // The only break: 6l = v(alpha) + l.
    let b = rat(1, 2) / rat(5, 1);
    ensure!(at_pi3.slopes() == vec![6, 1], "slopes at pi^3: {:?}", at_pi3.slopes());
    ensure!(at_pi3.breaks() == vec![b], "breaks at pi^3: {:?}", at_pi3.breaks());

    let verdict = radial_certificate(&f);
    ensure!(verdict.status == RadialStatus::Refuted, "verdict {}", verdict.status.name());
    let (w0, w1) = verdict.witness.ok_or("refuted without a witness")?;
    let (p0, p1) = (f.local_polygon(&w0).map_err(err)?, f.local_polygon(&w1).map_err(err)?);
    ensure!(p0 != p1, "witness centers share the polygon {p0}");
    Ok(format!("slopes 6,3,1 breaks 1/12,1/8; slopes 6,1 break 1/10; witness {p0} vs {p1}"))
}

fn criterion_2() -> Outcome {
    let sets = [params(3, 2), params(3, 12), params(5, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut checked = 0;
    for k in 0..50 {
        let p = sets[k % sets.len()];
        let d = rng.gen_range(2..=8);
        let f = random_disc_morphism(p, d, &mut rng);
        for a in default_probes(p, DEFAULT_SEED) {
            let poly = f.local_polygon(&a).map_err(err)?;
            ensure!(
                poly.slope_before_first_break() == d as u32,
                "morphism {k} ({}) at {a}: first slope {} for degree {d}",
                f.poly(),
                poly.slope_before_first_break()
            );
            checked += 1;
        }
    }
    Ok(format!("50 morphisms, {checked} probe points, zero failures"))
}

fn criterion_3() -> Outcome {
    let p = params(3, 2);
    let int = |n| FieldElement::from_int(p, n);
    let f = DiscMorphism::validate(Poly::from_coeffs(p, vec![int(0), int(-3), int(0), int(1)])).map_err(err)?;
    let verdict = radial_certificate(&f);
    ensure!(verdict.status == RadialStatus::CertifiedRadial, "verdict {}", verdict.status.name());
    let expected = NewtonPolygon::from_lines(&[(fin(0, 1), 3), (fin(1, 1), 1)], Domain::Positive).map_err(err)?;
    ensure!(verdict.profile == expected, "profile {}", verdict.profile);

    let pi = FieldElement::pi(p);
    let fd = berkdisc::fiber::validate_fiber(&f, int(0), vec![int(0), pi.clone(), -&pi]).map_err(err)?;
    let nf = count_function(&fd).map_err(err)?;
    ensure!(nf.jumps() == [rat(3, 2)], "jumps {:?}", nf.jumps());
    ensure!(nf.values() == [1, 3], "values {:?}", nf.values());

    let mr = multiradius_from_count(&nf, 3).map_err(err)?;
    ensure!(mr.entries() == [fin(3, 2), fin(3, 2), fin(0, 1)], "multiradius {:?}", mr.entries());
    let radii = mr.radii(3);
    let r = 3f64.powf(-1.5);
    ensure!(radii[0] == r && radii[1] == r && radii[2] == 1.0, "radii {radii:?}");
    let brute = multiradius_bruteforce(&fd).map_err(err)?;
    ensure!(brute == mr, "brute force {:?}", brute.entries());
    Ok(format!("profile {expected}, jump at 3/2, multiradius (3^-3/2, 3^-3/2, 1)"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut checks = 0;
    for fx in fixtures()? {
        let name = fx.name.clone().unwrap_or_default();
        for fd in &fx.fibers {
            let d = fd.degree();
            for _ in 0..20 {
                let mu = rat(rng.gen_range(1..=96), rng.gen_range(1..=24));
                let report = check_mult_sum(fd, &mu).map_err(|e| format!("{name} at {mu}: {e}"))?;
                let total: u32 = report.points.iter().map(|(_, nu)| nu).sum();
                ensure!(total as usize == d, "{name} at {mu}: sum of multiplicities {total}");
                let count = count_at(fd, &mu).map_err(err)?;
                ensure!(count == report.points.len(), "{name} at {mu}: {count} preimages vs {}", report.points.len());
                if let Some(nu) = report.uniform {
                    ensure!(count * nu as usize == d, "{name} at {mu}: {count} preimages of multiplicity {nu}");
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} target radii, zero failures"))
}

fn criterion_5() -> Outcome {
    let mut used = 0;
    let mut two_scale_refuted = false;
    for fx in fixtures()? {
        if fx.fibers.len() < 2 {
            continue;
        }
        let name = fx.name.clone().unwrap_or_default();
        let expected = expected_status(&name).ok_or(format!("unknown fixture {name}"))?;
        let report = check_main_theorem_disc(&fx.morphism, &fx.fibers).map_err(|e| format!("{name}: {e}"))?;
        ensure!(report.status == expected, "{name}: {} but expected {}", report.status.name(), expected.name());
        if report.status == RadialStatus::CertifiedRadial {
            ensure!(report.all_equal, "{name}: certified with unequal multiradii");
        }
        if expected == RadialStatus::CertifiedRadial {
            ensure!(report.status != RadialStatus::Refuted, "{name}: radial fixture refuted");
        }
        if name == "quartic_two_scales" {
            ensure!(report.status == RadialStatus::Refuted && !report.all_equal, "{name}: not separated");
            let scales = count_function(&fx.fibers[0]).map_err(err)?.jumps().len();
            ensure!(scales == 2, "{name}: {scales} distance scales");
            two_scale_refuted = true;
        }
        used += 1;
    }
    ensure!(used >= 6, "only {used} fixtures with two or more fibers");
    ensure!(two_scale_refuted, "no refuted two-scale fixture");
    Ok(format!("{used} fixtures, verdicts consistent with multiradii"))
}

fn criterion_6() -> Outcome {
    let p = params(3, 2);
    let int = |n| FieldElement::from_int(p, n);
    let cubic = residual_report(&Poly::from_coeffs(p, vec![int(0), int(-3), int(0), int(1)])).map_err(err)?;
    ensure!((cubic.i_deg, cubic.s_deg) == (3, 1), "cubic (i, s) = ({}, {})", cubic.i_deg, cubic.s_deg);
    ensure!(cubic.class == ResidualClass::Radicial, "cubic class {}", cubic.class.name());
    ensure!(cubic.uniformly_ramified, "cubic not uniformly ramified");

    let sextic = residual_report(&sextic_poly()).map_err(err)?;
    ensure!((sextic.i_deg, sextic.s_deg) == (3, 2), "sextic (i, s) = ({}, {})", sextic.i_deg, sextic.s_deg);
    ensure!(!sextic.uniformly_ramified, "sextic uniformly ramified");

    let id = residual_report(&Poly::t(p)).map_err(err)?;
    ensure!(id.class == ResidualClass::Etale, "identity class {}", id.class.name());

    let mut certified = 0;
    for fx in fixtures()? {
        let name = fx.name.clone().unwrap_or_default();
        if radial_certificate(&fx.morphism).status != RadialStatus::CertifiedRadial {
            continue;
        }
        let r = residual_report(fx.morphism.poly()).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.uniformly_ramified, "{name}: certified radial but not uniformly ramified");
        certified += 1;
    }
    Ok(format!("cubic (3, 1) radicial, sextic (3, 2), identity etale, {certified} certified fixtures uniform"))
}

fn criterion_7() -> Outcome {
    let sets = [params(3, 2), params(3, 4), params(5, 2), params(2, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut equal = 0;
    for k in 0..200 {
        let p = sets[k % sets.len()];
        let d = rng.gen_range(1..=6);
        let f = random_disc_morphism(p, d, &mut rng);
        let a = if rng.gen_bool(0.2) {
            FieldElement::zero(p)
        } else {
            &random_unit_from(p, &mut rng) * &FieldElement::pi_pow(p, rng.gen_range(1..=2 * p.ram()))
        };
        let lambda = rat(rng.gen_range(1..=3 * p.ram()) as i64, p.ram() as i64);
        let exact = f.local_polygon(&a).map_err(err)?.eval(&lambda).map_err(err)?;
        let sampled = f.generic_eval_valuation(&a, &lambda, DEFAULT_SEED + k as u64, 8).map_err(err)?;
        ensure!(sampled >= Valuation::Finite(exact.clone()), "case {k}: sampled {sampled:?} below {exact}");
        if sampled == Valuation::Finite(exact) {
            equal += 1;
        }
    }
    ensure!(equal * 100 >= 95 * 200, "equality on {equal}/200 cases");

    let mut round_trips = 0;
    for fx in fixtures()? {
        let name = fx.name.clone().unwrap_or_default();
        let Ok(profile) = profile_of_radial(&fx.morphism) else {
            continue;
        };
        for fd in &fx.fibers {
            let nf = count_function(fd).map_err(err)?;
            let rebuilt = reconstruct_profile_from_count(&nf, fd.degree()).map_err(|e| format!("{name}: {e}"))?;
            ensure!(rebuilt == profile, "{name}: rebuilt {rebuilt}, profile {profile}");
            round_trips += 1;
        }
    }
    ensure!(round_trips > 0, "no certified fixture fibers");
    Ok(format!("equality on {equal}/200 samples, {round_trips} profile round trips"))
}

/// `u * pi^k` for any integer `k`.
fn unit_times_pi(p: FieldParams, u: &FieldElement, k: i64) -> FieldElement {
    let n = p.ram() as i64;
    let (q, r) = (k.div_euclid(n), k.rem_euclid(n));
    let scale = Rational::from_integer(num_bigint::BigInt::from(p.p())).pow(q as i32);
    (u * &FieldElement::pi_pow(p, r as u32)).scale(&scale)
}

fn criterion_8() -> Outcome {
    let sets = [params(3, 12), params(2, 12), params(5, 12)];
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 0..100 {
        let p = sets[k % sets.len()];
        let d = rng.gen_range(1..=10);
        let exps: Vec<i64> = (0..d).map(|_| rng.gen_range(-12..=24)).collect();
        let roots: Vec<FieldElement> =
            exps.iter().map(|&e| unit_times_pi(p, &random_unit_from(p, &mut rng), e)).collect();
        let lead = random_unit_from(p, &mut rng);
        let f = Poly::from_roots(p, &roots, &lead);
        let lines: Vec<(Valuation, u32)> =
            f.coeff_valuations().into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        let poly = NewtonPolygon::from_lines(&lines, Domain::All).map_err(err)?;
        let mut total = 0;
        for e in -12..=24 {
            let lambda = rat(e, 12);
            let truth = exps.iter().filter(|&&x| x == e).count() as u32;
            let got = poly.root_count_at(&lambda).map_err(err)?;
            ensure!(got == truth, "case {k}: {got} roots of valuation {lambda}, expected {truth}");
            total += got;
        }
        let listed: u32 = poly.root_distribution().iter().map(|(_, c)| c).sum();
        ensure!(total as usize == d && listed as usize == d, "case {k}: totals {total}, {listed} for degree {d}");
        ensure!(poly.roots_at_infinity() == 0, "case {k}: spurious root at 0");
    }
    Ok("100 root multisets, zero failures".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "sextic local polygons and refutation", criterion_1),
        (2, "first slope equals the degree", criterion_2),
        (3, "cubic radial profile and multiradius", criterion_3),
        (4, "multiplicity sums over fibers", criterion_4),
        (5, "radiality against fiber multiradii", criterion_5),
        (6, "residual reduction", criterion_6),
        (7, "generic evaluation and profile reconstruction", criterion_7),
        (8, "root counts from polygons", criterion_8),
    ];
    let mut failed = 0;
    for (n, title, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] criterion {n}: {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {title}: {why}");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
