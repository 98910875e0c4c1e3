//! Byte-for-byte plots. Set `BERKDISC_BLESS=1` to rewrite the golden files.

use std::fs;
use std::path::PathBuf;

use berkdisc::corpus::{by_name, sextic_poly};
use berkdisc::render::{render_ascii, render_svg};
use berkdisc::{DiscMorphism, FieldElement, NewtonPolygon};

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("BERKDISC_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from golden output");
}

fn polygon_at_zero(name: &str) -> NewtonPolygon {
    let f = by_name(name).unwrap().fixture.morphism;
    f.local_polygon(&FieldElement::zero(f.params())).unwrap()
}

#[test]
fn identity_plot() {
    let p = polygon_at_zero("identity");
    check("identity.txt", &render_ascii(&p));
    check("identity.svg", &render_svg(&p));
}

#[test]
fn cubic_plot() {
    let p = polygon_at_zero("cubic_p3");
    check("cubic_p3.txt", &render_ascii(&p));
    check("cubic_p3.svg", &render_svg(&p));
}

#[test]
fn sextic_plot_at_pi() {
    let f = DiscMorphism::validate(sextic_poly()).unwrap();
    let p = f.local_polygon(&FieldElement::pi(f.params())).unwrap();
    check("sextic_at_pi.txt", &render_ascii(&p));
    check("sextic_at_pi.svg", &render_svg(&p));
}

#[test]
fn plots_are_deterministic() {
    let p = polygon_at_zero("cubic_p3");
    assert_eq!(render_ascii(&p), render_ascii(&p));
    assert_eq!(render_svg(&p), render_svg(&p));
}
