//! JSON encodings.
//!
//! An element `sum c_e pi^e` is a list of `[coefficient, exponent]` pairs with
//! the coefficient as a rational string, e.g. `[["-3/1", 0], ["1/1", 6]]`;
//! exponents `>= N` are reduced with `pi^N = p`. Rationals elsewhere (lambda
//! values, polygon data) are strings like `"3/2"`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::disc_morphism::{DiscMorphism, DiscPoint};
use crate::error::{Error, Result};
use crate::fiber::{validate_fiber, CountFunction, FiberData, MultSumReport};
use crate::polygon::{Domain, NewtonPolygon};
use crate::polynomial::Poly;
use crate::pushforward::{MainTheoremReport, Multiradius};
use crate::radiality::{NRadialOutcome, RadialityVerdict};
use crate::reduction::ResidualReport;
use crate::valued_field::{FieldElement, FieldParams, Rational, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub String, pub u32);

pub type ElementJson = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberJson {
    pub center: ElementJson,
    pub roots: Vec<ElementJson>,
}

/// A morphism file. Either `coeffs` at the top level or a `morphism` object;
/// `fibers` is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u32,
    pub ram: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<ElementJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<PolyJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibers: Vec<FiberJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub center: ElementJson,
    pub lambda: String,
}

/// A parsed and validated morphism file.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: Option<String>,
    pub morphism: DiscMorphism,
    pub fibers: Vec<FiberData>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

pub fn element_from_json(params: FieldParams, terms: &ElementJson) -> Result<FieldElement> {
    let parsed = terms.iter().map(|Term(c, e)| Ok((parse_rational(c)?, *e))).collect::<Result<Vec<_>>>()?;
    Ok(FieldElement::from_terms(params, &parsed))
}

pub fn element_to_json(x: &FieldElement) -> ElementJson {
    x.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(e, c)| Term(c.to_string(), e as u32))
        .collect()
}

pub fn parse_element(params: FieldParams, text: &str) -> Result<FieldElement> {
    let terms: ElementJson = serde_json::from_str(text).map_err(parse_err)?;
    element_from_json(params, &terms)
}

pub fn poly_from_json(params: FieldParams, coeffs: &[ElementJson]) -> Result<Poly> {
    let elems = coeffs.iter().map(|c| element_from_json(params, c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(params, elems))
}

pub fn poly_to_json(f: &Poly) -> PolyJson {
    PolyJson { coeffs: f.coeffs().iter().map(element_to_json).collect() }
}

impl FixtureJson {
    pub fn params(&self) -> Result<FieldParams> {
        FieldParams::new(self.p, self.ram)
    }

    fn coeff_list(&self) -> Result<&[ElementJson]> {
        match (&self.coeffs, &self.morphism) {
            (Some(c), None) => Ok(c),
            (None, Some(m)) => Ok(&m.coeffs),
            (Some(_), Some(_)) => Err(Error::Parse("give either \"coeffs\" or \"morphism\", not both".into())),
            (None, None) => Err(Error::Parse("missing \"coeffs\" or \"morphism\"".into())),
        }
    }

    /// The polynomial without morphism validation.
    pub fn poly(&self) -> Result<Poly> {
        poly_from_json(self.params()?, self.coeff_list()?)
    }

    pub fn load(&self) -> Result<Fixture> {
        let params = self.params()?;
        let morphism = DiscMorphism::validate(self.poly()?)?;
        let fibers = self
            .fibers
            .iter()
            .map(|fj| {
                let center = element_from_json(params, &fj.center)?;
                let roots = fj.roots.iter().map(|r| element_from_json(params, r)).collect::<Result<Vec<_>>>()?;
                validate_fiber(&morphism, center, roots)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fixture { name: self.name.clone(), morphism, fibers })
    }
}

pub fn parse_fixture_json(text: &str) -> Result<FixtureJson> {
    serde_json::from_str(text).map_err(parse_err)
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    parse_fixture_json(text)?.load()
}

impl Fixture {
    pub fn to_json(&self) -> FixtureJson {
        let params = self.morphism.params();
        FixtureJson {
            name: self.name.clone(),
            p: params.p(),
            ram: params.ram(),
            coeffs: None,
            morphism: Some(poly_to_json(self.morphism.poly())),
            fibers: self
                .fibers
                .iter()
                .map(|fd| FiberJson {
                    center: element_to_json(fd.center()),
                    roots: fd.roots().iter().map(element_to_json).collect(),
                })
                .collect(),
        }
    }
}

impl FixtureJson {
    /// Multi-line rendering with each element kept on one line.
    pub fn to_pretty_string(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            out += &format!("  \"name\": {},\n", compact(name));
        }
        out += &format!("  \"p\": {},\n  \"ram\": {}", self.p, self.ram);
        if let Some(c) = &self.coeffs {
            out += &format!(",\n  \"coeffs\": {}", compact(c));
        }
        if let Some(m) = &self.morphism {
            out += &format!(",\n  \"morphism\": {{\"coeffs\": {}}}", compact(&m.coeffs));
        }
        if !self.fibers.is_empty() {
            let fibers: Vec<String> = self
                .fibers
                .iter()
                .map(|f| format!("    {{\"center\": {}, \"roots\": {}}}", compact(&f.center), compact(&f.roots)))
                .collect();
            out += &format!(",\n  \"fibers\": [\n{}\n  ]", fibers.join(",\n"));
        }
        out += "\n}\n";
        out
    }
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn parse_point(params: FieldParams, text: &str) -> Result<DiscPoint> {
    let pj: PointJson = serde_json::from_str(text).map_err(parse_err)?;
    let center = element_from_json(params, &pj.center)?;
    let lambda = match pj.lambda.trim() {
        "inf" => Valuation::Infinite,
        s => Valuation::Finite(parse_rational(s)?),
    };
    DiscPoint::new(center, lambda)
}

pub fn point_to_json(pt: &DiscPoint) -> Value {
    json!({ "center": element_to_json(&pt.center), "lambda": pt.lambda.to_string() })
}

fn valuation_to_json(v: &Valuation) -> Value {
    Value::String(v.to_string())
}

pub fn polygon_to_json(poly: &NewtonPolygon) -> Value {
    json!({
        "domain": poly.domain().name(),
        "slopes": poly.slopes(),
        "segments": poly.segments().iter().map(|s| json!({
            "slope": s.slope,
            "intercept": s.intercept.to_string(),
        })).collect::<Vec<_>>(),
        "vertices": poly.vertices().iter().map(|v| json!({
            "lambda": v.lambda.to_string(),
            "value": v.value.to_string(),
        })).collect::<Vec<_>>(),
        "text": poly.to_string(),
    })
}

/// Rebuilds a polygon from `polygon_to_json` output (its active segments).
pub fn polygon_from_json(value: &Value) -> Result<NewtonPolygon> {
    let domain = match value["domain"].as_str() {
        Some("all") => Domain::All,
        Some("nonnegative") => Domain::NonNegative,
        Some("positive") => Domain::Positive,
        other => return Err(Error::Parse(format!("unknown domain {other:?}"))),
    };
    let segments = value["segments"].as_array().ok_or_else(|| Error::Parse("missing segments".into()))?;
    let lines = segments
        .iter()
        .map(|s| {
            let slope = s["slope"].as_u64().ok_or_else(|| Error::Parse("bad slope".into()))? as u32;
            let intercept = parse_rational(s["intercept"].as_str().unwrap_or_default())?;
            Ok((Valuation::Finite(intercept), slope))
        })
        .collect::<Result<Vec<_>>>()?;
    NewtonPolygon::from_lines(&lines, domain)
}

pub fn verdict_to_json(v: &RadialityVerdict) -> Value {
    json!({
        "status": v.status.name(),
        "witness": v.witness.as_ref().map_or(vec![], |(a, b)| vec![element_to_json(a), element_to_json(b)]),
        "profile": polygon_to_json(&v.profile),
        "failures": v.failures,
        "probes_checked": v.probes_checked,
    })
}

pub fn nradial_to_json(outcome: &NRadialOutcome) -> Value {
    match outcome {
        NRadialOutcome::Consistent(r) => json!({
            "status": "Consistent",
            "n": r.n,
            "dominating_slopes": r.dominating_slopes,
            "shared_breaks": r.shared_breaks.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "border": valuation_to_json(&r.border),
        }),
        NRadialOutcome::Refuted { a, b } => json!({
            "status": "Refuted",
            "witness": [element_to_json(a), element_to_json(b)],
        }),
    }
}

pub fn count_function_to_json(nf: &CountFunction) -> Value {
    json!({
        "jumps": nf.jumps().iter().map(|j| j.to_string()).collect::<Vec<_>>(),
        "values": nf.values(),
    })
}

pub fn count_function_from_json(value: &Value) -> Result<CountFunction> {
    let jumps = value["jumps"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing jumps".into()))?
        .iter()
        .map(|j| parse_rational(j.as_str().unwrap_or_default()))
        .collect::<Result<Vec<_>>>()?;
    let values = value["values"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing values".into()))?
        .iter()
        .map(|v| v.as_u64().map(|n| n as usize).ok_or_else(|| Error::Parse("bad value".into())))
        .collect::<Result<Vec<_>>>()?;
    CountFunction::new(jumps, values)
}

pub fn multiradius_to_json(mr: &Multiradius, p: u32) -> Value {
    json!({
        "entries_lambda": mr.entries().iter().map(valuation_to_json).collect::<Vec<_>>(),
        "entries_radius_p": mr.radii(p),
    })
}

pub fn multiradius_from_json(value: &Value) -> Result<Multiradius> {
    let entries = value["entries_lambda"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing entries_lambda".into()))?
        .iter()
        .map(|e| match e.as_str() {
            Some("inf") => Ok(Valuation::Infinite),
            Some(s) => Ok(Valuation::Finite(parse_rational(s)?)),
            None => Err(Error::Parse("entries must be strings".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Multiradius::new(entries))
}

pub fn mult_sum_to_json(r: &MultSumReport) -> Value {
    json!({
        "lambda": r.mu.to_string(),
        "points": r.points.iter().map(|(pt, nu)| json!({
            "center": element_to_json(&pt.center),
            "lambda": pt.lambda.to_string(),
            "multiplicity": nu,
        })).collect::<Vec<_>>(),
        "total": r.total,
        "uniform": r.uniform,
    })
}

pub fn residual_to_json(r: &ResidualReport) -> Value {
    json!({
        "f_tilde": r.f_tilde.to_string(),
        "r": r.r,
        "g": r.g.to_string(),
        "s": r.s_deg,
        "i": r.i_deg,
        "class": r.class.name(),
        "uniform": r.uniformly_ramified,
    })
}

pub fn main_theorem_to_json(r: &MainTheoremReport, p: u32) -> Value {
    json!({
        "status": r.status.name(),
        "multiradii": r.multiradii.iter().map(|m| multiradius_to_json(m, p)).collect::<Vec<_>>(),
        "all_equal": r.all_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::rat;

    const CUBIC: &str = r#"{"p":3,"ram":2,"coeffs":[[],[["-3/1",0]],[],[["1/1",0]]],
        "fibers":[{"center":[],"roots":[[],[["1",1]],[["-1",1]]]}]}"#;

    #[test]
    fn elements() {
        let p = FieldParams::new(3, 12).unwrap();
        let x = parse_element(p, r#"[["-3/1",0],["1/1",6]]"#).unwrap();
        assert_eq!(x, &FieldElement::from_int(p, -3) + &FieldElement::pi_pow(p, 6));
        assert_eq!(element_from_json(p, &element_to_json(&x)).unwrap(), x);
        let wrapped = parse_element(p, r#"[["1",13]]"#).unwrap();
        assert_eq!(wrapped, FieldElement::pi(p).scale(&rat(3, 1)));
        assert!(matches!(parse_element(p, r#"[["x",0]]"#), Err(Error::Parse(_))));
        assert!(matches!(parse_element(p, "[1,2"), Err(Error::Parse(_))));
    }

    #[test]
    fn fixtures() {
        let fx = parse_fixture(CUBIC).unwrap();
        assert_eq!(fx.morphism.degree(), 3);
        assert_eq!(fx.fibers.len(), 1);
        let again = fx.to_json().load().unwrap();
        assert_eq!(again.morphism, fx.morphism);
        assert_eq!(again.fibers[0].roots(), fx.fibers[0].roots());

        let nested = r#"{"p":3,"ram":2,"morphism":{"coeffs":[[],[["1",0]]]}}"#;
        assert_eq!(parse_fixture(nested).unwrap().morphism.degree(), 1);
        let both = r#"{"p":3,"ram":2,"coeffs":[],"morphism":{"coeffs":[]}}"#;
        assert!(matches!(parse_fixture(both), Err(Error::Parse(_))));
        let invalid = r#"{"p":3,"ram":2,"coeffs":[[["1",0]],[["1",0]]]}"#;
        assert_eq!(parse_fixture(invalid).unwrap_err(), Error::NotCompatible);
    }

    #[test]
    fn points() {
        let p = FieldParams::new(3, 2).unwrap();
        let pt = parse_point(p, r#"{"center":[["1",1]],"lambda":"3/2"}"#).unwrap();
        assert_eq!(pt.lambda, Valuation::Finite(rat(3, 2)));
        let back = serde_json::to_string(&point_to_json(&pt)).unwrap();
        assert_eq!(parse_point(p, &back).unwrap(), pt);
    }

    #[test]
    fn report_round_trips() {
        let fx = parse_fixture(CUBIC).unwrap();
        let poly = fx.morphism.local_polygon(&FieldElement::zero(fx.morphism.params())).unwrap();
        assert_eq!(polygon_from_json(&polygon_to_json(&poly)).unwrap(), poly);

        let nf = crate::fiber::count_function(&fx.fibers[0]).unwrap();
        assert_eq!(count_function_from_json(&count_function_to_json(&nf)).unwrap(), nf);

        let mr = crate::pushforward::multiradius_from_count(&nf, 3).unwrap();
        let enc = multiradius_to_json(&mr, 3);
        assert_eq!(enc["entries_lambda"], json!(["3/2", "3/2", "0"]));
        assert_eq!(multiradius_from_json(&enc).unwrap(), mr);
    }
}
