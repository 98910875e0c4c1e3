//! Text and SVG plots of valuation polygons. Floating point is used only to
//! place marks; every printed number is exact.

use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::polygon::{Domain, NewtonPolygon};
use crate::valued_field::{rat, Rational};

const WIDTH: usize = 56;
const HEIGHT: usize = 14;

/// Exact plotting window `[lo, hi]` in lambda.
fn window(poly: &NewtonPolygon) -> (Rational, Rational) {
    let breaks = poly.breaks();
    let lo_break = breaks.first().cloned().unwrap_or_else(Rational::zero);
    let hi_break = breaks.last().cloned().unwrap_or_else(Rational::zero);
    let mut lo = Rational::zero().min(lo_break);
    let hi = Rational::zero().max(hi_break);
    let span = if hi > lo { &hi - &lo } else { Rational::from_integer(1.into()) };
    if poly.domain() == Domain::All && lo.is_negative() {
        lo = &lo - &span * rat(1, 4);
    } else if poly.domain() == Domain::All && breaks.is_empty() {
        lo = -span.clone();
    }
    let hi = if breaks.is_empty() { &hi + &span } else { &hi + &span * rat(1, 2) };
    (lo, hi)
}

fn value(poly: &NewtonPolygon, x: &Rational) -> Rational {
    poly.segments().iter().map(|s| s.at(x)).min().expect("polygon has a segment")
}

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

/// A character plot of the polygon with its breaks and slopes listed below.
pub fn render_ascii(poly: &NewtonPolygon) -> String {
    let (lo, hi) = window(poly);
    let xs: Vec<Rational> = (0..WIDTH).map(|c| &lo + (&hi - &lo) * rat(c as i64, (WIDTH - 1) as i64)).collect();
    let ys: Vec<Rational> = xs.iter().map(|x| value(poly, x)).collect();
    let y_lo = ys.iter().min().cloned().expect("nonempty").min(Rational::zero());
    let y_hi = ys.iter().max().cloned().expect("nonempty");
    let y_span = if y_hi > y_lo { f(&(&y_hi - &y_lo)) } else { 1.0 };

    let mut grid = vec![vec![' '; WIDTH]; HEIGHT];
    for (c, y) in ys.iter().enumerate() {
        let row = ((f(&(y - &y_lo)) / y_span) * (HEIGHT - 1) as f64).round() as usize;
        grid[HEIGHT - 1 - row.min(HEIGHT - 1)][c] = '*';
    }
    let col_of = |x: &Rational| ((f(&(x - &lo)) / f(&(&hi - &lo))) * (WIDTH - 1) as f64).round() as usize;
    let mut axis = vec!['-'; WIDTH];
    for b in poly.breaks() {
        axis[col_of(&b).min(WIDTH - 1)] = '+';
    }

    let top = y_hi.to_string();
    let bottom = y_lo.to_string();
    let pad = top.len().max(bottom.len());
    let mut out = String::new();
    let _ = writeln!(out, "v(l) = {}   [{}]", poly, domain_label(poly.domain()));
    for (r, row) in grid.iter().enumerate() {
        let label = match r {
            0 => top.as_str(),
            _ if r == HEIGHT - 1 => bottom.as_str(),
            _ => "",
        };
        let line: String = row.iter().collect();
        let _ = writeln!(out, "{label:>pad$} |{}", line.trim_end());
    }
    let _ = writeln!(out, "{:>pad$} +{}", "", axis.iter().collect::<String>());
    let mut ticks = vec![' '; WIDTH + 16];
    let mut place = |col: usize, text: &str| {
        for (k, ch) in text.chars().enumerate() {
            if col + k < ticks.len() {
                ticks[col + k] = ch;
            }
        }
    };
    place(0, &lo.to_string());
    for b in poly.breaks() {
        place(col_of(&b), &b.to_string());
    }
    let hi_s = hi.to_string();
    place(WIDTH - hi_s.len().min(WIDTH), &hi_s);
    let _ = writeln!(out, "{:>pad$}  {}", "", ticks.iter().collect::<String>().trim_end());
    let slopes: Vec<String> = poly.slopes().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "slopes: {}", slopes.join(", "));
    if poly.vertices().is_empty() {
        let _ = writeln!(out, "breaks: none");
    } else {
        let breaks: Vec<String> = poly.vertices().iter().map(|v| format!("{} (value {})", v.lambda, v.value)).collect();
        let _ = writeln!(out, "breaks: {}", breaks.join(", "));
    }
    out
}

fn domain_label(d: Domain) -> &'static str {
    match d {
        Domain::All => "all l",
        Domain::NonNegative => "l >= 0",
        Domain::Positive => "l > 0",
    }
}

/// A standalone SVG drawing of the polygon.
pub fn render_svg(poly: &NewtonPolygon) -> String {
    let (w, h, m) = (480.0, 320.0, 40.0);
    let (lo, hi) = window(poly);
    let mut xs = vec![lo.clone()];
    xs.extend(poly.breaks().into_iter().filter(|b| *b > lo && *b < hi));
    xs.push(hi.clone());
    let pts: Vec<(Rational, Rational)> = xs.iter().map(|x| (x.clone(), value(poly, x))).collect();
    let y_lo = pts.iter().map(|(_, y)| y.clone()).min().expect("nonempty").min(Rational::zero());
    let y_hi = pts.iter().map(|(_, y)| y.clone()).max().expect("nonempty");
    let x_span = f(&(&hi - &lo));
    let y_span = if y_hi > y_lo { f(&(&y_hi - &y_lo)) } else { 1.0 };
    let px = |x: &Rational| m + (f(&(x - &lo)) / x_span) * (w - 2.0 * m);
    let py = |y: &Rational| h - m - (f(&(y - &y_lo)) / y_span) * (h - 2.0 * m);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"  <title>v(l) = {}</title>"#, poly);
    let _ = writeln!(out, r#"  <line x1="{m}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, h - m, w - m, h - m);
    let _ = writeln!(out, r#"  <line x1="{m}" y1="{m}" x2="{m}" y2="{:.2}" stroke="black"/>"#, h - m);
    let path: Vec<String> = pts.iter().map(|(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
    let _ =
        writeln!(out, r#"  <polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#, path.join(" "));
    for v in poly.vertices() {
        let (x, y) = (px(&v.lambda), py(&v.value));
        let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="crimson"/>"#);
        let _ = writeln!(
            out,
            r#"  <text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            h - m + 14.0,
            v.lambda
        );
    }
    for (k, seg) in poly.segments().iter().enumerate() {
        let a = &pts[k].0;
        let b = &pts[k + 1].0;
        let mid = (a + b) * rat(1, 2);
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" font-size="11" fill="steelblue">slope {}</text>"#,
            px(&mid) + 4.0,
            py(&value(poly, &mid)) - 6.0,
            seg.slope
        );
    }
    out.push_str("</svg>\n");
    out
}
