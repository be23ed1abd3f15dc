//! Newton polygons relative to `(x, y)` and the position of a lattice point on
//! a supporting line.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, Exponent};
use crate::valuation::{EdgeData, MonomialValuation};

/// Compact boundary of `conv(supp f + ℕ²)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Vertices sorted by `a` ascending (hence `b` descending).
    pub vertices: Vec<Exponent>,
    pub edges: Vec<Edge>,
    pub support: Vec<Exponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub start: Exponent,
    pub end: Exponent,
    /// Primitive inner normal `(α, β)`; the edge lies on `αa + βb = γ`.
    pub normal: (u64, u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Position {
    OutsideOrEndpoint,
    StrictlyInterior,
}

fn cross(o: Exponent, a: Exponent, b: Exponent) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

pub fn newton_polygon(f: &BiPoly) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support: Vec<Exponent> = f.terms().map(|(&e, _)| e).collect();
    let b_min = support.iter().map(|e| e.1).min().unwrap();
    let a_end = support
        .iter()
        .filter(|e| e.1 == b_min)
        .map(|e| e.0)
        .min()
        .unwrap();
    // points not dominated by a point weakly to the lower left
    let mut staircase: Vec<Exponent> = Vec::new();
    let mut sorted = support.clone();
    sorted.sort();
    for e in sorted {
        if e.0 > a_end {
            break;
        }
        if staircase.last().is_none_or(|c| e.1 < c.1) {
            staircase.push(e);
        }
    }
    let mut hull: Vec<Exponent> = Vec::new();
    for p in staircase {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let edges = hull
        .windows(2)
        .map(|w| {
            let (s, e) = (w[0], w[1]);
            let da = (e.0 - s.0) as u64;
            let db = (s.1 - e.1) as u64;
            let g = da.gcd(&db);
            Edge {
                start: s,
                end: e,
                normal: (db / g, da / g),
            }
        })
        .collect();
    Ok(NewtonPolygon {
        vertices: hull,
        edges,
        support,
    })
}

impl NewtonPolygon {
    /// Support points on the face minimizing `αa + βb`, computed from the
    /// hull vertices alone.
    pub fn face_support(&self, alpha: u64, beta: u64) -> Vec<Exponent> {
        let w = |e: &Exponent| e.0 as u64 * alpha + e.1 as u64 * beta;
        let gamma = self.vertices.iter().map(w).min().unwrap();
        let on: Vec<&Exponent> = self.vertices.iter().filter(|e| w(e) == gamma).collect();
        let (lo, hi) = (on[0].0, on[on.len() - 1].0);
        let mut out: Vec<Exponent> = self
            .support
            .iter()
            .filter(|e| e.0 >= lo && e.0 <= hi && w(e) == gamma)
            .copied()
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Where `s0` sits relative to the edge `[s1, s2]` on the line `D`.
pub fn position_test(s0: (u32, u32), v: &MonomialValuation, e: &EdgeData) -> Result<Position> {
    if v.weight(s0.0, s0.1) != e.gamma {
        return Err(Error::NotOnLineD {
            a0: s0.0,
            b0: s0.1,
            gamma: e.gamma,
        });
    }
    let b0 = s0.1;
    if e.min_b() < b0 && b0 < e.max_b() {
        Ok(Position::StrictlyInterior)
    } else {
        Ok(Position::OutsideOrEndpoint)
    }
}

/// Optional overlay: the line `D`, the edge endpoints and the point `s0`.
#[derive(Clone, Debug)]
pub struct Annotation {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub s0: Option<(u32, u32)>,
    pub s1: Option<Exponent>,
    pub s2: Option<Exponent>,
}

fn extent(poly: &NewtonPolygon, ann: Option<&Annotation>) -> (u32, u32) {
    let mut am = poly.support.iter().map(|e| e.0).max().unwrap_or(0);
    let mut bm = poly.support.iter().map(|e| e.1).max().unwrap_or(0);
    if let Some(a) = ann {
        if let Some(s) = a.s0 {
            am = am.max(s.0);
            bm = bm.max(s.1);
        }
    }
    (am + 1, bm + 1)
}

/// Character grid: `*` support, `o` hull vertex, `1`/`2` edge endpoints,
/// `s` the point `s0`, `.` lattice points of `D`.
pub fn render_ascii(poly: &NewtonPolygon, ann: Option<&Annotation>) -> String {
    let (w, h) = extent(poly, ann);
    let mut out = String::new();
    for b in (0..=h).rev() {
        write!(out, "{b:>3} ").unwrap();
        for a in 0..=w {
            let e = (a, b);
            let mut ch = ' ';
            if let Some(an) = ann {
                if a as u64 * an.alpha + b as u64 * an.beta == an.gamma {
                    ch = '.';
                }
            }
            if poly.support.contains(&e) {
                ch = '*';
            }
            if poly.vertices.contains(&e) {
                ch = 'o';
            }
            if let Some(an) = ann {
                if an.s1 == Some(e) {
                    ch = '1';
                }
                if an.s2 == Some(e) {
                    ch = '2';
                }
                if an.s0 == Some(e) {
                    ch = 's';
                }
            }
            out.push(ch);
            out.push(' ');
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out.push_str("    ");
    for a in 0..=w {
        write!(out, "{} ", a % 10).unwrap();
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    out
}

pub fn render_svg(poly: &NewtonPolygon, ann: Option<&Annotation>) -> String {
    const CELL: u32 = 40;
    const PAD: u32 = 30;
    let (w, h) = extent(poly, ann);
    let (width, height) = (w * CELL + 2 * PAD, h * CELL + 2 * PAD);
    let px = |a: f64| PAD as f64 + a * CELL as f64;
    let py = |b: f64| (height - PAD) as f64 - b * CELL as f64;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        px(0.0),
        py(0.0),
        px(w as f64),
        py(0.0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        px(0.0),
        py(0.0),
        px(0.0),
        py(h as f64)
    )
    .unwrap();
    if let Some(an) = ann {
        // D: αa + βb = γ clipped to the first quadrant
        let a_max = an.gamma as f64 / an.alpha as f64;
        let b_max = an.gamma as f64 / an.beta as f64;
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="4 3"/>"#,
            px(0.0),
            py(b_max),
            px(a_max),
            py(0.0)
        )
        .unwrap();
    }
    for e in &poly.edges {
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="blue" stroke-width="2"/>"#,
            px(e.start.0 as f64),
            py(e.start.1 as f64),
            px(e.end.0 as f64),
            py(e.end.1 as f64)
        )
        .unwrap();
    }
    for p in &poly.support {
        let fill = if poly.vertices.contains(p) {
            "blue"
        } else {
            "black"
        };
        writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="4" fill="{fill}"/>"#,
            px(p.0 as f64),
            py(p.1 as f64)
        )
        .unwrap();
    }
    if let Some(an) = ann {
        let labels = [("s0", an.s0), ("s1", an.s1), ("s2", an.s2)];
        for (name, pt) in labels {
            if let Some(p) = pt {
                writeln!(
                    s,
                    r#"<text x="{}" y="{}" font-size="12">{name}</text>"#,
                    px(p.0 as f64) + 6.0,
                    py(p.1 as f64) - 6.0
                )
                .unwrap();
            }
        }
        if let Some(p) = an.s0 {
            writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="5" fill="none" stroke="red"/>"#,
                px(p.0 as f64),
                py(p.1 as f64)
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
