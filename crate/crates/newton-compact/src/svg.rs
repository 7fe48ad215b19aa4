//! Deterministic SVG drawing of a Newton polygon.

use std::fmt::Write;

use anyhow::{bail, Result};
use newton_compact_core::newton::{Face, NewtonPolytope};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 40.0;
const AT_INFINITY: &str = "#c0392b";
const INTERIOR: &str = "#7f8c8d";

/// Renders a polygon in two variables: grid, filled hull, then edges and
/// vertices coloured by whether they lie on the boundary at infinity.
pub fn render(p: &NewtonPolytope, faces: &[Face]) -> Result<String> {
    if p.nvars() != 2 {
        bail!("svg output needs exactly two variables, got {}", p.nvars());
    }
    let extent = p
        .support()
        .iter()
        .flat_map(|a| a.as_slice().iter().copied())
        .max()
        .unwrap_or(0)
        .max(1);
    let step = (SIZE - 2.0 * MARGIN) / f64::from(extent);
    let at = |v: &[u32]| (MARGIN + f64::from(v[0]) * step, SIZE - MARGIN - f64::from(v[1]) * step);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    )?;
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#
    )?;
    for i in 0..=extent {
        let c = MARGIN + f64::from(i) * step;
        writeln!(
            out,
            r##"<line x1="{c:.2}" y1="{MARGIN:.2}" x2="{c:.2}" y2="{:.2}" stroke="#eeeeee"/>"##,
            SIZE - MARGIN
        )?;
        writeln!(
            out,
            r##"<line x1="{MARGIN:.2}" y1="{c:.2}" x2="{:.2}" y2="{c:.2}" stroke="#eeeeee"/>"##,
            SIZE - MARGIN
        )?;
    }

    let ordered = ordered_vertices(p);
    if ordered.len() > 2 {
        let pts: Vec<String> = ordered
            .iter()
            .map(|v| {
                let (x, y) = at(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            r##"<polygon points="{}" fill="#d6eaf8" stroke="none"/>"##,
            pts.join(" ")
        )?;
    }

    for face in faces.iter().filter(|f| f.dim() == 1) {
        let ends = p.vertices_of(face.vertex_mask());
        let (x1, y1) = at(ends[0].as_slice());
        let (x2, y2) = at(ends[1].as_slice());
        let colour = if face.at_infinity() { AT_INFINITY } else { INTERIOR };
        writeln!(
            out,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{colour}" stroke-width="3"/>"#
        )?;
    }
    for a in p.support() {
        let (x, y) = at(a.as_slice());
        writeln!(out, r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#2c3e50"/>"##)?;
    }
    for face in faces.iter().filter(|f| f.dim() == 0) {
        let v = p.vertices_of(face.vertex_mask())[0];
        let (x, y) = at(v.as_slice());
        let colour = if face.at_infinity() { AT_INFINITY } else { INTERIOR };
        writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="{colour}"><title>({}, {})</title></circle>"#,
            v.as_slice()[0],
            v.as_slice()[1]
        )?;
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Vertices in counter-clockwise order around their centroid.
fn ordered_vertices(p: &NewtonPolytope) -> Vec<Vec<u32>> {
    let verts: Vec<Vec<u32>> = p.vertices().iter().map(|v| v.as_slice().to_vec()).collect();
    let k = verts.len() as f64;
    let cx = verts.iter().map(|v| f64::from(v[0])).sum::<f64>() / k;
    let cy = verts.iter().map(|v| f64::from(v[1])).sum::<f64>() / k;
    let mut sorted = verts;
    sorted.sort_by(|a, b| {
        let ta = (f64::from(a[1]) - cy).atan2(f64::from(a[0]) - cx);
        let tb = (f64::from(b[1]) - cy).atan2(f64::from(b[0]) - cx);
        ta.total_cmp(&tb)
    });
    sorted
}
