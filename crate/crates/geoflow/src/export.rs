//! Plain-text artifact writers: CSV tables, SVG line drawings, and OFF
//! triangle meshes.
//!
//! Numbers are written with 17 significant digits so that a round trip
//! through the file reproduces the binary value. CSV quoting follows
//! RFC 4180: fields containing commas, quotes, or newlines are wrapped in
//! double quotes with inner quotes doubled.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// Render a number with 17 significant digits.
pub fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Quote a text field per RFC 4180 when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A CSV cell: either a full-precision number or a text label.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(","));
    out.push_str("\r\n");
    for row in rows {
        let line = row
            .iter()
            .map(|c| match c {
                Cell::Num(v) => fmt_value(*v),
                Cell::Text(s) => csv_field(s),
            })
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&line);
        out.push_str("\r\n");
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

/// A polyline with an optional class used for styling.
#[derive(Debug, Clone)]
pub struct SvgPath {
    pub points: Vec<[f64; 2]>,
    pub stroke: &'static str,
    pub label: String,
}

/// A point marker with a text annotation.
#[derive(Debug, Clone)]
pub struct SvgMarker {
    pub point: [f64; 2],
    pub label: String,
}

/// Write paths and markers as an SVG whose viewBox is expressed directly
/// in data coordinates (y flipped so larger values plot upward).
pub fn write_svg(path: &Path, paths: &[SvgPath], markers: &[SvgMarker]) -> Result<()> {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for p in paths {
        for q in &p.points {
            xs.push(q[0]);
            ys.push(q[1]);
        }
    }
    for m in markers {
        xs.push(m.point[0]);
        ys.push(m.point[1]);
    }
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let pad_x = 0.05 * (x1 - x0).max(1e-9);
    let pad_y = 0.05 * (y1 - y0).max(1e-9);
    let (x0, x1) = (x0 - pad_x, x1 + pad_x);
    let (y0, y1) = (y0 - pad_y, y1 + pad_y);
    let w = x1 - x0;
    let h = y1 - y0;
    let sw = 0.004 * w.max(h);
    let font = 0.03 * w.max(h);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {} {w} {h}\">",
        -y1
    );
    let _ = writeln!(s, "  <g transform=\"scale(1,-1)\">");
    // axes through the origin when it is inside the frame
    if x0 < 0.0 && x1 > 0.0 {
        let _ = writeln!(
            s,
            "    <line x1=\"0\" y1=\"{y0}\" x2=\"0\" y2=\"{y1}\" stroke=\"#999\" stroke-width=\"{sw}\"/>"
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            "    <line x1=\"{x0}\" y1=\"0\" x2=\"{x1}\" y2=\"0\" stroke=\"#999\" stroke-width=\"{sw}\"/>"
        );
    }
    for p in paths {
        let pts = p
            .points
            .iter()
            .map(|q| format!("{},{}", q[0], q[1]))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            s,
            "    <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{sw}\" points=\"{pts}\"><title>{}</title></polyline>",
            p.stroke, p.label
        );
    }
    for m in markers {
        let _ = writeln!(
            s,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#d33\"/>",
            m.point[0], m.point[1], 1.5 * sw
        );
    }
    let _ = writeln!(s, "  </g>");
    // annotations in unflipped text coordinates
    for m in markers {
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"{font}\">{}</text>",
            m.point[0] + 2.0 * sw,
            -(m.point[1] + 2.0 * sw),
            m.label
        );
    }
    let _ = writeln!(
        s,
        "  <text x=\"{}\" y=\"{}\" font-size=\"{font}\">{:.3}..{:.3} x {:.3}..{:.3}</text>",
        x0 + 2.0 * sw,
        -(y0 + 2.0 * sw),
        x0,
        x1,
        y0,
        y1
    );
    let _ = writeln!(s, "</svg>");
    let mut f = std::fs::File::create(path)?;
    f.write_all(s.as_bytes())?;
    Ok(())
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

/// Write a height field over an n x n vertex grid as an OFF triangle mesh.
/// `vertices` holds rows of (x, y, z), row-major with `n` vertices per row.
pub fn write_off_grid(path: &Path, vertices: &[[f64; 3]], n: usize) -> Result<()> {
    let rows = vertices.len() / n;
    let n_faces = 2 * (rows - 1) * (n - 1);
    let mut s = String::new();
    let _ = writeln!(s, "OFF");
    let _ = writeln!(s, "{} {} 0", vertices.len(), n_faces);
    for v in vertices {
        let _ = writeln!(s, "{} {} {}", fmt_value(v[0]), fmt_value(v[1]), fmt_value(v[2]));
    }
    for r in 0..rows - 1 {
        for c in 0..n - 1 {
            let a = r * n + c;
            let b = a + 1;
            let d = a + n;
            let e = d + 1;
            let _ = writeln!(s, "3 {a} {b} {e}");
            let _ = writeln!(s, "3 {a} {e} {d}");
        }
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(s.as_bytes())?;
    Ok(())
}
