//! SVG pictures of polygons, tilings, unfolded surfaces and cylinder
//! decompositions. Coordinates come from certified enclosures and are
//! printed with 15 significant digits; nothing here feeds back into a
//! computation.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::covers::Tiling;
use crate::flow::Decomposition;
use crate::geometry::Vec2;
use crate::polygon::Polygon;
use crate::unfolding::TranslationSurface;

const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7"];

/// 15 significant digits, plain notation, trailing zeros dropped.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (14 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn point(v: &Vec2) -> (f64, f64) {
    v.to_f64()
}

struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new(), min: (f64::INFINITY, f64::INFINITY), max: (f64::NEG_INFINITY, f64::NEG_INFINITY) }
    }

    fn grow(&mut self, p: (f64, f64)) {
        self.min = (self.min.0.min(p.0), self.min.1.min(p.1));
        self.max = (self.max.0.max(p.0), self.max.1.max(p.1));
    }

    // y is flipped so that the picture has the usual orientation
    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, stroke: &str, width: f64) {
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{},{}", num(x), num(-y))).collect();
        for &p in pts {
            self.grow(p);
        }
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="{}" stroke-linejoin="round"/>"#,
            coords.join(" "),
            num(width)
        );
    }

    fn dot(&mut self, p: (f64, f64), r: f64, fill: &str) {
        self.grow(p);
        let _ = writeln!(self.body, r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#, num(p.0), num(-p.1), num(r));
    }

    fn text(&mut self, p: (f64, f64), size: f64, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-size="{}" text-anchor="middle" font-family="sans-serif">{s}</text>"#,
            num(p.0),
            num(-p.1),
            num(size)
        );
    }

    fn finish(self, pad: f64) -> String {
        let (x0, y0) = (self.min.0 - pad, -self.max.1 - pad);
        let (w, h) = (self.max.0 - self.min.0 + 2.0 * pad, self.max.1 - self.min.1 + 2.0 * pad);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">\n{}</svg>\n",
            num(x0),
            num(y0),
            num(w),
            num(h),
            num(600.0),
            num(600.0 * h / w),
            self.body
        )
    }
}

fn vertices(p: &Polygon) -> Vec<(f64, f64)> {
    p.vertices().iter().map(point).collect()
}

fn scale_of(p: &Polygon) -> f64 {
    let v = vertices(p);
    let w = v.iter().map(|q| q.0).fold(f64::NEG_INFINITY, f64::max) - v.iter().map(|q| q.0).fold(f64::INFINITY, f64::min);
    let h = v.iter().map(|q| q.1).fold(f64::NEG_INFINITY, f64::max) - v.iter().map(|q| q.1).fold(f64::INFINITY, f64::min);
    w.max(h)
}

pub fn polygon_svg(p: &Polygon) -> String {
    let mut c = Canvas::new();
    let s = scale_of(p);
    c.polygon(&vertices(p), "#dde6f0", "black", s / 150.0);
    for (i, v) in vertices(p).into_iter().enumerate() {
        c.dot(v, s / 80.0, "black");
        c.text((v.0, v.1 + s / 30.0), s / 25.0, &i.to_string());
    }
    c.finish(s / 10.0)
}

pub fn tiling_svg(t: &Tiling) -> String {
    let mut c = Canvas::new();
    let s = scale_of(t.outline());
    for k in 0..t.len() {
        let pts: Vec<(f64, f64)> = t.placed(k).iter().map(point).collect();
        let fill = if t.motions()[k].element.reflection { "#f3d9b1" } else { "#dde6f0" };
        c.polygon(&pts, fill, "#777777", s / 400.0);
    }
    let origin = point(t.origin());
    let outline: Vec<(f64, f64)> = vertices(t.outline()).into_iter().map(|(x, y)| (x + origin.0, y + origin.1)).collect();
    c.polygon(&outline, "none", "black", s / 150.0);
    c.finish(s / 10.0)
}

/// Faces laid out on a grid in their own charts, cone points colored by
/// multiplicity.
pub fn surface_svg(m: &TranslationSurface) -> String {
    let mut c = Canvas::new();
    let faces = m.faces();
    let cols = (faces.len() as f64).sqrt().ceil().max(1.0) as usize;
    let cell = faces.iter().map(|f| scale_of(&f.polygon)).fold(0.0, f64::max) * 1.3;
    for (i, f) in faces.iter().enumerate() {
        let v = vertices(&f.polygon);
        let cx = v.iter().map(|q| q.0).sum::<f64>() / v.len() as f64;
        let cy = v.iter().map(|q| q.1).sum::<f64>() / v.len() as f64;
        let off = ((i % cols) as f64 * cell - cx, -((i / cols) as f64) * cell - cy);
        let pts: Vec<(f64, f64)> = v.iter().map(|q| (q.0 + off.0, q.1 + off.1)).collect();
        c.polygon(&pts, "#eef2f6", "black", cell / 300.0);
        c.text((cx + off.0, cy + off.1), cell / 12.0, &i.to_string());
        for (j, q) in pts.iter().enumerate() {
            let cp = &m.cone_points()[m.class_of(i, j)];
            let color = PALETTE[(cp.multiplicity as usize - 1) % PALETTE.len()];
            c.dot(*q, cell / 60.0, color);
        }
    }
    c.finish(cell / 5.0)
}

/// Each face turned so the flow is horizontal, its pieces shaded by the
/// cylinder they belong to.
pub fn decomposition_svg(m: &TranslationSurface, d: &Decomposition) -> String {
    let mut c = Canvas::new();
    let faces = m.faces();
    let theta = -d.direction.multiple.to_f64().unwrap_or(0.0) * std::f64::consts::PI;
    let turn = |p: (f64, f64)| (p.0 * theta.cos() - p.1 * theta.sin(), p.0 * theta.sin() + p.1 * theta.cos());
    let cols = (faces.len() as f64).sqrt().ceil().max(1.0) as usize;
    let cell = faces.iter().map(|f| scale_of(&f.polygon)).fold(0.0, f64::max) * 1.4;
    let turned: Vec<Vec<(f64, f64)>> = faces.iter().map(|f| vertices(&f.polygon).into_iter().map(turn).collect()).collect();
    let offsets: Vec<(f64, f64)> = turned
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let cx = v.iter().map(|q| q.0).sum::<f64>() / v.len() as f64;
            let cy = v.iter().map(|q| q.1).sum::<f64>() / v.len() as f64;
            ((i % cols) as f64 * cell - cx, -((i / cols) as f64) * cell - cy)
        })
        .collect();
    let x_at = |v: &[(f64, f64)], e: usize, y: f64| {
        let (a, b) = (v[e], v[(e + 1) % v.len()]);
        if (b.1 - a.1).abs() < f64::EPSILON {
            a.0
        } else {
            a.0 + (y - a.1) * (b.0 - a.0) / (b.1 - a.1)
        }
    };
    for piece in &d.pieces {
        let v = &turned[piece.face];
        let o = offsets[piece.face];
        let (y0, y1) = (piece.y0.to_f64(), piece.y1.to_f64());
        let quad = [
            (x_at(v, piece.left_edge, y0), y0),
            (x_at(v, piece.right_edge, y0), y0),
            (x_at(v, piece.right_edge, y1), y1),
            (x_at(v, piece.left_edge, y1), y1),
        ];
        let pts: Vec<(f64, f64)> = quad.iter().map(|q| (q.0 + o.0, q.1 + o.1)).collect();
        c.polygon(&pts, PALETTE[piece.cylinder % PALETTE.len()], "none", 0.0);
    }
    for (i, v) in turned.iter().enumerate() {
        let o = offsets[i];
        let pts: Vec<(f64, f64)> = v.iter().map(|q| (q.0 + o.0, q.1 + o.1)).collect();
        c.polygon(&pts, "none", "black", cell / 300.0);
    }
    c.finish(cell / 5.0)
}
