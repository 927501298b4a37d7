// Floating-point tracer used as an independent check on the exact
// cylinder decomposition. It never looks at saddle connections: it sweeps
// leaves perpendicular to the flow until their return length changes.

use billiards_core::flow::{cylinder_decomposition, FlowOptions, PointRef};
use billiards_core::polygon::{triangle_with_unit_side, RationalAngle};
use billiards_core::unfolding::{unfold, TranslationSurface};

type P = (f64, f64);

struct FloatSurface {
    verts: Vec<Vec<P>>,
    partner: Vec<Vec<(usize, usize)>>,
    singular: Vec<Vec<bool>>,
}

impl FloatSurface {
    fn new(m: &TranslationSurface, theta: f64) -> Self {
        let (s, c) = (-theta * std::f64::consts::PI).sin_cos();
        let verts = m
            .faces()
            .iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .map(|v| {
                        let (x, y) = v.to_f64();
                        (c * x - s * y, s * x + c * y)
                    })
                    .collect()
            })
            .collect();
        let singular = (0..m.faces().len())
            .map(|f| {
                (0..m.faces()[f].polygon.len())
                    .map(|v| m.cone_points()[m.class_of(f, v)].is_singular)
                    .collect()
            })
            .collect();
        FloatSurface { verts, partner: m.pairing().to_vec(), singular }
    }

    /// First edge crossed by the ray p + t d (t > tiny) inside face f.
    fn exit(&self, f: usize, p: P, d: P) -> (f64, usize) {
        let vs = &self.verts[f];
        let n = vs.len();
        let mut best = (f64::INFINITY, usize::MAX);
        for e in 0..n {
            let a = vs[e];
            let b = vs[(e + 1) % n];
            let ex = (b.0 - a.0, b.1 - a.1);
            let den = d.0 * ex.1 - d.1 * ex.0;
            if den.abs() < 1e-15 {
                continue;
            }
            let w = (a.0 - p.0, a.1 - p.1);
            let t = (w.0 * ex.1 - w.1 * ex.0) / den;
            let u = (w.0 * d.1 - w.1 * d.0) / den;
            if t > 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&u) && t < best.0 {
                best = (t, e);
            }
        }
        best
    }

    fn cross(&self, f: usize, e: usize, q: P) -> (usize, P) {
        let (g, e2) = self.partner[f][e];
        let a = self.verts[f][e];
        let n2 = self.verts[g].len();
        let b = self.verts[g][(e2 + 1) % n2];
        (g, (q.0 - a.0 + b.0, q.1 - a.1 + b.1))
    }

    fn ray(&self, mut f: usize, mut p: P, d: P, mut dist: f64) -> (usize, P) {
        loop {
            let (t, e) = self.exit(f, p, d);
            if t >= dist {
                return (f, (p.0 + dist * d.0, p.1 + dist * d.1));
            }
            let q = (p.0 + t * d.0, p.1 + t * d.1);
            (f, p) = self.cross(f, e, q);
            dist -= t;
        }
    }

    /// Return length of the horizontal leaf through (f, p), if it closes,
    /// with the smallest vertical gaps to singular vertices sitting directly
    /// above and below the leaf inside the faces it crosses.
    fn leaf(&self, f0: usize, p0: P) -> Option<Leaf> {
        let (mut f, mut p) = (f0, p0);
        let mut out = Leaf { len: 0.0, up: f64::INFINITY, down: f64::INFINITY };
        for _ in 0..20000 {
            let (t, e) = self.exit(f, p, (1.0, 0.0));
            if !t.is_finite() {
                return None;
            }
            let closing = f == f0 && out.len > 1e-9 && (p.1 - p0.1).abs() < 1e-9 && p.0 <= p0.0 + 1e-9 && p0.0 <= p.0 + t;
            let x1 = if closing { p0.0 } else { p.0 + t };
            for (v, q) in self.verts[f].iter().enumerate() {
                if self.singular[f][v] && q.0 >= p.0 - 1e-12 && q.0 <= x1 + 1e-12 {
                    let g = q.1 - p.1;
                    if g > 0.0 {
                        out.up = out.up.min(g);
                    } else {
                        out.down = out.down.min(-g);
                    }
                }
            }
            if closing {
                out.len += p0.0 - p.0;
                return Some(out);
            }
            out.len += t;
            (f, p) = self.cross(f, e, (p.0 + t, p.1));
        }
        None
    }

    /// Distance from (f, p) in direction d (straight up or down) to the
    /// first singular leaf.
    fn sweep(&self, f: usize, p: P, d: P, c0: f64) -> f64 {
        let step = 1e-3;
        let mut t = 0.0;
        loop {
            let (g, q) = self.ray(f, p, d, t);
            let Some(leaf) = self.leaf(g, q) else { panic!("swept leaf does not close at t={t} from {p:?} face {f} -> {g} {q:?}") };
            assert!((leaf.len - c0).abs() < 1e-7, "circumference changed inside the sweep: t={t} {} vs {c0} gaps {} {}", leaf.len, leaf.up, leaf.down);
            let gap = if d.1 > 0.0 { leaf.up } else { leaf.down };
            if gap <= step {
                return t + gap;
            }
            t += step;
            assert!(t < 10.0, "sweep did not leave the cylinder");
        }
    }
}

struct Leaf {
    len: f64,
    up: f64,
    down: f64,
}

fn angle_of(a: P, b: P) -> f64 {
    (b.1 - a.1).atan2(b.0 - a.0)
}

/// Distances (below, above) from the point of class k to its cylinder's
/// boundaries, measured by the float sweep from a point just off the vertex.
fn oracle_split(m: &TranslationSurface, theta: f64, k: usize) -> (f64, f64) {
    let s = FloatSurface::new(m, theta);
    let tau = std::f64::consts::TAU;
    let (f, v) = (0..s.verts.len())
        .flat_map(|f| (0..s.verts[f].len()).map(move |v| (f, v)))
        .find(|&(f, v)| m.class_of(f, v) == k)
        .expect("class has a corner");
    let vs = &s.verts[f];
    let n = vs.len();
    let a0 = angle_of(vs[v], vs[(v + 1) % n]);
    let a1 = angle_of(vs[v], vs[(v + n - 1) % n]);
    let phi = a0 + 0.37 * (a1 - a0).rem_euclid(tau);
    let delta = 1e-2;
    let q = (vs[v].0 + delta * phi.cos(), vs[v].1 + delta * phi.sin());
    let c0 = s.leaf(f, q).expect("leaf next to the point does not close").len;
    let down = s.sweep(f, q, (0.0, -1.0), c0);
    let up = s.sweep(f, q, (0.0, 1.0), c0);
    let lift = delta * phi.sin();
    (down - lift, up + lift)
}

fn check(angles: [(i64, i64); 3], unit: usize, dir: (i64, i64)) {
    let [a, b, c] = angles.map(|(p, q)| RationalAngle::frac(p, q));
    let p = triangle_with_unit_side(&a, &b, &c, unit).unwrap();
    let m = unfold(&p);
    let theta = RationalAngle::frac(dir.0, dir.1);
    let d = cylinder_decomposition(&m, &theta, &FlowOptions::default()).unwrap();
    let thetaf = dir.0 as f64 / dir.1 as f64;
    let mut checked = 0;
    for k in 0..m.cone_points().len() {
        let Ok(split) = d.height_split(&m, &PointRef::Class(k)) else { continue };
        let (below, above) = oracle_split(&m, thetaf, k);
        let h1 = split.h1.to_f64();
        let h = split.h.to_f64();
        assert!((below - h1).abs() < 1e-6, "class {k}: oracle below {below}, exact h1 {h1}");
        assert!((below + above - h).abs() < 1e-6, "class {k}: oracle height {}, exact h {h}", below + above);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn oracle_agrees_on_isosceles_right_octagon() {
    check([(1, 2), (1, 8), (3, 8)], 0, (0, 1));
}

#[test]
fn oracle_agrees_on_double_pentagon() {
    check([(1, 2), (1, 5), (3, 10)], 0, (1, 2));
}

#[test]
fn oracle_agrees_on_twelfths_triangle() {
    check([(1, 4), (1, 3), (5, 12)], 0, (0, 1));
}

#[test]
fn oracle_agrees_on_ninths_triangle() {
    check([(2, 9), (1, 3), (4, 9)], 0, (1, 6));
}

#[test]
fn oracle_agrees_on_fifteenths_triangle() {
    check([(1, 5), (1, 3), (7, 15)], 1, (1, 30));
    check([(1, 5), (1, 3), (7, 15)], 1, (1, 10));
}
