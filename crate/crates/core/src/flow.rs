//! Straight-line flow in a rational direction: separatrices, saddle
//! connections, cylinder decompositions and height splits.
//!
//! Every face chart is turned so the flow runs along +x. All predicates are
//! exact; a ray hitting a vertex is detected as an equality, never within a
//! tolerance.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{CyclotomicReal, Rational};
use crate::geometry::Vec2;
use crate::polygon::RationalAngle;
use crate::unfolding::TranslationSurface;

type Real = CyclotomicReal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("not shown periodic: a separatrix from class {class} exceeded the length bound")]
    NotShownPeriodic { class: usize },
    #[error("point lies on a cylinder boundary in this direction")]
    OnBoundary,
    #[error("point is not inside the surface")]
    PointNotFound,
    #[error("inconsistent decomposition: {0}")]
    Inconsistent(String),
}

/// A point of a face, in that face's own (unturned) chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePoint {
    pub face: usize,
    pub pos: Vec2,
}

/// Either a vertex class or an explicit point.
#[derive(Clone, Debug)]
pub enum PointRef {
    Class(usize),
    Point(SurfacePoint),
}

/// Horizontal piece of a trajectory inside one face (turned chart).
#[derive(Clone, Debug, Serialize)]
pub struct Segment {
    pub face: usize,
    pub y: Real,
    pub x0: Real,
    pub x1: Real,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaddleConnection {
    pub start: usize,
    pub end: usize,
    pub length: Real,
    /// Displacement in the original charts.
    pub holonomy: Vec2,
    pub segments: Vec<Segment>,
}

/// Part of a face between two consecutive cut levels, bounded left and
/// right by edges.
#[derive(Clone, Debug, Serialize)]
pub struct Piece {
    pub face: usize,
    pub y0: Real,
    pub y1: Real,
    pub left_edge: usize,
    pub right_edge: usize,
    /// Added to chart heights to get heights across the cylinder.
    pub offset: Real,
    pub cylinder: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cylinder {
    pub circumference: Real,
    pub height: Real,
    pub area: Real,
    pub pieces: Vec<usize>,
    /// Saddle connections on the lower and upper boundary.
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    #[serde(skip)]
    ymin: Real,
}

#[derive(Clone, Debug)]
struct FaceData {
    verts: Vec<Vec2>,
    dirs: Vec<RationalAngle>,
    angles: Vec<RationalAngle>,
    /// dx/dy along each non-horizontal edge
    inv_slope: Vec<Option<Real>>,
}

impl FaceData {
    fn n(&self) -> usize {
        self.verts.len()
    }

    fn edge_end(&self, e: usize) -> &Vec2 {
        &self.verts[(e + 1) % self.n()]
    }

    /// Abscissa where edge `e` meets height `y` (edge must not be horizontal).
    fn x_at(&self, e: usize, y: &Real) -> Real {
        let a = &self.verts[e];
        let s = self.inv_slope[e].as_ref().expect("non-horizontal edge");
        &a.x + &(&(y - &a.y) * s)
    }

    fn straddles(&self, e: usize, y: &Real) -> bool {
        let a = &self.verts[e].y;
        let b = &self.edge_end(e).y;
        (a < y && y < b) || (b < y && y < a)
    }

    fn horizontal(&self, e: usize) -> bool {
        self.inv_slope[e].is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub direction: RationalAngle,
    pub stop_classes: Vec<usize>,
    pub saddle_connections: Vec<SaddleConnection>,
    pub pieces: Vec<Piece>,
    pub cylinders: Vec<Cylinder>,
    faces: Vec<FaceData>,
    cos: Real,
    sin: Real,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightSplit {
    pub cylinder: usize,
    pub h1: Real,
    pub h: Real,
    /// h1 / h
    pub ratio: Real,
    /// Whether h1 / h is rational.
    pub rational: bool,
    /// Whether (h - h1) / h is rational; always agrees with `rational`.
    pub complement_rational: bool,
}

#[derive(Clone, Debug, Default)]
pub struct FlowOptions {
    /// Classes treated as marked (trajectories stop there) besides the
    /// singular ones.
    pub marked: Vec<usize>,
    /// Maximal separatrix length; defaults to 40 times the diameter.
    pub length_bound: Option<Real>,
}

/// Default bound: 40 times the largest vertex distance of any face (the
/// base polygon for unfolded surfaces).
pub fn default_length_bound(m: &TranslationSurface) -> Real {
    let d2 = match m.base() {
        Some(p) => p.diameter_squared(),
        None => m
            .faces()
            .iter()
            .map(|f| f.polygon.diameter_squared())
            .max()
            .unwrap_or_else(Real::one),
    };
    // 40·d, compared through squares
    d2.scale(&Rational::from_integer(BigInt::from(1600)))
}

fn rotate_to_horizontal(m: &TranslationSurface, theta: &RationalAngle) -> (Vec<FaceData>, Real, Real) {
    let c = theta.cos();
    let s = theta.sin();
    let neg = -theta;
    let faces = m
        .faces()
        .iter()
        .map(|f| {
            let poly = f.polygon.turned(&neg);
            let verts = poly.vertices();
            let dirs: Vec<RationalAngle> = poly.edges().iter().map(|e| e.direction.clone()).collect();
            let angles = poly.angles();
            let n = verts.len();
            let inv_slope = (0..n)
                .map(|e| {
                    let a = &verts[e];
                    let b = &verts[(e + 1) % n];
                    let dy = &b.y - &a.y;
                    (!dy.is_zero()).then(|| &(&b.x - &a.x) / &dy)
                })
                .collect();
            FaceData { verts, dirs, angles, inv_slope }
        })
        .collect();
    (faces, c, s)
}

/// Offset of direction 0 inside the sector of corner `(f, v)`: `Some(true)`
/// when the ray runs along edge `v`, `Some(false)` when it enters the face,
/// `None` when it is outside the sector.
fn outgoing(face: &FaceData, v: usize) -> Option<bool> {
    let t = (&RationalAngle::zero() - &face.dirs[v]).mod_two();
    if t.multiple.is_zero() {
        Some(true)
    } else if t.multiple < face.angles[v].multiple {
        Some(false)
    } else {
        None
    }
}

enum Hit {
    Vertex(usize),
    Edge(usize, Vec2),
}

/// First boundary point met by the ray from `p` along +x inside `face`.
fn next_hit(face: &FaceData, p: &Vec2) -> Option<(Real, Hit)> {
    let mut best: Option<(Real, Hit)> = None;
    let n = face.n();
    let consider = |x: Real, hit: Hit, best: &mut Option<(Real, Hit)>| {
        if x <= p.x {
            return;
        }
        if best.as_ref().is_none_or(|(bx, _)| x < *bx) {
            *best = Some((x, hit));
        }
    };
    for v in 0..n {
        if face.verts[v].y == p.y {
            consider(face.verts[v].x.clone(), Hit::Vertex(v), &mut best);
        }
    }
    for e in 0..n {
        if face.straddles(e, &p.y) {
            let x = face.x_at(e, &p.y);
            let q = Vec2::new(x.clone(), p.y.clone());
            consider(x, Hit::Edge(e, q), &mut best);
        }
    }
    best
}

struct Tracer<'a> {
    m: &'a TranslationSurface,
    faces: &'a [FaceData],
    stop: &'a [bool],
    bound2: &'a Real,
}

impl Tracer<'_> {
    /// The corner of `class` from which the +x ray leaves (regular classes
    /// have exactly one).
    fn exits(&self, class: usize) -> Vec<(usize, usize, bool)> {
        self.m.cone_points()[class]
            .vertex_orbit
            .iter()
            .filter_map(|&(f, v)| outgoing(&self.faces[f], v).map(|along| (f, v, along)))
            .collect()
    }

    fn trace(&self, start_class: usize, f0: usize, v0: usize, along0: bool) -> Result<SaddleConnection, FlowError> {
        let mut segments = Vec::new();
        let mut length = Real::zero();
        let (mut f, mut v, mut along) = (f0, v0, along0);
        // state: either leaving vertex v of face f, or inside f from point p
        let mut from_point: Option<Vec2> = None;
        loop {
            let face = &self.faces[f];
            let (p, hit) = match from_point.take() {
                None if along => {
                    let p = face.verts[v].clone();
                    let q = face.edge_end(v).clone();
                    (p, Some((q.x.clone(), Hit::Vertex((v + 1) % face.n()))))
                }
                None => {
                    let p = face.verts[v].clone();
                    let h = next_hit(face, &p);
                    (p, h)
                }
                Some(p) => {
                    let h = next_hit(face, &p);
                    (p, h)
                }
            };
            let (x, hit) = hit.ok_or_else(|| FlowError::Inconsistent(format!("ray escapes face {f}")))?;
            length = &length + &(&x - &p.x);
            segments.push(Segment { face: f, y: p.y.clone(), x0: p.x.clone(), x1: x.clone() });
            if (&length * &length) > *self.bound2 {
                return Err(FlowError::NotShownPeriodic { class: start_class });
            }
            match hit {
                Hit::Edge(e, q) => {
                    let (g, d) = self.m.partner(f, e);
                    let shift = &self.faces[g].edge_end(d).clone() - &face.verts[e];
                    from_point = Some(&q + &shift);
                    f = g;
                }
                Hit::Vertex(w) => {
                    let class = self.m.class_of(f, w);
                    if self.stop[class] {
                        return Ok(SaddleConnection {
                            start: start_class,
                            end: class,
                            length,
                            holonomy: Vec2::zero(),
                            segments,
                        });
                    }
                    let ex = self.exits(class);
                    if ex.len() != 1 {
                        return Err(FlowError::Inconsistent(format!(
                            "regular class {class} has {} outgoing sectors",
                            ex.len()
                        )));
                    }
                    (f, v, along) = ex[0];
                }
            }
        }
    }
}

/// Traces every outgoing separatrix in direction `theta` and, if all of
/// them are saddle connections within the length bound, cuts the surface
/// into cylinders.
pub fn cylinder_decomposition(
    m: &TranslationSurface,
    theta: &RationalAngle,
    opts: &FlowOptions,
) -> Result<Decomposition, FlowError> {
    let (faces, cos, sin) = rotate_to_horizontal(m, theta);
    let ncls = m.cone_points().len();
    let mut stop: Vec<bool> = m.cone_points().iter().map(|c| c.is_singular).collect();
    for &c in &opts.marked {
        stop[c] = true;
    }
    if !stop.iter().any(|&s| s) && ncls > 0 {
        stop[0] = true;
    }
    let bound2 = match &opts.length_bound {
        Some(b) => b * b,
        None => default_length_bound(m),
    };
    let tracer = Tracer { m, faces: &faces, stop: &stop, bound2: &bound2 };
    let stop_classes: Vec<usize> = (0..ncls).filter(|&c| stop[c]).collect();
    let mut saddle_connections = Vec::new();
    for &c in &stop_classes {
        for (f, v, along) in tracer.exits(c) {
            let mut sc = tracer.trace(c, f, v, along)?;
            sc.holonomy = Vec2::new(&sc.length * &cos, &sc.length * &sin);
            saddle_connections.push(sc);
        }
    }
    let mut d = Decomposition {
        direction: theta.clone(),
        stop_classes,
        saddle_connections,
        pieces: Vec::new(),
        cylinders: Vec::new(),
        faces,
        cos,
        sin,
    };
    d.build_cylinders(m)?;
    Ok(d)
}

impl Decomposition {
    fn segments_in(&self, f: usize) -> impl Iterator<Item = (usize, &Segment)> {
        self.saddle_connections
            .iter()
            .enumerate()
            .flat_map(|(i, sc)| sc.segments.iter().map(move |s| (i, s)))
            .filter(move |(_, s)| s.face == f)
    }

    /// Whether the point `(x, y)` of face `f` lies on a saddle connection.
    fn covered(&self, f: usize, x: &Real, y: &Real) -> bool {
        self.segments_in(f)
            .any(|(_, s)| &s.y == y && &s.x0 <= x && x <= &s.x1)
    }

    fn build_cylinders(&mut self, m: &TranslationSurface) -> Result<(), FlowError> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        // pieces per face, slab by slab
        let mut face_pieces: Vec<Vec<usize>> = vec![Vec::new(); self.faces.len()];
        for (f, face) in self.faces.iter().enumerate() {
            let mut levels: Vec<Real> = face.verts.iter().map(|v| v.y.clone()).collect();
            levels.extend(self.segments_in(f).map(|(_, s)| s.y.clone()));
            levels.sort();
            levels.dedup();
            for w in levels.windows(2) {
                let (y0, y1) = (&w[0], &w[1]);
                let mid = (y0 + y1).scale(&half);
                let mut xs: Vec<(Real, usize)> = (0..face.n())
                    .filter(|&e| face.straddles(e, &mid))
                    .map(|e| (face.x_at(e, &mid), e))
                    .collect();
                xs.sort_by(|a, b| a.0.cmp(&b.0));
                for pair in xs.chunks(2) {
                    if pair.len() != 2 {
                        return Err(FlowError::Inconsistent(format!("odd crossing count in face {f}")));
                    }
                    face_pieces[f].push(self.pieces.len());
                    self.pieces.push(Piece {
                        face: f,
                        y0: y0.clone(),
                        y1: y1.clone(),
                        left_edge: pair[0].1,
                        right_edge: pair[1].1,
                        offset: Real::zero(),
                        cylinder: usize::MAX,
                    });
                }
            }
        }
        // adjacency with height offsets: offset(b) = offset(a) + delta
        let mut adj: Vec<Vec<(usize, Real)>> = vec![Vec::new(); self.pieces.len()];
        let mut link = |a: usize, b: usize, delta: Real| {
            adj[a].push((b, delta.clone()));
            adj[b].push((a, -delta));
        };
        for a in 0..self.pieces.len() {
            let pa = &self.pieces[a];
            let f = pa.face;
            let face = &self.faces[f];
            // across the right edge
            let e = pa.right_edge;
            let (g, d) = m.partner(f, e);
            let shift = &self.faces[g].edge_end(d).clone() - &face.verts[e];
            let lo = &pa.y0 + &shift.y;
            let hi = &pa.y1 + &shift.y;
            for &b in &face_pieces[g] {
                let pb = &self.pieces[b];
                if pb.left_edge == d && pb.y0 < hi && lo < pb.y1 {
                    link(a, b, -&shift.y);
                }
            }
            // upward within the face
            for &b in &face_pieces[f] {
                let pb = &self.pieces[b];
                if pb.y0 != pa.y1 {
                    continue;
                }
                let y = &pa.y1;
                let l = face.x_at(pa.left_edge, y).max(face.x_at(pb.left_edge, y));
                let r = face.x_at(pa.right_edge, y).min(face.x_at(pb.right_edge, y));
                if l < r {
                    let xm = (&l + &r).scale(&half);
                    if !self.covered(f, &xm, y) {
                        link(a, b, Real::zero());
                    }
                }
            }
        }
        // across horizontal edges
        for (f, face) in self.faces.iter().enumerate() {
            for e in 0..face.n() {
                if !face.horizontal(e) {
                    continue;
                }
                let (g, d) = m.partner(f, e);
                if (g, d) < (f, e) {
                    continue;
                }
                let a0 = &face.verts[e];
                let a1 = face.edge_end(e);
                let mid = Vec2::new((&a0.x + &a1.x).scale(&half), a0.y.clone());
                let other = &self.faces[g];
                let shift = &other.edge_end(d).clone() - a0;
                let mid_g = &mid + &shift;
                if self.covered(f, &mid.x, &mid.y) || self.covered(g, &mid_g.x, &mid_g.y) {
                    continue;
                }
                let side_a = self.adjacent_to_edge(&face_pieces[f], face, e);
                let side_b = self.adjacent_to_edge(&face_pieces[g], other, d);
                for (pa, (la, ra)) in &side_a {
                    for (pb, (lb, rb)) in &side_b {
                        let l = la.clone().max(lb - &shift.x);
                        let r = ra.clone().min(rb - &shift.x);
                        if l < r {
                            link(*pa, *pb, -&shift.y);
                        }
                    }
                }
            }
        }
        // components with consistent offsets
        let mut comp = vec![usize::MAX; self.pieces.len()];
        let mut offsets: Vec<Option<Real>> = vec![None; self.pieces.len()];
        let mut cylinders = Vec::new();
        for s in 0..self.pieces.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = cylinders.len();
            let mut members = vec![s];
            comp[s] = id;
            offsets[s] = Some(Real::zero());
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                let oa = offsets[a].clone().expect("assigned");
                for (b, delta) in &adj[a] {
                    let ob = &oa + delta;
                    match &offsets[*b] {
                        Some(existing) => {
                            if *existing != ob {
                                return Err(FlowError::Inconsistent("cylinder heights do not close up".into()));
                            }
                        }
                        None => {
                            offsets[*b] = Some(ob);
                            comp[*b] = id;
                            members.push(*b);
                            queue.push_back(*b);
                        }
                    }
                }
            }
            cylinders.push(members);
        }
        for (i, p) in self.pieces.iter_mut().enumerate() {
            p.offset = offsets[i].clone().expect("assigned");
            p.cylinder = comp[i];
        }
        let mut out = Vec::with_capacity(cylinders.len());
        for members in cylinders {
            let mut ymin: Option<Real> = None;
            let mut ymax: Option<Real> = None;
            let mut area = Real::zero();
            for &i in &members {
                let p = &self.pieces[i];
                let face = &self.faces[p.face];
                let lo = &p.y0 + &p.offset;
                let hi = &p.y1 + &p.offset;
                ymin = Some(match ymin {
                    Some(v) => v.min(lo),
                    None => lo,
                });
                ymax = Some(match ymax {
                    Some(v) => v.max(hi),
                    None => hi,
                });
                let w0 = &face.x_at(p.right_edge, &p.y0) - &face.x_at(p.left_edge, &p.y0);
                let w1 = &face.x_at(p.right_edge, &p.y1) - &face.x_at(p.left_edge, &p.y1);
                area = &area + &(&(&w0 + &w1) * &(&p.y1 - &p.y0)).scale(&half);
            }
            let ymin = ymin.expect("non-empty");
            let height = &ymax.expect("non-empty") - &ymin;
            let circumference = &area / &height;
            out.push(Cylinder { circumference, height, area, pieces: members, bottom: Vec::new(), top: Vec::new(), ymin });
        }
        self.cylinders = out;
        self.attach_boundaries();
        self.check_widths()?;
        let total = m.area();
        let sum = self.cylinders.iter().fold(Real::zero(), |acc, c| &acc + &c.area);
        if sum != total {
            return Err(FlowError::Inconsistent("cylinder areas do not add up to the surface area".into()));
        }
        Ok(())
    }

    /// Pieces touching horizontal edge `e` from inside, with the x-range of
    /// contact.
    fn adjacent_to_edge(&self, pieces: &[usize], face: &FaceData, e: usize) -> Vec<(usize, (Real, Real))> {
        let a = &face.verts[e];
        let b = face.edge_end(e);
        let y = &a.y;
        let (ex0, ex1) = if a.x < b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
        // interior lies to the left of the edge: above it when it points along +x
        let above = a.x < b.x;
        pieces
            .iter()
            .filter_map(|&i| {
                let p = &self.pieces[i];
                let touches = if above { &p.y0 == y } else { &p.y1 == y };
                if !touches {
                    return None;
                }
                let l = face.x_at(p.left_edge, y).max(ex0.clone());
                let r = face.x_at(p.right_edge, y).min(ex1.clone());
                (l < r).then_some((i, (l, r)))
            })
            .collect()
    }

    fn attach_boundaries(&mut self) {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut tops = vec![Vec::new(); self.cylinders.len()];
        let mut bottoms = vec![Vec::new(); self.cylinders.len()];
        for (i, sc) in self.saddle_connections.iter().enumerate() {
            let s = &sc.segments[0];
            let xm = (&s.x0 + &s.x1).scale(&half);
            let face = &self.faces[s.face];
            for p in self.pieces.iter().filter(|p| p.face == s.face) {
                let inside = |y: &Real| face.x_at(p.left_edge, y) <= xm && xm <= face.x_at(p.right_edge, y);
                if p.y0 == s.y && inside(&p.y0) {
                    bottoms[p.cylinder].push(i);
                }
                if p.y1 == s.y && inside(&p.y1) {
                    tops[p.cylinder].push(i);
                }
            }
        }
        for (c, cyl) in self.cylinders.iter_mut().enumerate() {
            let mut b = std::mem::take(&mut bottoms[c]);
            let mut t = std::mem::take(&mut tops[c]);
            b.sort();
            b.dedup();
            t.sort();
            t.dedup();
            cyl.bottom = b;
            cyl.top = t;
        }
    }

    /// Independent circumference check: the total width at a height strictly
    /// between two consecutive cuts must equal area / height.
    fn check_widths(&self) -> Result<(), FlowError> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        for (c, cyl) in self.cylinders.iter().enumerate() {
            let mut levels: Vec<Real> = cyl
                .pieces
                .iter()
                .flat_map(|&i| {
                    let p = &self.pieces[i];
                    [&p.y0 + &p.offset, &p.y1 + &p.offset]
                })
                .collect();
            levels.sort();
            levels.dedup();
            let level = (&levels[0] + &levels[1]).scale(&half);
            let mut width = Real::zero();
            for &i in &cyl.pieces {
                let p = &self.pieces[i];
                let y = &level - &p.offset;
                if p.y0 < y && y < p.y1 {
                    let face = &self.faces[p.face];
                    width = &width + &(&face.x_at(p.right_edge, &y) - &face.x_at(p.left_edge, &y));
                }
            }
            if width != cyl.circumference {
                return Err(FlowError::Inconsistent(format!(
                    "cylinder {c}: width {} differs from area/height",
                    width.to_f64()
                )));
            }
        }
        Ok(())
    }

    fn turn_point(&self, v: &Vec2) -> Vec2 {
        // rotation by -theta
        Vec2::new(
            &(&v.x * &self.cos) + &(&v.y * &self.sin),
            &(&v.y * &self.cos) - &(&v.x * &self.sin),
        )
    }

    /// Chart height inside the cylinder containing a point, as (cylinder, height).
    fn locate(&self, m: &TranslationSurface, p: &PointRef) -> Result<(usize, Real), FlowError> {
        let (f, q) = match p {
            PointRef::Class(c) => {
                if self.stop_classes.contains(c) {
                    return Err(FlowError::OnBoundary);
                }
                let (f, v) = m.cone_points()[*c].vertex_orbit[0];
                (f, self.faces[f].verts[v].clone())
            }
            PointRef::Point(sp) => (sp.face, self.turn_point(&sp.pos)),
        };
        let face = &self.faces[f];
        let mut found = None;
        for (i, pc) in self.pieces.iter().enumerate().filter(|(_, pc)| pc.face == f) {
            if pc.y0 <= q.y && q.y <= pc.y1 {
                let l = face.x_at(pc.left_edge, &q.y);
                let r = face.x_at(pc.right_edge, &q.y);
                if l <= q.x && q.x <= r {
                    found = Some(i);
                    break;
                }
            }
        }
        let i = found.ok_or(FlowError::PointNotFound)?;
        let pc = &self.pieces[i];
        Ok((pc.cylinder, &(&q.y + &pc.offset) - &self.cylinders[pc.cylinder].ymin))
    }

    /// Height of a point above the bottom of its cylinder.
    pub fn height_split(&self, m: &TranslationSurface, p: &PointRef) -> Result<HeightSplit, FlowError> {
        let (c, h1) = self.locate(m, p)?;
        let h = self.cylinders[c].height.clone();
        if h1.is_zero() || h1 == h {
            return Err(FlowError::OnBoundary);
        }
        let ratio = &h1 / &h;
        let rest = &(&h - &h1) / &h;
        Ok(HeightSplit {
            cylinder: c,
            rational: ratio.is_rational().is_some(),
            complement_rational: rest.is_rational().is_some(),
            h1,
            h,
            ratio,
        })
    }

    /// Sum of the cylinder areas.
    pub fn total_area(&self) -> Real {
        self.cylinders.iter().fold(Real::zero(), |acc, c| &acc + &c.area)
    }
}

/// Convenience wrapper: decompose in direction `theta` and split at `p`.
pub fn height_split(
    m: &TranslationSurface,
    theta: &RationalAngle,
    p: &PointRef,
    opts: &FlowOptions,
) -> Result<HeightSplit, FlowError> {
    cylinder_decomposition(m, theta, opts)?.height_split(m, p)
}
