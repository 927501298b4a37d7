//! Tilings of a polygon Q by reflected copies of a base polygon P.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{on_segment, orient, Vec2};
use crate::polygon::{DihedralElement, DihedralGroup, Edge, Polygon, PolygonError, RationalAngle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("empty tiling")]
    Empty,
    #[error("copy {copy} has no side {side}")]
    BadSide { copy: usize, side: usize },
    #[error("motion of copy {0} is not in the reflection group of the base")]
    ForeignMotion(usize),
    #[error("copies {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("copies {0} and {1} touch along a side without being mirror images")]
    NonMirrorAdjacency(usize, usize),
    #[error("a vertex of copy {0} lies inside a side of copy {1}")]
    VertexOnSide(usize, usize),
    #[error("outline is not a simple closed curve")]
    OutlineNotSimple,
    #[error("union of the copies is not connected")]
    Disconnected,
    #[error("outline polygon rejected: {0}")]
    Outline(#[from] PolygonError),
}

/// Linear part (an element of the base group) followed by a translation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Motion {
    pub element: DihedralElement,
    pub translation: Vec2,
}

impl Motion {
    pub fn identity(n: u32) -> Self {
        Motion { element: DihedralElement::identity(n), translation: Vec2::zero() }
    }

    pub fn apply(&self, g: &DihedralGroup, v: &Vec2) -> Vec2 {
        &g.act(&self.element, v) + &self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, g: &DihedralGroup, other: &Motion) -> Motion {
        Motion { element: self.element.compose(&other.element), translation: self.apply(g, &other.translation) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SideKind {
    External,
    Internal { copy: usize, side: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanKind {
    /// Copies close up around the point.
    Interior,
    /// The point lies inside a side of Q.
    Side,
    /// The point is vertex `index` of Q.
    Vertex { index: usize },
}

/// The corners of copies meeting at one point of the tiling.
#[derive(Clone, Debug, Serialize)]
pub struct Fan {
    pub point: Vec2,
    /// Vertex of P all these corners come from.
    pub vertex: usize,
    pub corners: Vec<(usize, usize)>,
    pub kind: FanKind,
}

impl Fan {
    /// Number of corners, the multiplier k of the vertex angle.
    pub fn multiplier(&self) -> u32 {
        self.corners.len() as u32
    }
}

#[derive(Clone, Debug)]
pub struct Tiling {
    base: Polygon,
    group: DihedralGroup,
    motions: Vec<Motion>,
    words: Option<Vec<Vec<usize>>>,
    placed: Vec<Vec<Vec2>>,
    sides: Vec<Vec<SideKind>>,
    outline: Polygon,
    /// Position of the outline's vertex 0 in the tiling frame.
    origin: Vec2,
    fans: Vec<Fan>,
}

/// Motion of the copy obtained by reflecting `m` across its side `side`.
pub fn reflect_across(base: &Polygon, g: &DihedralGroup, m: &Motion, side: usize) -> Motion {
    let verts = base.vertices();
    let a = m.apply(g, &verts[side]);
    let dir = g.act_direction(&m.element, &base.edges()[side].direction);
    let r = g.reflection_in(&dir).expect("side direction is a reflection axis");
    let ra = g.act(&r, &a);
    Motion {
        element: r.compose(&m.element),
        translation: &g.act(&r, &m.translation) + &(&a - &ra),
    }
}

/// Follows a reflection word from the identity copy: each letter reflects
/// the current copy across its side with that index.
pub fn motion_from_word(base: &Polygon, g: &DihedralGroup, word: &[usize]) -> Option<Motion> {
    let mut m = Motion::identity(g.n);
    for &s in word {
        if s >= base.len() {
            return None;
        }
        m = reflect_across(base, g, &m, s);
    }
    Some(m)
}

#[derive(Clone, Copy)]
pub(crate) struct Bbox(pub [f64; 4]);

impl Bbox {
    pub(crate) fn of(pts: &[Vec2]) -> Self {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for p in pts {
            let (x, y) = p.to_f64();
            b[0] = b[0].min(x);
            b[1] = b[1].min(y);
            b[2] = b[2].max(x);
            b[3] = b[3].max(y);
        }
        Bbox(b)
    }

    pub(crate) fn meets(&self, o: &Bbox) -> bool {
        let e = 1e-9;
        self.0[0] <= o.0[2] + e && o.0[0] <= self.0[2] + e && self.0[1] <= o.0[3] + e && o.0[1] <= self.0[3] + e
    }
}

/// Ear-clipping triangulation of a counterclockwise simple polygon.
pub(crate) fn triangulate(verts: &[Vec2]) -> Vec<[usize; 3]> {
    use std::cmp::Ordering::*;
    let mut idx: Vec<usize> = (0..verts.len()).collect();
    let mut out = Vec::new();
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&k| {
            let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            if orient(&verts[a], &verts[b], &verts[c]) != Greater {
                return false;
            }
            idx.iter().all(|&o| {
                o == a || o == b || o == c || {
                    let p = &verts[o];
                    !(orient(&verts[a], &verts[b], p) != Less
                        && orient(&verts[b], &verts[c], p) != Less
                        && orient(&verts[c], &verts[a], p) != Less)
                }
            })
        });
        let k = ear.expect("simple polygon has an ear");
        out.push([idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]]);
        idx.remove(k);
    }
    out.push([idx[0], idx[1], idx[2]]);
    out
}

/// Whether two triangles share interior points (separating-axis test).
pub(crate) fn triangles_overlap(t: &[&Vec2; 3], u: &[&Vec2; 3]) -> bool {
    use std::cmp::Ordering::Equal;
    let separated_by = |a: &[&Vec2; 3], b: &[&Vec2; 3]| {
        (0..3).any(|i| {
            let (p, q, r) = (a[i], a[(i + 1) % 3], a[(i + 2) % 3]);
            let inside = orient(p, q, r);
            b.iter().all(|x| {
                let o = orient(p, q, x);
                o == Equal || o != inside
            })
        })
    };
    !(separated_by(t, u) || separated_by(u, t))
}

struct DirEdge {
    copy: usize,
    side: usize,
    from: Vec2,
    to: Vec2,
    dir: RationalAngle,
}

impl Tiling {
    /// Builds and checks a tiling from explicit motions.
    pub fn new(base: &Polygon, motions: Vec<Motion>) -> Result<Tiling, TilingError> {
        Self::build(base, motions, None)
    }

    /// Builds a tiling from reflection words (side-index sequences).
    pub fn from_words(base: &Polygon, words: &[Vec<usize>]) -> Result<Tiling, TilingError> {
        let g = base.group();
        let mut motions = Vec::with_capacity(words.len());
        for (c, w) in words.iter().enumerate() {
            let bad = w.iter().find(|&&s| s >= base.len());
            if let Some(&side) = bad {
                return Err(TilingError::BadSide { copy: c, side });
            }
            motions.push(motion_from_word(base, &g, w).expect("checked sides"));
        }
        Self::build(base, motions, Some(words.to_vec()))
    }

    fn build(base: &Polygon, motions: Vec<Motion>, words: Option<Vec<Vec<usize>>>) -> Result<Tiling, TilingError> {
        if motions.is_empty() {
            return Err(TilingError::Empty);
        }
        let group = base.group();
        for (c, m) in motions.iter().enumerate() {
            if m.element.n != group.n {
                return Err(TilingError::ForeignMotion(c));
            }
        }
        let pv = base.vertices();
        let placed: Vec<Vec<Vec2>> = motions.iter().map(|m| pv.iter().map(|v| m.apply(&group, v)).collect()).collect();
        let boxes: Vec<Bbox> = placed.iter().map(|p| Bbox::of(p)).collect();
        let n = base.len();

        // interiors pairwise disjoint
        let tris = triangulate(&pv);
        for a in 0..placed.len() {
            for b in a + 1..placed.len() {
                if !boxes[a].meets(&boxes[b]) {
                    continue;
                }
                if motions[a] == motions[b] {
                    return Err(TilingError::Overlap(a, b));
                }
                for t in &tris {
                    let ta = [&placed[a][t[0]], &placed[a][t[1]], &placed[a][t[2]]];
                    for u in &tris {
                        let tb = [&placed[b][u[0]], &placed[b][u[1]], &placed[b][u[2]]];
                        if triangles_overlap(&ta, &tb) {
                            return Err(TilingError::Overlap(a, b));
                        }
                    }
                }
            }
        }

        // boundary edges, all oriented with the copy's interior on the left
        let mut edges = Vec::new();
        for (c, m) in motions.iter().enumerate() {
            let flip = m.element.reflection;
            for i in 0..n {
                let d = group.act_direction(&m.element, &base.edges()[i].direction);
                let (from, to, dir) = if flip {
                    (placed[c][(i + 1) % n].clone(), placed[c][i].clone(), (&d + &RationalAngle::frac(1, 1)).mod_two())
                } else {
                    (placed[c][i].clone(), placed[c][(i + 1) % n].clone(), d)
                };
                edges.push(DirEdge { copy: c, side: i, from, to, dir });
            }
        }
        let mut by_ends: HashMap<(Vec2, Vec2), usize> = HashMap::new();
        for (k, e) in edges.iter().enumerate() {
            by_ends.insert((e.from.clone(), e.to.clone()), k);
        }
        let mut sides = vec![vec![SideKind::External; n]; motions.len()];
        for e in &edges {
            if let Some(&k) = by_ends.get(&(e.to.clone(), e.from.clone())) {
                let o = &edges[k];
                let mirror = reflect_across(base, &group, &motions[e.copy], e.side);
                if o.side != e.side || mirror != motions[o.copy] {
                    return Err(TilingError::NonMirrorAdjacency(e.copy, o.copy));
                }
                sides[e.copy][e.side] = SideKind::Internal { copy: o.copy, side: o.side };
            }
        }
        // no partial overlaps along sides, no vertex inside another side
        for (k, e) in edges.iter().enumerate() {
            let eb = Bbox::of(&[e.from.clone(), e.to.clone()]);
            for f in edges.iter().skip(k + 1) {
                if e.copy == f.copy || !eb.meets(&Bbox::of(&[f.from.clone(), f.to.clone()])) {
                    continue;
                }
                let same = e.from == f.to && e.to == f.from;
                if same {
                    continue;
                }
                for (p, host, other) in [(&f.from, e, f), (&f.to, e, f), (&e.from, f, e), (&e.to, f, e)] {
                    if p != &host.from && p != &host.to && on_segment(&host.from, &host.to, p) {
                        return Err(if orient(&host.from, &host.to, &other.from) == std::cmp::Ordering::Equal
                            && orient(&host.from, &host.to, &other.to) == std::cmp::Ordering::Equal
                        {
                            TilingError::NonMirrorAdjacency(host.copy, other.copy)
                        } else {
                            TilingError::VertexOnSide(other.copy, host.copy)
                        });
                    }
                }
            }
        }

        // outline: chain the external edges
        let external: Vec<usize> = (0..edges.len())
            .filter(|&k| sides[edges[k].copy][edges[k].side] == SideKind::External)
            .collect();
        let mut starts: HashMap<Vec2, usize> = HashMap::new();
        for &k in &external {
            if starts.insert(edges[k].from.clone(), k).is_some() {
                return Err(TilingError::OutlineNotSimple);
            }
        }
        let first = *external
            .iter()
            .min_by(|&&a, &&b| edges[a].from.lex_cmp(&edges[b].from))
            .ok_or(TilingError::Disconnected)?;
        let mut chain = vec![first];
        let mut cur = first;
        loop {
            let next = *starts.get(&edges[cur].to).ok_or(TilingError::OutlineNotSimple)?;
            if next == first {
                break;
            }
            chain.push(next);
            cur = next;
            if chain.len() > external.len() {
                return Err(TilingError::OutlineNotSimple);
            }
        }
        if chain.len() != external.len() {
            return Err(TilingError::Disconnected);
        }
        // merge straight runs; start at a genuine corner
        let len = chain.len();
        let corner = (0..len)
            .find(|&k| edges[chain[(k + len - 1) % len]].dir != edges[chain[k]].dir)
            .ok_or(TilingError::OutlineNotSimple)?;
        let mut qedges: Vec<Edge> = Vec::new();
        let mut qstarts: Vec<Vec2> = Vec::new();
        for j in 0..len {
            let e = &edges[chain[(corner + j) % len]];
            let l = base.edges()[e.side].length.clone();
            match qedges.last_mut() {
                Some(last) if last.direction == e.dir => last.length = &last.length + &l,
                _ => {
                    qedges.push(Edge::new(e.dir.clone(), l));
                    qstarts.push(e.from.clone());
                }
            }
        }
        let outline = Polygon::new(qedges)?;
        let origin = qstarts[0].clone();
        // connected union without holes: the outline encloses every copy
        let total = base.area().scale(&crate::exact::rat(motions.len() as i64, 1));
        if outline.area() != total {
            return Err(TilingError::Disconnected);
        }

        let fans = Self::collect_fans(base, &placed, &qstarts, &edges, &external)?;
        Ok(Tiling { base: base.clone(), group, motions, words, placed, sides, outline, origin, fans })
    }

    fn collect_fans(
        base: &Polygon,
        placed: &[Vec<Vec2>],
        qstarts: &[Vec2],
        edges: &[DirEdge],
        external: &[usize],
    ) -> Result<Vec<Fan>, TilingError> {
        let mut at: Vec<(Vec2, Vec<(usize, usize)>)> = Vec::new();
        let mut index: HashMap<Vec2, usize> = HashMap::new();
        for (c, vs) in placed.iter().enumerate() {
            for (v, p) in vs.iter().enumerate() {
                let k = *index.entry(p.clone()).or_insert_with(|| {
                    at.push((p.clone(), Vec::new()));
                    at.len() - 1
                });
                at[k].1.push((c, v));
            }
        }
        let on_outline: HashMap<&Vec2, ()> = external.iter().map(|&k| (&edges[k].from, ())).collect();
        let angles = base.angles();
        let mut fans = Vec::with_capacity(at.len());
        for (point, corners) in at {
            let vertex = corners[0].1;
            if corners.iter().any(|&(_, v)| v != vertex) {
                let c2 = corners.iter().find(|&&(_, v)| v != vertex).unwrap().0;
                return Err(TilingError::NonMirrorAdjacency(corners[0].0, c2));
            }
            let kind = if let Some(q) = qstarts.iter().position(|s| s == &point) {
                FanKind::Vertex { index: q }
            } else if on_outline.contains_key(&point) {
                FanKind::Side
            } else {
                FanKind::Interior
            };
            let total = angles[vertex].multiple.clone() * crate::exact::rat(corners.len() as i64, 1);
            let expect = match kind {
                FanKind::Interior => Some(crate::exact::rat(2, 1)),
                FanKind::Side => Some(crate::exact::rat(1, 1)),
                FanKind::Vertex { .. } => None,
            };
            if expect.is_some_and(|e| e != total) {
                return Err(TilingError::OutlineNotSimple);
            }
            fans.push(Fan { point, vertex, corners, kind });
        }
        Ok(fans)
    }

    pub fn base(&self) -> &Polygon {
        &self.base
    }

    pub fn group(&self) -> &DihedralGroup {
        &self.group
    }

    pub fn motions(&self) -> &[Motion] {
        &self.motions
    }

    pub fn words(&self) -> Option<&[Vec<usize>]> {
        self.words.as_deref()
    }

    pub fn len(&self) -> usize {
        self.motions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motions.is_empty()
    }

    pub fn placed(&self, copy: usize) -> &[Vec2] {
        &self.placed[copy]
    }

    pub fn sides(&self) -> &[Vec<SideKind>] {
        &self.sides
    }

    pub fn outline(&self) -> &Polygon {
        &self.outline
    }

    pub fn origin(&self) -> &Vec2 {
        &self.origin
    }

    pub fn fans(&self) -> &[Fan] {
        &self.fans
    }

    /// Fan sitting at vertex `i` of the outline.
    pub fn fan_at_vertex(&self, i: usize) -> Option<&Fan> {
        self.fans.iter().find(|f| f.kind == FanKind::Vertex { index: i })
    }

    /// The tiling of Q by P obtained by tiling each copy of `self.base()`
    /// (itself tiled by P through `inner`) in place.
    pub fn compose(&self, inner: &Tiling) -> Result<Tiling, TilingError> {
        assert!(inner.outline == self.base, "inner tiling must tile the outer base");
        let pg = &inner.group;
        let to_base = Motion { element: DihedralElement::identity(pg.n), translation: -&inner.origin };
        let mut motions = Vec::new();
        for m in &self.motions {
            let e = embed(&self.group, &m.element, pg).ok_or(TilingError::ForeignMotion(0))?;
            let outer = Motion { element: e, translation: m.translation.clone() };
            for im in &inner.motions {
                motions.push(outer.compose(pg, &to_base.compose(pg, im)));
            }
        }
        Tiling::new(&inner.base, motions)
    }
}

/// The element of `big` with the same linear action as `g ∈ small`.
pub fn embed(small: &DihedralGroup, g: &DihedralElement, big: &DihedralGroup) -> Option<DihedralElement> {
    let probes = [RationalAngle::zero(), RationalAngle::frac(1, 2)];
    let images: Vec<RationalAngle> = probes.iter().map(|p| small.act_direction(g, p)).collect();
    big.elements().find(|h| probes.iter().zip(&images).all(|(p, im)| &big.act_direction(h, p) == im))
}
