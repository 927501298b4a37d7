//! Partial tilings and the rules that cut them.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::covers::tiling::{triangles_overlap, Bbox};
use crate::covers::{reflect_across, Motion};
use crate::exact::{rat, Rational};
use crate::geometry::{on_segment, Vec2};
use crate::periodicity::Status;
use crate::polygon::{DihedralElement, DihedralGroup, Polygon, RationalAngle};
use crate::unfolding::TranslationSurface;

/// Why a node was cut. Each rule can only remove nodes that cannot lead to
/// what the search is looking for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Base is square-tiled: every cover is square-tiled too.
    SquareTiledBase,
    /// No vertex point of the base surface can be a non-periodic branch point.
    NoNonPeriodicPoint,
    /// Some corner of P has no multiplier it could end with in Q.
    NoAdmissibleMultiplier,
    /// Q has a vertex whose angle has even denominator.
    EvenAngle,
    /// Two external sides meet at an even angle.
    EvenAnglePair,
    /// A closed corner of Q ramifies over a periodic point.
    BranchOverPeriodic,
    /// A closed corner of an intermediate polygon ramifies over a point not known periodic.
    BranchOverNonPeriodic,
    /// The branch locus already has two points.
    TwoBranchPoints,
    /// No candidate branch point is fixed by the reflections in the external sides.
    BranchPointNotFixed,
    /// Copies overlap, touch without mirroring, or pinch the outline.
    Geometry,
    /// Copy bound reached while a closed corner configuration repeats.
    InfiniteForcing,
    /// Copy bound reached.
    Bound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum SideState {
    Undecided,
    External,
    Internal(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Looking for an appropriate cover.
    Appropriate,
    /// Looking for intermediate polygons branched over periodic points only.
    Intermediate,
    /// Every tiling, with geometric checks only.
    Enumerate,
}

/// Everything about the base that the rules need.
pub(crate) struct Context {
    pub base: Polygon,
    pub group: DihedralGroup,
    pub verts: Vec<Vec2>,
    tris: Vec<[usize; 3]>,
    pub angles: Vec<RationalAngle>,
    pub surface: TranslationSurface,
    pub status: Vec<Status>,
    pub mode: Mode,
}

fn side_key(a: &Vec2, b: &Vec2) -> (Vec2, Vec2) {
    if a.lex_cmp(b) == Ordering::Greater {
        (b.clone(), a.clone())
    } else {
        (a.clone(), b.clone())
    }
}

impl Context {
    pub fn new(base: &Polygon, surface: TranslationSurface, status: Vec<Status>, mode: Mode) -> Self {
        let verts = base.vertices();
        Context {
            group: base.group(),
            tris: crate::covers::tiling::triangulate(&verts),
            angles: base.angles(),
            verts,
            base: base.clone(),
            surface,
            status,
            mode,
        }
    }

    fn n0(&self, v: usize) -> u32 {
        self.angles[v].denom()
    }

    /// Class of M_P at corner `v` of a copy with linear part `g`.
    pub fn class_at(&self, g: &DihedralElement, v: usize) -> usize {
        let f = self.surface.face_of(g).expect("unfolded");
        let pos = self.surface.faces()[f].vertex_source.iter().position(|&s| s == v).expect("vertex");
        self.surface.class_of(f, pos)
    }

    fn total(&self, v: usize, k: u32) -> Rational {
        &self.angles[v].multiple * rat(k as i64, 1)
    }

    /// Whether a corner of Q made of k copies of corner v, over class z,
    /// is allowed to stay as it is.
    fn vertex_allowed(&self, v: usize, k: u32, z: usize) -> Result<(), Rule> {
        let t = self.total(v, k);
        let e = k / k.gcd(&self.n0(v));
        match self.mode {
            Mode::Appropriate => {
                if !t.denom().is_odd() {
                    return Err(Rule::EvenAngle);
                }
                if e > 1 && self.status[z] == Status::Periodic {
                    return Err(Rule::BranchOverPeriodic);
                }
            }
            Mode::Intermediate => {
                if e > 1 && self.status[z] == Status::NonPeriodic {
                    return Err(Rule::BranchOverNonPeriodic);
                }
            }
            Mode::Enumerate => {}
        }
        Ok(())
    }

    /// Whether a corner fan of k copies over class z can still be completed.
    fn can_finish(&self, v: usize, k: u32, z: usize) -> bool {
        if self.mode == Mode::Enumerate {
            return true;
        }
        let two = rat(2, 1);
        (k..).take_while(|&j| self.total(v, j) <= two).any(|j| {
            let t = self.total(v, j);
            t == two || t.is_one() || self.vertex_allowed(v, j, z).is_ok()
        })
    }

    /// Whether some corner of P could end at a Q vertex ramified over class z.
    fn can_branch(&self, z: usize) -> bool {
        let Some(v) = self.surface.cone_points()[z].source_vertex_class else { return false };
        let two = rat(2, 1);
        (1u32..)
            .take_while(|&j| self.total(v, j) < two)
            .any(|j| j / j.gcd(&self.n0(v)) > 1 && !self.total(v, j).is_one() && self.vertex_allowed(v, j, z).is_ok())
    }

    /// Classes that could still be the single non-periodic branch point.
    pub fn candidates(&self) -> Vec<usize> {
        (0..self.status.len()).filter(|&z| self.status[z] != Status::Periodic && self.can_branch(z)).collect()
    }

    /// Root check: every corner needs at least one way to end up in Q.
    pub fn root_rule(&self) -> Option<Rule> {
        if self.mode == Mode::Appropriate && self.candidates().is_empty() {
            return Some(Rule::NoNonPeriodicPoint);
        }
        for v in 0..self.angles.len() {
            let zs = self.surface.classes_over_vertex(v);
            if zs.iter().all(|&z| !self.can_finish(v, 1, z)) {
                return Some(Rule::NoAdmissibleMultiplier);
            }
        }
        None
    }
}

#[derive(Clone)]
pub(crate) struct Node {
    pub motions: Vec<Motion>,
    pub placed: Vec<Vec<Vec2>>,
    boxes: Vec<Bbox>,
    pub sides: Vec<Vec<SideState>>,
    by_side: HashMap<(Vec2, Vec2), (usize, usize)>,
    corners: HashMap<Vec2, Vec<(usize, usize)>>,
}

impl Node {
    pub fn empty() -> Self {
        Node {
            motions: Vec::new(),
            placed: Vec::new(),
            boxes: Vec::new(),
            sides: Vec::new(),
            by_side: HashMap::new(),
            corners: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.motions.len()
    }

    pub fn first_undecided(&self) -> Option<(usize, usize)> {
        self.sides.iter().enumerate().find_map(|(c, ss)| {
            ss.iter().position(|s| *s == SideState::Undecided).map(|i| (c, i))
        })
    }

    pub fn undecided(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, ss) in self.sides.iter().enumerate() {
            for (i, s) in ss.iter().enumerate() {
                if *s == SideState::Undecided {
                    out.push((c, i));
                }
            }
        }
        out
    }

    pub fn commit_external(&mut self, c: usize, s: usize) {
        debug_assert_eq!(self.sides[c][s], SideState::Undecided);
        self.sides[c][s] = SideState::External;
    }

    /// Places a new copy, gluing it to whatever it shares a side with.
    pub fn add(&mut self, ctx: &Context, m: Motion) -> Result<usize, Rule> {
        let n = ctx.verts.len();
        let w: Vec<Vec2> = ctx.verts.iter().map(|v| m.apply(&ctx.group, v)).collect();
        let bb = Bbox::of(&w);
        let near: Vec<usize> = (0..self.len()).filter(|&c| self.boxes[c].meets(&bb)).collect();
        for &c in &near {
            if self.motions[c] == m {
                return Err(Rule::Geometry);
            }
            for t in &ctx.tris {
                let ta = [&w[t[0]], &w[t[1]], &w[t[2]]];
                for u in &ctx.tris {
                    let p = &self.placed[c];
                    if triangles_overlap(&ta, &[&p[u[0]], &p[u[1]], &p[u[2]]]) {
                        return Err(Rule::Geometry);
                    }
                }
            }
            // edge to edge only
            let p = &self.placed[c];
            for i in 0..n {
                let (a, b) = (&p[i], &p[(i + 1) % n]);
                let (x, y) = (&w[i], &w[(i + 1) % n]);
                if w.iter().any(|q| q != a && q != b && on_segment(a, b, q))
                    || p.iter().any(|q| q != x && q != y && on_segment(x, y, q))
                {
                    return Err(Rule::Geometry);
                }
            }
        }
        for (v, q) in w.iter().enumerate() {
            if let Some(cs) = self.corners.get(q) {
                if cs.iter().any(|&(_, u)| u != v) {
                    return Err(Rule::Geometry);
                }
            }
        }
        let id = self.len();
        let mut states = vec![SideState::Undecided; n];
        let mut glue = Vec::new();
        for j in 0..n {
            if let Some(&(c, s)) = self.by_side.get(&side_key(&w[j], &w[(j + 1) % n])) {
                if s != j || self.sides[c][s] != SideState::Undecided || reflect_across(&ctx.base, &ctx.group, &m, j) != self.motions[c] {
                    return Err(Rule::Geometry);
                }
                states[j] = SideState::Internal(c, s);
                glue.push((c, s, j));
            }
        }
        for (c, s, j) in glue {
            self.sides[c][s] = SideState::Internal(id, j);
        }
        for j in 0..n {
            self.by_side.insert(side_key(&w[j], &w[(j + 1) % n]), (id, j));
            self.corners.entry(w[j].clone()).or_default().push((id, j));
        }
        self.motions.push(m);
        self.placed.push(w);
        self.boxes.push(bb);
        self.sides.push(states);
        Ok(id)
    }

    pub fn reflect(&mut self, ctx: &Context, c: usize, s: usize) -> Result<usize, Rule> {
        let m = reflect_across(&ctx.base, &ctx.group, &self.motions[c], s);
        self.add(ctx, m)
    }

    fn external_lines(&self, ctx: &Context) -> Vec<RationalAngle> {
        let mut out: Vec<RationalAngle> = Vec::new();
        for (c, ss) in self.sides.iter().enumerate() {
            for (i, s) in ss.iter().enumerate() {
                if *s == SideState::External {
                    let d = ctx.group.act_direction(&self.motions[c].element, &ctx.base.edges()[i].direction).mod_one();
                    if !out.contains(&d) {
                        out.push(d);
                    }
                }
            }
        }
        out
    }

    /// Corner fans at every point: (vertex of P, components), each component
    /// a list of corners with its count of external and undecided extremes.
    fn fans(&self, n: usize) -> Vec<(usize, Vec<Component>)> {
        let mut out = Vec::new();
        let mut points: Vec<&Vec2> = self.corners.keys().collect();
        points.sort_by(|a, b| a.lex_cmp(b));
        for p in points {
            let cs = &self.corners[p];
            let idx = |c: usize| cs.iter().position(|&(x, _)| x == c);
            let mut parent: Vec<usize> = (0..cs.len()).collect();
            fn find(p: &mut [usize], i: usize) -> usize {
                if p[i] != i {
                    let r = find(p, p[i]);
                    p[i] = r;
                }
                p[i]
            }
            let mut ext = vec![(0u32, 0u32); cs.len()];
            for (k, &(c, v)) in cs.iter().enumerate() {
                for s in [v, (v + n - 1) % n] {
                    match self.sides[c][s] {
                        SideState::Internal(o, _) => {
                            let j = idx(o).expect("glued corner present");
                            let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                            parent[a] = b;
                        }
                        SideState::External => ext[k].0 += 1,
                        SideState::Undecided => ext[k].1 += 1,
                    }
                }
            }
            let mut comps: HashMap<usize, Component> = HashMap::new();
            for k in 0..cs.len() {
                let r = find(&mut parent, k);
                let e = comps.entry(r).or_insert_with(|| Component { corners: Vec::new(), external: 0, undecided: 0 });
                e.corners.push(cs[k]);
                e.external += ext[k].0;
                e.undecided += ext[k].1;
            }
            let mut list: Vec<Component> = comps.into_values().collect();
            list.sort_by_key(|c| c.corners[0]);
            out.push((cs[0].1, list));
        }
        out
    }

    /// First rule violated by this partial tiling, if any.
    pub fn violation(&self, ctx: &Context) -> Option<Rule> {
        let n = ctx.verts.len();
        let mut branched: HashSet<usize> = HashSet::new();
        let mut found: Option<Rule> = None;
        let mut note = |r: Rule| {
            if found.is_none_or(|f| r < f) {
                found = Some(r);
            }
        };
        for (v, comps) in self.fans(n) {
            let closed_boundary = comps.iter().any(|c| c.undecided == 0 && c.external == 2);
            if comps.len() > 1 && closed_boundary {
                return Some(Rule::Geometry);
            }
            for comp in &comps {
                let k = comp.corners.len() as u32;
                let t = ctx.total(v, k);
                let (c0, _) = comp.corners[0];
                let z = ctx.class_at(&self.motions[c0].element, v);
                if t > rat(2, 1) {
                    return Some(Rule::Geometry);
                }
                if comp.undecided == 0 && comp.external == 0 {
                    if t != rat(2, 1) {
                        return Some(Rule::Geometry);
                    }
                    continue;
                }
                if comp.undecided == 0 {
                    if t.is_one() {
                        continue;
                    }
                    if t == rat(2, 1) {
                        return Some(Rule::Geometry);
                    }
                    if let Err(r) = ctx.vertex_allowed(v, k, z) {
                        note(r);
                    }
                    if k / k.gcd(&ctx.n0(v)) > 1 {
                        branched.insert(z);
                    }
                } else if !ctx.can_finish(v, k, z) {
                    note(Rule::NoAdmissibleMultiplier);
                }
            }
        }
        if ctx.mode == Mode::Appropriate {
            let lines = self.external_lines(ctx);
            for (i, a) in lines.iter().enumerate() {
                for b in &lines[i + 1..] {
                    if (b - a).mod_one().is_even() {
                        note(Rule::EvenAnglePair);
                    }
                }
            }
            let reflections: Vec<DihedralElement> =
                lines.iter().map(|d| ctx.group.reflection_in(d).expect("side direction")).collect();
            let fixed = |z: usize| reflections.iter().all(|r| ctx.surface.act_on_class(r, z) == Some(z));
            if !ctx.candidates().into_iter().any(fixed) {
                note(Rule::BranchPointNotFixed);
            }
            if branched.len() > 1 || branched.iter().any(|&z| !fixed(z)) {
                note(Rule::TwoBranchPoints);
            }
        }
        found
    }

    /// Whether two corner configurations of at least `min` copies are
    /// congruent: the shape that repeats when forced moves keep producing
    /// the same pattern.
    pub fn has_repeated_fan(&self, ctx: &Context, min: usize) -> bool {
        let n = ctx.verts.len();
        let mut seen = HashSet::new();
        for (v, comps) in self.fans(n) {
            for comp in comps {
                if comp.corners.len() < min {
                    continue;
                }
                let els: Vec<DihedralElement> = comp.corners.iter().map(|&(c, _)| self.motions[c].element).collect();
                let key = els
                    .iter()
                    .map(|g| {
                        let gi = g.inverse();
                        let mut rel: Vec<usize> = els.iter().map(|h| gi.compose(h).ordinal()).collect();
                        rel.sort();
                        rel
                    })
                    .min()
                    .unwrap();
                if !seen.insert((v, key)) {
                    return true;
                }
            }
        }
        false
    }

    /// Key identifying the node up to the base group and translation.
    pub fn canonical_key(&self, ctx: &Context) -> Vec<(usize, Vec2, Vec<u8>)> {
        let code = |s: &SideState| match s {
            SideState::Undecided => 0u8,
            SideState::External => 1,
            SideState::Internal(..) => 2,
        };
        let mut best: Option<Vec<(usize, Vec2, Vec<u8>)>> = None;
        for s in ctx.group.elements() {
            let moved: Vec<(usize, Vec2, Vec<u8>)> = self
                .motions
                .iter()
                .zip(&self.sides)
                .map(|(m, ss)| (s.compose(&m.element).ordinal(), ctx.group.act(&s, &m.translation), ss.iter().map(code).collect()))
                .collect();
            let origin = moved.iter().map(|x| &x.1).min_by(|a, b| a.lex_cmp(b)).unwrap().clone();
            let mut key: Vec<(usize, Vec2, Vec<u8>)> =
                moved.into_iter().map(|(e, t, ss)| (e, &t - &origin, ss)).collect();
            key.sort_by(cmp_entry);
            if best.as_ref().is_none_or(|b| cmp_key(&key, b) == Ordering::Less) {
                best = Some(key);
            }
        }
        best.unwrap_or_default()
    }
}

fn cmp_entry(a: &(usize, Vec2, Vec<u8>), b: &(usize, Vec2, Vec<u8>)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.lex_cmp(&b.1)).then_with(|| a.2.cmp(&b.2))
}

fn cmp_key(a: &[(usize, Vec2, Vec<u8>)], b: &[(usize, Vec2, Vec<u8>)]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = cmp_entry(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

struct Component {
    corners: Vec<(usize, usize)>,
    external: u32,
    undecided: u32,
}
