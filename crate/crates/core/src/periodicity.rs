//! Periodic / non-periodic classification of vertex classes.
//!
//! A point is periodic when it is singular, or fixed by an affine self-map
//! with derivative −Id, or (on a torus) splits its cylinders rationally in
//! two independent periodic directions. It is non-periodic when some
//! periodic direction splits the height of its cylinder in an irrational
//! ratio. Anything else is reported as unknown.

use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{CyclotomicReal, Rational};
use crate::flow::{cylinder_decomposition, Decomposition, FlowError, FlowOptions, PointRef};
use crate::polygon::{DihedralElement, RationalAngle};
use crate::unfolding::TranslationSurface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Periodic,
    NonPeriodic,
    Unknown,
}

/// Affine self-map of an unfolded surface with derivative −Id. It sends the
/// copy labeled `g` to the copy labeled `g·element`, and a side coming from
/// edge `e` of the base polygon to the side coming from edge `edges[e]`.
/// When −Id lies in the group this is `element = −Id` with `edges` the
/// identity; otherwise `edges` records a symmetry of the base polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfTurn {
    pub element: DihedralElement,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Singular,
    MinusIdFixed { half_turn: HalfTurn },
    /// Genus one only: rational height ratios in two non-parallel directions
    /// put the point at a torsion point of the torus.
    RationalSplits {
        directions: [RationalAngle; 2],
        #[serde(serialize_with = "serialize_pair")]
        ratios: [Rational; 2],
    },
    IrrationalSplit { direction: RationalAngle, h1: CyclotomicReal, h: CyclotomicReal },
    None,
}

fn serialize_pair<S: serde::Serializer>(r: &[Rational; 2], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicityVerdict {
    pub class: usize,
    pub status: Status,
    pub certificate: Certificate,
}

/// Horizontal plus the reflection-axis directions jπ/N, taken mod π.
pub fn default_directions(m: &TranslationSurface) -> Vec<RationalAngle> {
    let n = m.group().map_or(1, |g| g.n as i64);
    (0..n).map(|j| RationalAngle::frac(j, n)).collect()
}

/// The group element acting as −Id, when there is one.
pub fn minus_id(m: &TranslationSurface) -> Option<DihedralElement> {
    let g = m.group()?;
    g.elements().find(|e| e.is_minus_identity())
}

/// Where a half-turn sends side `j` of face `f`.
fn image_side(m: &TranslationSurface, t: &HalfTurn, f: usize, j: usize) -> Option<(usize, usize)> {
    let face = &m.faces()[f];
    let target = m.face_of(&face.label?.compose(&t.element))?;
    let e = *t.edges.get(*face.edge_source.get(j)?)?;
    let tj = m.faces()[target].edge_source.iter().position(|&s| s == e)?;
    Some((target, tj))
}

/// Checks that `t` is a well-defined map of the surface: every side goes
/// to a side with the opposite vector, and glued sides go to glued sides.
pub fn is_half_turn(m: &TranslationSurface, t: &HalfTurn) -> bool {
    let (Some(group), Some(base)) = (m.group(), m.base()) else { return false };
    if t.element.n != group.n || t.edges.len() != base.len() {
        return false;
    }
    let mut seen = t.edges.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != base.len() {
        return false;
    }
    m.faces().iter().enumerate().all(|(f, face)| {
        (0..face.polygon.len()).all(|j| {
            let Some((tf, tj)) = image_side(m, t, f, j) else { return false };
            let turned = m.faces()[tf].polygon.edge_vector(tj) == -&face.polygon.edge_vector(j);
            let (pf, pj) = m.partner(f, j);
            turned && image_side(m, t, pf, pj) == Some(m.partner(tf, tj))
        })
    })
}

/// Every half-turn that permutes the faces. Candidates are the group
/// elements paired with the side permutations a symmetry of the base can
/// induce: cyclic shifts for rotations, reversals for reflections.
pub fn half_turns(m: &TranslationSurface) -> Vec<HalfTurn> {
    let (Some(group), Some(base)) = (m.group(), m.base()) else { return Vec::new() };
    let n = base.len();
    let mut out = Vec::new();
    for element in group.elements() {
        for k in 0..n {
            let edges = if element.reflection {
                (0..n).map(|j| (k + n - j) % n).collect()
            } else {
                (0..n).map(|j| (j + k) % n).collect()
            };
            let t = HalfTurn { element, edges };
            if is_half_turn(m, &t) {
                out.push(t);
            }
        }
    }
    // the plain −Id first, when it exists
    out.sort_by_key(|t| !(t.element.is_minus_identity() && t.edges.iter().enumerate().all(|(i, &e)| i == e)));
    out
}

/// Image of a vertex class: vertex `j` of a face starts side `j`, and the
/// image of that corner starts the image side.
pub fn half_turn_class(m: &TranslationSurface, t: &HalfTurn, class: usize) -> Option<usize> {
    let (f, v) = m.cone_points().get(class)?.vertex_orbit[0];
    let (tf, tj) = image_side(m, t, f, v)?;
    Some(m.class_of(tf, tj))
}

fn singular_or_fixed(m: &TranslationSurface, turns: &[HalfTurn], class: usize) -> Option<Certificate> {
    if m.cone_points()[class].is_singular {
        return Some(Certificate::Singular);
    }
    turns
        .iter()
        .find(|t| half_turn_class(m, t, class) == Some(class))
        .map(|t| Certificate::MinusIdFixed { half_turn: t.clone() })
}

fn is_torus(m: &TranslationSurface) -> bool {
    m.genus().is_ok_and(|g| g.g == 1)
}

/// Height ratio mod 1; a point on the boundary of its cylinder has ratio 0.
fn split_ratio(m: &TranslationSurface, class: usize, d: &Decomposition) -> Option<Option<Rational>> {
    match d.height_split(m, &PointRef::Class(class)) {
        Ok(s) => Some(s.ratio.is_rational()),
        Err(FlowError::OnBoundary) => Some(Some(Rational::from_integer(0.into()))),
        Err(_) => None,
    }
}

fn rational_splits(m: &TranslationSurface, class: usize, decomps: &[&Decomposition]) -> Option<Certificate> {
    let mut found: Vec<(RationalAngle, Rational)> = Vec::new();
    for d in decomps {
        if let Some(Some(r)) = split_ratio(m, class, d) {
            if found.iter().all(|(dir, _)| dir.mod_one() != d.direction.mod_one()) {
                found.push((d.direction.clone(), r));
            }
        }
        if found.len() == 2 {
            let [(d0, r0), (d1, r1)] = [found[0].clone(), found[1].clone()];
            return Some(Certificate::RationalSplits { directions: [d0, d1], ratios: [r0, r1] });
        }
    }
    None
}

fn irrational_split(
    m: &TranslationSurface,
    class: usize,
    d: &Decomposition,
) -> Option<Certificate> {
    let s = d.height_split(m, &PointRef::Class(class)).ok()?;
    (!s.rational).then(|| Certificate::IrrationalSplit { direction: d.direction.clone(), h1: s.h1, h: s.h })
}

fn verdict(class: usize, certificate: Certificate) -> PeriodicityVerdict {
    let status = match certificate {
        Certificate::Singular | Certificate::MinusIdFixed { .. } | Certificate::RationalSplits { .. } => Status::Periodic,
        Certificate::IrrationalSplit { .. } => Status::NonPeriodic,
        Certificate::None => Status::Unknown,
    };
    PeriodicityVerdict { class, status, certificate }
}

/// Decompositions in `directions`, plus the defaults on a torus so that two
/// independent directions are available.
fn decompositions(m: &TranslationSurface, directions: &[RationalAngle]) -> Vec<Option<Decomposition>> {
    let mut dirs = directions.to_vec();
    if is_torus(m) {
        for d in default_directions(m).into_iter().chain([RationalAngle::frac(1, 2)]) {
            if !dirs.contains(&d) {
                dirs.push(d);
            }
        }
    }
    dirs.par_iter().map(|dir| cylinder_decomposition(m, dir, &FlowOptions::default()).ok()).collect()
}

fn classify_with(m: &TranslationSurface, turns: &[HalfTurn], decomps: &[Option<Decomposition>], k: usize) -> PeriodicityVerdict {
    if let Some(c) = singular_or_fixed(m, turns, k) {
        return verdict(k, c);
    }
    let ds: Vec<&Decomposition> = decomps.iter().flatten().collect();
    if let Some(c) = ds.iter().find_map(|d| irrational_split(m, k, d)) {
        return verdict(k, c);
    }
    let c = if is_torus(m) { rational_splits(m, k, &ds) } else { None };
    verdict(k, c.unwrap_or(Certificate::None))
}

/// Classifies one vertex class, trying `directions` in order for an
/// irrational split.
pub fn classify_point(
    m: &TranslationSurface,
    class: usize,
    directions: &[RationalAngle],
) -> PeriodicityVerdict {
    let turns = half_turns(m);
    if let Some(c) = singular_or_fixed(m, &turns, class) {
        return verdict(class, c);
    }
    // stop at the first irrational split without decomposing the rest
    let found = directions.par_iter().find_map_first(|dir| {
        let d = cylinder_decomposition(m, dir, &FlowOptions::default()).ok()?;
        irrational_split(m, class, &d)
    });
    match found {
        Some(c) => verdict(class, c),
        None if is_torus(m) => classify_with(m, &turns, &decompositions(m, directions), class),
        None => verdict(class, Certificate::None),
    }
}

/// Classifies every vertex class, decomposing each direction only once.
pub fn classify_all(m: &TranslationSurface, directions: &[RationalAngle]) -> Vec<PeriodicityVerdict> {
    let n = m.cone_points().len();
    let turns = half_turns(m);
    let pending = (0..n).any(|k| singular_or_fixed(m, &turns, k).is_none());
    let decomps = if pending { decompositions(m, directions) } else { Vec::new() };
    (0..n).into_par_iter().map(|k| classify_with(m, &turns, &decomps, k)).collect()
}

/// Re-derives a verdict's certificate from scratch.
pub fn replay(m: &TranslationSurface, v: &PeriodicityVerdict) -> bool {
    if v.class >= m.cone_points().len() || verdict(v.class, v.certificate.clone()).status != v.status {
        return false;
    }
    match &v.certificate {
        Certificate::Singular => m.cone_points()[v.class].is_singular,
        Certificate::MinusIdFixed { half_turn } => {
            is_half_turn(m, half_turn) && half_turn_class(m, half_turn, v.class) == Some(v.class)
        }
        Certificate::RationalSplits { directions, ratios } => {
            directions[0].mod_one() != directions[1].mod_one()
                && is_torus(m)
                && directions.iter().zip(ratios).all(|(dir, r)| {
                    let Ok(d) = cylinder_decomposition(m, dir, &FlowOptions::default()) else { return false };
                    split_ratio(m, v.class, &d) == Some(Some(r.clone()))
                })
        }
        Certificate::IrrationalSplit { direction, h1, h } => {
            let Ok(d) = cylinder_decomposition(m, direction, &FlowOptions::default()) else {
                return false;
            };
            match d.height_split(m, &PointRef::Class(v.class)) {
                Ok(s) => !s.rational && &s.h1 == h1 && &s.h == h,
                Err(_) => false,
            }
        }
        Certificate::None => true,
    }
}
