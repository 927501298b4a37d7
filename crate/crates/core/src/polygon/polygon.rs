//! Polygons given by their edge vectors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{CyclotomicReal, Rational};
use crate::geometry::{segments_intersect, twice_signed_area, Vec2};

use super::angle::{lcm_denominators, RationalAngle};
use super::dihedral::DihedralGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    /// Direction of the edge vector, in `[0, 2)`.
    pub direction: RationalAngle,
    pub length: CyclotomicReal,
}

impl Edge {
    pub fn new(direction: RationalAngle, length: CyclotomicReal) -> Self {
        Edge { direction: direction.mod_two(), length }
    }

    pub fn vector(&self) -> Vec2 {
        self.direction.unit_vector().scale(&self.length)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 edges, got {0}")]
    TooFewEdges(usize),
    #[error("edge {0} has non-positive length")]
    NonPositiveLength(usize),
    #[error("edges do not close up")]
    NotClosed,
    #[error("vertex {0} has a degenerate angle")]
    DegenerateAngle(usize),
    #[error("edges are not counterclockwise")]
    Clockwise,
    #[error("edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("triangle angles must be positive and sum to 1 (in units of π), got {0}")]
    AngleSum(String),
}

/// A simple polygon, counterclockwise, with rational edge directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    edges: Vec<Edge>,
}

#[derive(Serialize)]
struct PolygonOut<'a> {
    edges: &'a [Edge],
    angles: Vec<RationalAngle>,
}

#[derive(Deserialize)]
struct PolygonIn {
    edges: Vec<Edge>,
}

/// Written with the vertex angles for readers; read back from the edges
/// alone, through the full validation.
impl Serialize for Polygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolygonOut { edges: &self.edges, angles: self.angles() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolygonIn::deserialize(d)?;
        Polygon::new(raw.edges).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngleData {
    pub angles: Vec<RationalAngle>,
    #[serde(rename = "N")]
    pub n: u32,
    pub group_order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinusIdReason {
    EvenN,
    EvenAngle,
    ExternalEvenAnglePair,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinusIdScreen {
    pub in_group: bool,
    /// The first trigger found, in the order even N, even angle, external pair.
    pub reason: MinusIdReason,
    /// Every trigger that fired.
    pub triggers: Vec<MinusIdReason>,
}

impl Polygon {
    /// Validates closure, orientation and simplicity exactly.
    pub fn new(edges: Vec<Edge>) -> Result<Self, PolygonError> {
        let n = edges.len();
        if n < 3 {
            return Err(PolygonError::TooFewEdges(n));
        }
        for (i, e) in edges.iter().enumerate() {
            if !e.length.is_positive() {
                return Err(PolygonError::NonPositiveLength(i));
            }
        }
        let p = Polygon {
            edges: edges
                .into_iter()
                .map(|e| Edge::new(e.direction, e.length))
                .collect(),
        };
        if !p.closure_residual().is_zero() {
            return Err(PolygonError::NotClosed);
        }
        let mut turn_sum = Rational::zero();
        for i in 0..n {
            let t = p.turn(i);
            if t == Rational::one() {
                return Err(PolygonError::DegenerateAngle(i));
            }
            turn_sum += t;
        }
        if turn_sum != Rational::from_integer(BigInt::from(2)) {
            return Err(PolygonError::Clockwise);
        }
        p.check_simple()?;
        Ok(p)
    }

    pub fn from_vectors_unchecked(edges: Vec<Edge>) -> Self {
        Polygon { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_vector(&self, i: usize) -> Vec2 {
        self.edges[i % self.len()].vector()
    }

    pub fn closure_residual(&self) -> Vec2 {
        self.edges
            .iter()
            .fold(Vec2::zero(), |acc, e| &acc + &e.vector())
    }

    /// Vertex `i` is the start of edge `i`; vertex 0 sits at the origin.
    pub fn vertices(&self) -> Vec<Vec2> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = Vec2::zero();
        for e in &self.edges {
            out.push(cur.clone());
            cur = &cur + &e.vector();
        }
        out
    }

    /// Signed turn from edge `i-1` to edge `i`, in `(-1, 1]`.
    fn turn(&self, i: usize) -> Rational {
        let n = self.len();
        let prev = &self.edges[(i + n - 1) % n].direction;
        (&self.edges[i].direction - prev).signed_turn()
    }

    /// Interior angle at vertex `i`.
    pub fn angle(&self, i: usize) -> RationalAngle {
        RationalAngle::new(Rational::one() - self.turn(i))
    }

    pub fn angles(&self) -> Vec<RationalAngle> {
        (0..self.len()).map(|i| self.angle(i)).collect()
    }

    pub fn angle_data(&self) -> AngleData {
        let angles = self.angles();
        let n = lcm_denominators(&angles);
        AngleData { angles, n, group_order: 2 * n }
    }

    /// N: lcm of the reduced angle denominators.
    pub fn n(&self) -> u32 {
        lcm_denominators(&self.angles())
    }

    /// The reflection group, with its axis along edge 0.
    pub fn group(&self) -> DihedralGroup {
        DihedralGroup::new(self.n(), self.edges[0].direction.mod_one())
    }

    pub fn area(&self) -> CyclotomicReal {
        twice_signed_area(&self.vertices()).scale(&Rational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Largest squared distance between two vertices.
    pub fn diameter_squared(&self) -> CyclotomicReal {
        let vs = self.vertices();
        let mut best = CyclotomicReal::zero();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let d = (&vs[i] - &vs[j]).norm2();
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    fn check_simple(&self) -> Result<(), PolygonError> {
        let vs = self.vertices();
        let n = vs.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                if segments_intersect(&vs[i], &vs[(i + 1) % n], &vs[j], &vs[(j + 1) % n]) {
                    return Err(PolygonError::NotSimple(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn scaled(&self, r: &CyclotomicReal) -> Polygon {
        Polygon {
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.direction.clone(), &e.length * r))
                .collect(),
        }
    }

    /// Cyclic relabeling so that vertex `k` becomes vertex 0.
    pub fn rotated_labels(&self, k: usize) -> Polygon {
        let n = self.len();
        Polygon {
            edges: (0..n).map(|i| self.edges[(i + k) % n].clone()).collect(),
        }
    }

    /// The same polygon turned by `angle`.
    pub fn turned(&self, angle: &RationalAngle) -> Polygon {
        Polygon {
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(&e.direction + angle, e.length.clone()))
                .collect(),
        }
    }

    /// Mirror image in the line through edge `i`, listed counterclockwise
    /// and indexed so that the shared edge keeps index `i`.
    pub fn reflected_across(&self, i: usize) -> Polygon {
        let n = self.len();
        let two_phi = &self.edges[i].direction.multiple * Rational::from_integer(BigInt::from(2));
        let image = |j: usize| {
            let e = &self.edges[j];
            Edge::new(
                RationalAngle::new(&two_phi - &e.direction.multiple + Rational::one()),
                e.length.clone(),
            )
        };
        let reversed: Vec<Edge> = (0..n).map(|j| image(n - 1 - j)).collect();
        // reversed[j] comes from edge n-1-j; rotate so index i maps to i
        let shift = (2 * n - 1 - 2 * i) % n;
        let edges = (0..n).map(|j| reversed[(j + shift) % n].clone()).collect();
        Polygon { edges }
    }

    /// −Id screen: N even, an even vertex angle, or (given which sides are
    /// external) two external sides meeting at an even angle between their lines.
    pub fn minus_id_screen(&self, external: Option<&[bool]>) -> MinusIdScreen {
        let data = self.angle_data();
        let mut triggers = Vec::new();
        if data.n.is_multiple_of(2) {
            triggers.push(MinusIdReason::EvenN);
        }
        if data.angles.iter().any(RationalAngle::is_even) {
            triggers.push(MinusIdReason::EvenAngle);
        }
        if let Some(ext) = external {
            let idx: Vec<usize> = (0..self.len()).filter(|&i| ext.get(i) == Some(&true)).collect();
            let pair = idx.iter().enumerate().any(|(a, &i)| {
                idx[a + 1..].iter().any(|&j| {
                    let between = (&self.edges[j].direction - &self.edges[i].direction).mod_one();
                    !between.multiple.is_zero() && between.is_even()
                })
            });
            if pair {
                triggers.push(MinusIdReason::ExternalEvenAnglePair);
            }
        }
        MinusIdScreen {
            in_group: data.n.is_multiple_of(2),
            reason: triggers.first().copied().unwrap_or(MinusIdReason::None),
            triggers,
        }
    }

    /// Normal form up to translation, rotation, scaling and relabeling:
    /// every cyclic relabeling is turned so its first edge points along
    /// direction 0 and scaled to unit first edge; the lexicographically least
    /// edge list wins.
    pub fn canonical_form(&self) -> Polygon {
        let mut best: Option<Polygon> = None;
        for k in 0..self.len() {
            let r = self.rotated_labels(k);
            let turn = -&r.edges[0].direction;
            let inv = r.edges[0].length.inverse().expect("positive length");
            let cand = r.turned(&turn).scaled(&inv);
            best = Some(match best {
                None => cand,
                Some(b) => {
                    if cand.lex_cmp(&b) == Ordering::Less {
                        cand
                    } else {
                        b
                    }
                }
            });
        }
        best.expect("non-empty polygon")
    }

    fn lex_cmp(&self, other: &Polygon) -> Ordering {
        for (a, b) in self.edges.iter().zip(&other.edges) {
            let c = a
                .direction
                .multiple
                .cmp(&b.direction.multiple)
                .then_with(|| a.length.cmp(&b.length));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.len().cmp(&other.len())
    }
}

/// Triangle with angles `a, b, c` (units of π) at vertices 0, 1, 2, placed
/// with edge 0 along direction 0 and the side opposite vertex `unit_vertex`
/// of length 1.
pub fn triangle_with_unit_side(
    a: &RationalAngle,
    b: &RationalAngle,
    c: &RationalAngle,
    unit_vertex: usize,
) -> Result<Polygon, PolygonError> {
    let sum = &(&a.multiple + &b.multiple) + &c.multiple;
    if !a.is_positive() || !b.is_positive() || !c.is_positive() || !sum.is_one() {
        return Err(PolygonError::AngleSum(format!("{a}, {b}, {c}")));
    }
    let sines = [a.sin(), b.sin(), c.sin()];
    let unit = sines[unit_vertex % 3].inverse().expect("positive sine");
    // by the law of sines, the side opposite vertex v has length sin(v) / sin(unit)
    let ab = &sines[2] * &unit;
    let bc = &sines[0] * &unit;
    let ca = &sines[1] * &unit;
    let one = Rational::one();
    Polygon::new(vec![
        Edge::new(RationalAngle::zero(), ab),
        Edge::new(RationalAngle::new(&one - &b.multiple), bc),
        Edge::new(RationalAngle::new(&one + &a.multiple), ca),
    ])
}

/// Triangle with the side opposite the first angle of unit length.
pub fn triangle_from_angles(
    a: &RationalAngle,
    b: &RationalAngle,
    c: &RationalAngle,
) -> Result<Polygon, PolygonError> {
    triangle_with_unit_side(a, b, c, 0)
}
