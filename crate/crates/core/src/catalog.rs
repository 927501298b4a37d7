//! Generators for the known lattice polygons, with the facts about their
//! surfaces that are used when looking for covers.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::covers::{Motion, Tiling, TilingError};
use crate::exact::{rat, CyclotomicReal, Rational};
use crate::geometry::Vec2;
use crate::polygon::{triangle_from_angles, DihedralElement, Edge, Polygon, PolygonError, RationalAngle};

type Real = CyclotomicReal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "1")]
    Regular,
    #[serde(rename = "2")]
    RightTriangle,
    #[serde(rename = "3")]
    AcuteIsosceles,
    #[serde(rename = "4")]
    ObtuseIsosceles,
    #[serde(rename = "5a")]
    Twelfths,
    #[serde(rename = "5b")]
    Fifteenths,
    #[serde(rename = "5c")]
    Ninths,
    #[serde(rename = "6")]
    ObtuseHalf,
    #[serde(rename = "7")]
    ObtuseTwelfths,
    #[serde(rename = "8")]
    LShape,
    #[serde(rename = "9a")]
    QuadFirst,
    #[serde(rename = "9b")]
    QuadSecond,
    #[serde(rename = "10")]
    SquareTiled,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::Regular,
        Family::RightTriangle,
        Family::AcuteIsosceles,
        Family::ObtuseIsosceles,
        Family::Twelfths,
        Family::Fifteenths,
        Family::Ninths,
        Family::ObtuseHalf,
        Family::ObtuseTwelfths,
        Family::LShape,
        Family::QuadFirst,
        Family::QuadSecond,
        Family::SquareTiled,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Regular => "1",
            Family::RightTriangle => "2",
            Family::AcuteIsosceles => "3",
            Family::ObtuseIsosceles => "4",
            Family::Twelfths => "5a",
            Family::Fifteenths => "5b",
            Family::Ninths => "5c",
            Family::ObtuseHalf => "6",
            Family::ObtuseTwelfths => "7",
            Family::LShape => "8",
            Family::QuadFirst => "9a",
            Family::QuadSecond => "9b",
            Family::SquareTiled => "10",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::Regular => "regular n-gon, n >= 3",
            Family::RightTriangle => "right triangle (1/2, 1/n, (n-2)/2n), n >= 4",
            Family::AcuteIsosceles => "acute isosceles triangle ((n-1)/2n, (n-1)/2n, 1/n), n >= 3",
            Family::ObtuseIsosceles => "obtuse isosceles triangle (1/n, 1/n, (n-2)/n), n >= 5",
            Family::Twelfths => "triangle (1/4, 1/3, 5/12)",
            Family::Fifteenths => "triangle (1/5, 1/3, 7/15)",
            Family::Ninths => "triangle (2/9, 1/3, 4/9)",
            Family::ObtuseHalf => "obtuse triangle (1/2n, 1/n, (2n-3)/2n), n >= 4",
            Family::ObtuseTwelfths => "obtuse triangle (1/12, 1/3, 7/12)",
            Family::LShape => "L-shaped polygon",
            Family::QuadFirst => "4-gon (1/n, 1/n, 1/2n, (4n-5)/2n), n >= 7 odd",
            Family::QuadSecond => "4-gon (1/2, 1/n, 1/n, (3n-4)/2n), n >= 5 odd",
            Family::SquareTiled => "square-tiled polygon (1 x n strip)",
        }
    }

    /// Smallest admissible n, and whether n must be odd. `None` for the
    /// families without a parameter.
    pub fn range(self) -> Option<(u32, bool)> {
        match self {
            Family::Regular | Family::AcuteIsosceles => Some((3, false)),
            Family::RightTriangle | Family::ObtuseHalf => Some((4, false)),
            Family::ObtuseIsosceles => Some((5, false)),
            Family::QuadFirst => Some((7, true)),
            Family::QuadSecond => Some((5, true)),
            Family::SquareTiled => Some((1, false)),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.id() == s.trim())
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family} needs a parameter n")]
    MissingParameter { family: Family },
    #[error("family {family} takes no parameter")]
    UnexpectedParameter { family: Family },
    #[error("n = {n} is outside the range of family {family}")]
    OutOfRange { family: Family, n: u32 },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// A statement about the unfolded surface of a catalog polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    Genus { g: i64 },
    /// The polygon vertices whose points are the singular ones.
    SingularVertices { vertices: Vec<usize> },
    /// Points over this vertex are non-periodic. `direction`, when given,
    /// is a periodic direction that splits their cylinder irrationally.
    NonPeriodicVertex { vertex: usize, direction: Option<RationalAngle> },
    /// Every vertex point is fixed by the half-turn, hence periodic.
    VertexPointsFixedByHalfTurn,
    SquareTiled,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub family: Family,
    pub n: Option<u32>,
    pub polygon: Polygon,
    pub facts: Vec<Fact>,
    /// Taken from the literature, never recomputed.
    pub lattice: bool,
}

impl CatalogEntry {
    pub fn is_square_tiled(&self) -> bool {
        self.facts.contains(&Fact::SquareTiled)
    }

    pub fn non_periodic_vertices(&self) -> impl Iterator<Item = (usize, Option<&RationalAngle>)> {
        self.facts.iter().filter_map(|f| match f {
            Fact::NonPeriodicVertex { vertex, direction } => Some((*vertex, direction.as_ref())),
            _ => None,
        })
    }
}

fn frac(p: i64, q: i64) -> RationalAngle {
    RationalAngle::frac(p, q)
}

fn triangle(a: RationalAngle, b: RationalAngle, c: RationalAngle) -> Result<Polygon, PolygonError> {
    triangle_from_angles(&a, &b, &c)
}

/// Edge directions of a polygon with the given interior angles, edge 0
/// pointing along direction 0.
fn directions(angles: &[RationalAngle]) -> Vec<RationalAngle> {
    let mut out = vec![RationalAngle::zero()];
    for a in &angles[1..] {
        let prev = out.last().unwrap().clone();
        out.push((&(&prev + &frac(1, 1)) - a).mod_two());
    }
    out
}

/// Polygon with the given angles and two prescribed side lengths; the two
/// remaining lengths close the boundary.
fn polygon_closing(
    angles: &[RationalAngle],
    known: [(usize, Real); 2],
) -> Result<Polygon, PolygonError> {
    let dirs = directions(angles);
    let unit: Vec<Vec2> = dirs.iter().map(RationalAngle::unit_vector).collect();
    let mut rest = Vec2::zero();
    for (i, l) in &known {
        rest = &rest - &unit[*i].scale(l);
    }
    let free: Vec<usize> = (0..angles.len()).filter(|i| known.iter().all(|(k, _)| k != i)).collect();
    assert_eq!(free.len(), 2, "exactly two free sides");
    let (u, v) = (&unit[free[0]], &unit[free[1]]);
    let det = u.cross(v);
    let a = rest.cross(v).checked_div(&det).expect("free sides not parallel");
    let b = u.cross(&rest).checked_div(&det).expect("free sides not parallel");
    let mut lengths = vec![Real::zero(); angles.len()];
    for (i, l) in known {
        lengths[i] = l;
    }
    lengths[free[0]] = a;
    lengths[free[1]] = b;
    Polygon::new(dirs.into_iter().zip(lengths).map(|(d, l)| Edge::new(d, l)).collect())
}

pub fn regular_polygon(n: u32) -> Result<Polygon, PolygonError> {
    let edges = (0..n).map(|k| Edge::new(frac(2 * k as i64, n as i64), Real::one())).collect();
    Polygon::new(edges)
}

/// The L made of a unit square with an `a`×1 arm to the right and a 1×`b`
/// arm on top.
pub fn l_shape(a: &Real, b: &Real) -> Result<Polygon, PolygonError> {
    let one = Real::one();
    let e = |p, q, l: Real| Edge::new(frac(p, q), l);
    Polygon::new(vec![
        e(0, 1, &one + a),
        e(1, 2, one.clone()),
        e(1, 1, a.clone()),
        e(1, 2, b.clone()),
        e(1, 1, one.clone()),
        e(3, 2, &one + b),
    ])
}

/// Tiling of the unit square by reflected copies sitting on the given
/// integer cells.
pub fn square_tiled(cells: &[(i64, i64)]) -> Result<Tiling, TilingError> {
    let square = regular_polygon(4).expect("unit square");
    let motions = cells
        .iter()
        .map(|&(i, j)| {
            let (fx, fy) = (i.rem_euclid(2) == 1, j.rem_euclid(2) == 1);
            // x ↦ −x is ref(1), y ↦ −y is ref(0), both is the half-turn
            let element = match (fx, fy) {
                (false, false) => DihedralElement::identity(2),
                (true, false) => DihedralElement::reflection(2, 1),
                (false, true) => DihedralElement::reflection(2, 0),
                (true, true) => DihedralElement::rotation(2, 1),
            };
            let shift = |k: i64, flip: bool| Real::from_int(if flip { k + 1 } else { k });
            Motion { element, translation: Vec2::new(shift(i, fx), shift(j, fy)) }
        })
        .collect();
    Tiling::new(&square, motions)
}

fn expect_n(family: Family, n: Option<u32>) -> Result<u32, CatalogError> {
    let (lo, odd) = family.range().expect("parameterized family");
    let n = n.ok_or(CatalogError::MissingParameter { family })?;
    if n < lo || (odd && n % 2 == 0) {
        return Err(CatalogError::OutOfRange { family, n });
    }
    Ok(n)
}

pub fn make_entry(family: Family, n: Option<u32>) -> Result<CatalogEntry, CatalogError> {
    if family.range().is_none() && n.is_some() {
        return Err(CatalogError::UnexpectedParameter { family });
    }
    let mut facts = Vec::new();
    let n_param = if family.range().is_some() { Some(expect_n(family, n)?) } else { None };
    let k = n_param.unwrap_or(0) as i64;
    let polygon = match family {
        Family::Regular => regular_polygon(k as u32)?,
        Family::RightTriangle => {
            if k % 2 == 1 {
                facts.push(Fact::NonPeriodicVertex { vertex: 1, direction: (k == 5).then(|| frac(1, 2)) });
            }
            triangle(frac(1, 2), frac(1, k), frac(k - 2, 2 * k))?
        }
        Family::AcuteIsosceles => triangle(frac(k - 1, 2 * k), frac(k - 1, 2 * k), frac(1, k))?,
        Family::ObtuseIsosceles => triangle(frac(1, k), frac(1, k), frac(k - 2, k))?,
        Family::Twelfths => {
            facts.push(Fact::Genus { g: 3 });
            facts.push(Fact::SingularVertices { vertices: vec![2] });
            facts.push(Fact::NonPeriodicVertex { vertex: 1, direction: Some(RationalAngle::zero()) });
            triangle(frac(1, 4), frac(1, 3), frac(5, 12))?
        }
        Family::Fifteenths => {
            facts.push(Fact::NonPeriodicVertex { vertex: 0, direction: Some(frac(1, 30)) });
            facts.push(Fact::NonPeriodicVertex { vertex: 1, direction: Some(frac(1, 30)) });
            triangle(frac(1, 5), frac(1, 3), frac(7, 15))?
        }
        Family::Ninths => {
            facts.push(Fact::Genus { g: 3 });
            facts.push(Fact::SingularVertices { vertices: vec![0, 2] });
            facts.push(Fact::NonPeriodicVertex { vertex: 1, direction: Some(frac(1, 6)) });
            triangle(frac(2, 9), frac(1, 3), frac(4, 9))?
        }
        Family::ObtuseHalf => {
            if k % 2 == 1 {
                facts.push(Fact::NonPeriodicVertex { vertex: 1, direction: None });
            }
            triangle(frac(1, 2 * k), frac(1, k), frac(2 * k - 3, 2 * k))?
        }
        Family::ObtuseTwelfths => triangle(frac(1, 12), frac(1, 3), frac(7, 12))?,
        Family::LShape => {
            facts.push(Fact::VertexPointsFixedByHalfTurn);
            l_shape(&Real::one(), &Real::one())?
        }
        Family::QuadFirst => polygon_closing(
            &[frac(1, k), frac(1, k), frac(1, 2 * k), frac(4 * k - 5, 2 * k)],
            [(0, Real::one()), (1, Real::one())],
        )?,
        Family::QuadSecond => polygon_closing(
            &[frac(1, 2), frac(1, k), frac(1, k), frac(3 * k - 4, 2 * k)],
            [(0, Real::one()), (2, Real::frac(1, 4))],
        )?,
        Family::SquareTiled => {
            facts.push(Fact::SquareTiled);
            let cells: Vec<(i64, i64)> = (0..k).map(|i| (i, 0)).collect();
            square_tiled(&cells)?.outline().clone()
        }
    };
    Ok(CatalogEntry { family, n: n_param, polygon, facts, lattice: true })
}

/// Angles prescribed by the family formula, in vertex order.
pub fn family_angles(family: Family, n: Option<u32>) -> Option<Vec<Rational>> {
    let k = n.unwrap_or(0) as i64;
    let r = |p: i64, q: i64| rat(p, q);
    Some(match family {
        Family::Regular => vec![r(k - 2, k); k as usize],
        Family::RightTriangle => vec![r(1, 2), r(1, k), r(k - 2, 2 * k)],
        Family::AcuteIsosceles => vec![r(k - 1, 2 * k), r(k - 1, 2 * k), r(1, k)],
        Family::ObtuseIsosceles => vec![r(1, k), r(1, k), r(k - 2, k)],
        Family::Twelfths => vec![r(1, 4), r(1, 3), r(5, 12)],
        Family::Fifteenths => vec![r(1, 5), r(1, 3), r(7, 15)],
        Family::Ninths => vec![r(2, 9), r(1, 3), r(4, 9)],
        Family::ObtuseHalf => vec![r(1, 2 * k), r(1, k), r(2 * k - 3, 2 * k)],
        Family::ObtuseTwelfths => vec![r(1, 12), r(1, 3), r(7, 12)],
        Family::QuadFirst => vec![r(1, k), r(1, k), r(1, 2 * k), r(4 * k - 5, 2 * k)],
        Family::QuadSecond => vec![r(1, 2), r(1, k), r(1, k), r(3 * k - 4, 2 * k)],
        Family::LShape | Family::SquareTiled => return None,
    })
}
