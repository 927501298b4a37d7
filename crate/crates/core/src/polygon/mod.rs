//! Rational polygons, their angles, and the reflection group they generate.

mod angle;
mod dihedral;
#[allow(clippy::module_inception)]
mod polygon;

pub use angle::{lcm_denominators, RationalAngle};
pub use dihedral::{DihedralElement, DihedralGroup};
pub use polygon::{
    triangle_from_angles, triangle_with_unit_side, AngleData, Edge, MinusIdReason, MinusIdScreen,
    Polygon, PolygonError,
};
