//! Rational billiards, their unfolded translation surfaces, and branched
//! translation covers between them, computed in exact arithmetic.

pub mod catalog;
pub mod covers;
pub mod exact;
pub mod flow;
pub mod geometry;
pub mod io;
pub mod periodicity;
pub mod polygon;
pub mod search;
pub mod svg;
pub mod unfolding;

pub use exact::{parse_constant, rat, CyclotomicReal, Interval, Rational};
pub use geometry::Vec2;
pub use polygon::{triangle_from_angles, DihedralElement, DihedralGroup, Edge, Polygon, RationalAngle};
pub use unfolding::{unfold, ConePoint, TranslationSurface};
