//! Exact plane vectors and the predicates built on them.

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exact::{CyclotomicReal, Rational};

pub type Real = CyclotomicReal;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: Real,
    pub y: Real,
}

impl Vec2 {
    pub fn new(x: Real, y: Real) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(Real::zero(), Real::zero())
    }

    /// (cos qπ, sin qπ).
    pub fn unit(q: &Rational) -> Self {
        Vec2::new(Real::cos_pi(q), Real::sin_pi(q))
    }

    pub fn scale(&self, s: &Real) -> Self {
        Vec2::new(&self.x * s, &self.y * s)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Vec2::new(self.x.scale(r), self.y.scale(r))
    }

    pub fn dot(&self, o: &Vec2) -> Real {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    pub fn cross(&self, o: &Vec2) -> Real {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn norm2(&self) -> Real {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Rotation by the angle whose cosine and sine are given.
    pub fn rotate(&self, c: &Real, s: &Real) -> Self {
        Vec2::new(
            &(&self.x * c) - &(&self.y * s),
            &(&self.x * s) + &(&self.y * c),
        )
    }

    /// Reflection across the line through the origin making angle φ, given
    /// cos 2φ and sin 2φ.
    pub fn reflect(&self, c2: &Real, s2: &Real) -> Self {
        Vec2::new(
            &(&self.x * c2) + &(&self.y * s2),
            &(&self.x * s2) - &(&self.y * c2),
        )
    }

    /// Lexicographic (x, then y) exact comparison.
    pub fn lex_cmp(&self, o: &Vec2) -> Ordering {
        self.x.cmp(&o.x).then_with(|| self.y.cmp(&o.y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

/// Sign of the turn a → b → c (positive for counterclockwise).
pub fn orient(a: &Vec2, b: &Vec2, c: &Vec2) -> Ordering {
    (b - a).cross(&(c - a)).signum()
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: &Vec2, b: &Vec2, p: &Vec2) -> bool {
    if orient(a, b, p) != Ordering::Equal {
        return false;
    }
    let ap = p - a;
    let ab = b - a;
    let t = ap.dot(&ab);
    !t.is_negative() && t <= ab.norm2()
}

/// Whether closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_intersect(a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && on_segment(a, b, c))
        || (o2 == Ordering::Equal && on_segment(a, b, d))
        || (o3 == Ordering::Equal && on_segment(c, d, a))
        || (o4 == Ordering::Equal && on_segment(c, d, b))
}

/// Twice the signed area of a closed vertex loop.
pub fn twice_signed_area(vertices: &[Vec2]) -> Real {
    let n = vertices.len();
    let mut acc = Real::zero();
    for i in 0..n {
        acc = &acc + &vertices[i].cross(&vertices[(i + 1) % n]);
    }
    acc
}

/// Where `p` sits relative to a simple counterclockwise polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Exact point location by crossing parity, with boundary detection.
pub fn locate(vertices: &[Vec2], p: &Vec2) -> Location {
    let n = vertices.len();
    let mut inside = false;
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        if on_segment(a, b, p) {
            return Location::Boundary;
        }
        let ay = a.y > p.y;
        let by = b.y > p.y;
        if ay != by {
            // crossing abscissa compared with p.x without dividing
            let o = orient(a, b, p);
            let upward = b.y > a.y;
            if (o == Ordering::Greater) == upward {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::new(Real::from_int(x), Real::from_int(y))
    }

    #[test]
    fn intersection_cases() {
        assert!(segments_intersect(&v(0, 0), &v(2, 2), &v(0, 2), &v(2, 0)));
        assert!(!segments_intersect(&v(0, 0), &v(1, 0), &v(0, 1), &v(1, 1)));
        assert!(segments_intersect(&v(0, 0), &v(2, 0), &v(1, 0), &v(1, 1)));
        assert!(segments_intersect(&v(0, 0), &v(2, 0), &v(1, 0), &v(3, 0)));
        assert!(!segments_intersect(&v(0, 0), &v(1, 0), &v(2, 0), &v(3, 0)));
    }

    #[test]
    fn point_location() {
        let sq = [v(0, 0), v(2, 0), v(2, 2), v(0, 2)];
        assert_eq!(locate(&sq, &v(1, 1)), Location::Inside);
        assert_eq!(locate(&sq, &v(2, 1)), Location::Boundary);
        assert_eq!(locate(&sq, &v(3, 1)), Location::Outside);
        assert_eq!(locate(&sq, &v(0, 0)), Location::Boundary);
        assert_eq!(twice_signed_area(&sq), Real::from_int(8));
    }
}
