//! The dihedral group `D_N` acting on directions and vectors.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{CyclotomicReal, Rational};
use crate::geometry::Vec2;

use super::angle::RationalAngle;

/// `rot(j)` is rotation by `2πj/N`; `ref(j)` is reflection in the line at
/// angle `(axis + j/N)π`, with `axis` fixed by the owning [`DihedralGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralElement {
    pub n: u32,
    pub reflection: bool,
    pub index: u32,
}

impl DihedralElement {
    pub fn identity(n: u32) -> Self {
        DihedralElement { n, reflection: false, index: 0 }
    }

    pub fn rotation(n: u32, j: i64) -> Self {
        DihedralElement { n, reflection: false, index: j.rem_euclid(n as i64) as u32 }
    }

    pub fn reflection(n: u32, j: i64) -> Self {
        DihedralElement { n, reflection: true, index: j.rem_euclid(n as i64) as u32 }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflection && self.index == 0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "elements of different dihedral groups");
        let (a, b) = (self.index as i64, other.index as i64);
        match (self.reflection, other.reflection) {
            (false, false) => Self::rotation(self.n, a + b),
            (false, true) => Self::reflection(self.n, a + b),
            (true, false) => Self::reflection(self.n, a - b),
            (true, true) => Self::rotation(self.n, a - b),
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflection {
            *self
        } else {
            Self::rotation(self.n, -(self.index as i64))
        }
    }

    /// Whether this is rotation by π, i.e. `-Id`.
    pub fn is_minus_identity(&self) -> bool {
        !self.reflection && self.n.is_multiple_of(2) && self.index == self.n / 2
    }

    /// Dense index in `0..2N` (rotations first).
    pub fn ordinal(&self) -> usize {
        self.index as usize + if self.reflection { self.n as usize } else { 0 }
    }

    pub fn from_ordinal(n: u32, k: usize) -> Self {
        if k < n as usize {
            Self::rotation(n, k as i64)
        } else {
            Self::reflection(n, (k - n as usize) as i64)
        }
    }

    pub fn all(n: u32) -> impl Iterator<Item = Self> {
        (0..2 * n as usize).map(move |k| Self::from_ordinal(n, k))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.reflection { "ref" } else { "rot" };
        write!(f, "{kind}({})", self.index)
    }
}

#[derive(Debug)]
struct Tables {
    /// cos, sin of 2πk/N
    rot: Vec<(CyclotomicReal, CyclotomicReal)>,
    /// cos, sin of 2(axis + j/N)π
    refl: Vec<(CyclotomicReal, CyclotomicReal)>,
}

/// `D_N` together with its reference axis and cached trigonometry.
#[derive(Clone, Debug)]
pub struct DihedralGroup {
    pub n: u32,
    pub axis: RationalAngle,
    tables: Arc<Tables>,
}

impl DihedralGroup {
    pub fn new(n: u32, axis: RationalAngle) -> Self {
        let nn = BigInt::from(n);
        let rot = (0..n)
            .map(|k| {
                let q = Rational::new(BigInt::from(2 * k), nn.clone());
                (CyclotomicReal::cos_pi(&q), CyclotomicReal::sin_pi(&q))
            })
            .collect();
        let refl = (0..n)
            .map(|j| {
                let q = (&axis.multiple + Rational::new(BigInt::from(j), nn.clone()))
                    * Rational::from_integer(BigInt::from(2));
                (CyclotomicReal::cos_pi(&q), CyclotomicReal::sin_pi(&q))
            })
            .collect();
        DihedralGroup { n, axis, tables: Arc::new(Tables { rot, refl }) }
    }

    pub fn order(&self) -> usize {
        2 * self.n as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> {
        DihedralElement::all(self.n)
    }

    /// Reflection in a line of direction `dir`, if that line is one of the axes.
    pub fn reflection_in(&self, dir: &RationalAngle) -> Option<DihedralElement> {
        let off = dir - &self.axis;
        off.in_units_of(self.n).map(|j| DihedralElement::reflection(self.n, j))
    }

    /// Image of a direction (in units of π, reduced to `[0, 2)`).
    pub fn act_direction(&self, g: &DihedralElement, dir: &RationalAngle) -> RationalAngle {
        let step = RationalAngle::frac(2 * g.index as i64, self.n as i64);
        let out = if g.reflection {
            let two_axis = RationalAngle::new(&self.axis.multiple * Rational::from_integer(BigInt::from(2)));
            &(&two_axis + &step) - dir
        } else {
            dir + &step
        };
        out.mod_two()
    }

    pub fn act(&self, g: &DihedralElement, v: &Vec2) -> Vec2 {
        if g.reflection {
            let (c, s) = &self.tables.refl[g.index as usize];
            v.reflect(c, s)
        } else {
            let (c, s) = &self.tables.rot[g.index as usize];
            v.rotate(c, s)
        }
    }

    /// Whether the linear map of `g` reverses orientation.
    pub fn is_reflection(g: &DihedralElement) -> bool {
        g.reflection
    }

    /// The subgroup generated by `gens`, sorted by ordinal.
    pub fn generated_subgroup(&self, gens: &[DihedralElement]) -> Vec<DihedralElement> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![DihedralElement::identity(self.n)];
        seen[0] = true;
        let mut i = 0;
        while i < out.len() {
            let cur = out[i];
            for g in gens {
                let next = g.compose(&cur);
                if !seen[next.ordinal()] {
                    seen[next.ordinal()] = true;
                    out.push(next);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        for n in [1u32, 2, 5, 8] {
            for a in DihedralElement::all(n) {
                assert!(a.compose(&a.inverse()).is_identity());
                for b in DihedralElement::all(n) {
                    for c in DihedralElement::all(n) {
                        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
                    }
                }
            }
            assert_eq!(DihedralElement::all(n).filter(|g| g.reflection).count(), n as usize);
        }
    }

    #[test]
    fn action_matches_composition() {
        let g = DihedralGroup::new(6, RationalAngle::frac(1, 7));
        let v = Vec2::new(CyclotomicReal::from_int(2), CyclotomicReal::frac(1, 3));
        let d = RationalAngle::frac(3, 11);
        for a in g.elements() {
            for b in g.elements() {
                let ab = a.compose(&b);
                assert_eq!(g.act(&ab, &v), g.act(&a, &g.act(&b, &v)));
                assert_eq!(
                    g.act_direction(&ab, &d),
                    g.act_direction(&a, &g.act_direction(&b, &d))
                );
            }
        }
    }

    #[test]
    fn reflection_fixes_its_axis() {
        let g = DihedralGroup::new(4, RationalAngle::zero());
        let r = DihedralElement::reflection(4, 1);
        let axis = RationalAngle::frac(1, 4).unit_vector();
        assert_eq!(g.act(&r, &axis), axis);
        assert_eq!(g.reflection_in(&RationalAngle::frac(5, 4)), Some(r));
    }
}
