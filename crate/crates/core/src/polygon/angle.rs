//! Angles that are rational multiples of π.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{CyclotomicReal, Rational};
use crate::geometry::Vec2;

/// `multiple · π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct RationalAngle {
    pub multiple: Rational,
}

impl RationalAngle {
    pub fn new(multiple: Rational) -> Self {
        RationalAngle { multiple }
    }

    pub fn frac(p: i64, q: i64) -> Self {
        RationalAngle::new(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        RationalAngle::new(Rational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.multiple.numer()
    }

    /// Reduced denominator of the multiple.
    pub fn denom(&self) -> u32 {
        self.multiple.denom().to_u32().expect("angle denominator fits in u32")
    }

    /// An angle is even when its reduced denominator is even.
    pub fn is_even(&self) -> bool {
        self.denom().is_multiple_of(2)
    }

    /// Representative in `[0, 2)`, as used for directions.
    pub fn mod_two(&self) -> Self {
        let two = Rational::from_integer(BigInt::from(2));
        let m = &self.multiple - (&self.multiple / &two).floor() * &two;
        RationalAngle::new(m)
    }

    /// Representative in `[0, 1)`: lines rather than rays.
    pub fn mod_one(&self) -> Self {
        let m = &self.multiple - self.multiple.floor();
        RationalAngle::new(m)
    }

    /// Representative in `(-1, 1]`, the signed turn between two directions.
    pub fn signed_turn(&self) -> Rational {
        let m = self.mod_two().multiple;
        if m > Rational::one() {
            m - Rational::from_integer(BigInt::from(2))
        } else {
            m
        }
    }

    pub fn cos(&self) -> CyclotomicReal {
        CyclotomicReal::cos_pi(&self.multiple)
    }

    pub fn sin(&self) -> CyclotomicReal {
        CyclotomicReal::sin_pi(&self.multiple)
    }

    pub fn unit_vector(&self) -> Vec2 {
        Vec2::unit(&self.multiple)
    }

    pub fn is_positive(&self) -> bool {
        self.multiple.is_positive()
    }

    /// Integer `k` with `self = k / n`, if `n` is a multiple of the denominator.
    pub fn in_units_of(&self, n: u32) -> Option<i64> {
        let scaled = &self.multiple * Rational::from_integer(BigInt::from(n));
        scaled.is_integer().then(|| scaled.to_integer().to_i64().expect("small"))
    }
}

impl std::ops::Add for &RationalAngle {
    type Output = RationalAngle;
    fn add(self, o: &RationalAngle) -> RationalAngle {
        RationalAngle::new(&self.multiple + &o.multiple)
    }
}

impl std::ops::Sub for &RationalAngle {
    type Output = RationalAngle;
    fn sub(self, o: &RationalAngle) -> RationalAngle {
        RationalAngle::new(&self.multiple - &o.multiple)
    }
}

impl std::ops::Neg for &RationalAngle {
    type Output = RationalAngle;
    fn neg(self) -> RationalAngle {
        RationalAngle::new(-&self.multiple)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.multiple)
    }
}

impl From<RationalAngle> for String {
    fn from(a: RationalAngle) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for RationalAngle {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        crate::exact::parse_rational(&s)
            .map(RationalAngle::new)
            .map_err(|e| e.to_string())
    }
}

/// Least common multiple of the reduced denominators.
pub fn lcm_denominators<'a>(angles: impl IntoIterator<Item = &'a RationalAngle>) -> u32 {
    angles.into_iter().fold(1u32, |acc, a| acc.lcm(&a.denom()))
}
