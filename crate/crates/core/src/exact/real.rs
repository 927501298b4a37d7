//! Real cyclotomic numbers: the values every length and coordinate uses.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{forward_owned, Cyclotomic, Rational};
use super::interval::{decimal_string, Interval};

/// An element of `Q(ζ_n) ∩ R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicReal(Cyclotomic);

impl CyclotomicReal {
    /// Wraps `c`, returning `None` unless it is fixed by conjugation.
    pub fn new(c: Cyclotomic) -> Option<Self> {
        c.is_real().then_some(CyclotomicReal(c))
    }

    pub fn zero() -> Self {
        CyclotomicReal(Cyclotomic::zero())
    }

    pub fn one() -> Self {
        CyclotomicReal(Cyclotomic::one())
    }

    pub fn from_int(v: i64) -> Self {
        CyclotomicReal(Cyclotomic::from_int(v))
    }

    pub fn from_rational(r: &Rational) -> Self {
        CyclotomicReal(Cyclotomic::from_rational(r))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// cos(qπ).
    pub fn cos_pi(q: &Rational) -> Self {
        let a = q.numer();
        let b = q.denom();
        let m: u32 = (b * 2u32)
            .try_into()
            .expect("angle denominator too large");
        let k: i64 = (a % (b * 2u32)).try_into().expect("angle numerator");
        let sum = Cyclotomic::zeta(m, k) + Cyclotomic::zeta(m, -k);
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        CyclotomicReal(sum.scale(&half).normalize())
    }

    /// sin(qπ) = cos((1/2 - q)π).
    pub fn sin_pi(q: &Rational) -> Self {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Self::cos_pi(&(half - q))
    }

    pub fn as_cyclotomic(&self) -> &Cyclotomic {
        &self.0
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    pub fn signum(&self) -> Ordering {
        self.0.real_sign()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        (&self.0 - &other.0).real_sign()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicReal(self.0.scale(r))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.0.inverse().map(CyclotomicReal)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.0.checked_div(&other.0).map(CyclotomicReal)
    }

    pub fn pow(&self, e: u32) -> Self {
        CyclotomicReal(self.0.pow(e))
    }

    pub fn normalize(&self) -> Self {
        CyclotomicReal(self.0.normalize())
    }

    pub fn lift(&self, m: u32) -> Self {
        CyclotomicReal(self.0.lift(m))
    }

    pub fn enclosure(&self, prec: u32) -> Interval {
        if let Some(r) = self.is_rational() {
            return Interval {
                lo: r.clone(),
                hi: r,
                precision_bits: prec,
            };
        }
        self.0.real_enclosure(prec)
    }

    /// Refines until the enclosure is at most `width` wide.
    pub fn enclosure_within(&self, width: &Rational) -> Interval {
        let mut prec = 64;
        loop {
            let iv = self.enclosure(prec);
            if &iv.width() <= width {
                return iv;
            }
            prec *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(80).to_f64()
    }

    /// Decimal expansion correct to `digits` places (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        let w = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 2));
        let iv = self.enclosure_within(&w);
        let mid = iv.midpoint();
        let s = decimal_string(&mid, digits);
        if s.starts_with('-') && mid.is_negative() {
            s
        } else {
            s.trim_start_matches('-').to_string()
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for CyclotomicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclotomicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl Hash for CyclotomicReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.0.normalize();
        c.conductor().hash(state);
        for r in c.coeffs() {
            r.hash(state);
        }
    }
}

impl Neg for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn neg(self) -> CyclotomicReal {
        CyclotomicReal(-&self.0)
    }
}

impl Neg for CyclotomicReal {
    type Output = CyclotomicReal;
    fn neg(self) -> CyclotomicReal {
        -&self
    }
}

impl Add for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn add(self, rhs: &CyclotomicReal) -> CyclotomicReal {
        CyclotomicReal(&self.0 + &rhs.0)
    }
}

impl Sub for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn sub(self, rhs: &CyclotomicReal) -> CyclotomicReal {
        CyclotomicReal(&self.0 - &rhs.0)
    }
}

impl Mul for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn mul(self, rhs: &CyclotomicReal) -> CyclotomicReal {
        CyclotomicReal(&self.0 * &rhs.0)
    }
}

/// Panics on division by zero; use [`CyclotomicReal::checked_div`] otherwise.
impl Div for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn div(self, rhs: &CyclotomicReal) -> CyclotomicReal {
        self.checked_div(rhs).expect("division by zero")
    }
}

forward_owned!(CyclotomicReal, Add, add);
forward_owned!(CyclotomicReal, Sub, sub);
forward_owned!(CyclotomicReal, Mul, mul);
forward_owned!(CyclotomicReal, Div, div);

impl Zero for CyclotomicReal {
    fn zero() -> Self {
        CyclotomicReal::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for CyclotomicReal {
    fn one() -> Self {
        CyclotomicReal::one()
    }
}

impl fmt::Display for CyclotomicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact canonical form plus a 50-digit decimal for readers.
impl Serialize for CyclotomicReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = self.0.normalize();
        let mut m = s.serialize_struct("CyclotomicReal", 3)?;
        m.serialize_field("conductor", &c.conductor())?;
        let coeffs: Vec<String> = c.coeffs().iter().map(|r| r.to_string()).collect();
        m.serialize_field("coeffs", &coeffs)?;
        m.serialize_field("decimal", &self.to_decimal(50))?;
        m.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RealRepr {
    Expr(String),
    Int(i64),
    Coeffs { conductor: u32, coeffs: Vec<String> },
}

/// Accepts an expression string, an integer, or `{conductor, coeffs}`.
impl<'de> Deserialize<'de> for CyclotomicReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RealRepr::deserialize(d)? {
            RealRepr::Expr(s) => super::parse::parse_constant(&s).map_err(D::Error::custom),
            RealRepr::Int(v) => Ok(CyclotomicReal::from_int(v)),
            RealRepr::Coeffs { conductor, coeffs } => {
                if conductor == 0 {
                    return Err(D::Error::custom("conductor must be positive"));
                }
                let rs = coeffs
                    .iter()
                    .map(|c| super::parse::parse_rational(c))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(D::Error::custom)?;
                let c = Cyclotomic::from_coeffs(conductor, &rs)
                    .ok_or_else(|| D::Error::custom("too many coefficients for conductor"))?;
                CyclotomicReal::new(c).ok_or_else(|| D::Error::custom("value is not real"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn textbook_values() {
        assert_eq!(CyclotomicReal::cos_pi(&q(1, 3)), CyclotomicReal::frac(1, 2));
        assert_eq!(CyclotomicReal::sin_pi(&q(1, 6)).is_rational(), Some(q(1, 2)));
        let s = CyclotomicReal::sin_pi(&q(1, 4));
        assert_eq!(&s * &s, CyclotomicReal::frac(1, 2));
        assert_eq!(CyclotomicReal::cos_pi(&q(1, 1)), CyclotomicReal::from_int(-1));
        assert_eq!(CyclotomicReal::sin_pi(&q(0, 1)), CyclotomicReal::zero());
    }

    #[test]
    fn conductor_divides_four_den() {
        for b in 1..25i64 {
            for a in 0..2 * b {
                let c = CyclotomicReal::cos_pi(&q(a, b)).conductor() as i64;
                let s = CyclotomicReal::sin_pi(&q(a, b)).conductor() as i64;
                assert_eq!((4 * b) % c, 0);
                assert_eq!((4 * b) % s, 0);
            }
        }
    }

    #[test]
    fn ordering() {
        let a = CyclotomicReal::sin_pi(&q(1, 8));
        let b = CyclotomicReal::sin_pi(&q(1, 4));
        assert!(a < b);
        assert!((a.to_f64() - (std::f64::consts::PI / 8.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn serde_roundtrip() {
        let v = CyclotomicReal::sin_pi(&q(1, 5)) / CyclotomicReal::sin_pi(&q(1, 3));
        let js = serde_json::to_string(&v).unwrap();
        let back: CyclotomicReal = serde_json::from_str(&js).unwrap();
        assert_eq!(back, v);
        let w: CyclotomicReal = serde_json::from_str("\"1/2\"").unwrap();
        assert_eq!(w, CyclotomicReal::frac(1, 2));
        assert!(serde_json::from_str::<CyclotomicReal>(r#"{"conductor":4,"coeffs":["0","1"]}"#).is_err());
    }

    #[test]
    fn decimals() {
        let s = CyclotomicReal::sin_pi(&q(1, 4));
        assert_eq!(s.to_decimal(10), "0.7071067811");
        assert_eq!((-s).to_decimal(4), "-0.7071");
    }
}
