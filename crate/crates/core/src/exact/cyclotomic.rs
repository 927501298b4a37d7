//! Elements of a cyclotomic field `Q(ζ_n)` in the reduced power basis.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{cos_table, precision_floor, Interval};
use super::tables::{divisors, tables};

pub type Rational = BigRational;

/// `Σ num[j] ζ_n^j / den` with `0 <= j < φ(n)`.
///
/// Kept reduced: `den > 0` and `gcd(num..., den) = 1`. The conductor is not
/// minimal unless [`Cyclotomic::normalize`] was called.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(&Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(&Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Cyclotomic {
            n: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> Self {
        let t = tables(n);
        let idx = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            num: t.powers[idx].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Builds an element from rational coefficients in the power basis of
    /// `ζ_n`. Coefficient vectors shorter than `φ(n)` are zero-padded.
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Option<Self> {
        let t = tables(n);
        if coeffs.len() > t.phi {
            return None;
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); t.phi];
        for (slot, c) in num.iter_mut().zip(coeffs) {
            *slot = c.numer() * (&den / c.denom());
        }
        Some(Cyclotomic { n, num, den }.reduced())
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Rational coefficients in the basis `1, ζ_n, …, ζ_n^(φ-1)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn reduced(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
        self
    }

    /// Re-expresses `self` over `Q(ζ_m)`; requires `n | m`.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} to {}", self.n, m);
        let t = tables(m);
        let step = (m / self.n) as usize;
        let mut num = vec![BigInt::zero(); t.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &t.powers[(j * step) % m as usize];
            for (slot, &pk) in num.iter_mut().zip(p) {
                if pk != 0 {
                    *slot += c * pk;
                }
            }
        }
        Cyclotomic {
            n: m,
            num,
            den: self.den.clone(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = a.n.lcm(&b.n);
        (a.lift(m), b.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value, if `self` lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            n: self.n,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        }
        .reduced()
    }

    /// Applies the automorphism `ζ ↦ ζ^a`, `gcd(a, n) = 1`.
    pub fn galois(&self, a: u32) -> Self {
        let t = tables(self.n);
        let n = self.n as u64;
        let mut num = vec![BigInt::zero(); t.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &t.powers[((a as u64 * j as u64) % n) as usize];
            for (slot, &pk) in num.iter_mut().zip(p) {
                if pk != 0 {
                    *slot += c * pk;
                }
            }
        }
        Cyclotomic {
            n: self.n,
            num,
            den: self.den.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois(self.n - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse via the product of the other Galois conjugates.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(&r.recip()));
        }
        let t = tables(self.n);
        let mut prod = Self::one().lift(self.n);
        for &a in t.units.iter().filter(|&&a| a != 1) {
            prod = &prod * &self.galois(a);
        }
        let norm = (self * &prod)
            .to_rational()
            .expect("field norm must be rational");
        Some(prod.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Moves `self` to the smallest conductor whose field contains it.
    pub fn normalize(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        let t = tables(self.n);
        for d in divisors(self.n) {
            if d == self.n {
                return self.clone();
            }
            if d % 4 == 2 {
                continue;
            }
            let fixed = t
                .units
                .iter()
                .filter(|&&a| a != 1 && (a % d == 1 || d == 1))
                .all(|&a| self.galois(a) == *self);
            if fixed {
                if let Some(down) = self.descend(d) {
                    return down;
                }
            }
        }
        self.clone()
    }

    /// Solves for coordinates over `Q(ζ_d)` by elimination.
    fn descend(&self, d: u32) -> Option<Self> {
        let big = tables(self.n);
        let small = tables(d);
        let step = (self.n / d) as usize;
        let rows = big.phi;
        let cols = small.phi;
        let mut m: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> = (0..cols)
                    .map(|c| {
                        let p = &big.powers[(c * step) % self.n as usize];
                        Rational::from_integer(BigInt::from(p[r]))
                    })
                    .collect();
                row.push(Rational::new(self.num[r].clone(), self.den.clone()));
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(cols);
        for c in 0..cols {
            let Some(p) = (pivot_row..rows).find(|&r| !m[r][c].is_zero()) else {
                return None;
            };
            m.swap(pivot_row, p);
            let inv = m[pivot_row][c].recip();
            for v in m[pivot_row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in 0..=cols {
                        let sub = &m[pivot_row][k] * &f;
                        m[r][k] -= sub;
                    }
                }
            }
            pivots.push(pivot_row);
            pivot_row += 1;
        }
        if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let coeffs: Vec<Rational> = pivots.iter().map(|&r| m[r][cols].clone()).collect();
        Self::from_coeffs(d, &coeffs)
    }

    /// Real part times `den * 2^prec`, as an integer with an error bound.
    fn real_fixed(&self, prec: u32) -> (BigInt, BigInt) {
        let t = tables(self.n);
        let table = cos_table(self.n, t.phi, prec);
        let mut s = BigInt::zero();
        let mut abs_sum = BigInt::zero();
        for (c, v) in self.num.iter().zip(&table.values) {
            if c.is_zero() {
                continue;
            }
            s += c * v;
            abs_sum += c.abs();
        }
        (s, abs_sum * BigInt::from(table.err_ulps))
    }

    /// Certified enclosure of the real part at `prec` bits.
    pub fn real_enclosure(&self, prec: u32) -> Interval {
        let (s, err) = self.real_fixed(prec);
        let scale = &self.den << prec as usize;
        Interval {
            lo: Rational::new(&s - &err, scale.clone()),
            hi: Rational::new(&s + &err, scale),
            precision_bits: prec,
        }
    }

    /// Sign of the real part, decided exactly.
    pub fn real_sign(&self) -> Ordering {
        if let Some(r) = self.to_rational() {
            return r.cmp(&Rational::zero());
        }
        let re = if self.n > 2 {
            // (x + conj x) / 2 is exactly the real part
            let sum = self + &self.conj();
            if sum.is_zero() {
                return Ordering::Equal;
            }
            sum
        } else {
            self.clone()
        };
        let mut prec = precision_floor();
        loop {
            let (s, err) = re.real_fixed(prec);
            if s.abs() > err {
                return if s.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            prec *= 2;
        }
    }

    /// Fingerprint at a fixed conductor; equal values give equal keys when
    /// `m` is a multiple of both conductors.
    pub fn key_at(&self, m: u32) -> (Vec<BigInt>, BigInt) {
        let l = self.lift(m).reduced();
        (l.num, l.den)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.num
            .iter()
            .zip(&b.num)
            .all(|(x, y)| x * &b.den == y * &a.den)
    }
}

impl Eq for Cyclotomic {}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect()
        };
        let den = if a.den == b.den { a.den } else { &a.den * &b.den };
        Cyclotomic { n: a.n, num, den }.reduced()
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 {
            return rhs.scale(&Rational::new(self.num[0].clone(), self.den.clone()));
        }
        if rhs.n == 1 {
            return self.scale(&Rational::new(rhs.num[0].clone(), rhs.den.clone()));
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        let t = tables(a.n);
        let phi = t.phi;
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = raw[..phi].to_vec();
        for (k, c) in raw.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let p = &t.powers[k % a.n as usize];
            for (slot, &pk) in num.iter_mut().zip(p) {
                if pk != 0 {
                    *slot += c * pk;
                }
            }
        }
        Cyclotomic {
            n: a.n,
            num,
            den: &a.den * &b.den,
        }
        .reduced()
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(Cyclotomic, Add, add);
forward_owned!(Cyclotomic, Sub, sub);
forward_owned!(Cyclotomic, Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z{}^{}", self.n, j)?,
                _ => write!(f, "{a}*z{}^{}", self.n, j)?,
            }
        }
        Ok(())
    }
}
