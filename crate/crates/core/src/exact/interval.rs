//! Certified enclosures of cyclotomic reals.
//!
//! Everything is fixed-point over `BigInt` with explicit error bounds in
//! units of the last place, so an enclosure always brackets the exact value.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

static PRECISION_FLOOR: AtomicU32 = AtomicU32::new(64);

/// Starting precision (bits) for sign determination. Raising it never
/// changes a result, only how many refinement rounds are needed.
pub fn set_precision_floor(bits: u32) {
    PRECISION_FLOOR.store(bits.clamp(16, 1 << 16), Ordering::Relaxed);
}

pub fn precision_floor() -> u32 {
    PRECISION_FLOOR.load(Ordering::Relaxed)
}

const GUARD_BITS: u32 = 40;

/// arctan(1/x) * 2^w together with an error bound in ulps.
fn atan_inv_fixed(x: u32, w: u32) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power: BigInt = (BigInt::one() << w) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, 3 * k + 3)
}

/// π * 2^w and its error bound in ulps (Machin's formula).
fn pi_fixed(w: u32) -> (BigInt, u64) {
    let (a5, e5) = atan_inv_fixed(5, w);
    let (a239, e239) = atan_inv_fixed(239, w);
    (a5 * 16 - a239 * 4, 16 * e5 + 4 * e239)
}

/// cos(πt) or sin(πt) for rational `t` in [0, 1/4], scaled by 2^w.
fn trig_small_fixed(t: &BigRational, w: u32, pi: &(BigInt, u64), want_sin: bool) -> (BigInt, u64) {
    let x = (&pi.0 * t.numer()).div_floor(t.denom());
    // |t| <= 1/4 so the π error shrinks; one extra ulp for the floor
    let ex = pi.1 / 4 + 2;
    let scale2 = 2 * w;
    let (mut term, start_k) = if want_sin {
        (x.clone(), 1u64)
    } else {
        (BigInt::one() << w, 0u64)
    };
    let mut sum = term.clone();
    let x2 = &x * &x;
    let mut k = start_k;
    let mut steps = 0u64;
    loop {
        // next term: multiply by -x^2 / ((2k+1)(2k+2)) for sin, ((2k-1)2k) for cos
        let (a, b) = if want_sin {
            (2 * k, 2 * k + 1)
        } else {
            (2 * k + 1, 2 * k + 2)
        };
        term = (&term * &x2) >> scale2;
        term /= BigInt::from(a * b);
        if term.is_zero() {
            break;
        }
        steps += 1;
        if steps % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    (sum, ex + 4 * steps + 4)
}

/// cos(πt) * 2^w for any rational t, with an error bound in ulps.
fn cos_pi_fixed(t: &BigRational, w: u32, pi: &(BigInt, u64)) -> (BigInt, u64) {
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let mut t = t - (t / &two).floor() * &two; // [0, 2)
    if t > one {
        t = &two - &t;
    }
    let mut negate = false;
    if t > half {
        t = &one - &t;
        negate = true;
    }
    let (v, e) = if t > quarter {
        trig_small_fixed(&(&half - &t), w, pi, true)
    } else {
        trig_small_fixed(&t, w, pi, false)
    };
    (if negate { -v } else { v }, e)
}

/// Fixed-point values of cos(2πj/n), j < φ(n), at `prec` bits, each within
/// `err_ulps` of the truth.
#[derive(Debug)]
pub struct CosTable {
    pub values: Vec<BigInt>,
    pub err_ulps: u64,
}

fn cos_registry() -> &'static RwLock<HashMap<(u32, u32), Arc<CosTable>>> {
    static TABLES: OnceLock<RwLock<HashMap<(u32, u32), Arc<CosTable>>>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(HashMap::new()))
}

pub fn cos_table(n: u32, phi: usize, prec: u32) -> Arc<CosTable> {
    if let Some(t) = cos_registry().read().expect("lock").get(&(n, prec)) {
        return Arc::clone(t);
    }
    let w = prec + GUARD_BITS;
    let pi = pi_fixed(w);
    let mut values = Vec::with_capacity(phi);
    let mut worst = 0u64;
    for j in 0..phi {
        let t = BigRational::new(BigInt::from(2 * j as u64), BigInt::from(n));
        let (v, e) = cos_pi_fixed(&t, w, &pi);
        worst = worst.max(e);
        values.push(round_shift(&v, GUARD_BITS));
    }
    assert!(worst < (1u64 << (GUARD_BITS - 1)), "guard bits exhausted");
    let table = Arc::new(CosTable {
        values,
        // rounding contributes half an ulp, the scaled working error less than another half
        err_ulps: 1,
    });
    let mut map = cos_registry().write().expect("lock");
    Arc::clone(map.entry((n, prec)).or_insert(table))
}

fn round_shift(v: &BigInt, bits: u32) -> BigInt {
    let half = BigInt::one() << (bits - 1);
    (v + half) >> bits
}

/// Closed interval with dyadic rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub precision_bits: u32,
}

impl Interval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Nearest f64 to the midpoint; display only.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            decimal_string(&self.lo, 20),
            decimal_string(&self.hi, 20)
        )
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // scale to 64 significant bits before converting
    let n = r.numer();
    let d = r.denom();
    if n.is_zero() {
        return 0.0;
    }
    let shift = d.bits() as i64 - n.bits() as i64 + 64;
    let q: BigInt = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let qf: f64 = q.to_string().parse().unwrap_or(f64::NAN);
    qf * 2f64.powi(-(shift as i32))
}

/// Decimal expansion of `r` truncated toward zero after `digits` places.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (a.numer() * &scale) / a.denom();
    let s = scaled.to_string();
    let (ip, fp) = if s.len() > digits {
        let cut = s.len() - digits;
        (s[..cut].to_string(), s[cut..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", s, width = digits))
    };
    let sign = if neg && scaled.sign() != Sign::NoSign { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64_fixed(v: &BigInt, bits: u32) -> f64 {
        rational_to_f64(&BigRational::new(v.clone(), BigInt::one() << bits))
    }

    #[test]
    fn pi_is_accurate() {
        let (p, e) = pi_fixed(200);
        let approx = to_f64_fixed(&p, 200);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
        assert!(e < 5000);
    }

    #[test]
    fn cos_table_matches_f64() {
        for n in [3u32, 5, 7, 12, 15, 60] {
            let phi = super::super::tables::euler_phi(n);
            let t = cos_table(n, phi, 96);
            for (j, v) in t.values.iter().enumerate() {
                let want = (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos();
                assert!((to_f64_fixed(v, 96) - want).abs() < 1e-14, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn decimal_formatting() {
        let r = BigRational::new(BigInt::from(-1), BigInt::from(8));
        assert_eq!(decimal_string(&r, 4), "-0.1250");
        let r = BigRational::new(BigInt::from(22), BigInt::from(7));
        assert_eq!(decimal_string(&r, 3), "3.142");
    }
}
