//! Exact arithmetic in cyclotomic fields.

mod cyclotomic;
mod interval;
mod parse;
mod real;
pub mod tables;

pub use cyclotomic::{Cyclotomic, Rational};
pub use interval::{decimal_string, precision_floor, rational_to_f64, set_precision_floor, Interval};
pub use parse::{parse_constant, parse_rational, ParseError};
pub use real::CyclotomicReal;

use num_bigint::BigInt;

/// `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Serializes a rational as the string "p/q" (or "p").
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}
