//! Scalar field abstraction.
//!
//! Everything above this layer is generic over a [`Scalar`]. Exactness of the
//! library's identities (diamond relations, ordering independence, division
//! remainders) only holds for exact fields; [`Rational`] is the one the crate
//! is built and tested around. `f64` satisfies the trait too, but equality
//! checks on it are bitwise and will usually fail after any rounding.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Zero};

use crate::error::LinalgError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A commutative field usable as matrix entries.
pub trait Scalar: Clone + PartialEq + Debug + Num + std::ops::Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + std::ops::Neg<Output = T> {}

/// Build a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Build `p/q`, normalized. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"` (optionally signed, surrounding whitespace allowed).
/// Non-normalized input such as `"4/-6"` is accepted and reduced.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let s = s.trim();
    let bad = || LinalgError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(LinalgError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
