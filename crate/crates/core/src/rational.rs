//! Exact rational scalars.
//!
//! `Rational` is `num`'s arbitrary-precision `BigRational`: always stored
//! reduced, denominator positive. Its `FromStr`/`Display` impls already use
//! the `"p/q"` grammar shared by all file formats (`q` omitted when 1).

use alloc::vec::Vec;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d` (reduced on construction; `d` must be nonzero).
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a rational, when it is a perfect square.
///
/// A reduced `p/q >= 0` is a rational square iff both `p` and `q` are integer
/// squares; the root is returned with the positive sign.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// Clears denominators and divides out the content, yielding a primitive
/// integer vector proportional to the input. Zero vectors map to zero.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    if !g.is_zero() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

/// Flips signs so the first nonzero entry is positive.
pub fn lex_positive(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.sign() == Sign::Minus {
            for x in v.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
    }
}
