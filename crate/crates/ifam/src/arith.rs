//! Exact arithmetic: arbitrary-precision binomial coefficients, the
//! real-upper-index binomial, and exact rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Exact rational with arbitrary-precision numerator and denominator.
/// Always kept in reduced form with a positive denominator.
pub type ExactRatio = BigRational;

/// Binomial coefficient C(m, r), total over the integers: returns zero
/// whenever r < 0, m < 0 or r > m, so bound evaluators stay branch-free
/// at range edges.
pub fn binom(m: i64, r: i64) -> BigCount {
    if r < 0 || m < 0 || r > m {
        return BigCount::zero();
    }
    let r = r.min(m - r) as u64;
    let m = m as u64;
    let mut acc = BigCount::one();
    for i in 0..r {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `binom` as a signed big integer, convenient in alternating sums.
pub fn binom_int(m: i64, r: i64) -> BigInt {
    BigInt::from(binom(m, r))
}

/// `binom` as an exact ratio.
pub fn binom_ratio(m: i64, r: i64) -> ExactRatio {
    ExactRatio::from_integer(binom_int(m, r))
}

/// Real-upper-index binomial: the product x(x-1)...(x-r+1) / r!, evaluated
/// as prod_{i=0}^{r-1} (x-i)/(r-i). Agrees with `binom` whenever x is a
/// nonnegative integer.
pub fn binom_real(x: f64, r: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..r {
        acc *= (x - i as f64) / ((r - i) as f64);
    }
    acc
}

/// Exact ratio p/q from machine integers; q must be nonzero.
pub fn ratio(p: i64, q: i64) -> ExactRatio {
    ExactRatio::new(BigInt::from(p), BigInt::from(q))
}

/// Floor of a nonnegative exact ratio as a count.
pub fn floor_count(r: &ExactRatio) -> BigCount {
    let f = r.floor().to_integer();
    assert!(!f.is_negative(), "floor_count on a negative ratio");
    f.to_biguint().expect("nonnegative")
}

/// Lossy conversion for display purposes only; exact paths never use it.
pub fn count_to_f64(c: &BigCount) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}
