//! Certified natural logarithms of positive rationals.
//!
//! `x = 2^k · m` with `m ∈ [3/4, 3/2)`, then
//! `ln x = k·ln 2 + 2·atanh((m-1)/(m+1))` and `ln 2 = 2·atanh(1/3)`. Both
//! series run in `W`-bit fixed point; every truncation is counted in ulps
//! and the final interval is widened by the accumulated bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::realroots::Interval;

/// Fixed-point `atanh(z)` for `|z| ≤ 1/3`, returning `(value, error_ulps)`
/// scaled by `2^w`.
fn atanh_fixed(z: &BigRational, w: u32) -> (BigInt, BigInt) {
    if z.is_negative() {
        let (v, e) = atanh_fixed(&-z, w);
        return (-v, e);
    }
    let one = BigInt::one() << w;
    // Input rounding: at most 1 ulp.
    let zf = (z * BigRational::from_integer(one)).round().to_integer();
    let z2 = (&zf * &zf) >> w;
    let mut term = zf.clone();
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * j + 1);
        term = (&term * &z2) >> w;
        j += 1;
    }
    // Each term carries at most ~2 ulps of propagated error plus 1 for its
    // division; the tail after `term` hits zero is below 2 ulps since
    // z² ≤ 1/9. Count generously.
    let err = BigInt::from(6 * j + 16);
    (sum, err)
}

/// Floor of log2 for a positive rational, up to ±1.
fn approx_log2(x: &BigRational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

/// Interval of width at most `2^-bits` containing `ln x`, for `x > 0`.
pub fn ln_enclosure(x: &BigRational, bits: u32) -> Interval {
    assert!(x.is_positive(), "logarithm of non-positive rational");
    if x.is_one() {
        return Interval::zero();
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
    let three_halves = BigRational::new(BigInt::from(3), BigInt::from(2));
    let mut k = approx_log2(x);
    let pow2 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::one() << (k as u64))
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << ((-k) as u64))
        }
    };
    let mut m = x / pow2(k);
    while m >= three_halves {
        m /= &two;
        k += 1;
    }
    while m < three_quarters {
        m *= &two;
        k -= 1;
    }
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let k_bits = 64 - (k.unsigned_abs()).leading_zeros();
    let mut w = bits + k_bits + 24;
    loop {
        let (lm, em) = atanh_fixed(&z, w);
        let (l2, e2) = atanh_fixed(&third, w);
        // ln x = 2·(k·atanh(1/3) + atanh(z))
        let kb = BigInt::from(k);
        let val = (&kb * &l2 + &lm) * 2;
        let err = (kb.abs() * &e2 + &em) * 2;
        let den = BigInt::one() << w;
        let lo = BigRational::new(&val - &err, den.clone());
        let hi = BigRational::new(&val + &err, den);
        let out = Interval::new(lo, hi);
        if out.width() <= BigRational::new(BigInt::one(), BigInt::one() << bits) {
            return out;
        }
        w += 8;
    }
}
