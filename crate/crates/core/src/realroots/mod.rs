//! Certified real-root counting and isolation (Sturm sequences) and sign /
//! logarithm evaluation at real algebraic numbers.

mod interval;
mod log;

pub use interval::{interval_det, Interval};
pub use log::ln_enclosure;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::polyring::{gcd, sign_of, squarefree_decomposition, squarefree_part, IntPoly};
use crate::serde_util::rational_str;

/// Sturm chain `p, p', -rem(p, p'), …` kept primitive with signs preserved.
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p.clone()];
    if p.is_constant() {
        return seq;
    }
    let mut prev = p.clone();
    let d = p.derivative();
    let mut cur = d.div_exact_scalar(&d.content());
    while !cur.is_zero() {
        seq.push(cur.clone());
        if cur.is_constant() {
            break;
        }
        let k = prev.deg() - cur.deg() + 1;
        let mut r = prev.pseudo_rem(&cur);
        // prem = lc^k · rem, so flip when lc^k < 0 to recover sign(rem).
        if cur.leading_coeff().is_negative() && k % 2 == 1 {
            r = -r;
        }
        let next = -r;
        let next = if next.is_zero() {
            next
        } else {
            next.div_exact_scalar(&next.content())
        };
        prev = cur;
        cur = next;
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[IntPoly], x: &BigRational) -> usize {
    variations(seq.iter().map(|q| q.sign_at(x)))
}

fn variations_at_infinity(seq: &[IntPoly], positive: bool) -> usize {
    variations(seq.iter().map(|q| {
        let s = sign_of(&q.leading_coeff());
        if positive || q.deg() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Distinct real roots of a squarefree `p` in `(lo, hi]`.
pub fn count_roots_between(seq: &[IntPoly], lo: &BigRational, hi: &BigRational) -> usize {
    variations_at(seq, lo).saturating_sub(variations_at(seq, hi))
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &IntPoly) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    let q = squarefree_part(p);
    let seq = sturm_sequence(&q);
    variations_at_infinity(&seq, false).saturating_sub(variations_at_infinity(&seq, true))
}

/// Root counts split by distinct/with-multiplicity and real/imaginary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCounts {
    pub distinct_real: usize,
    pub distinct_imaginary: usize,
    pub real_with_multiplicity: usize,
    pub imaginary_with_multiplicity: usize,
    /// Whether every real root is simple.
    pub real_roots_simple: bool,
}

pub fn root_counts(p: &IntPoly) -> RootCounts {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    let mut out = RootCounts {
        distinct_real: 0,
        distinct_imaginary: 0,
        real_with_multiplicity: 0,
        imaginary_with_multiplicity: 0,
        real_roots_simple: true,
    };
    for (f, mult) in squarefree_decomposition(p) {
        let real = count_real_roots(&f);
        let imag = f.deg() - real;
        out.distinct_real += real;
        out.distinct_imaginary += imag;
        out.real_with_multiplicity += real * mult;
        out.imaginary_with_multiplicity += imag * mult;
        if mult > 1 && real > 0 {
            out.real_roots_simple = false;
        }
    }
    out
}

/// `1 + max |cᵢ / lc|`, rounded up to an integer; every root lies strictly
/// inside `(-B, B)`.
pub fn cauchy_bound(p: &IntPoly) -> BigInt {
    let lc = p.leading_coeff().abs();
    let m = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let q = (&m + &lc - BigInt::one()) / &lc;
    q + BigInt::one() + BigInt::one()
}

/// A real root of `defpoly` isolated in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealAlgebraic {
    pub defpoly: IntPoly,
    #[serde(with = "rational_str")]
    pub lo: BigRational,
    #[serde(with = "rational_str")]
    pub hi: BigRational,
}

impl RealAlgebraic {
    /// Checks the invariants (squarefree, `lo < hi`, nonzero endpoint values,
    /// exactly one root inside) before building.
    pub fn new(defpoly: IntPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        let x = RealAlgebraic { defpoly, lo, hi };
        x.check()?;
        Ok(x)
    }

    pub fn check(&self) -> Result<()> {
        if self.lo >= self.hi {
            return domain("isolating interval is empty");
        }
        if !crate::polyring::is_squarefree(&self.defpoly) {
            return domain(format!("defining polynomial {} is not squarefree", self.defpoly));
        }
        if self.defpoly.sign_at(&self.lo) == 0 || self.defpoly.sign_at(&self.hi) == 0 {
            return domain("isolating interval endpoint is a root");
        }
        let seq = sturm_sequence(&self.defpoly);
        let n = count_roots_between(&seq, &self.lo, &self.hi);
        if n != 1 {
            return Err(Error::Certificate(format!(
                "isolating interval holds {n} roots of {}",
                self.defpoly
            )));
        }
        Ok(())
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn approx(&self) -> f64 {
        self.interval().mid_f64()
    }

    /// One bisection step. A rational root hit exactly at the midpoint is
    /// kept isolated by the middle half of the old interval.
    pub fn bisect(&self) -> RealAlgebraic {
        let mid = self.interval().midpoint();
        let s_mid = self.defpoly.sign_at(&mid);
        let s_lo = self.defpoly.sign_at(&self.lo);
        let (lo, hi) = if s_mid == 0 {
            let q = self.width() / BigRational::from_integer(BigInt::from(4));
            (&mid - &q, &mid + q)
        } else if s_mid == s_lo {
            (mid, self.hi.clone())
        } else {
            (self.lo.clone(), mid)
        };
        RealAlgebraic {
            defpoly: self.defpoly.clone(),
            lo,
            hi,
        }
    }

    /// Bisects until the interval is no wider than `width`.
    pub fn refine_to(&self, width: &BigRational) -> RealAlgebraic {
        let mut x = self.clone();
        while &x.width() > width {
            x = x.bisect();
        }
        x
    }

    /// Enclosure of `q(self)` of width at most `precision`, refining as
    /// needed.
    pub fn eval_enclosure(&self, q: &IntPoly, precision: &BigRational) -> (RealAlgebraic, Interval) {
        let mut x = self.clone();
        loop {
            let v = x.interval().eval_poly(q);
            if &v.width() <= precision {
                return (x, v);
            }
            for _ in 0..4 {
                x = x.bisect();
            }
        }
    }
}

/// Isolating intervals for the distinct real roots of `p`, ascending.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<RealAlgebraic> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    let q = squarefree_part(p);
    if q.is_constant() {
        return Vec::new();
    }
    let seq = sturm_sequence(&q);
    let b = BigRational::from_integer(cauchy_bound(&q));
    let mut out = Vec::new();
    isolate_rec(&q, &seq, -b.clone(), b, &mut out);
    out
}

fn isolate_rec(
    q: &IntPoly,
    seq: &[IntPoly],
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<RealAlgebraic>,
) {
    let n = count_roots_between(seq, &lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealAlgebraic {
            defpoly: q.clone(),
            lo,
            hi,
        });
        return;
    }
    let mid = split_point(q, &lo, &hi);
    isolate_rec(q, seq, lo, mid.clone(), out);
    isolate_rec(q, seq, mid, hi, out);
}

/// A point strictly inside `(lo, hi)` where `q` does not vanish, as close to
/// the midpoint as a short dyadic walk allows.
fn split_point(q: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let mid = (lo + hi) / &two;
    if q.sign_at(&mid) != 0 {
        return mid;
    }
    let mut step = (hi - lo) / BigRational::from_integer(BigInt::from(8));
    loop {
        for cand in [&mid + &step, &mid - &step] {
            if q.sign_at(&cand) != 0 {
                return cand;
            }
        }
        step /= &two;
    }
}

/// Sign of `q(x)`: exact 0 when `x` is a root of `gcd(defpoly, q)`,
/// otherwise decided by refining until interval evaluation excludes 0.
pub fn sign_at(x: &RealAlgebraic, q: &IntPoly) -> i8 {
    sign_at_refined(x, q).0
}

/// Like [`sign_at`] but also returns the refined number.
pub fn sign_at_refined(x: &RealAlgebraic, q: &IntPoly) -> (i8, RealAlgebraic) {
    if q.is_zero() {
        return (0, x.clone());
    }
    if q.is_constant() {
        return (sign_of(&q.leading_coeff()), x.clone());
    }
    let g = gcd(&x.defpoly, q);
    if !g.is_constant() {
        let seq = sturm_sequence(&g);
        if count_roots_between(&seq, &x.lo, &x.hi) > 0 {
            return (0, x.clone());
        }
    }
    let mut y = x.clone();
    loop {
        if let Some(s) = y.interval().eval_poly(q).sign() {
            return (s, y);
        }
        y = y.bisect();
    }
}

/// Enclosure of `ln|q(x)|` of width at most `precision`. Detects `q(x) = ±1`
/// exactly and returns `[0, 0]` then.
pub fn log_abs_enclosure(x: &RealAlgebraic, q: &IntPoly, precision: &BigRational) -> Result<Interval> {
    Ok(log_abs_enclosure_refined(x, q, precision)?.0)
}

pub fn log_abs_enclosure_refined(
    x: &RealAlgebraic,
    q: &IntPoly,
    precision: &BigRational,
) -> Result<(Interval, RealAlgebraic)> {
    if !precision.is_positive() {
        return domain("log enclosure precision must be positive");
    }
    let (s, mut y) = sign_at_refined(x, q);
    if s == 0 {
        return domain(format!("{q} vanishes at the given real algebraic number"));
    }
    let one = IntPoly::one();
    if sign_at(&y, &(q - &one)) == 0 || sign_at(&y, &(q + &one)) == 0 {
        return Ok((Interval::zero(), y));
    }
    let bits = bits_for(precision);
    let quarter = precision / BigRational::from_integer(BigInt::from(4));
    loop {
        let v = y.interval().eval_poly(q).abs();
        if v.lo.is_positive() && (v.width() / &v.lo) <= quarter {
            let lo = ln_enclosure(&v.lo, bits);
            let hi = ln_enclosure(&v.hi, bits);
            let out = Interval::new(lo.lo, hi.hi);
            if &out.width() <= precision {
                return Ok((out, y));
            }
        }
        for _ in 0..4 {
            y = y.bisect();
        }
    }
}

/// Smallest `b` with `2^-b ≤ precision / 4`.
fn bits_for(precision: &BigRational) -> u32 {
    let mut b = 2u32;
    let four = BigRational::from_integer(BigInt::from(4));
    while BigRational::new(BigInt::one(), BigInt::one() << b) * &four > *precision {
        b += 1;
    }
    b
}

/// `2^-bits` as a rational.
pub fn precision_from_bits(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Float approximation of all real roots, ascending.
pub fn approx_real_roots(p: &IntPoly) -> Vec<f64> {
    let eps = precision_from_bits(60);
    isolate_real_roots(p)
        .into_iter()
        .map(|r| r.refine_to(&eps).approx())
        .collect()
}
