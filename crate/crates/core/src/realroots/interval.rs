use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::polyring::IntPoly;
use crate::serde_util::parse_rational;

/// Closed interval with rational endpoints, `lo ≤ hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(x: &BigInt) -> Self {
        Self::point(BigRational::from_integer(x.clone()))
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::point(BigRational::one())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// +1 or -1 when the whole interval lies on one side of 0.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Contains the other interval.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Interval::new(BigRational::zero(), self.hi.clone().max(-self.lo.clone()))
        }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    /// Widens to dyadic endpoints with denominator `2^bits`, keeping the
    /// original interval inside. Keeps rational sizes bounded in long
    /// products.
    pub fn round_outward(&self, bits: u32) -> Interval {
        let scale = BigInt::one() << bits;
        let down = (&self.lo * BigRational::from_integer(scale.clone())).floor();
        let up = (&self.hi * BigRational::from_integer(scale.clone())).ceil();
        Interval::new(
            BigRational::new(down.to_integer(), scale.clone()),
            BigRational::new(up.to_integer(), scale),
        )
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Horner evaluation of `p` over the interval.
    pub fn eval_poly(&self, p: &IntPoly) -> Interval {
        let mut acc = Interval::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Interval::from_int(c);
        }
        acc
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() {
            return rhs.scale(&self.lo);
        }
        if rhs.is_point() {
            return self.scale(&rhs.lo);
        }
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().cloned().expect("nonempty");
        let hi = cands.iter().max().cloned().expect("nonempty");
        Interval::new(lo, hi)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64_pair();
        write!(f, "[{a:.6e}, {b:.6e}]")
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.to_string(), self.hi.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi]: [String; 2] = Deserialize::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&hi).map_err(serde::de::Error::custom)?;
        if lo > hi {
            return Err(serde::de::Error::custom("interval endpoints out of order"));
        }
        Ok(Interval { lo, hi })
    }
}

/// Determinant enclosure of a square interval matrix by Laplace expansion
/// along rows, sharing minors over column subsets (`O(2^n · n)` interval
/// products). Intermediate results are rounded outward to `bits` fractional
/// bits.
pub fn interval_det(m: &[Vec<Interval>], bits: u32) -> Interval {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "interval determinant of non-square matrix");
    assert!(n < 24, "interval determinant too large for subset expansion");
    let mut minors: Vec<Interval> = vec![Interval::zero(); 1 << n];
    minors[0] = Interval::one();
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Interval::zero();
        for (j, entry) in m[row].iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            let term = entry * &minors[mask & !(1 << j)];
            // Cofactor sign from the position of column j inside the minor.
            let left = (mask & ((1 << j) - 1)).count_ones() as usize;
            acc = if (row - left).is_even() {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        minors[mask] = acc.round_outward(bits);
    }
    minors[(1 << n) - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rational_det, IntMatrix};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn point_determinant_is_exact() {
        let a = IntMatrix::from_i64_rows(&[&[2, -1, 0, 3], &[1, 4, 2, 2], &[0, 5, -3, 1], &[7, 0, 1, 1]]);
        let rows: Vec<Vec<Interval>> = a
            .to_rational_rows()
            .into_iter()
            .map(|row| row.into_iter().map(Interval::point).collect())
            .collect();
        let d = interval_det(&rows, 64);
        assert!(d.is_point());
        assert_eq!(d.lo, rational_det(&a.to_rational_rows()));
    }

    #[test]
    fn widened_entries_enclose_determinant() {
        let exact = [[r(3, 2), r(-1, 3)], [r(2, 5), r(7, 4)]];
        let eps = r(1, 1000);
        let rows: Vec<Vec<Interval>> = exact
            .iter()
            .map(|row| row.iter().map(|x| Interval::new(x - &eps, x + &eps)).collect())
            .collect();
        let d = interval_det(&rows, 64);
        let truth = &exact[0][0] * &exact[1][1] - &exact[0][1] * &exact[1][0];
        assert!(d.contains(&truth));
        assert!(d.width() < r(1, 100));
    }

    #[test]
    fn multiplication_handles_signs() {
        let a = Interval::new(r(-1, 1), r(2, 1));
        let b = Interval::new(r(-3, 1), r(1, 2));
        let p = &a * &b;
        assert_eq!(p, Interval::new(r(-6, 1), r(3, 1)));
        assert_eq!(a.abs(), Interval::new(r(0, 1), r(2, 1)));
    }

    #[test]
    fn json_pair_of_strings() {
        let a = Interval::new(r(-1, 3), r(5, 2));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["-1/3","5/2"]"#);
        assert_eq!(serde_json::from_str::<Interval>(&s).unwrap(), a);
    }
}
