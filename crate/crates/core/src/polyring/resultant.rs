//! Resultants and integral Bezout certificates.
//!
//! Convention used throughout the crate:
//!
//! ```text
//! Res(a, b) = lc(a)^deg(b) · ∏_{a(γ) = 0} b(γ)
//! ```
//!
//! which is the determinant of the Sylvester matrix with the rows of `a`
//! first. For monic `a` this is the norm of `b(ξ)` in `ℤ[t]/(a)`, so
//! `Res(a, b·c) = Res(a, b)·Res(a, c)` and `Res(b, a) = (-1)^(deg a·deg b) Res(a, b)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::linalg::{solve_fraction_free, IntMatrix};
use crate::polyring::IntPoly;

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return domain("resultant of the zero polynomial");
    }
    Ok(subresultant(a, b))
}

fn subresultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (da, db) = (a.deg(), b.deg());
    if da == 0 {
        return num_traits::pow(a.leading_coeff(), db);
    }
    if db == 0 {
        return num_traits::pow(b.leading_coeff(), da);
    }
    let ca = a.content();
    let cb = b.content();
    let mut pa = a.div_exact_scalar(&ca);
    let mut pb = b.div_exact_scalar(&cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut s = BigInt::one();
    if pa.deg() < pb.deg() {
        std::mem::swap(&mut pa, &mut pb);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dpa, dpb) = (pa.deg(), pb.deg());
        let delta = dpa - dpb;
        if dpa % 2 == 1 && dpb % 2 == 1 {
            s = -s;
        }
        let r = pa.pseudo_rem(&pb);
        if r.is_zero() {
            return BigInt::zero();
        }
        pa = pb;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        pb = r.div_exact_scalar(&divisor);
        g = pa.leading_coeff();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
        if pb.deg() == 0 {
            let dpa = pa.deg();
            let hh = num_traits::pow(pb.leading_coeff(), dpa) / num_traits::pow(h, dpa - 1);
            return s * t * hh;
        }
    }
}

/// The `(deg a + deg b)`-square Sylvester matrix; rows of `a` first, leading
/// coefficient on the left.
pub fn sylvester_matrix(a: &IntPoly, b: &IntPoly) -> IntMatrix {
    let (n, m) = (a.deg(), b.deg());
    let size = n + m;
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..m {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..n {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            s[(m + i, i + k)] = c.clone();
        }
    }
    s
}

/// Resultant as the Sylvester determinant (independent cross-check of
/// [`resultant`]).
pub fn resultant_sylvester(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return domain("resultant of the zero polynomial");
    }
    Ok(sylvester_matrix(a, b).det())
}

/// Witness that `(a) + (b) = ℤ[t]`: `u·a + v·b = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    pub u: IntPoly,
    pub v: IntPoly,
    pub a: IntPoly,
    pub b: IntPoly,
}

impl BezoutCertificate {
    /// Re-expands `u·a + v·b` and checks it is exactly 1.
    pub fn verify(&self) -> bool {
        (&(&self.u * &self.a) + &(&self.v * &self.b)).is_one()
    }
}

/// Returns a Bezout certificate iff `|Res(a, b)| = 1`.
///
/// The coefficients come from a fraction-free Cramer solve of the Sylvester
/// system, so `deg u < deg b` and `deg v < deg a`. When both inputs are
/// constants the resultant is 1 by convention, so integer coprimality is
/// tested instead. For non-monic inputs a unit ideal may exist even though
/// `|Res| > 1` (e.g. `2` and `2t + 1`); only the resultant criterion is used.
pub fn strongly_coprime(a: &IntPoly, b: &IntPoly) -> Result<Option<BezoutCertificate>> {
    if a.is_zero() || b.is_zero() {
        return domain("strong coprimality of the zero polynomial");
    }
    let (n, m) = (a.deg(), b.deg());
    if n == 0 && m == 0 {
        let (x, y) = (a.leading_coeff(), b.leading_coeff());
        let e = x.extended_gcd(&y);
        if !e.gcd.is_one() {
            return Ok(None);
        }
        return Ok(Some(BezoutCertificate {
            u: IntPoly::constant(e.x),
            v: IntPoly::constant(e.y),
            a: a.clone(),
            b: b.clone(),
        }));
    }
    let res = resultant(a, b)?;
    if !res.abs().is_one() {
        return Ok(None);
    }
    // Column j < m holds t^j·a, column m + j holds t^j·b; row r is the
    // coefficient of t^r.
    let size = n + m;
    let mut s = IntMatrix::zeros(size, size);
    for j in 0..m {
        for (k, c) in a.coeffs().iter().enumerate() {
            s[(j + k, j)] = c.clone();
        }
    }
    for j in 0..n {
        for (k, c) in b.coeffs().iter().enumerate() {
            s[(j + k, m + j)] = c.clone();
        }
    }
    let mut rhs = IntMatrix::zeros(size, 1);
    rhs[(0, 0)] = BigInt::one();
    let (det, y) = solve_fraction_free(&s, &rhs)?;
    if !det.abs().is_one() {
        return Err(Error::Internal(format!(
            "Sylvester system determinant {det} disagrees with resultant {res}"
        )));
    }
    let x: Vec<BigInt> = (0..size).map(|i| &y[(i, 0)] * &det).collect();
    let cert = BezoutCertificate {
        u: IntPoly::new(x[..m].to_vec()),
        v: IntPoly::new(x[m..].to_vec()),
        a: a.clone(),
        b: b.clone(),
    };
    if !cert.verify() {
        return Err(Error::Internal("Bezout certificate does not expand to 1".into()));
    }
    Ok(Some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Res(a, b) for monic `a` as the product of `b` over the roots of `a`,
    /// via the norm: det of `b` evaluated at the companion matrix of `a`.
    fn norm_oracle(a: &IntPoly, b: &IntPoly) -> BigInt {
        crate::polyring::companion(a).unwrap().eval_poly(b).det()
    }

    #[test]
    fn known_values() {
        let b1 = p(&[1, 3, 3, 3, 1]);
        let b2 = p(&[1, 4, 3, 4, 1]);
        let a = p(&[1, 0, 1]);
        assert_eq!(resultant(&b1, &a).unwrap(), BigInt::one());
        assert_eq!(resultant(&b2, &b1).unwrap(), BigInt::one());
        assert_eq!(resultant(&p(&[0, 1]), &b1).unwrap(), b1.eval(&BigInt::zero()));
        assert_eq!(resultant(&b1, &IntPoly::one()).unwrap(), BigInt::one());
        assert!(resultant(&IntPoly::zero(), &b1).is_err());
    }

    #[test]
    fn prs_agrees_with_sylvester_and_norm() {
        let polys = [
            p(&[1, 3, 3, 3, 1]),
            p(&[1, 4, 3, 4, 1]),
            p(&[-2, 0, 1]),
            p(&[3, -1, 0, 2]),
            p(&[0, 0, 5, 1]),
            p(&[6, 5, 1]),
            p(&[-1, 1]),
            p(&[4]),
            p(&[1, 0, 0, 0, 0, 2, 3]),
        ];
        for a in &polys {
            for b in &polys {
                let r = resultant(a, b).unwrap();
                assert_eq!(r, resultant_sylvester(a, b).unwrap(), "{a} / {b}");
                if a.is_monic() && a.deg() > 0 {
                    assert_eq!(r, norm_oracle(a, b), "{a} / {b}");
                }
            }
        }
    }

    #[test]
    fn certificates_expand_to_one() {
        let b1 = p(&[1, 3, 3, 3, 1]);
        let a = p(&[1, 0, 1]);
        let cert = strongly_coprime(&b1, &a).unwrap().unwrap();
        assert!(cert.verify());
        assert!(strongly_coprime(&p(&[0, 1]), &p(&[0, 1])).unwrap().is_none());
        // (t^2+1, (t^2+1)·t + 1): -t·a + 1·b = 1
        let b = &(&a * &p(&[0, 1])) + &IntPoly::one();
        let cert = strongly_coprime(&a, &b).unwrap().unwrap();
        assert_eq!(cert.v, IntPoly::one());
        assert_eq!(cert.u, p(&[0, -1]));
    }

    #[test]
    fn constant_pairs_use_integer_gcd() {
        assert!(strongly_coprime(&p(&[2]), &p(&[3])).unwrap().unwrap().verify());
        assert!(strongly_coprime(&p(&[2]), &p(&[4])).unwrap().is_none());
        assert!(strongly_coprime(&p(&[-1]), &p(&[1, 1])).unwrap().unwrap().verify());
    }
}
