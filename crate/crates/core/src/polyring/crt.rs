use num_traits::{One, Signed};

use crate::error::{domain, Error, Result};
use crate::polyring::{resultant, strongly_coprime, IntPoly};

/// Chinese-remainder lift over ℤ[t].
///
/// Given monic, pairwise strongly coprime moduli `mᵢ` and residues `rᵢ`,
/// returns the unique `D` with `deg D < Σ deg mᵢ` and `D ≡ rᵢ (mod mᵢ)`.
/// Every congruence is re-checked by division before returning.
pub fn crt_lift(pairs: &[(IntPoly, IntPoly)]) -> Result<IntPoly> {
    for (i, (m, _)) in pairs.iter().enumerate() {
        if !m.is_monic() {
            return domain(format!("modulus #{i} ({m}) is not monic"));
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let r = resultant(&pairs[i].0, &pairs[j].0)?;
            if !r.abs().is_one() {
                return Err(Error::NotCoprime {
                    first: i,
                    second: j,
                    resultant: r.to_string(),
                });
            }
        }
    }
    let Some(((m0, r0), rest)) = pairs.split_first() else {
        return Ok(IntPoly::zero());
    };
    let mut modulus = m0.clone();
    let mut acc = r0.rem_monic(m0)?;
    for (m, r) in rest {
        let cert = strongly_coprime(&modulus, m)?.ok_or_else(|| {
            Error::Internal(format!("accumulated modulus not coprime to {m}"))
        })?;
        // cert.u·modulus ≡ 1 (mod m), and ≡ 0 (mod modulus).
        let r = r.rem_monic(m)?;
        let step = &(&cert.u * &modulus) * &(&r - &acc);
        modulus = &modulus * m;
        acc = (&acc + &step).rem_monic(&modulus)?;
    }
    for (i, (m, r)) in pairs.iter().enumerate() {
        if acc.rem_monic(m)? != r.rem_monic(m)? {
            return Err(Error::Internal(format!(
                "CRT lift fails congruence #{i} modulo {m}"
            )));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn constant_and_shared_residues() {
        let b1 = p(&[1, 3, 3, 3, 1]);
        let b2 = p(&[1, 4, 3, 4, 1]);
        let a = p(&[1, 0, 1]);
        assert_eq!(crt_lift(&[(b1.clone(), IntPoly::one()), (b2, IntPoly::one())]).unwrap(), IntPoly::one());
        assert_eq!(crt_lift(&[(a, IntPoly::t()), (b1, IntPoly::t())]).unwrap(), IntPoly::t());
    }

    #[test]
    fn mixed_residues_verified_by_division() {
        let a = p(&[1, 0, 1]);
        let b1 = p(&[1, 3, 3, 3, 1]);
        let r = p(&[2, -1, 0, 5]);
        let d = crt_lift(&[(a.clone(), IntPoly::one()), (b1.clone(), r.clone())]).unwrap();
        assert!(d.degree().unwrap() < 6);
        assert_eq!(d.rem_monic(&a).unwrap(), IntPoly::one());
        assert_eq!(d.rem_monic(&b1).unwrap(), r);
    }

    #[test]
    fn names_offending_pair() {
        let err = crt_lift(&[
            (p(&[1, 0, 1]), IntPoly::one()),
            (p(&[-1, 1]), IntPoly::one()),
            (p(&[1, 1]), IntPoly::zero()),
        ])
        .unwrap_err();
        match err {
            Error::NotCoprime { first, second, resultant } => {
                assert_eq!((first, second), (0, 1));
                assert_eq!(resultant, "2");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn trivial_modulus_is_skipped() {
        let d = crt_lift(&[(IntPoly::one(), IntPoly::t()), (p(&[-2, 0, 1]), IntPoly::t())]).unwrap();
        assert_eq!(d, IntPoly::t());
    }
}
