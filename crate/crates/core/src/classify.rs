//! Characteristic polynomials and the type hierarchy 𝒥₀ ⊃ 𝒥 ⊃ 𝒥₁ decided
//! from a supplied factorization, with machine-checkable evidence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::linalg::IntMatrix;
use crate::polyring::modp::{is_irreducible_mod_p, ModPoly, PRIMES_TO_97};
use crate::polyring::primality::is_deterministic_range;
use crate::polyring::{is_prime, resultant, strongly_coprime, BezoutCertificate, IntPoly};
use crate::realroots::{isolate_real_roots, root_counts, RootCounts};
use crate::serde_util::bigint_str;

/// Characteristic polynomial `det(tI - m)` by the Faddeev–LeVerrier
/// recurrence; every division is exact over ℤ and is checked.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly> {
    if !m.is_square() {
        return domain(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        ));
    }
    let n = m.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut am = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mk = am.add_scalar_identity(&c[n - k + 1]);
        am = m * &mk;
        let (q, r) = (-am.trace()).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal("inexact Faddeev–LeVerrier step".into()));
        }
        c[n - k] = q;
    }
    Ok(IntPoly::new(c))
}

/// `C = b0 · B₁ ⋯ B_k`, each factor monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredCharPoly {
    pub b0: IntPoly,
    pub factors: Vec<IntPoly>,
}

impl FactoredCharPoly {
    pub fn product(&self) -> IntPoly {
        self.factors.iter().fold(self.b0.clone(), |acc, f| &acc * f)
    }

    /// Checks monicity and that the product is exactly `target`.
    pub fn verify_against(&self, target: &IntPoly) -> Result<()> {
        if !self.b0.is_monic() {
            return Err(Error::Certificate(format!("b0 = {} is not monic", self.b0)));
        }
        for (j, f) in self.factors.iter().enumerate() {
            if !f.is_monic() || f.is_constant() {
                return Err(Error::Certificate(format!(
                    "factor #{} = {f} is not a monic nonconstant polynomial",
                    j + 1
                )));
            }
        }
        let prod = self.product();
        if &prod != target {
            return Err(Error::Certificate(format!(
                "factorization product {prod} differs from characteristic polynomial {target}"
            )));
        }
        Ok(())
    }

    /// `[b0, B₁, …, B_k]`.
    pub fn all(&self) -> Vec<&IntPoly> {
        std::iter::once(&self.b0).chain(self.factors.iter()).collect()
    }
}

/// Largest coefficient allowed by the base-10 Filaseta–Gross criterion.
const FILASETA_GROSS_COEFF_MAX: &str = "49598666989151226098104244512918";

/// Evidence that a monic polynomial is irreducible over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IrreducibilityWitness {
    /// Nonnegative coefficients, degree ≤ 30, and `p(10)` prime. Only used
    /// when `p(10) < 2^64`, where the primality test is a proof.
    FilasetaGross {
        #[serde(with = "bigint_str")]
        value_at_10: BigInt,
    },
    /// Irreducible modulo the given prime (degree is preserved since `p` is
    /// monic).
    ModPrime { prime: u64 },
    /// Degree 2 or 3 without an integer root (monic, so rational roots are
    /// integers).
    NoRationalRoot,
    /// Degree 1.
    Linear,
    /// No witness found; never counts as a proof.
    Unknown,
}

impl IrreducibilityWitness {
    pub fn is_proof(&self) -> bool {
        !matches!(self, IrreducibilityWitness::Unknown)
    }

    /// Re-checks the witness against `p`.
    pub fn verify(&self, p: &IntPoly) -> bool {
        match self {
            IrreducibilityWitness::FilasetaGross { value_at_10 } => {
                filaseta_gross_applies(p)
                    && &p.eval(&BigInt::from(10)) == value_at_10
                    && is_deterministic_range(value_at_10)
                    && is_prime(value_at_10)
            }
            IrreducibilityWitness::ModPrime { prime } => {
                p.is_monic() && is_irreducible_mod_p(&ModPoly::from_intpoly(p, *prime))
            }
            IrreducibilityWitness::NoRationalRoot => {
                p.is_monic() && matches!(p.degree(), Some(2 | 3)) && !has_integer_root(p)
            }
            IrreducibilityWitness::Linear => p.degree() == Some(1),
            IrreducibilityWitness::Unknown => false,
        }
    }
}

fn filaseta_gross_applies(p: &IntPoly) -> bool {
    let max: BigInt = FILASETA_GROSS_COEFF_MAX.parse().expect("constant");
    matches!(p.degree(), Some(d) if (1..=30).contains(&d))
        && p.coeffs().iter().all(|c| !c.is_negative() && c <= &max)
}

/// Integer root test through isolating intervals.
fn has_integer_root(p: &IntPoly) -> bool {
    if p.coeff(0).is_zero() {
        return true;
    }
    let half = num_rational::BigRational::new(BigInt::one(), BigInt::from(2));
    isolate_real_roots(p).iter().any(|x| {
        let x = x.refine_to(&half);
        let mut k = x.lo.ceil().to_integer();
        let hi = x.hi.floor().to_integer();
        while k <= hi {
            if p.eval(&k).is_zero() {
                return true;
            }
            k += 1;
        }
        false
    })
}

/// The first succeeding witness among Filaseta–Gross, irreducibility modulo
/// a prime ≤ 97, and the rational-root test for degree ≤ 3.
pub fn irreducibility_witness(p: &IntPoly) -> Result<IrreducibilityWitness> {
    if !p.is_monic() || p.is_constant() {
        return domain(format!("irreducibility witness needs a monic nonconstant polynomial, got {p}"));
    }
    if p.degree() == Some(1) {
        return Ok(IrreducibilityWitness::Linear);
    }
    if filaseta_gross_applies(p) {
        let v = p.eval(&BigInt::from(10));
        if is_deterministic_range(&v) && is_prime(&v) {
            return Ok(IrreducibilityWitness::FilasetaGross { value_at_10: v });
        }
    }
    for &prime in &PRIMES_TO_97 {
        if is_irreducible_mod_p(&ModPoly::from_intpoly(p, prime)) {
            return Ok(IrreducibilityWitness::ModPrime { prime });
        }
    }
    if matches!(p.degree(), Some(2 | 3)) && !has_integer_root(p) {
        return Ok(IrreducibilityWitness::NoRationalRoot);
    }
    Ok(IrreducibilityWitness::Unknown)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEvidence {
    pub poly: IntPoly,
    pub root_counts: RootCounts,
    /// Absent for `b0`, which need not be irreducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub irreducibility: Option<IrreducibilityWitness>,
}

/// Strong-coprimality evidence for the pair `(first, second)` of
/// `[b0, B₁, …, B_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimalityEvidence {
    pub first: usize,
    pub second: usize,
    #[serde(with = "bigint_str")]
    pub resultant: BigInt,
    pub certificate: Option<BezoutCertificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeStatus {
    TypeJ1,
    TypeJ,
    NotTypeJ,
    /// Every other condition holds but an irreducibility witness is missing.
    Unknown,
}

/// Verdicts and evidence for the 𝒥₀ / 𝒥 / 𝒥₁ hierarchy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCertificate {
    pub char_poly: IntPoly,
    pub j0: bool,
    pub j: bool,
    pub j1: bool,
    pub status: TypeStatus,
    /// Number of real eigenvalues.
    pub s: usize,
    /// Half the number of imaginary eigenvalues (with multiplicity).
    pub n: usize,
    pub root_counts: RootCounts,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b0: Option<FactorEvidence>,
    #[serde(default)]
    pub factors: Vec<FactorEvidence>,
    #[serde(default)]
    pub coprimality: Vec<CoprimalityEvidence>,
    /// Human-readable reasons for every failed condition.
    pub failures: Vec<String>,
}

impl TypeCertificate {
    /// Re-checks the evidence carried by the certificate without repeating
    /// any search: factor product, root counts, witnesses, Bezout identities
    /// and the verdict flags derived from them.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Certificate(m));
        if self.j1 && !self.j || self.j && !self.j0 {
            return fail("verdict flags violate 𝒥₁ ⇒ 𝒥 ⇒ 𝒥₀".into());
        }
        if self.char_poly.deg() != self.s + 2 * self.n {
            return fail("s + 2n differs from the degree".into());
        }
        if root_counts(&self.char_poly) != self.root_counts {
            return fail("root counts of the characteristic polynomial do not re-verify".into());
        }
        if !self.j {
            return Ok(());
        }
        let Some(b0) = &self.b0 else {
            return fail("𝒥 verdict without b0 evidence".into());
        };
        let f = FactoredCharPoly {
            b0: b0.poly.clone(),
            factors: self.factors.iter().map(|e| e.poly.clone()).collect(),
        };
        f.verify_against(&self.char_poly)?;
        if root_counts(&b0.poly).distinct_real != 0 {
            return fail("b0 has a real root".into());
        }
        for e in &self.factors {
            let w = e.irreducibility.as_ref();
            if !w.is_some_and(|w| w.verify(&e.poly)) {
                return fail(format!("irreducibility witness for {} does not verify", e.poly));
            }
            let rc = root_counts(&e.poly);
            if rc != e.root_counts || rc.distinct_real == 0 || rc.distinct_imaginary == 0 {
                return fail(format!("root evidence for {} does not verify", e.poly));
            }
        }
        let k = f.factors.len() + 1;
        if self.coprimality.len() != k * (k - 1) / 2 {
            return fail("coprimality evidence missing for some pair".into());
        }
        let all = f.all();
        for ev in &self.coprimality {
            let ok = ev.certificate.as_ref().is_some_and(|c| {
                c.verify() && &c.a == all[ev.first] && &c.b == all[ev.second]
            });
            if !ok {
                return fail(format!("pair ({}, {}) lacks a valid Bezout certificate", ev.first, ev.second));
            }
        }
        Ok(())
    }
}

fn j0_conditions(counts: &RootCounts) -> Vec<String> {
    let mut failures = Vec::new();
    if counts.distinct_real == 0 {
        failures.push("no real root".to_string());
    }
    if counts.distinct_imaginary == 0 {
        failures.push("no imaginary root".to_string());
    }
    if !counts.real_roots_simple {
        failures.push("a real root is not simple".to_string());
    }
    failures
}

fn dims(p: &IntPoly, counts: &RootCounts) -> (usize, usize) {
    let s = counts.real_with_multiplicity;
    (s, (p.deg() - s) / 2)
}

/// Type 𝒥₀: at least one real and one imaginary root, real roots simple.
pub fn check_type_j0(p: &IntPoly) -> TypeCertificate {
    let counts = root_counts(p);
    let failures = j0_conditions(&counts);
    let (s, n) = dims(p, &counts);
    TypeCertificate {
        char_poly: p.clone(),
        j0: failures.is_empty(),
        j: false,
        j1: false,
        status: TypeStatus::NotTypeJ,
        s,
        n,
        root_counts: counts,
        b0: None,
        factors: Vec::new(),
        coprimality: Vec::new(),
        failures,
    }
}

/// Checks conditions 𝒥1–𝒥3 for `m` against the supplied factorization.
pub fn check_type_j(m: &IntMatrix, f: &FactoredCharPoly) -> Result<TypeCertificate> {
    let cp = char_poly(m)?;
    f.verify_against(&cp)?;
    let mut cert = check_type_j0(&cp);
    let mut failures = std::mem::take(&mut cert.failures)
        .into_iter()
        .map(|r| format!("𝒥₀: {r}"))
        .collect::<Vec<_>>();
    let mut unknown = false;

    let b0_counts = root_counts(&f.b0);
    if b0_counts.distinct_real != 0 {
        failures.push(format!("𝒥1: b0 = {} has a real root", f.b0));
    }
    if f.factors.is_empty() {
        failures.push("𝒥2: no factor B_j supplied".to_string());
    }
    let factor_evidence: Vec<FactorEvidence> = f
        .factors
        .par_iter()
        .map(|b| -> Result<FactorEvidence> {
            Ok(FactorEvidence {
                poly: b.clone(),
                root_counts: root_counts(b),
                irreducibility: Some(irreducibility_witness(b)?),
            })
        })
        .collect::<Result<_>>()?;
    for (j, e) in factor_evidence.iter().enumerate() {
        let name = format!("B_{} = {}", j + 1, e.poly);
        match &e.irreducibility {
            Some(w) if w.is_proof() => {}
            _ => {
                unknown = true;
                failures.push(format!("𝒥2: irreducibility of {name} unknown"));
            }
        }
        if e.root_counts.distinct_real == 0 {
            failures.push(format!("𝒥2: {name} has no real root"));
        }
        if e.root_counts.distinct_imaginary == 0 {
            failures.push(format!("𝒥2: {name} has no imaginary root"));
        }
    }

    let all = f.all();
    let pairs: Vec<(usize, usize)> = (0..all.len())
        .flat_map(|i| (i + 1..all.len()).map(move |j| (i, j)))
        .collect();
    let coprimality: Vec<CoprimalityEvidence> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<CoprimalityEvidence> {
            Ok(CoprimalityEvidence {
                first: i,
                second: j,
                resultant: resultant(all[i], all[j])?,
                certificate: strongly_coprime(all[i], all[j])?,
            })
        })
        .collect::<Result<_>>()?;
    for ev in &coprimality {
        if ev.certificate.is_none() {
            failures.push(format!(
                "𝒥3: factors #{} and #{} are not strongly coprime (resultant {})",
                ev.first, ev.second, ev.resultant
            ));
        }
    }

    let only_unknown = unknown
        && failures.iter().all(|r| r.contains("irreducibility") && r.contains("unknown"));
    let j = failures.is_empty();
    cert.j = j;
    cert.j1 = j && f.factors.len() == 1;
    cert.status = if cert.j1 {
        TypeStatus::TypeJ1
    } else if j {
        TypeStatus::TypeJ
    } else if only_unknown {
        TypeStatus::Unknown
    } else {
        TypeStatus::NotTypeJ
    };
    cert.b0 = Some(FactorEvidence {
        poly: f.b0.clone(),
        root_counts: b0_counts,
        irreducibility: None,
    });
    cert.factors = factor_evidence;
    cert.coprimality = coprimality;
    cert.failures = failures;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::companion;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn b1() -> IntPoly {
        p(&[1, 3, 3, 3, 1])
    }

    /// det(xI - m) at integer points, through Bareiss, interpolated against
    /// the candidate polynomial.
    fn char_poly_oracle_holds(m: &IntMatrix, cp: &IntPoly) -> bool {
        let n = m.rows();
        (-(n as i64)..=(n as i64) + 1).all(|x| {
            let xi = IntMatrix::identity(n).scale(&BigInt::from(x));
            (&xi - m).det() == cp.eval(&BigInt::from(x))
        })
    }

    #[test]
    fn char_poly_small_cases() {
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), p(&[1, -2, 1]));
        assert_eq!(char_poly(&companion(&b1()).unwrap()).unwrap(), b1());
        let c = &p(&[1, 0, 1]) * &b1();
        let m = companion(&c).unwrap();
        let cp = char_poly(&m).unwrap();
        assert_eq!(cp, c);
        assert!(char_poly_oracle_holds(&m, &cp));
        let odd = IntMatrix::from_i64_rows(&[&[2, -1, 3], &[0, 5, 1], &[7, 2, -4]]);
        assert!(char_poly_oracle_holds(&odd, &char_poly(&odd).unwrap()));
        assert!(char_poly(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn j0_examples() {
        assert!(!check_type_j0(&p(&[1, 0, 1])).j0);
        let c = check_type_j0(&b1());
        assert!(c.j0);
        assert_eq!((c.s, c.n), (2, 1));
        let sq = &p(&[-2, 0, 1]) * &p(&[-2, 0, 1]);
        assert!(!check_type_j0(&(&sq * &p(&[1, 0, 1]))).j0);
    }

    #[test]
    fn witnesses() {
        let deg12 = p(&[1, 0, 0, 0, 8, 20, 19, 20, 8, 0, 0, 0, 1]);
        let w = irreducibility_witness(&deg12).unwrap();
        assert_eq!(
            w,
            IrreducibilityWitness::FilasetaGross {
                value_at_10: BigInt::from(1_001_021_080_001u64)
            }
        );
        assert!(w.verify(&deg12));
        assert!(irreducibility_witness(&p(&[1, 0, 1])).unwrap().is_proof());
        let wb = irreducibility_witness(&b1()).unwrap();
        assert!(wb.is_proof() && wb.verify(&b1()));
        // (t^2+1)^2 has no witness
        let sq = &p(&[1, 0, 1]) * &p(&[1, 0, 1]);
        assert_eq!(irreducibility_witness(&sq).unwrap(), IrreducibilityWitness::Unknown);
        assert!(!IrreducibilityWitness::NoRationalRoot.verify(&p(&[-2, -1, 1])));
    }

    #[test]
    fn filaseta_gross_needs_a_proven_prime() {
        // 10^20 + 39 is prime but beyond the deterministic range.
        let mut c = vec![0i64; 21];
        c[0] = 39;
        c[20] = 1;
        let big = p(&c);
        let v = big.eval(&BigInt::from(10));
        assert!(is_prime(&v) && !is_deterministic_range(&v));
        let w = irreducibility_witness(&big).unwrap();
        assert!(!matches!(w, IrreducibilityWitness::FilasetaGross { .. }));
        assert!(!IrreducibilityWitness::FilasetaGross { value_at_10: v }.verify(&big));
    }

    #[test]
    fn j1_and_j_examples() {
        let a = p(&[1, 0, 1]);
        for q in [1u32, 2] {
            let b0 = a.pow(q);
            let f = FactoredCharPoly { b0: b0.clone(), factors: vec![b1()] };
            let m = companion(&f.product()).unwrap();
            let cert = check_type_j(&m, &f).unwrap();
            assert_eq!(cert.status, TypeStatus::TypeJ1, "{:?}", cert.failures);
            assert_eq!((cert.s, cert.n), (2, 1 + q as usize));
            cert.verify().unwrap();
        }
        let b2 = p(&[1, 4, 3, 4, 1]);
        let f = FactoredCharPoly { b0: a.clone(), factors: vec![b1(), b2] };
        let m = companion(&f.product()).unwrap();
        let cert = check_type_j(&m, &f).unwrap();
        assert!(cert.j && !cert.j1);
        cert.verify().unwrap();
        let f = FactoredCharPoly { b0: a, factors: vec![p(&[-2, 0, 1])] };
        let m = companion(&f.product()).unwrap();
        let cert = check_type_j(&m, &f).unwrap();
        assert_eq!(cert.status, TypeStatus::NotTypeJ);
    }

    #[test]
    fn mismatched_factorization_is_rejected() {
        let f = FactoredCharPoly { b0: p(&[1, 0, 1]), factors: vec![b1()] };
        let m = companion(&b1()).unwrap();
        assert!(matches!(check_type_j(&m, &f), Err(Error::Certificate(_))));
    }
}
