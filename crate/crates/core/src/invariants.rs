//! Minimal polynomials, specialness of a Dirichlet family, the first Betti
//! number, and the non-LCK / non-OT verdicts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::FactoredCharPoly;
use crate::config::Budgets;
use crate::error::{domain, Error, Result};
use crate::linalg::IntMatrix;
use crate::manifold::ManifoldData;
use crate::polyring::RatPoly;
use crate::realroots::Interval;
use crate::serde_util::bigint_str;
use crate::units::{verify_dirichlet, DirichletFamily};

/// Monic polynomial of least degree with `p(A) v = 0`, by elimination on
/// the Krylov sequence `v, Av, A²v, …`.
fn krylov_minimal(a: &[Vec<BigRational>], v: Vec<BigRational>) -> RatPoly {
    let n = v.len();
    // Echelon rows: (pivot, reduced vector, combination over v₀…v_k).
    let mut rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut current = v;
    for d in 0..=n {
        let mut reduced = current.clone();
        let mut comb = vec![BigRational::zero(); d + 1];
        comb[d] = BigRational::one();
        for (pivot, row, rc) in &rows {
            if reduced[*pivot].is_zero() {
                continue;
            }
            let f = &reduced[*pivot] / &row[*pivot];
            for (x, y) in reduced.iter_mut().zip(row) {
                *x -= &f * y;
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x -= &f * y;
            }
        }
        match reduced.iter().position(|x| !x.is_zero()) {
            None => return RatPoly::new(comb),
            Some(p) => rows.push((p, reduced, comb)),
        }
        current = (0..n)
            .map(|i| {
                a[i].iter()
                    .zip(&current)
                    .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
            })
            .collect();
    }
    unreachable!("Krylov sequence longer than the dimension")
}

/// Minimal polynomial of a square integer matrix: the lcm over ℚ[t] of the
/// Krylov minimal polynomials of the standard basis vectors, checked to
/// annihilate `a` exactly.
pub fn minimal_polynomial(a: &IntMatrix) -> Result<RatPoly> {
    if !a.is_square() {
        return domain("minimal polynomial of a non-square matrix");
    }
    let n = a.rows();
    let ar = a.to_rational_rows();
    let mut out = RatPoly::one();
    for k in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[k] = BigRational::one();
        out = out.lcm(&krylov_minimal(&ar, e));
    }
    let ip = out
        .to_intpoly()
        .ok_or_else(|| Error::Internal("minimal polynomial of an integer matrix is not integral".into()))?;
    if !a.eval_poly(&ip).to_rows().iter().flatten().all(Zero::is_zero) {
        return Err(Error::Internal("computed minimal polynomial does not annihilate".into()));
    }
    Ok(out)
}

/// Diagonalizable over ℂ iff the minimal polynomial is squarefree.
pub fn is_diagonalizable(a: &IntMatrix) -> Result<bool> {
    Ok(minimal_polynomial(a)?.is_squarefree())
}

/// `N = ∏ Dᵢ(Mᵀ)^{nᵢ}` without eigenvalue 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialnessWitness {
    pub exponents: Vec<i64>,
    pub matrix: IntMatrix,
    #[serde(with = "bigint_str")]
    pub det_n_minus_i: BigInt,
}

fn power(a: &IntMatrix, inverse: &IntMatrix, e: i64) -> IntMatrix {
    if e >= 0 {
        a.pow(e as u32)
    } else {
        inverse.pow(e.unsigned_abs() as u32)
    }
}

/// `∏ monodromies[i]^{exponents[i]}`, left to right.
pub fn monodromy_product(monodromies: &[IntMatrix], exponents: &[i64]) -> Result<IntMatrix> {
    let k = monodromies.first().map_or(0, IntMatrix::rows);
    let mut n = IntMatrix::identity(k);
    for (a, &e) in monodromies.iter().zip(exponents) {
        if e == 0 {
            continue;
        }
        let inv = if e < 0 { a.inverse()? } else { IntMatrix::identity(k) };
        n = &n * &power(a, &inv, e);
    }
    Ok(n)
}

impl SpecialnessWitness {
    /// Recomputes `N` and `det(N − I)` from scratch.
    pub fn verify(&self, monodromies: &[IntMatrix]) -> bool {
        if self.exponents.len() != monodromies.len() {
            return false;
        }
        let Ok(n) = monodromy_product(monodromies, &self.exponents) else {
            return false;
        };
        let d = n.add_scalar_identity(&-BigInt::one()).det();
        n == self.matrix && d == self.det_n_minus_i && !d.is_zero()
    }
}

/// Nonzero vectors of `[-bound, bound]^s` in graded lexicographic order:
/// by `Σ|nᵢ|`, then lexicographically.
pub fn graded_lex_vectors(s: usize, bound: u32) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let base = (2 * b + 1) as u64;
    let total = base.pow(s as u32);
    let mut all: Vec<Vec<i64>> = (0..total)
        .map(|mut idx| {
            let mut v = vec![0i64; s];
            for slot in v.iter_mut().rev() {
                *slot = (idx % base) as i64 - b;
                idx /= base;
            }
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    all.sort_by(|x, y| {
        let dx: i64 = x.iter().map(|v| v.abs()).sum();
        let dy: i64 = y.iter().map(|v| v.abs()).sum();
        dx.cmp(&dy).then_with(|| x.cmp(y))
    });
    all
}

/// `Σ nᵢ Lᵢⱼ` excludes 0 for every `j`.
fn log_guided(log_matrix: &[Vec<Interval>], n: &[i64]) -> bool {
    let s = log_matrix.first().map_or(0, Vec::len);
    (0..s).all(|j| {
        let mut acc = Interval::zero();
        for (i, &e) in n.iter().enumerate() {
            acc = &acc + &log_matrix[i][j].scale(&BigRational::from_integer(BigInt::from(e)));
        }
        acc.sign().is_some_and(|x| x != 0)
    })
}

/// The first exponent vector in graded lexicographic order whose product of
/// monodromies has no eigenvalue 1. Vectors for which some `Σ nᵢ ln Dᵢ(αⱼ)`
/// is not certified nonzero are skipped: they give `N` an eigenvalue
/// `∏ Dᵢ(αⱼ)^{nᵢ}` that may equal 1.
pub fn find_specialness_witness(
    monodromies: &[IntMatrix],
    log_matrix: &[Vec<Interval>],
    search_bound: u32,
) -> Result<Option<SpecialnessWitness>> {
    let s = monodromies.len();
    if s == 0 {
        return Ok(None);
    }
    let inverses: Vec<IntMatrix> = monodromies.iter().map(IntMatrix::inverse).collect::<Result<_>>()?;
    let k = monodromies[0].rows();
    let candidates = graded_lex_vectors(s, search_bound);
    let found = candidates.par_iter().find_map_first(|n| {
        if !log_guided(log_matrix, n) {
            return None;
        }
        let mut prod = IntMatrix::identity(k);
        for ((a, inv), &e) in monodromies.iter().zip(&inverses).zip(n) {
            if e != 0 {
                prod = &prod * &power(a, inv, e);
            }
        }
        let d = prod.add_scalar_identity(&-BigInt::one()).det();
        (!d.is_zero()).then(|| SpecialnessWitness {
            exponents: n.clone(),
            matrix: prod,
            det_n_minus_i: d,
        })
    });
    Ok(found)
}

/// `b₁ = s` once specialness is certified; `None` otherwise.
pub fn betti1(monodromies: &[IntMatrix], witness: Option<&SpecialnessWitness>) -> Option<usize> {
    witness
        .filter(|w| w.verify(monodromies))
        .map(|_| monodromies.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LckVerdict {
    NoLck,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OtVerdict {
    NotOtHomeomorphic,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub s: usize,
    pub n: usize,
    pub special: Option<SpecialnessWitness>,
    /// `None` when unknown.
    pub b1: Option<usize>,
    /// 1-based indices `i` with `Dᵢ(M)` not diagonalizable over ℂ.
    pub nondiag_indices: Vec<usize>,
    pub primary: bool,
    pub verdict_lck: LckVerdict,
    pub verdict_ot: OtVerdict,
    pub justification: Vec<String>,
}

/// Assembles the verdicts from the hypotheses they need:
/// no-LCK ⇐ primary family and some `Dᵢ(M)` non-diagonalizable;
/// not-OT ⇐ special family and some `Dᵢ(M)` non-diagonalizable.
pub fn assemble_report(
    m: &IntMatrix,
    family: &DirichletFamily,
    n: usize,
    search_bound: u32,
) -> Result<ObstructionReport> {
    let s = family.polys.len();
    let mt = m.transpose();
    let monodromies: Vec<IntMatrix> = family.polys.iter().map(|d| mt.eval_poly(d)).collect();
    let special = find_specialness_witness(&monodromies, &family.certificate.log_matrix, search_bound)?;
    let b1 = betti1(&monodromies, special.as_ref());
    let diag: Vec<bool> = family
        .polys
        .par_iter()
        .map(|d| is_diagonalizable(&m.eval_poly(d)))
        .collect::<Result<_>>()?;
    let nondiag_indices: Vec<usize> = diag
        .iter()
        .enumerate()
        .filter(|(_, &ok)| !ok)
        .map(|(i, _)| i + 1)
        .collect();
    let primary = family.is_primary();
    let mut justification = Vec::new();
    match &special {
        Some(w) => justification.push(format!(
            "special: N = prod D_i(M^T)^n_i with n = {:?} has det(N - I) = {} != 0",
            w.exponents, w.det_n_minus_i
        )),
        None => justification.push(format!(
            "specialness: no witness with |n_i| <= {search_bound}"
        )),
    }
    match b1 {
        Some(b) => justification.push(format!(
            "b1 = s = {b}: a special family gives b1 of the mapping multi-torus equal to its base rank"
        )),
        None => justification.push("b1 unknown: specialness not certified".into()),
    }
    if nondiag_indices.is_empty() {
        justification.push("every D_i(M) is diagonalizable (squarefree minimal polynomial)".into());
    } else {
        justification.push(format!(
            "D_i(M) has a non-squarefree minimal polynomial for i in {nondiag_indices:?}"
        ));
    }
    let nondiag = !nondiag_indices.is_empty();
    let verdict_lck = if primary && nondiag {
        justification.push(
            "no-LCK: primary family with a non-diagonalizable D_i(M) admits no locally conformally Kähler structure"
                .into(),
        );
        LckVerdict::NoLck
    } else {
        justification.push(format!(
            "LCK inconclusive: requires a primary family (primary = {primary}) and a non-diagonalizable D_i(M) (found = {nondiag})"
        ));
        LckVerdict::Inconclusive
    };
    let verdict_ot = if special.is_some() && nondiag {
        justification.push(
            "not-OT-homeomorphic: the fundamental group Z^s ⋉ Z^(s+2n) of a special family with a non-diagonalizable monodromy is not of diagonal type, unlike every OT manifold"
                .into(),
        );
        OtVerdict::NotOtHomeomorphic
    } else {
        justification.push(format!(
            "OT inconclusive: requires a special family (special = {}) and a non-diagonalizable D_i(M) (found = {nondiag})",
            special.is_some()
        ));
        OtVerdict::Inconclusive
    };
    Ok(ObstructionReport {
        s,
        n,
        special,
        b1,
        nondiag_indices,
        primary,
        verdict_lck,
        verdict_ot,
        justification,
    })
}

/// Re-verifies the family, then reports obstructions.
pub fn obstruction_report(
    m: &IntMatrix,
    f: &FactoredCharPoly,
    family: &DirichletFamily,
    budgets: &Budgets,
) -> Result<ObstructionReport> {
    let cert = verify_dirichlet(m, &family.polys, budgets.precision_bits)?;
    let fam = DirichletFamily { certificate: cert, ..family.clone() };
    let cp = f.product();
    let n = (cp.deg() - fam.polys.len()) / 2;
    assemble_report(m, &fam, n, budgets.search_bound)
}

/// Obstruction report for previously built manifold data.
pub fn report_for_manifold(data: &ManifoldData, budgets: &Budgets) -> Result<ObstructionReport> {
    let mt = data.matrix.transpose();
    for (i, (d, a)) in data.family.polys.iter().zip(&data.monodromies).enumerate() {
        if &mt.eval_poly(d) != a {
            return Err(Error::Certificate(format!(
                "monodromy {} differs from D_{}(M^T)",
                i + 1,
                i + 1
            )));
        }
    }
    obstruction_report(&data.matrix, &data.factorization, &data.family, budgets)
}

/// Largest absolute exponent in a witness.
pub fn witness_height(w: &SpecialnessWitness) -> i64 {
    w.exponents.iter().map(|e| e.abs()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::IntPoly;
    use crate::polyring::companion;
    use crate::units::{build_dirichlet_family, Mode};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn b1() -> IntPoly {
        p(&[1, 3, 3, 3, 1])
    }

    #[test]
    fn minimal_polynomials() {
        let i3 = IntMatrix::identity(3);
        assert_eq!(minimal_polynomial(&i3).unwrap(), p(&[-1, 1]).to_ratpoly());
        let c = companion(&b1()).unwrap();
        assert_eq!(minimal_polynomial(&c).unwrap(), b1().to_ratpoly());
        let j2 = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(minimal_polynomial(&j2).unwrap(), p(&[1, -2, 1]).to_ratpoly());
        assert!(!is_diagonalizable(&j2).unwrap());
        assert!(is_diagonalizable(&c).unwrap());
        assert!(is_diagonalizable(&i3).unwrap());
    }

    #[test]
    fn jordan_block_of_rotation() {
        let ca = companion(&p(&[1, 0, 1])).unwrap();
        let z = IntMatrix::zeros(2, 2);
        let i2 = IntMatrix::identity(2);
        let top: Vec<Vec<BigInt>> = (0..2).map(|r| [ca.row(r), i2.row(r)].concat()).collect();
        let bot: Vec<Vec<BigInt>> = (0..2).map(|r| [z.row(r), ca.row(r)].concat()).collect();
        let j = IntMatrix::from_rows([top, bot].concat()).unwrap();
        let m = IntMatrix::block_diag(&[j, companion(&b1()).unwrap()]);
        let mp = minimal_polynomial(&m).unwrap();
        let expected = &(&p(&[1, 0, 1]) * &p(&[1, 0, 1])) * &b1();
        assert_eq!(mp, expected.to_ratpoly());
        assert!(!is_diagonalizable(&m).unwrap());
    }

    #[test]
    fn graded_order() {
        let v = graded_lex_vectors(2, 1);
        assert_eq!(v[0], vec![-1, 0]);
        assert_eq!(v[3], vec![1, 0]);
        assert_eq!(v.len(), 8);
        assert!(v[4..].iter().all(|x| x.iter().map(|e| e.abs()).sum::<i64>() == 2));
    }

    #[test]
    fn inoue_family_is_special() {
        let m = companion(&p(&[-1, -1, 0, 1])).unwrap();
        let l = vec![vec![Interval::new(
            BigRational::new(BigInt::from(1), BigInt::from(4)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        )]];
        let w = find_specialness_witness(&[m.transpose()], &l, 3).unwrap().unwrap();
        assert_eq!(w.exponents.len(), 1);
        assert!(w.verify(&[m.transpose()]));
        assert_eq!(betti1(&[m.transpose()], Some(&w)), Some(1));
        assert_eq!(betti1(&[m.transpose()], None), None);
    }

    #[test]
    fn identity_monodromy_is_not_special() {
        let l = vec![vec![Interval::one()]];
        assert!(find_specialness_witness(&[IntMatrix::identity(3)], &l, 3).unwrap().is_none());
    }

    #[test]
    fn six_by_six_witness_matches_exhaustive_search() {
        let f = FactoredCharPoly { b0: p(&[1, 0, 1]), factors: vec![b1()] };
        let m = companion(&f.product()).unwrap();
        let fam = build_dirichlet_family(&m, &f, &Mode::Primary, &Budgets::default()).unwrap();
        let mt = m.transpose();
        let mons: Vec<IntMatrix> = fam.polys.iter().map(|d| mt.eval_poly(d)).collect();
        let w = find_specialness_witness(&mons, &fam.certificate.log_matrix, 2).unwrap().unwrap();
        assert!(witness_height(&w) <= 2);
        // oracle: some vector at bound 2 has det(N − I) ≠ 0
        let exists = graded_lex_vectors(2, 2).iter().any(|n| {
            let prod = monodromy_product(&mons, n).unwrap();
            !prod.add_scalar_identity(&-BigInt::one()).det().is_zero()
        });
        assert!(exists);
        let rep = obstruction_report(&m, &f, &fam, &Budgets::default()).unwrap();
        assert_eq!(rep.b1, Some(2));
        assert_eq!(rep.verdict_lck, LckVerdict::Inconclusive);
        assert_eq!(rep.verdict_ot, OtVerdict::Inconclusive);
    }
}
