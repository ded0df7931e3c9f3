//! The action data `X(K, 𝒪, U)` for `𝒪 = ℤ[ξ]` with `ξ` a root of a monic
//! irreducible `p`, and its exact identification with `T(B_P, 𝒟)` where
//! `B_P = C_Pᵀ`.
//!
//! Multiplication by `λ = D(ξ)` on `ℤ[ξ]` in the basis `1, ξ, …, ξ^{d-1}`
//! has matrix `D(C_P)`; the monodromy of `T(B_P, 𝒟)` is `D(B_Pᵀ) = D(C_P)`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{char_poly, irreducibility_witness, IrreducibilityWitness};
use crate::config::Budgets;
use crate::error::{domain, Error, Result};
use crate::linalg::IntMatrix;
use crate::polyring::{companion, companion_transpose, resultant, IntPoly};
use crate::realroots::{isolate_real_roots, log_abs_enclosure, precision_from_bits, root_counts, sign_at, Interval, RealAlgebraic};
use crate::units::{certify_nonsingular, real_eigenvalues, verify_dirichlet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OTActionData {
    pub p: IntPoly,
    pub irreducibility: IrreducibilityWitness,
    pub s: usize,
    pub n: usize,
    pub unit_polys: Vec<IntPoly>,
    /// `ξ⁰, …, ξ^{d-1}`, the ℤ-basis of the translation lattice `𝒪`.
    pub lattice_basis: Vec<IntPoly>,
    /// Matrix of multiplication by `Dᵢ(ξ)` on the power basis.
    pub multiplication_matrices: Vec<IntMatrix>,
    /// Real embeddings `σ₁(ξ) < … < σ_s(ξ)`.
    pub real_embeddings: Vec<RealAlgebraic>,
    /// `log_matrix[i][j]` ∋ `ln σⱼ(uᵢ)`.
    pub log_matrix: Vec<Vec<Interval>>,
    pub log_det: Interval,
}

/// Matrix of `x ↦ λx` on `ℤ[t]/p` in the basis `1, t, …, t^{d-1}`:
/// column `r` holds the coefficients of `t^r·λ mod p`.
pub fn multiplication_matrix(p: &IntPoly, lambda: &IntPoly) -> Result<IntMatrix> {
    let d = p.deg();
    let mut m = IntMatrix::zeros(d, d);
    for r in 0..d {
        let col = (&IntPoly::monomial(BigInt::one(), r) * lambda).rem_monic(p)?;
        for (i, c) in col.coeffs().iter().enumerate() {
            m[(i, r)] = c.clone();
        }
    }
    Ok(m)
}

/// Assembles the action of `U = ⟨D₁(ξ), …, D_s(ξ)⟩ ⋉ ℤ[ξ]` after checking
/// that every `Dᵢ(ξ)` is a unit, positive at every real embedding, and that
/// their logarithms form a basis of `ℝˢ`.
pub fn build_ot_action(p: &IntPoly, unit_polys: &[IntPoly], budgets: &Budgets) -> Result<OTActionData> {
    budgets.validate()?;
    if !p.is_monic() || p.is_constant() {
        return domain(format!("{p} is not monic of positive degree"));
    }
    let irreducibility = irreducibility_witness(p)?;
    if !irreducibility.is_proof() {
        return domain(format!("no irreducibility witness for {p}"));
    }
    let counts = root_counts(p);
    let s = counts.distinct_real;
    let n = counts.distinct_imaginary / 2;
    if s == 0 || n == 0 {
        return domain(format!("{p} needs both real and imaginary roots (s = {s}, n = {n})"));
    }
    if unit_polys.len() != s {
        return domain(format!("expected {s} unit polynomials, got {}", unit_polys.len()));
    }
    let real_embeddings = isolate_real_roots(p);
    for (i, d) in unit_polys.iter().enumerate() {
        let norm = resultant(p, d)?;
        if !norm.abs().is_one() {
            return domain(format!("D_{}(ξ) = {d} is not a unit (norm {norm})", i + 1));
        }
        for (j, g) in real_embeddings.iter().enumerate() {
            if sign_at(g, d) <= 0 {
                return domain(format!(
                    "D_{}(ξ) is not positive at real embedding {}; replace it by its square",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    let logs_at = |bits: u32| -> Result<Vec<Vec<Interval>>> {
        let eps = precision_from_bits(bits);
        unit_polys
            .par_iter()
            .map(|d| real_embeddings.iter().map(|g| log_abs_enclosure(g, d, &eps)).collect())
            .collect()
    };
    let (det, bits) = certify_nonsingular(logs_at, budgets.precision_bits)?;
    let log_det = match det {
        Ok(d) => d,
        Err(enc) if enc.is_point() => {
            return domain("the units are not a log-basis: the log matrix is exactly singular")
        }
        Err(enc) => {
            return Err(Error::Undetermined(format!(
                "log-basis determinant {enc:?} contains 0 at {bits} bits"
            )))
        }
    };
    let multiplication_matrices = unit_polys
        .iter()
        .map(|d| multiplication_matrix(p, d))
        .collect::<Result<_>>()?;
    let log_matrix = logs_at(bits)?;
    Ok(OTActionData {
        p: p.clone(),
        irreducibility,
        s,
        n,
        unit_polys: unit_polys.to_vec(),
        lattice_basis: (0..p.deg()).map(|r| IntPoly::monomial(BigInt::one(), r)).collect(),
        multiplication_matrices,
        real_embeddings,
        log_matrix,
        log_det,
    })
}

/// One exact equality that was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// First differing entry when `holds` is false.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCertificate {
    pub action: OTActionData,
    /// `Dᵢ(B_Pᵀ)`.
    pub monodromies: Vec<IntMatrix>,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityCertificate {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn matrix_check(name: String, a: &IntMatrix, b: &IntMatrix) -> IdentityCheck {
    let mismatch = a.first_mismatch(b);
    IdentityCheck { name, holds: mismatch.is_none(), mismatch }
}

fn flag_check(name: String, holds: bool) -> IdentityCheck {
    IdentityCheck { name, holds, mismatch: None }
}

/// Checks exactly, over ℤ, that the OT action data for `(p, Dᵢ)` coincides
/// with the data of `T(B_P, 𝒟)`: multiplication matrices, monodromies and
/// the real scale data. Any failed equality is reported with its entry.
pub fn compare_with_tm(p: &IntPoly, unit_polys: &[IntPoly], budgets: &Budgets) -> Result<IdentityCertificate> {
    let action = build_ot_action(p, unit_polys, budgets)?;
    let cp = companion(p)?;
    let bp = companion_transpose(p)?;
    let bpt = bp.transpose();
    let mut checks = Vec::new();

    checks.push(matrix_check("C_P = B_P^T".into(), &cp, &bpt));
    checks.push(flag_check(
        "char poly of B_P equals P".into(),
        &char_poly(&bp)? == p,
    ));
    let monodromies: Vec<IntMatrix> = unit_polys.iter().map(|d| bpt.eval_poly(d)).collect();
    for (i, d) in unit_polys.iter().enumerate() {
        let mult = &action.multiplication_matrices[i];
        checks.push(matrix_check(
            format!("mult(D_{}(ξ)) = D_{}(C_P)", i + 1, i + 1),
            mult,
            &cp.eval_poly(d),
        ));
        checks.push(matrix_check(
            format!("mult(D_{}(ξ)) = D_{}(B_P^T)", i + 1, i + 1),
            mult,
            &monodromies[i],
        ));
        checks.push(flag_check(format!("det mult(D_{}(ξ)) = 1", i + 1), mult.det().is_one()));
    }
    for i in 0..unit_polys.len() {
        for j in i + 1..unit_polys.len() {
            let a = &action.multiplication_matrices[i];
            let b = &action.multiplication_matrices[j];
            checks.push(matrix_check(format!("mult(D_{}) commutes with mult(D_{})", i + 1, j + 1), &(a * b), &(b * a)));
            let prod = multiplication_matrix(p, &(&unit_polys[i] * &unit_polys[j]))?;
            checks.push(matrix_check(
                format!("mult(D_{} D_{}) = mult(D_{}) mult(D_{})", i + 1, j + 1, i + 1, j + 1),
                &prod,
                &(a * b),
            ));
        }
    }

    // Scale data: real eigenvalues of B_P against real embeddings of ξ.
    let alphas = real_eigenvalues(&bp)?;
    checks.push(flag_check(
        "real eigenvalues of B_P = real embeddings of ξ (defining polynomials and isolating intervals)".into(),
        alphas == action.real_embeddings,
    ));
    let tm = verify_dirichlet(&bp, unit_polys, budgets.precision_bits);
    checks.push(flag_check("(D_i) is a Dirichlet family for B_P".into(), tm.is_ok()));
    if let Ok(cert) = &tm {
        let same_logs = cert
            .log_matrix
            .iter()
            .flatten()
            .zip(action.log_matrix.iter().flatten())
            .all(|(a, b)| a.intersects(b));
        checks.push(flag_check("scale logarithms agree".into(), same_logs));
    }
    let cert = IdentityCertificate { action, monodromies, checks };
    if let Some(bad) = cert.checks.iter().find(|c| !c.holds) {
        return Err(Error::Certificate(format!(
            "identity check failed: {}{}",
            bad.name,
            bad.mismatch.map(|(i, j)| format!(" at entry ({i}, {j})")).unwrap_or_default()
        )));
    }
    Ok(cert)
}
