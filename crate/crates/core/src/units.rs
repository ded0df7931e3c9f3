//! Units in orders `ℤ[t]/B`, log-bases of their real embeddings, and
//! Dirichlet families `D₁,…,D_s` for an integer matrix.
//!
//! A family is accepted only after the three axioms are checked in a fixed
//! order: `Δ1` (`det Dᵢ(M) = 1`), `Δ2` (`Dᵢ(αⱼ) > 0` at every real
//! eigenvalue) and `Δ3` (the matrix `ln Dᵢ(αⱼ)` is certified nonsingular).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{check_type_j, FactoredCharPoly};
use crate::config::Budgets;
use crate::error::{domain, Error, Result};
use crate::linalg::IntMatrix;
use crate::numeric::aberth_roots;
use crate::polyring::{crt_lift, resultant, squarefree_part, IntPoly};
use crate::realroots::{
    interval_det, isolate_real_roots, log_abs_enclosure, precision_from_bits, root_counts, sign_at,
    Interval, RealAlgebraic,
};
use crate::serde_util::bigint_vec;

/// Largest number of coefficient vectors a single enumeration may visit.
pub const MAX_ENUMERATION: u64 = 50_000_000;

/// Bits used for the log enclosures attached to freshly found units.
const INITIAL_LOG_BITS: u32 = 40;

/// The class of `rep` in `ℤ[t]/(modulus)`, with `deg rep < deg modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderElement {
    modulus: IntPoly,
    rep: IntPoly,
}

impl OrderElement {
    pub fn new(modulus: IntPoly, rep: &IntPoly) -> Result<Self> {
        if !modulus.is_monic() || modulus.is_constant() {
            return domain(format!("order modulus {modulus} must be monic of positive degree"));
        }
        let rep = rep.rem_monic(&modulus)?;
        Ok(OrderElement { modulus, rep })
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn rep(&self) -> &IntPoly {
        &self.rep
    }

    pub fn mul(&self, other: &OrderElement) -> Result<OrderElement> {
        if self.modulus != other.modulus {
            return domain("product of elements of different orders");
        }
        OrderElement::new(self.modulus.clone(), &(&self.rep * &other.rep))
    }

    /// `∏ rep(γ)` over the roots `γ` of the modulus.
    pub fn norm(&self) -> Result<BigInt> {
        resultant(&self.modulus, &self.rep)
    }
}

/// `|Res(modulus, rep)| = 1`.
pub fn is_unit(e: &OrderElement) -> bool {
    e.norm().is_ok_and(|n| n.abs().is_one())
}

/// A unit with its signs and `ln|u(γⱼ)|` enclosures at the real roots of
/// the modulus (ascending).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitWithLogs {
    pub elem: OrderElement,
    pub signs: Vec<i8>,
    pub projected_logs: Vec<Interval>,
    pub positive: bool,
}

impl UnitWithLogs {
    fn from_element(elem: OrderElement, roots: &[RealAlgebraic], bits: u32) -> Result<Self> {
        let signs: Vec<i8> = roots.iter().map(|g| sign_at(g, elem.rep())).collect();
        let eps = precision_from_bits(bits);
        let projected_logs = roots
            .iter()
            .map(|g| log_abs_enclosure(g, elem.rep(), &eps))
            .collect::<Result<_>>()?;
        let positive = signs.iter().all(|&s| s > 0);
        Ok(UnitWithLogs { elem, signs, projected_logs, positive })
    }

    fn recompute_logs(&self, roots: &[RealAlgebraic], bits: u32) -> Result<Vec<Interval>> {
        let eps = precision_from_bits(bits);
        roots
            .iter()
            .map(|g| log_abs_enclosure(g, self.elem.rep(), &eps))
            .collect()
    }
}

/// Result of a bounded unit search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSearch {
    pub units: Vec<UnitWithLogs>,
    /// Units other than `±1` with `|u(γ)| = 1` at every real root.
    pub torsion: Vec<OrderElement>,
}

/// Coefficient vector number `idx` in lexicographic order (constant term
/// most significant) over `[-bound, bound]^d`.
fn coefficient_vector(mut idx: u64, d: usize, bound: i64) -> Vec<i64> {
    let base = (2 * bound + 1) as u64;
    let mut out = vec![0i64; d];
    for slot in out.iter_mut().rev() {
        *slot = (idx % base) as i64 - bound;
        idx /= base;
    }
    out
}

/// Every non-constant unit of `ℤ[t]/b` whose reduced representative has
/// coefficients in `[-coeff_bound, coeff_bound]`, in lexicographic order of
/// the coefficient vector. A floating norm estimate discards vectors whose
/// norm is far from `±1` before the exact resultant test.
pub fn find_units(b: &IntPoly, coeff_bound: u32) -> Result<UnitSearch> {
    if !b.is_monic() || b.is_constant() {
        return domain(format!("unit search needs a monic non-constant modulus, got {b}"));
    }
    let d = b.deg();
    let base = 2 * coeff_bound as u64 + 1;
    let total = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(base));
    let total = match total {
        Some(t) if t <= MAX_ENUMERATION => t,
        _ => {
            return Err(Error::SearchExhausted(format!(
                "unit enumeration for degree {d} at coefficient bound {coeff_bound} exceeds {MAX_ENUMERATION} candidates"
            )))
        }
    };
    let croots = aberth_roots(b)?;
    let bound = coeff_bound as i64;
    let candidates: Vec<IntPoly> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let c = coefficient_vector(idx, d, bound);
            if c[1..].iter().all(|&x| x == 0) {
                return None;
            }
            let norm_estimate: f64 = croots
                .iter()
                .map(|z| {
                    c.iter()
                        .rev()
                        .fold(num_complex::Complex::new(0.0, 0.0), |acc, &x| acc * z + x as f64)
                        .norm()
                })
                .product();
            if (norm_estimate - 1.0).abs() > 0.25 {
                return None;
            }
            let rep = IntPoly::from_i64s(&c);
            resultant(b, &rep).ok().filter(|n| n.abs().is_one()).map(|_| rep)
        })
        .collect();
    let roots = isolate_real_roots(b);
    let mut units = Vec::new();
    let mut torsion = Vec::new();
    let found: Vec<UnitWithLogs> = candidates
        .into_par_iter()
        .map(|rep| UnitWithLogs::from_element(OrderElement::new(b.clone(), &rep)?, &roots, INITIAL_LOG_BITS))
        .collect::<Result<_>>()?;
    for u in found {
        if !roots.is_empty() && u.projected_logs.iter().all(|l| l.is_point() && l.lo.is_zero()) {
            torsion.push(u.elem);
        } else {
            units.push(u);
        }
    }
    Ok(UnitSearch { units, torsion })
}

/// `u` if positive at every real root, otherwise the reduction of `u²`.
pub fn make_positive(u: &UnitWithLogs) -> Result<UnitWithLogs> {
    if u.positive {
        return Ok(u.clone());
    }
    let elem = u.elem.mul(&u.elem)?;
    let two = num_rational::BigRational::from_integer(BigInt::from(2));
    Ok(UnitWithLogs {
        elem,
        signs: vec![1; u.signs.len()],
        projected_logs: u.projected_logs.iter().map(|l| l.scale(&two)).collect(),
        positive: true,
    })
}

/// Rank test on floating approximations used only to order the greedy
/// selection; the returned basis is certified by interval determinant.
fn independent_of(rows: &[Vec<f64>], v: &[f64]) -> bool {
    let mut r = v.to_vec();
    for q in rows {
        let dot: f64 = q.iter().zip(&r).map(|(a, b)| a * b).sum();
        for (x, y) in r.iter_mut().zip(q) {
            *x -= dot * y;
        }
    }
    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    norm > 1e-6 * scale.max(1e-300) && norm > 1e-12
}

fn gram_schmidt_row(rows: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let mut r = v.to_vec();
    for q in rows {
        let dot: f64 = q.iter().zip(&r).map(|(a, b)| a * b).sum();
        for (x, y) in r.iter_mut().zip(q) {
            *x -= dot * y;
        }
    }
    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    r.iter().map(|x| x / norm).collect()
}

/// Doubling schedule of working precisions ending at the budget.
fn precision_schedule(budget: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut b = 32u32.min(budget);
    while b < budget {
        out.push(b);
        b *= 2;
    }
    out.push(budget);
    out
}

/// Certifies `det(rows) ≠ 0` for interval rows produced by `logs_at(bits)`,
/// raising the precision up to `budget`. Returns the enclosure and the bits
/// used, or the last enclosure when the sign stayed undetermined.
pub(crate) fn certify_nonsingular(
    logs_at: impl Fn(u32) -> Result<Vec<Vec<Interval>>>,
    budget: u32,
) -> Result<(std::result::Result<Interval, Interval>, u32)> {
    let mut last = (Interval::zero(), 0);
    for bits in precision_schedule(budget) {
        let m = logs_at(bits)?;
        let det = interval_det(&m, bits + 8);
        if det.sign().is_some_and(|s| s != 0) {
            return Ok((Ok(det), bits));
        }
        let exact_zero = det.is_point();
        last = (det, bits);
        if exact_zero {
            break;
        }
    }
    Ok((Err(last.0), last.1))
}

/// Picks `l` units (made positive) whose projected logs form a certified
/// basis of `ℝˡ`.
pub fn select_log_basis(units: &[UnitWithLogs], l: usize, precision_bits: u32) -> Result<Vec<UnitWithLogs>> {
    if l == 0 {
        return Ok(Vec::new());
    }
    if let Some(u) = units.iter().find(|u| u.projected_logs.len() != l) {
        return domain(format!(
            "unit {} carries {} logs, expected {l}",
            u.elem.rep(),
            u.projected_logs.len()
        ));
    }
    let mut chosen: Vec<UnitWithLogs> = Vec::new();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for u in units {
        let v: Vec<f64> = u.projected_logs.iter().map(Interval::mid_f64).collect();
        if independent_of(&ortho, &v) {
            ortho.push(gram_schmidt_row(&ortho, &v));
            chosen.push(make_positive(u)?);
            if chosen.len() == l {
                break;
            }
        }
    }
    if chosen.len() < l {
        return Err(Error::SearchExhausted(format!(
            "only {} independent units among {} candidates, need {l}; raise the coefficient bound",
            chosen.len(),
            units.len()
        )));
    }
    let modulus = chosen[0].elem.modulus().clone();
    let roots = isolate_real_roots(&modulus);
    let (det, bits) = certify_nonsingular(
        |bits| chosen.iter().map(|u| u.recompute_logs(&roots, bits)).collect(),
        precision_bits,
    )?;
    match det {
        Ok(_) => {
            for u in chosen.iter_mut() {
                u.projected_logs = u.recompute_logs(&roots, bits)?;
            }
            Ok(chosen)
        }
        Err(enc) => Err(Error::Undetermined(format!(
            "log-basis determinant enclosure {enc:?} still contains 0 at {bits} bits"
        ))),
    }
}

/// How the residues modulo `b0` were chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyMode {
    /// `Dᵢ ≡ t (mod b0)`.
    Primary,
    /// `Dᵢ ≡ Eᵢ (mod b0)` for the listed polynomials.
    Custom { residues: Vec<IntPoly> },
    /// Supplied from outside; only the axioms are known.
    External,
}

/// Which Dirichlet axiom a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "Δ1")]
    Delta1,
    #[serde(rename = "Δ2")]
    Delta2,
    #[serde(rename = "Δ3")]
    Delta3,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axiom::Delta1 => "Δ1",
            Axiom::Delta2 => "Δ2",
            Axiom::Delta3 => "Δ3",
        })
    }
}

/// Evidence that `D₁,…,D_s` is a Dirichlet family for `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletCertificate {
    /// `det Dᵢ(M)`.
    #[serde(with = "bigint_vec")]
    pub dets: Vec<BigInt>,
    /// Real eigenvalues `α₁ < … < α_s` of `M`.
    pub real_eigenvalues: Vec<RealAlgebraic>,
    /// `signs[i][j]` = sign of `Dᵢ(αⱼ)`.
    pub signs: Vec<Vec<i8>>,
    /// `log_matrix[i][j]` ∋ `ln Dᵢ(αⱼ)`.
    pub log_matrix: Vec<Vec<Interval>>,
    pub log_det: Interval,
    pub precision_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletFamily {
    pub polys: Vec<IntPoly>,
    /// `(j, i)`: the family member built from unit `i` of factor `Bⱼ`
    /// (both 1-based); empty for external families.
    #[serde(default)]
    pub labels: Vec<(usize, usize)>,
    pub mode: FamilyMode,
    pub certificate: DirichletCertificate,
}

impl DirichletFamily {
    pub fn is_primary(&self) -> bool {
        self.mode == FamilyMode::Primary
    }
}

/// Outcome of [`check_dirichlet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirichletVerdict {
    Accepted(DirichletCertificate),
    Violated { axiom: Axiom, detail: String },
    Undetermined { axiom: Axiom, detail: String },
}

/// Real eigenvalues of `m` (ascending), failing when one is repeated.
pub fn real_eigenvalues(m: &IntMatrix) -> Result<Vec<RealAlgebraic>> {
    let cp = crate::classify::char_poly(m)?;
    let counts = root_counts(&cp);
    if !counts.real_roots_simple {
        return domain("a real eigenvalue is repeated");
    }
    Ok(isolate_real_roots(&squarefree_part(&cp)))
}

/// Independent checker: recomputes `det Dᵢ(M)`, every sign `Dᵢ(αⱼ)` and the
/// log-matrix determinant, reporting the first failing axiom.
pub fn check_dirichlet(m: &IntMatrix, polys: &[IntPoly], precision_bits: u32) -> Result<DirichletVerdict> {
    if !m.is_square() {
        return domain("Dirichlet family for a non-square matrix");
    }
    let alphas = real_eigenvalues(m)?;
    let s = alphas.len();
    if polys.len() != s {
        return domain(format!(
            "a Dirichlet family for this matrix has {s} members, got {}",
            polys.len()
        ));
    }
    let dets: Vec<BigInt> = polys.par_iter().map(|d| m.eval_poly(d).det()).collect();
    if let Some((i, d)) = dets.iter().enumerate().find(|(_, d)| !d.is_one()) {
        return Ok(DirichletVerdict::Violated {
            axiom: Axiom::Delta1,
            detail: format!("det D_{}(M) = {d}", i + 1),
        });
    }
    let signs: Vec<Vec<i8>> = polys
        .par_iter()
        .map(|d| alphas.iter().map(|a| sign_at(a, d)).collect())
        .collect();
    for (i, row) in signs.iter().enumerate() {
        if let Some(j) = row.iter().position(|&x| x <= 0) {
            return Ok(DirichletVerdict::Violated {
                axiom: Axiom::Delta2,
                detail: format!("D_{}(α_{}) has sign {}", i + 1, j + 1, row[j]),
            });
        }
    }
    let logs_at = |bits: u32| -> Result<Vec<Vec<Interval>>> {
        let eps = precision_from_bits(bits);
        polys
            .par_iter()
            .map(|d| alphas.iter().map(|a| log_abs_enclosure(a, d, &eps)).collect())
            .collect()
    };
    let (det, bits) = certify_nonsingular(logs_at, precision_bits)?;
    match det {
        Ok(log_det) => Ok(DirichletVerdict::Accepted(DirichletCertificate {
            dets,
            log_matrix: logs_at(bits)?,
            real_eigenvalues: alphas.clone(),
            signs,
            log_det,
            precision_bits: bits,
        })),
        Err(enc) if enc.is_point() => Ok(DirichletVerdict::Violated {
            axiom: Axiom::Delta3,
            detail: "the log matrix is exactly singular".into(),
        }),
        Err(enc) => Ok(DirichletVerdict::Undetermined {
            axiom: Axiom::Delta3,
            detail: format!("log determinant enclosure {enc:?} contains 0 at {bits} bits"),
        }),
    }
}

/// [`check_dirichlet`] as a `Result`: violations become certificate errors
/// and an undecided `Δ3` becomes [`Error::Undetermined`].
pub fn verify_dirichlet(m: &IntMatrix, polys: &[IntPoly], precision_bits: u32) -> Result<DirichletCertificate> {
    match check_dirichlet(m, polys, precision_bits)? {
        DirichletVerdict::Accepted(c) => Ok(c),
        DirichletVerdict::Violated { axiom, detail } => {
            Err(Error::Certificate(format!("{axiom} violated: {detail}")))
        }
        DirichletVerdict::Undetermined { axiom, detail } => {
            Err(Error::Undetermined(format!("{axiom} undetermined: {detail}")))
        }
    }
}

/// Residue choice modulo `b0` for [`build_dirichlet_family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Primary,
    /// One polynomial for every member, or one per member.
    Custom(Vec<IntPoly>),
}

/// Positive units of `ℤ[t]/b` forming a certified log-basis, escalating the
/// coefficient bound from 1 up to `coeff_bound`.
pub fn unit_log_basis(b: &IntPoly, l: usize, coeff_bound: u32, precision_bits: u32) -> Result<Vec<UnitWithLogs>> {
    let mut last = None;
    for bound in 1..=coeff_bound {
        let search = match find_units(b, bound) {
            Ok(s) => s,
            Err(e @ Error::SearchExhausted(_)) => {
                last = Some(e);
                break;
            }
            Err(e) => return Err(e),
        };
        match select_log_basis(&search.units, l, precision_bits) {
            Ok(basis) => return Ok(basis),
            Err(e @ Error::SearchExhausted(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    let detail = last.map(|e| e.to_string()).unwrap_or_default();
    Err(Error::SearchExhausted(format!(
        "no log-basis of units of Z[t]/({b}) with coefficients up to {coeff_bound} ({detail}); raise --coeff-bound"
    )))
}

/// Builds and verifies a Dirichlet family for a matrix of type 𝒥 by lifting
/// `Eᵢ mod b0`, `P_{j,i} mod Bⱼ` and `1 mod B_μ` (`μ ≠ j`) to `ℤ[t]`.
pub fn build_dirichlet_family(
    m: &IntMatrix,
    f: &FactoredCharPoly,
    mode: &Mode,
    budgets: &Budgets,
) -> Result<DirichletFamily> {
    budgets.validate()?;
    let cert = check_type_j(m, f)?;
    if !cert.j {
        return domain(format!(
            "matrix is not certified of type 𝒥: {}",
            cert.failures.join("; ")
        ));
    }
    let s = cert.s;
    let residues: Vec<IntPoly> = match mode {
        Mode::Primary => vec![IntPoly::t(); s],
        Mode::Custom(es) if es.len() == 1 => vec![es[0].clone(); s],
        Mode::Custom(es) if es.len() == s => es.clone(),
        Mode::Custom(es) => {
            return domain(format!("custom mode needs 1 or {s} residues, got {}", es.len()))
        }
    };
    let use_b0 = !f.b0.is_constant();
    if use_b0 {
        for e in &residues {
            let r = resultant(&f.b0, e)?;
            if !r.abs().is_one() {
                return domain(format!(
                    "{e} is not invertible modulo b0 = {} (resultant {r})",
                    f.b0
                ));
            }
        }
    }

    let bases: Vec<Vec<UnitWithLogs>> = f
        .factors
        .iter()
        .map(|b| {
            let l = isolate_real_roots(b).len();
            unit_log_basis(b, l, budgets.coeff_bound, budgets.precision_bits)
        })
        .collect::<Result<_>>()?;

    let mut polys = Vec::with_capacity(s);
    let mut labels = Vec::with_capacity(s);
    for (j, basis) in bases.iter().enumerate() {
        for (i, u) in basis.iter().enumerate() {
            let mut system = Vec::new();
            if use_b0 {
                system.push((f.b0.clone(), residues[polys.len()].clone()));
            }
            for (mu, b) in f.factors.iter().enumerate() {
                let r = if mu == j { u.elem.rep().clone() } else { IntPoly::one() };
                system.push((b.clone(), r));
            }
            polys.push(crt_lift(&system)?);
            labels.push((j + 1, i + 1));
        }
    }
    let certificate = verify_dirichlet(m, &polys, budgets.precision_bits).map_err(|e| {
        Error::Internal(format!("constructed family failed verification: {e}"))
    })?;
    let mode = match mode {
        Mode::Primary => FamilyMode::Primary,
        Mode::Custom(_) => FamilyMode::Custom { residues },
    };
    Ok(DirichletFamily { polys, labels, mode, certificate })
}

/// `(D₁², …, D_s²)`.
pub fn squared_family(polys: &[IntPoly]) -> Vec<IntPoly> {
    polys.iter().map(|d| d * d).collect()
}

/// `ln Dᵢ(αⱼ)` midpoints as floats.
pub fn log_matrix_f64(cert: &DirichletCertificate) -> Vec<Vec<f64>> {
    cert.log_matrix
        .iter()
        .map(|r| r.iter().map(Interval::mid_f64).collect())
        .collect()
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

    fn elem(m: &IntPoly, r: &[i64]) -> OrderElement {
        OrderElement::new(m.clone(), &p(r)).unwrap()
    }

    #[test]
    fn unit_tests_by_norm() {
        assert!(is_unit(&elem(&b1(), &[1])));
        // Res(B₁, t) = B₁(0) = 1
        assert!(is_unit(&elem(&b1(), &[0, 1])));
        // (1+√2)(1−√2) = −1
        let q = p(&[-2, 0, 1]);
        assert!(is_unit(&elem(&q, &[1, 1])));
        assert!(!is_unit(&elem(&q, &[0, 1])));
        assert_eq!(elem(&q, &[1, 1]).norm().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn zero_bound_finds_nothing() {
        let s = find_units(&b1(), 0).unwrap();
        assert!(s.units.is_empty() && s.torsion.is_empty());
    }

    #[test]
    fn found_units_include_known_ones() {
        let s = find_units(&b1(), 3).unwrap();
        assert!(s.units.iter().any(|u| u.elem.rep() == &p(&[0, 1])));
        for u in &s.units {
            assert!(is_unit(&u.elem));
            assert_eq!(u.projected_logs.len(), 2);
        }
        let reps: Vec<Vec<BigInt>> = s.units.iter().map(|u| u.elem.rep().coeffs().to_vec()).collect();
        let mut padded: Vec<Vec<BigInt>> = reps
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.resize(4, BigInt::zero());
                c
            })
            .collect();
        let before = padded.clone();
        padded.sort();
        assert_eq!(before, padded, "units must come in lexicographic order");

        let q = p(&[-2, 0, 1]);
        let s = find_units(&q, 1).unwrap();
        let reps: Vec<&IntPoly> = s.units.iter().map(|u| u.elem.rep()).collect();
        assert!(reps.contains(&&p(&[1, 1])) && reps.contains(&&p(&[-1, 1])));
    }

    #[test]
    fn product_of_units_is_unit() {
        let s = find_units(&b1(), 2).unwrap();
        for a in s.units.iter().take(6) {
            for b in s.units.iter().take(6) {
                assert!(is_unit(&a.elem.mul(&b.elem).unwrap()));
            }
        }
    }

    #[test]
    fn make_positive_squares_negative_units() {
        let roots = isolate_real_roots(&b1());
        let t = UnitWithLogs::from_element(elem(&b1(), &[0, 1]), &roots, 40).unwrap();
        assert_eq!(t.signs, vec![-1, -1]);
        let t2 = make_positive(&t).unwrap();
        assert_eq!(t2.elem.rep(), &p(&[0, 0, 1]));
        for g in &roots {
            assert_eq!(sign_at(g, t2.elem.rep()), 1);
        }
        let fresh = UnitWithLogs::from_element(t2.elem.clone(), &roots, 40).unwrap();
        for (a, b) in fresh.projected_logs.iter().zip(&t2.projected_logs) {
            assert!(a.intersects(b));
        }
        assert_eq!(make_positive(&t2).unwrap(), t2);
    }

    #[test]
    fn log_basis_selection() {
        let s = find_units(&b1(), 2).unwrap();
        let basis = select_log_basis(&s.units, 2, 128).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(basis.iter().all(|u| u.positive));
        let dup = vec![s.units[0].clone(), s.units[0].clone()];
        assert!(select_log_basis(&dup, 2, 128).is_err());
        let q = p(&[-2, 0, 1]);
        let s = find_units(&q, 1).unwrap();
        // t²−2 has two real roots; the rank of its unit group is 1
        assert!(matches!(select_log_basis(&s.units, 2, 64), Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn primary_family_for_six_by_six() {
        let c = &p(&[1, 0, 1]) * &b1();
        let m = companion(&c).unwrap();
        let f = FactoredCharPoly { b0: p(&[1, 0, 1]), factors: vec![b1()] };
        let fam = build_dirichlet_family(&m, &f, &Mode::Primary, &Budgets::default()).unwrap();
        assert_eq!(fam.polys.len(), 2);
        for d in &fam.polys {
            assert_eq!(m.eval_poly(d).det(), BigInt::one());
            // D ≡ t mod t²+1
            assert_eq!(d.rem_monic(&p(&[1, 0, 1])).unwrap(), IntPoly::t());
        }
        assert!(fam.certificate.signs.iter().flatten().all(|&x| x == 1));
        assert_ne!(fam.certificate.log_det.sign(), Some(0));
        assert!(fam.certificate.log_det.sign().is_some());
    }

    #[test]
    fn checker_rejects_in_axiom_order() {
        let m = companion(&(&p(&[1, 0, 1]) * &b1())).unwrap();
        let ones = vec![IntPoly::one(), IntPoly::one()];
        assert!(matches!(
            check_dirichlet(&m, &ones, 64).unwrap(),
            DirichletVerdict::Violated { axiom: Axiom::Delta3, .. }
        ));
        // −1 on a 6×6 matrix keeps the determinant 1 and flips every sign
        let neg = vec![-IntPoly::one(), IntPoly::one()];
        assert!(matches!(
            check_dirichlet(&m, &neg, 64).unwrap(),
            DirichletVerdict::Violated { axiom: Axiom::Delta2, .. }
        ));
        let inoue = companion(&p(&[-1, -1, 0, 1])).unwrap();
        assert!(matches!(
            check_dirichlet(&inoue, &[-IntPoly::t()], 64).unwrap(),
            DirichletVerdict::Violated { axiom: Axiom::Delta1, .. }
        ));
    }

    #[test]
    fn inoue_family_is_t() {
        // t³ − t − 1: one positive real root, one conjugate pair
        let m = companion(&p(&[-1, -1, 0, 1])).unwrap();
        let cert = verify_dirichlet(&m, &[IntPoly::t()], 64).unwrap();
        assert_eq!(cert.dets, vec![BigInt::one()]);
    }

    #[test]
    fn custom_residue_must_be_invertible() {
        let m = companion(&(&p(&[1, 0, 1]) * &b1())).unwrap();
        let f = FactoredCharPoly { b0: p(&[1, 0, 1]), factors: vec![b1()] };
        let err = build_dirichlet_family(&m, &f, &Mode::Custom(vec![p(&[1, 1])]), &Budgets::default());
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn squared_family_passes() {
        let m = companion(&(&p(&[1, 0, 1]) * &b1())).unwrap();
        let f = FactoredCharPoly { b0: p(&[1, 0, 1]), factors: vec![b1()] };
        let fam = build_dirichlet_family(&m, &f, &Mode::Primary, &Budgets::default()).unwrap();
        assert!(verify_dirichlet(&m, &squared_family(&fam.polys), 128).is_ok());
    }
}
