//! Eigenstructure of a type-𝒥 matrix, the lattice basis `v₁,…,v_{s+2n}`,
//! and the data of the quotient `T(M, 𝒟)` of `ℍˢ × ℂⁿ`.
//!
//! Coordinates: `ℂ^{s+2n} = V ⊕ W ⊕ W̄` where `V` is spanned by real
//! eigenvectors `a₁,…,a_s` and `W` by a basis `b₁,…,b_n` of the generalized
//! eigenspaces of the eigenvalues with positive imaginary part. Writing
//! `MB = BR`, the point `vᵢ = (a₁⁽ⁱ⁾,…,a_s⁽ⁱ⁾, b₁⁽ⁱ⁾,…,b_n⁽ⁱ⁾)` lies in
//! `ℝˢ × ℂⁿ ≅ ℝ^{s+2n}` (real and imaginary parts interleaved) and
//! `g₀ = diag(α) ⊕ Rᵀ` satisfies `g₀(vᵢ) = Σₖ Mᵢₖ vₖ`. In matrix form, with
//! `Q` the matrix of columns `vᵢ`, `g₀ Q = Q Mᵀ`; likewise
//! `Dᵢ(g₀) Q = Q Dᵢ(Mᵀ)`.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::classify::{check_type_j, FactoredCharPoly};
use crate::config::{Budgets, FloatPrecision};
use crate::error::{domain, Error, Result};
use crate::linalg::IntMatrix;
use crate::numeric::{
    cmat_eval_poly, cmat_from_int_t, czero, kernel_complete_pivot, real_value, rmat_det, rmat_from_int,
    rmat_max_diff, rmat_mul, upper_half_plane_roots, CMat, RMat, Real,
};
use crate::polyring::{squarefree_decomposition, IntPoly, RatPoly};
use crate::realroots::{
    count_real_roots, interval_det, ln_enclosure, log_abs_enclosure, precision_from_bits, sign_at, Interval,
    RealAlgebraic,
};
use crate::units::{real_eigenvalues, verify_dirichlet, DirichletFamily};

/// Smallest accepted `|det Q| / ∏ ‖columns‖`.
pub const MIN_HADAMARD_RATIO: f64 = 1e-12;

/// Numeric eigenstructure in working precision `T`.
#[derive(Clone, Debug)]
pub struct Eigendata<T: Real> {
    pub s: usize,
    pub n: usize,
    /// `α₁ < … < α_s`.
    pub real_eigs: Vec<RealAlgebraic>,
    pub alphas: Vec<T>,
    /// Columns `a₁,…,a_s`.
    pub real_vectors: Vec<Vec<T>>,
    /// Eigenvalues with positive imaginary part and their multiplicities,
    /// in the order their blocks appear in `R`.
    pub imaginary_eigs: Vec<(Complex<T>, usize)>,
    /// `N × n`, columns `b₁,…,b_n`.
    pub w_basis: CMat<T>,
    /// Matrix of `M|_W` in the basis `b`: `M B = B R`.
    pub r: CMat<T>,
    /// Columns `v₁,…,v_N`.
    pub q: RMat<T>,
    pub det_q: T,
    pub hadamard_ratio: f64,
}

/// Kernel vector of `M − t·I` over `ℚ[t]/(b)`, normalized to 1 in its free
/// coordinate.
pub fn exact_eigenvector(m: &IntMatrix, b: &IntPoly) -> Result<Vec<RatPoly>> {
    let n = m.rows();
    let bm = b.to_ratpoly();
    let t = RatPoly::t();
    let mut a: Vec<Vec<RatPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = RatPoly::constant(BigRational::from_integer(m[(i, j)].clone()));
                    if i == j {
                        (&c - &t).rem(&bm)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col]
            .inverse_mod(&bm)
            .ok_or_else(|| Error::Internal(format!("{b} is reducible: a pivot has no inverse")))?;
        for j in 0..n {
            a[row][j] = (&a[row][j] * &inv).rem(&bm);
        }
        for r in 0..n {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let v = (&f * &a[row][j]).rem(&bm);
                a[r][j] = &a[r][j] - &v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::Internal(format!(
            "eigenspace over Q[t]/({b}) has dimension {}, expected 1",
            free.len()
        )));
    }
    let f = free[0];
    let mut v = vec![RatPoly::zero(); n];
    v[f] = RatPoly::one();
    for (k, &c) in pivots.iter().enumerate() {
        v[c] = -&a[k][f];
    }
    Ok(v)
}

fn ratpoly_at<T: Real>(p: &RatPoly, x: T) -> T {
    p.coeffs()
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x + T::from_rational(c))
}

/// `X ↦` the real `2n × 2n` matrix of the complex-linear map `X`, acting on
/// `(Re z₁, Im z₁, …)`.
pub fn realify<T: Real>(x: &CMat<T>) -> RMat<T> {
    let n = x.len();
    let mut out = vec![vec![T::zero(); 2 * n]; 2 * n];
    for p in 0..n {
        for q in 0..n {
            let z = x[p][q];
            out[2 * p][2 * q] = z.re;
            out[2 * p][2 * q + 1] = -z.im;
            out[2 * p + 1][2 * q] = z.im;
            out[2 * p + 1][2 * q + 1] = z.re;
        }
    }
    out
}

fn ctranspose<T: Real>(x: &CMat<T>) -> CMat<T> {
    let n = x.len();
    let m = x.first().map_or(0, Vec::len);
    (0..m).map(|j| (0..n).map(|i| x[i][j]).collect()).collect()
}

/// `diag(d) ⊕ realify(X)`.
pub fn real_block<T: Real>(d: &[T], x: &CMat<T>) -> RMat<T> {
    let s = d.len();
    let rx = realify(x);
    let k = s + rx.len();
    let mut out = vec![vec![T::zero(); k]; k];
    for (i, &v) in d.iter().enumerate() {
        out[i][i] = v;
    }
    for (i, row) in rx.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[s + i][s + j] = v;
        }
    }
    out
}

/// Computes the eigenstructure of a matrix whose type-𝒥 factorization is
/// `f`: exact real eigenvalues and eigenvectors, numeric `W`, `R` and `Q`.
pub fn eigenstructure<T: Real>(m: &IntMatrix, f: &FactoredCharPoly, rank_tolerance: f64) -> Result<Eigendata<T>> {
    let nn = m.rows();
    let real_eigs = real_eigenvalues(m)?;
    let s = real_eigs.len();
    if s == 0 {
        return domain("the matrix has no real eigenvalue (s = 0)");
    }
    if !(nn - s).is_multiple_of(2) || nn == s {
        return domain("the matrix has no imaginary eigenvalue (n = 0)");
    }
    let n = (nn - s) / 2;

    let kernels: Vec<Vec<RatPoly>> = f
        .factors
        .iter()
        .map(|b| exact_eigenvector(m, b))
        .collect::<Result<_>>()?;
    let mut alphas = Vec::with_capacity(s);
    let mut real_vectors = Vec::with_capacity(s);
    for g in &real_eigs {
        let j = f
            .factors
            .iter()
            .position(|b| sign_at(g, b) == 0)
            .ok_or_else(|| Error::Internal("real eigenvalue outside every factor".into()))?;
        let a: T = real_value(g);
        let mut v: Vec<T> = kernels[j].iter().map(|c| ratpoly_at(c, a)).collect();
        let scale = v.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
        v.iter_mut().for_each(|x| *x = x.quot(scale));
        alphas.push(a);
        real_vectors.push(v);
    }

    let mut pieces: Vec<(IntPoly, usize)> = squarefree_decomposition(&f.b0)
        .into_iter()
        .filter(|(g, _)| !g.is_constant())
        .collect();
    pieces.extend(f.factors.iter().map(|b| (b.clone(), 1)));
    let mc: CMat<T> = cmat_from_int_t(m);
    let mut imaginary_eigs = Vec::new();
    let mut columns: Vec<Vec<Complex<T>>> = Vec::new();
    let mut blocks: Vec<CMat<T>> = Vec::new();
    for (g, mult) in &pieces {
        for lambda in upper_half_plane_roots::<T>(g, count_real_roots(g))? {
            let mut shifted = mc.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = row[i] - lambda;
            }
            let mut power = shifted.clone();
            for _ in 1..*mult {
                power = crate::numeric::cmat_mul(&power, &shifted);
            }
            let (free, basis) = kernel_complete_pivot(&power, *mult, rank_tolerance)?;
            let image = crate::numeric::cmat_mul(&mc, &basis);
            let block: CMat<T> = free.iter().map(|&r| image[r].clone()).collect();
            for c in 0..*mult {
                columns.push(basis.iter().map(|row| row[c]).collect());
            }
            blocks.push(block);
            imaginary_eigs.push((lambda, *mult));
        }
    }
    if columns.len() != n {
        return Err(Error::Internal(format!(
            "found {} vectors for W, expected {n}",
            columns.len()
        )));
    }
    let mut r = vec![vec![czero::<T>(); n]; n];
    let mut off = 0;
    for b in &blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                r[off + i][off + j] = z;
            }
        }
        off += b.len();
    }
    let w_basis: CMat<T> = (0..nn).map(|i| columns.iter().map(|c| c[i]).collect()).collect();

    let mut q = vec![vec![T::zero(); nn]; nn];
    for i in 0..nn {
        for (k, a) in real_vectors.iter().enumerate() {
            q[k][i] = a[i];
        }
        for (p, b) in columns.iter().enumerate() {
            q[s + 2 * p][i] = b[i].re;
            q[s + 2 * p + 1][i] = b[i].im;
        }
    }
    let det_q = rmat_det(&q);
    let col_norms: f64 = (0..nn)
        .map(|j| (0..nn).map(|i| q[i][j].approx().powi(2)).sum::<f64>().sqrt())
        .product();
    let hadamard_ratio = det_q.abs().approx() / col_norms;
    if !(hadamard_ratio >= MIN_HADAMARD_RATIO) {
        return Err(Error::Numerical(format!(
            "basis matrix Q is numerically singular (|det Q| / ∏‖col‖ = {hadamard_ratio:e})"
        )));
    }
    Ok(Eigendata {
        s,
        n,
        real_eigs,
        alphas,
        real_vectors,
        imaginary_eigs,
        w_basis,
        r,
        q,
        det_q,
        hadamard_ratio,
    })
}

impl<T: Real> Eigendata<T> {
    /// `g₀ = diag(α) ⊕ Rᵀ` in real coordinates.
    pub fn g0(&self) -> RMat<T> {
        real_block(&self.alphas, &ctranspose(&self.r))
    }

    /// `Dᵢ(g₀) = diag(D(α)) ⊕ D(R)ᵀ`.
    pub fn g_of(&self, d: &IntPoly) -> RMat<T> {
        let coeffs: Vec<T> = d.coeffs().iter().map(T::from_bigint).collect();
        let da: Vec<T> = self
            .alphas
            .iter()
            .map(|&a| coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * a + c))
            .collect();
        real_block(&da, &ctranspose(&cmat_eval_poly(&self.r, d)))
    }

    /// `Δ ⊕ R` in real coordinates.
    pub fn u_matrix(&self) -> RMat<T> {
        real_block(&self.alphas, &self.r)
    }
}

/// Worst entry of one residual `‖lhs − rhs‖∞` (max absolute entry).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub label: String,
    pub value: f64,
    pub worst_entry: (usize, usize),
    /// Largest absolute entry of `Q·Dᵢ(Mᵀ)`, for scale.
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeResiduals {
    pub precision: String,
    pub tolerance: f64,
    pub g0: Residual,
    pub family: Vec<Residual>,
}

impl LatticeResiduals {
    pub fn passed(&self) -> bool {
        std::iter::once(&self.g0)
            .chain(&self.family)
            .all(|r| r.value <= self.tolerance)
    }

    /// The first residual above tolerance as a numerical error.
    pub fn check(&self) -> Result<()> {
        match std::iter::once(&self.g0).chain(&self.family).find(|r| !(r.value <= self.tolerance)) {
            None => Ok(()),
            Some(r) => Err(Error::Numerical(format!(
                "lattice invariance residual {} = {:e} exceeds {:e} at entry {:?}",
                r.label, r.value, self.tolerance, r.worst_entry
            ))),
        }
    }
}

fn residual<T: Real>(label: String, g: &RMat<T>, q: &RMat<T>, target_t: &RMat<T>) -> Residual {
    let lhs = rmat_mul(g, q);
    let rhs = rmat_mul(q, target_t);
    let (value, worst_entry) = rmat_max_diff(&lhs, &rhs);
    let magnitude = rhs.iter().flatten().map(|x| x.abs().approx()).fold(0.0, f64::max);
    Residual { label, value, worst_entry, magnitude }
}

/// Checks `‖g₀Q − QMᵀ‖∞` and `‖Dᵢ(g₀)Q − QDᵢ(Mᵀ)‖∞` against `tolerance`;
/// also confirms exactly that every `Dᵢ(Mᵀ)` has determinant 1.
pub fn verify_lattice_invariance<T: Real>(
    m: &IntMatrix,
    polys: &[IntPoly],
    eig: &Eigendata<T>,
    tolerance: f64,
) -> Result<LatticeResiduals> {
    let mt = m.transpose();
    let g0 = residual("g0".into(), &eig.g0(), &eig.q, &rmat_from_int(&mt));
    let family = polys
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let dm = mt.eval_poly(d);
            if !dm.det().is_one() {
                return Err(Error::Certificate(format!("det D_{}(M^T) = {}", i + 1, dm.det())));
            }
            Ok(residual(format!("D_{}", i + 1), &eig.g_of(d), &eig.q, &rmat_from_int(&dm)))
        })
        .collect::<Result<_>>()?;
    Ok(LatticeResiduals { precision: T::LABEL.into(), tolerance, g0, family })
}

/// Exact scale data `Dᵢ(αⱼ)` behind a twisted diagonal action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactScales {
    pub polys: Vec<IntPoly>,
    pub points: Vec<RealAlgebraic>,
}

/// `ℤˢ ⋉ ℤᵏ` acting on `(ℝ*₊)ˢ × E`: generator `i` scales by
/// `scale_vectors[i]` and acts on the lattice by `lattice_matrices[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedDiagonalAction {
    pub s: usize,
    pub k: usize,
    pub scale_vectors: Vec<Vec<Interval>>,
    pub lattice_matrices: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactScales>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Nondegeneracy {
    Certified { log_det: Interval, bits: u32 },
    Undetermined { log_det: Interval, bits: u32 },
}

impl Nondegeneracy {
    pub fn is_certified(&self) -> bool {
        matches!(self, Nondegeneracy::Certified { .. })
    }
}

fn ln_interval(x: &Interval, bits: u32) -> Option<Interval> {
    use num_traits::Signed;
    if !x.lo.is_positive() {
        return None;
    }
    Some(Interval::new(ln_enclosure(&x.lo, bits).lo, ln_enclosure(&x.hi, bits).hi))
}

impl TwistedDiagonalAction {
    /// Every lattice matrix has an integer inverse.
    pub fn lattice_in_gl(&self) -> bool {
        self.lattice_matrices.iter().all(|a| a.inverse().is_ok())
    }
}

/// Whether the logarithms of the scale vectors are a certified basis of
/// `ℝˢ`, raising precision up to `budget_bits` when exact scale data is
/// attached.
pub fn check_nondegenerate(action: &TwistedDiagonalAction, budget_bits: u32) -> Nondegeneracy {
    let s = action.s;
    let undetermined = |bits| Nondegeneracy::Undetermined { log_det: Interval::new(-BigRational::one(), BigRational::one()), bits };
    let mut schedule = vec![];
    let mut b = 32u32.min(budget_bits);
    while b < budget_bits {
        schedule.push(b);
        b *= 2;
    }
    schedule.push(budget_bits);
    let mut last = undetermined(0);
    for bits in schedule {
        let logs: Option<Vec<Vec<Interval>>> = match &action.exact {
            Some(ex) => {
                let eps = precision_from_bits(bits);
                ex.polys
                    .iter()
                    .map(|d| ex.points.iter().map(|a| log_abs_enclosure(a, d, &eps).ok()).collect())
                    .collect()
            }
            None => action
                .scale_vectors
                .iter()
                .map(|v| v.iter().map(|x| ln_interval(x, bits)).collect())
                .collect(),
        };
        let Some(logs) = logs else {
            return last;
        };
        if logs.len() != s || logs.iter().any(|r| r.len() != s) {
            return last;
        }
        let det = interval_det(&logs, bits + 8);
        if det.sign().is_some_and(|x| x != 0) {
            return Nondegeneracy::Certified { log_det: det, bits };
        }
        let exact_zero = det.is_point();
        last = Nondegeneracy::Undetermined { log_det: det, bits };
        if exact_zero || action.exact.is_none() {
            break;
        }
    }
    last
}

/// Floating blocks of the manifold data, rounded to binary64 for output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericBlock {
    /// Working precision the blocks were computed in.
    pub precision: String,
    /// Columns `v₁,…,v_{s+2n}`.
    pub eigenbasis: Vec<Vec<f64>>,
    /// `Δ ⊕ R` in real coordinates.
    pub u: Vec<Vec<f64>>,
    pub det_q: f64,
    pub hadamard_ratio: f64,
    /// Eigenvalues with positive imaginary part as `[re, im, multiplicity]`.
    pub imaginary_eigenvalues: Vec<(f64, f64, usize)>,
    pub residuals: LatticeResiduals,
}

/// `ℤˢ ⋉ ℤᵏ` with `eᵢ fₐ eᵢ⁻¹ = ∏_b f_b^{(Aᵢ)_{ba}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub description: String,
    pub base_rank: usize,
    pub fiber_rank: usize,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
}

pub fn semidirect_presentation(monodromies: &[IntMatrix]) -> GroupPresentation {
    let s = monodromies.len();
    let k = monodromies.first().map_or(0, IntMatrix::rows);
    let mut generators: Vec<String> = (1..=s).map(|i| format!("e{i}")).collect();
    generators.extend((1..=k).map(|a| format!("f{a}")));
    let mut relations = Vec::new();
    for i in 1..=s {
        for j in i + 1..=s {
            relations.push(format!("e{i} e{j} = e{j} e{i}"));
        }
    }
    for a in 1..=k {
        for b in a + 1..=k {
            relations.push(format!("f{a} f{b} = f{b} f{a}"));
        }
    }
    for (i, m) in monodromies.iter().enumerate() {
        for a in 0..k {
            let word: Vec<String> = (0..k)
                .filter(|&b| !m[(b, a)].is_zero())
                .map(|b| {
                    let e = &m[(b, a)];
                    if e.is_one() {
                        format!("f{}", b + 1)
                    } else {
                        format!("f{}^{e}", b + 1)
                    }
                })
                .collect();
            relations.push(format!("e{} f{} e{}^-1 = {}", i + 1, a + 1, i + 1, word.join(" ")));
        }
    }
    GroupPresentation { description: format!("Z^{s} ⋉ Z^{k}"), base_rank: s, fiber_rank: k, generators, relations }
}

/// `T(M, 𝒟) → Tˢ` with fiber `T^{s+2n}` and the given monodromies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fibration {
    pub base: String,
    pub fiber: String,
    pub has_cross_section: bool,
}

/// Everything recorded about `T(M, 𝒟)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldData {
    pub s: usize,
    pub n: usize,
    pub complex_dimension: usize,
    pub matrix: IntMatrix,
    pub factorization: FactoredCharPoly,
    pub family: DirichletFamily,
    /// `Dᵢ(Mᵀ)`.
    pub monodromies: Vec<IntMatrix>,
    pub real_eigs: Vec<RealAlgebraic>,
    /// `scale_values[i][j]` ∋ `Dᵢ(αⱼ)`.
    pub scale_values: Vec<Vec<Interval>>,
    pub action: TwistedDiagonalAction,
    pub nondegeneracy: Nondegeneracy,
    pub numeric: NumericBlock,
    pub group: GroupPresentation,
    pub fibration: Fibration,
    /// Names of the checks that passed.
    pub certificates: Vec<String>,
}

fn to_f64(m: &[Vec<impl Real>]) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(|x| x.approx()).collect()).collect()
}

fn numeric_block<T: Real>(
    m: &IntMatrix,
    f: &FactoredCharPoly,
    polys: &[IntPoly],
    budgets: &Budgets,
) -> Result<NumericBlock> {
    let eig = eigenstructure::<T>(m, f, budgets.rank_tolerance)?;
    let residuals = verify_lattice_invariance(m, polys, &eig, budgets.tolerance)?;
    residuals.check()?;
    Ok(NumericBlock {
        precision: T::LABEL.into(),
        eigenbasis: to_f64(&eig.q),
        u: to_f64(&eig.u_matrix()),
        det_q: eig.det_q.approx(),
        hadamard_ratio: eig.hadamard_ratio,
        imaginary_eigenvalues: eig
            .imaginary_eigs
            .iter()
            .map(|(z, k)| (z.re.approx(), z.im.approx(), *k))
            .collect(),
        residuals,
    })
}

/// Numeric block computed at the configured float width.
pub fn numeric_data(m: &IntMatrix, f: &FactoredCharPoly, polys: &[IntPoly], budgets: &Budgets) -> Result<NumericBlock> {
    match budgets.float_precision {
        FloatPrecision::Double => numeric_block::<f64>(m, f, polys, budgets),
        FloatPrecision::DoubleDouble => numeric_block::<TwoFloat>(m, f, polys, budgets),
    }
}

/// Re-verifies type 𝒥 and the Dirichlet axioms, then assembles and checks
/// the data of `T(M, 𝒟)`.
pub fn build_manifold(
    m: &IntMatrix,
    f: &FactoredCharPoly,
    family: &DirichletFamily,
    budgets: &Budgets,
) -> Result<ManifoldData> {
    budgets.validate()?;
    let mut certificates = Vec::new();
    let tc = check_type_j(m, f)?;
    if !tc.j {
        return domain(format!("refusing to build: type 𝒥 not certified ({})", tc.failures.join("; ")));
    }
    certificates.push(if tc.j1 { "type J1" } else { "type J" }.to_string());
    let cert = verify_dirichlet(m, &family.polys, budgets.precision_bits)
        .map_err(|e| Error::Domain(format!("refusing to build: {e}")))?;
    certificates.extend(["Δ1 det D_i(M) = 1", "Δ2 D_i(α_j) > 0", "Δ3 log-basis"].map(String::from));

    let numeric = numeric_data(m, f, &family.polys, budgets)?;
    certificates.push("lattice invariance g0 Q = Q M^T".into());
    certificates.push("lattice invariance D_i(g0) Q = Q D_i(M^T)".into());

    let mt = m.transpose();
    let monodromies: Vec<IntMatrix> = family.polys.iter().map(|d| mt.eval_poly(d)).collect();
    if let Some(i) = monodromies.iter().position(|a| !a.det().is_one()) {
        return Err(Error::Internal(format!("det D_{}(M^T) ≠ 1", i + 1)));
    }
    certificates.push("det D_i(M^T) = 1".into());

    let eps = precision_from_bits(64);
    let scale_values: Vec<Vec<Interval>> = family
        .polys
        .iter()
        .map(|d| cert.real_eigenvalues.iter().map(|a| a.eval_enclosure(d, &eps).1).collect())
        .collect();
    let action = TwistedDiagonalAction {
        s: tc.s,
        k: m.rows(),
        scale_vectors: scale_values.clone(),
        lattice_matrices: monodromies.clone(),
        exact: Some(ExactScales { polys: family.polys.clone(), points: cert.real_eigenvalues.clone() }),
    };
    if !action.lattice_in_gl() {
        return Err(Error::Internal("a monodromy has no integer inverse".into()));
    }
    let nondegeneracy = check_nondegenerate(&action, budgets.precision_bits);
    if !nondegeneracy.is_certified() {
        return Err(Error::Internal("action not certified non-degenerate despite Δ3".into()));
    }
    certificates.push("action non-degenerate".into());

    let (s, n) = (tc.s, tc.n);
    Ok(ManifoldData {
        s,
        n,
        complex_dimension: s + n,
        matrix: m.clone(),
        factorization: f.clone(),
        family: family.clone(),
        group: semidirect_presentation(&monodromies),
        monodromies,
        real_eigs: cert.real_eigenvalues,
        scale_values,
        action,
        nondegeneracy,
        numeric,
        fibration: Fibration {
            base: format!("T^{s}"),
            fiber: format!("T^{}", s + 2 * n),
            has_cross_section: true,
        },
        certificates,
    })
}
