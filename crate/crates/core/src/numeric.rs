//! Floating-point kernels generic over the working precision: complex
//! polynomial roots, small dense complex/real matrix algebra, and numeric
//! kernels with complete pivoting.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::realroots::RealAlgebraic;

/// A floating-point scalar usable by the numeric eigenstructure code.
pub trait Real: Float + Send + Sync + Debug + 'static {
    /// Short label recorded in outputs.
    const LABEL: &'static str;
    /// Unit roundoff.
    fn unit_roundoff() -> f64;
    fn from_rational(x: &BigRational) -> Self;
    fn lift(x: f64) -> Self;
    fn approx(self) -> f64;

    fn from_bigint(x: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(x.clone()))
    }

    /// Quotient correctly rounded to the working precision (up to a few
    /// units in the last place).
    fn quot(self, other: Self) -> Self {
        self / other
    }
}

impl Real for f64 {
    const LABEL: &'static str = "binary64";
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
    fn from_rational(x: &BigRational) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }
    fn lift(x: f64) -> Self {
        x
    }
    fn approx(self) -> f64 {
        self
    }
}

impl Real for TwoFloat {
    const LABEL: &'static str = "double-double";
    fn unit_roundoff() -> f64 {
        f64::EPSILON * f64::EPSILON / 4.0
    }
    fn from_rational(x: &BigRational) -> Self {
        let hi = x.to_f64().unwrap_or(f64::NAN);
        let lo = match BigRational::from_float(hi) {
            Some(h) => (x - h).to_f64().unwrap_or(0.0),
            None => 0.0,
        };
        TwoFloat::new_add(hi, lo)
    }
    fn lift(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn approx(self) -> f64 {
        self.hi() + self.lo()
    }
    fn quot(self, other: Self) -> Self {
        // The built-in quotient is only good to about 2^-55; one residual
        // correction restores double-double accuracy.
        let q = self / other;
        let r = self - q * other;
        q + TwoFloat::from(r.hi() / other.hi())
    }
}

/// Complex quotient using [`Real::quot`].
pub fn cdiv<T: Real>(a: Complex<T>, b: Complex<T>) -> Complex<T> {
    let d = b.norm_sqr();
    let n = a * b.conj();
    Complex::new(n.re.quot(d), n.im.quot(d))
}

pub type CMat<T> = Vec<Vec<Complex<T>>>;
pub type RMat<T> = Vec<Vec<T>>;

/// Horner evaluation of `p` and `p'` at a complex point.
fn eval_with_derivative<T: Real>(coeffs: &[T], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::new(T::zero(), T::zero());
    let mut dp = Complex::new(T::zero(), T::zero());
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + Complex::new(c, T::zero());
    }
    (p, dp)
}

/// All complex roots of a squarefree `p` in binary64 by the Aberth–Ehrlich
/// iteration.
pub fn aberth_roots(p: &IntPoly) -> Result<Vec<Complex<f64>>> {
    let n = p.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = p.leading_coeff().to_f64().unwrap_or(f64::NAN);
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / lc)
        .collect();
    let radius = coeffs[..n]
        .iter()
        .map(|c| c.abs())
        .fold(0.0f64, f64::max)
        .max(1e-3)
        .powf(1.0 / n as f64)
        .max(0.5);
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (pv, dpv) = eval_with_derivative(&coeffs, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dpv;
            let mut sum = Complex::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    sum += (z[i] - z[j]).inv();
                }
            }
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            return Ok(z);
        }
    }
    let worst = z
        .iter()
        .map(|&zi| eval_with_derivative(&coeffs, zi).0.norm())
        .fold(0.0, f64::max);
    if worst < 1e-8 {
        return Ok(z);
    }
    Err(Error::Numerical(format!(
        "Aberth iteration did not converge for {p} (residual {worst:e})"
    )))
}

/// Newton refinement of a simple root in the working precision.
pub fn polish_root<T: Real>(p: &IntPoly, z0: Complex<f64>) -> Complex<T> {
    let coeffs: Vec<T> = p.coeffs().iter().map(T::from_bigint).collect();
    let mut z = Complex::new(T::lift(z0.re), T::lift(z0.im));
    for _ in 0..8 {
        let (pv, dpv) = eval_with_derivative(&coeffs, z);
        if dpv.norm_sqr().is_zero() {
            break;
        }
        z = z - cdiv(pv, dpv);
    }
    z
}

/// The roots of a squarefree `p` with positive imaginary part, one per
/// conjugate pair, sorted by real then imaginary part. The number of real
/// roots is taken from the exact Sturm count, so no threshold decides which
/// roots are real.
pub fn upper_half_plane_roots<T: Real>(p: &IntPoly, real_count: usize) -> Result<Vec<Complex<T>>> {
    let n = p.deg();
    if !(n - real_count).is_multiple_of(2) {
        return Err(Error::Internal("odd number of non-real roots".into()));
    }
    let want = (n - real_count) / 2;
    let mut roots = aberth_roots(p)?;
    roots.sort_by(|a, b| b.im.total_cmp(&a.im));
    let mut chosen: Vec<Complex<T>> = roots[..want]
        .iter()
        .map(|&z| polish_root::<T>(p, z))
        .collect();
    if chosen.iter().any(|z| !(z.im > T::zero())) {
        return Err(Error::Numerical(format!("could not separate conjugate roots of {p}")));
    }
    chosen.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(chosen)
}

/// A real algebraic number rounded to the working precision.
pub fn real_value<T: Real>(x: &RealAlgebraic) -> T {
    let eps = crate::realroots::precision_from_bits(120);
    T::from_rational(&x.refine_to(&eps).interval().midpoint())
}

pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn cmat_from_int(m: &crate::linalg::IntMatrix) -> CMat<f64> {
    m.to_f64_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| Complex::new(x, 0.0)).collect())
        .collect()
}

pub fn cmat_from_int_t<T: Real>(m: &crate::linalg::IntMatrix) -> CMat<T> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| Complex::new(T::from_bigint(x), T::zero()))
                .collect()
        })
        .collect()
}

pub fn rmat_from_int<T: Real>(m: &crate::linalg::IntMatrix) -> RMat<T> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(T::from_bigint).collect())
        .collect()
}

pub fn cmat_mul<T: Real>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![czero::<T>(); m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            for j in 0..m {
                out[i][j] = out[i][j] + x * b[l][j];
            }
        }
    }
    out
}

pub fn rmat_mul<T: Real>(a: &RMat<T>, b: &RMat<T>) -> RMat<T> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![T::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            for j in 0..m {
                out[i][j] = out[i][j] + x * b[l][j];
            }
        }
    }
    out
}

pub fn cmat_identity<T: Real>(n: usize) -> CMat<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Complex::new(T::one(), T::zero()) } else { czero() })
                .collect()
        })
        .collect()
}

/// `p(a)` by Horner's scheme over complex matrices.
pub fn cmat_eval_poly<T: Real>(a: &CMat<T>, p: &IntPoly) -> CMat<T> {
    let n = a.len();
    let mut acc = vec![vec![czero::<T>(); n]; n];
    for c in p.coeffs().iter().rev() {
        acc = cmat_mul(&acc, a);
        let c = T::from_bigint(c);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i].re = row[i].re + c;
        }
    }
    acc
}

/// Largest absolute entry of `a - b`, with its position.
pub fn rmat_max_diff<T: Real>(a: &RMat<T>, b: &RMat<T>) -> (f64, (usize, usize)) {
    let mut worst = (0.0f64, (0, 0));
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (&x, &y)) in ra.iter().zip(rb).enumerate() {
            let d = (x - y).abs().approx();
            if d > worst.0 || d.is_nan() {
                worst = (d, (i, j));
            }
        }
    }
    worst
}

/// Determinant by LU with partial pivoting.
pub fn rmat_det<T: Real>(a: &RMat<T>) -> T {
    let n = a.len();
    let mut m = a.clone();
    let mut det = T::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        if m[p][k].is_zero() {
            return T::zero();
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det = det * m[k][k];
        for i in k + 1..n {
            let f = m[i][k].quot(m[k][k]);
            for j in k..n {
                let v = f * m[k][j];
                m[i][j] = m[i][j] - v;
            }
        }
    }
    det
}

/// Kernel of `a` (square, `n × n`) known to have dimension `dim`: `n - dim`
/// steps of complete-pivot elimination, a check that the trailing block is
/// negligible relative to the largest entry, then back-substitution. The
/// basis vectors restrict to the identity on the returned free index set.
pub fn kernel_complete_pivot<T: Real>(
    a: &CMat<T>,
    dim: usize,
    rank_tolerance: f64,
) -> Result<(Vec<usize>, CMat<T>)> {
    let n = a.len();
    let rank = n - dim;
    let mut m = a.clone();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm().approx())
        .fold(0.0f64, f64::max)
        .max(1.0);
    for k in 0..rank {
        let mut best = (k, k, -1.0f64);
        for i in k..n {
            for j in k..n {
                let v = m[i][j].norm().approx();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        let (pi, pj, pv) = best;
        if pv <= rank_tolerance * scale {
            return Err(Error::Numerical(format!(
                "numeric rank {k} below expected {rank} (pivot {pv:e})"
            )));
        }
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        col_perm.swap(k, pj);
        let piv = m[k][k];
        for i in k + 1..n {
            let f = cdiv(m[i][k], piv);
            if f.norm_sqr().is_zero() {
                continue;
            }
            for j in k..n {
                let v = f * m[k][j];
                m[i][j] = m[i][j] - v;
            }
        }
    }
    let residual = (rank..n)
        .flat_map(|i| (rank..n).map(move |j| (i, j)))
        .map(|(i, j)| m[i][j].norm().approx())
        .fold(0.0f64, f64::max);
    if residual > rank_tolerance * scale {
        return Err(Error::Numerical(format!(
            "kernel dimension below {dim}: trailing block {residual:e}"
        )));
    }
    let free: Vec<usize> = col_perm[rank..].to_vec();
    let mut basis = vec![vec![czero::<T>(); dim]; n];
    for (f, &col) in free.iter().enumerate() {
        // Solve the leading triangular system with x[col] = 1, other free = 0.
        let mut y = vec![czero::<T>(); rank];
        for i in (0..rank).rev() {
            let mut acc = -m[i][rank + f];
            for j in i + 1..rank {
                acc = acc - m[i][j] * y[j];
            }
            y[i] = cdiv(acc, m[i][i]);
        }
        for (i, yi) in y.into_iter().enumerate() {
            basis[col_perm[i]][f] = yi;
        }
        basis[col][f] = Complex::new(T::one(), T::zero());
    }
    Ok((free, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_finds_cyclotomic_roots() {
        let p = IntPoly::from_i64s(&[1, 1, 1, 1, 1]);
        let roots = aberth_roots(&p).unwrap();
        for z in roots {
            assert!((z.powu(5) - Complex::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn upper_roots_of_quartic() {
        let b1 = IntPoly::from_i64s(&[1, 3, 3, 3, 1]);
        let r: Vec<Complex<f64>> = upper_half_plane_roots(&b1, 2).unwrap();
        assert_eq!(r.len(), 1);
        // product of all roots is 1 and the real roots are ≈ -2.1479, -0.4655
        let prod = r[0].norm_sqr() * 2.153_721_375_541_768 * 0.4643126132081269;
        assert!((prod - 1.0).abs() < 1e-9, "{prod}");
    }

    #[test]
    fn double_double_polish_is_sharper() {
        let p = IntPoly::from_i64s(&[1, 0, 1]);
        let z: Complex<TwoFloat> = polish_root(&p, Complex::new(1e-9, 1.0 + 1e-9));
        let err = (z.re.abs() + (z.im - TwoFloat::from(1.0)).abs()).approx();
        assert!(err < 1e-28, "{err:e}");
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let t = TwoFloat::from_rational(&q);
        assert!(((t * TwoFloat::from(3.0)) - TwoFloat::from(1.0)).abs().approx() < 1e-31);
        let d = Real::quot(TwoFloat::from(1.0), TwoFloat::from(3.0));
        assert!((d - t).abs().approx() < 1e-31);
        let z = Complex::new(TwoFloat::from(1.0), TwoFloat::from(2.0));
        let w = Complex::new(TwoFloat::from(0.3), TwoFloat::from(0.7));
        assert!((cdiv(z, w) * w - z).norm().approx() < 1e-30);
    }

    #[test]
    fn kernel_of_jordan_square() {
        // (J - I)^2 = 0 for a 2x2 Jordan block; kernel is everything
        let j: CMat<f64> = vec![
            vec![Complex::new(2.0, 0.0), Complex::new(1.0, 0.0), czero()],
            vec![czero(), Complex::new(2.0, 0.0), czero()],
            vec![czero(), czero(), Complex::new(5.0, 0.0)],
        ];
        let mut shifted = j.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= Complex::new(2.0, 0.0);
        }
        let sq = cmat_mul(&shifted, &shifted);
        let (free, basis) = kernel_complete_pivot(&sq, 2, 1e-10).unwrap();
        assert_eq!(free.len(), 2);
        let img = cmat_mul(&sq, &basis);
        assert!(img.iter().flatten().all(|z| z.norm() < 1e-12));
        assert!(kernel_complete_pivot(&shifted, 2, 1e-10).is_err());
    }

    #[test]
    fn lu_determinant() {
        let a: RMat<f64> = vec![vec![2.0, 1.0], vec![7.0, 4.0]];
        assert!((rmat_det(&a) - 1.0).abs() < 1e-14);
    }
}
