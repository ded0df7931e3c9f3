//! Exact polynomial arithmetic over ℤ and ℚ.

mod crt;
mod intpoly;
pub mod modp;
pub mod primality;
mod ratpoly;
mod resultant;

pub use crt::crt_lift;
pub use intpoly::IntPoly;
pub use primality::is_prime;
pub use ratpoly::RatPoly;
pub use resultant::{
    resultant, resultant_sylvester, strongly_coprime, sylvester_matrix, BezoutCertificate,
};

pub(crate) use intpoly::sign_of;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Result};
use crate::linalg::IntMatrix;

/// Horner evaluation at an integer.
pub fn eval_int(p: &IntPoly, x: &BigInt) -> BigInt {
    p.eval(x)
}

/// Companion matrix `C_p`: ones on the subdiagonal and `-c_0, …, -c_{n-1}`
/// down the last column, so that `char_poly(C_p) = p`.
pub fn companion(p: &IntPoly) -> Result<IntMatrix> {
    if !p.is_monic() {
        return domain(format!("companion matrix of non-monic {p}"));
    }
    let n = p.deg();
    if n == 0 {
        return domain("companion matrix of a constant");
    }
    let mut c = IntMatrix::zeros(n, n);
    for i in 0..n {
        if i + 1 < n {
            c[(i + 1, i)] = BigInt::one();
        }
        c[(i, n - 1)] = -p.coeff(i);
    }
    Ok(c)
}

/// `B_p = C_pᵀ`.
pub fn companion_transpose(p: &IntPoly) -> Result<IntMatrix> {
    Ok(companion(p)?.transpose())
}

/// Primitive gcd over ℚ[t], positive leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a.to_ratpoly().gcd(&b.to_ratpoly()).to_primitive_intpoly()
}

pub fn is_squarefree(p: &IntPoly) -> bool {
    !p.is_zero() && gcd(p, &p.derivative()).is_constant()
}

/// Primitive squarefree part `p / gcd(p, p')`.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    if p.is_constant() {
        return p.primitive_part();
    }
    let g = p.to_ratpoly().gcd(&p.derivative().to_ratpoly());
    p.to_ratpoly().div_rem(&g).0.to_primitive_intpoly()
}

/// Yun's decomposition: `p = c · ∏ fᵢ^i` with squarefree, pairwise coprime,
/// primitive `fᵢ`. Returns the nonconstant `(fᵢ, i)` pairs, ascending in `i`.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.to_ratpoly();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.to_primitive_intpoly(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}
