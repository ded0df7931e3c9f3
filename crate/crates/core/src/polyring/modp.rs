//! Just enough arithmetic in F_p[t] (small p) to prove irreducibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::polyring::IntPoly;

/// Polynomial over F_p, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_intpoly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|x| x.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect();
        Self::new(p, c)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        super::primality::pow_mod_u64(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> ModPoly {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.inv(lc);
                ModPoly::new(self.p, self.c.iter().map(|&x| x * inv % self.p).collect())
            }
        }
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let n = self.c.len().max(other.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = other.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        ModPoly::new(self.p, c)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::new(self.p, Vec::new());
        }
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        ModPoly::new(self.p, out)
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        assert!(!d.is_zero(), "division by zero in F_p[t]");
        let dd = d.c.len() - 1;
        let inv = self.inv(*d.c.last().expect("nonzero"));
        let mut r = self.c.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let f = r[top] * inv % self.p;
            if f != 0 {
                for (i, &dc) in d.c.iter().enumerate() {
                    let k = top - dd + i;
                    r[k] = (r[k] + self.p - f * dc % self.p) % self.p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        ModPoly::new(self.p, r)
    }

    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^(p^k) mod m` by repeated Frobenius powering.
    fn frobenius_pow(&self, k: usize, m: &ModPoly) -> ModPoly {
        let mut x = self.rem(m);
        for _ in 0..k {
            x = x.pow_mod(self.p, m);
        }
        x
    }

    fn pow_mod(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic `f` of degree `n` over F_p is irreducible iff
/// `t^(p^n) ≡ t (mod f)` and `gcd(t^(p^(n/q)) - t, f) = 1` for every prime
/// `q | n`.
pub fn is_irreducible_mod_p(f: &ModPoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let t = ModPoly::new(f.p, vec![0, 1]);
    if t.frobenius_pow(n, &f) != t.rem(&f) {
        return false;
    }
    prime_divisors(n).into_iter().all(|q| {
        let h = t.frobenius_pow(n / q, &f).sub(&t);
        f.gcd(&h).degree() == Some(0)
    })
}

/// Primes up to 97.
pub const PRIMES_TO_97: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: f has a monic factor of degree ≤ n/2 over F_p, by enumerating
    /// every monic candidate.
    fn has_small_factor(f: &ModPoly) -> bool {
        let n = f.degree().unwrap();
        let p = f.p;
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut x = code;
                for _ in 0..d {
                    c.push(x % p);
                    x /= p;
                }
                c.push(1);
                if f.rem(&ModPoly::new(p, c)).is_zero() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn quartic_matches_exhaustive_search() {
        let b1 = IntPoly::from_i64s(&[1, 3, 3, 3, 1]);
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = ModPoly::from_intpoly(&b1, p);
            assert_eq!(is_irreducible_mod_p(&f), !has_small_factor(&f), "p = {p}");
        }
        assert!(is_irreducible_mod_p(&ModPoly::from_intpoly(&b1, 7)));
    }

    #[test]
    fn exhaustive_agreement_degree_up_to_four_mod_three() {
        let p = 3u64;
        for deg in 2..=4usize {
            for code in 0..p.pow(deg as u32) {
                let mut c = Vec::new();
                let mut x = code;
                for _ in 0..deg {
                    c.push(x % p);
                    x /= p;
                }
                c.push(1);
                let f = ModPoly::new(p, c);
                assert_eq!(is_irreducible_mod_p(&f), !has_small_factor(&f), "{f:?}");
            }
        }
    }
}
