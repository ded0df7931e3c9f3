//! Shared fixtures, strategies and property bodies for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use otforge::classify::char_poly;
use otforge::invariants::is_diagonalizable;
use otforge::linalg::IntMatrix;
use otforge::polyring::{companion, crt_lift, resultant, resultant_sylvester, strongly_coprime, IntPoly};
use otforge::realroots::{cauchy_bound, count_real_roots, isolate_real_roots, sign_at};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn data_str(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

pub fn schema(kind: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{kind}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

pub fn a() -> IntPoly {
    p(&[1, 0, 1])
}

pub fn b1() -> IntPoly {
    p(&[1, 3, 3, 3, 1])
}

pub fn b2() -> IntPoly {
    p(&[1, 4, 3, 4, 1])
}

pub fn b1_deg12() -> IntPoly {
    p(&[1, 0, 0, 0, 8, 20, 19, 20, 8, 0, 0, 0, 1])
}

/// `[[C, I], [0, C]]` for `C = companion(q)`.
pub fn jordan_pair(q: &IntPoly) -> IntMatrix {
    let c = companion(q).unwrap();
    let d = c.rows();
    let mut out = IntMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] = c[(i, j)].clone();
            out[(i + d, j + d)] = c[(i, j)].clone();
        }
        out[(i, i + d)] = BigInt::one();
    }
    out
}

/// `[[C_A, I], [0, C_A]] ⊕ C_{B₁}` with `A = t²+1`.
pub fn jordan_example() -> IntMatrix {
    IntMatrix::block_diag(&[jordan_pair(&a()), companion(&b1()).unwrap()])
}

/// Degree in `[lo, hi]` with nonzero leading coefficient.
pub fn poly_strategy(lo: usize, hi: usize, c: i64) -> impl Strategy<Value = IntPoly> {
    (lo..=hi).prop_flat_map(move |d| {
        (prop::collection::vec(-c..=c, d), (1..=c).prop_flat_map(|x| prop_oneof![Just(x), Just(-x)])).prop_map(
            |(mut v, lead)| {
                v.push(lead);
                IntPoly::from_i64s(&v)
            },
        )
    })
}

pub fn monic_strategy(lo: usize, hi: usize, c: i64) -> impl Strategy<Value = IntPoly> {
    (lo..=hi).prop_flat_map(move |d| {
        prop::collection::vec(-c..=c, d).prop_map(|mut v| {
            v.push(1);
            IntPoly::from_i64s(&v)
        })
    })
}

pub fn resultant_multiplicative((f, g, h): (IntPoly, IntPoly, IntPoly)) -> Result<(), TestCaseError> {
    let fg = &f * &g;
    let lhs = resultant(&fg, &h).unwrap();
    let rhs = resultant(&f, &h).unwrap() * resultant(&g, &h).unwrap();
    prop_assert_eq!(&lhs, &rhs, "Res(fg, h) for f = {}, g = {}, h = {}", f, g, h);
    prop_assert_eq!(lhs, resultant_sylvester(&fg, &h).unwrap());
    Ok(())
}

pub fn resultant_strategy() -> impl Strategy<Value = (IntPoly, IntPoly, IntPoly)> {
    (poly_strategy(1, 3, 4), poly_strategy(1, 3, 4), poly_strategy(1, 3, 4))
}

/// `(m, u)` gives the strongly coprime pair `(m, 1 + m·u)`; `(x, y)` an
/// arbitrary pair.
pub fn bezout_strategy() -> impl Strategy<Value = (IntPoly, IntPoly, IntPoly, IntPoly)> {
    (monic_strategy(1, 4, 4), poly_strategy(1, 3, 4), poly_strategy(1, 3, 3), poly_strategy(1, 3, 3))
}

pub fn bezout_certificates((m, u, x, y): (IntPoly, IntPoly, IntPoly, IntPoly)) -> Result<(), TestCaseError> {
    let coprime = &(&m * &u) + &IntPoly::one();
    let cert = strongly_coprime(&m, &coprime).unwrap();
    prop_assert!(cert.is_some(), "{} and {} must be strongly coprime", m, coprime);
    let cert = cert.unwrap();
    prop_assert!(cert.verify());
    prop_assert!((&(&cert.u * &m) + &(&cert.v * &coprime)).is_one());

    let r = resultant(&x, &y).unwrap();
    match strongly_coprime(&x, &y).unwrap() {
        Some(c) => {
            prop_assert!(r.abs().is_one());
            prop_assert!((&(&c.u * &x) + &(&c.v * &y)).is_one());
        }
        None => prop_assert!(!r.abs().is_one()),
    }
    Ok(())
}

/// Moduli `m` and `1 + m·u` (monic since `u` is) with arbitrary residues.
pub fn crt_strategy() -> impl Strategy<Value = (IntPoly, IntPoly, IntPoly, IntPoly)> {
    (monic_strategy(1, 3, 3), monic_strategy(0, 2, 3), poly_strategy(0, 5, 5), poly_strategy(0, 5, 5))
}

pub fn crt_remainders((m, u, r1, r2): (IntPoly, IntPoly, IntPoly, IntPoly)) -> Result<(), TestCaseError> {
    let m2 = &(&m * &u) + &IntPoly::one();
    let d = crt_lift(&[(m.clone(), r1.clone()), (m2.clone(), r2.clone())]).unwrap();
    let total = m.degree().unwrap() + m2.degree().unwrap();
    prop_assert!(d.degree().is_none_or(|k| k < total));
    prop_assert_eq!((&d - &r1).rem_monic(&m).unwrap(), IntPoly::zero());
    prop_assert_eq!((&d - &r2).rem_monic(&m2).unwrap(), IntPoly::zero());
    Ok(())
}

/// Products of distinct `(2t − kᵢ)` with an optional `t² + c` factor: real
/// roots sit at half-integers, at least 1/2 apart.
pub fn sturm_strategy() -> impl Strategy<Value = (Vec<i64>, Option<i64>, i64)> {
    (
        prop::collection::btree_set(-12i64..=12, 0..6).prop_map(|s| s.into_iter().collect::<Vec<_>>()),
        prop::option::of(1i64..=5),
        prop_oneof![Just(1i64), Just(-1), Just(3)],
    )
}

fn sturm_poly(roots: &[i64], quad: Option<i64>, scale: i64) -> IntPoly {
    let mut f = p(&[scale]);
    for &k in roots {
        f = &f * &p(&[-k, 2]);
    }
    if let Some(c) = quad {
        f = &f * &p(&[c, 0, 1]);
    }
    f
}

pub fn sturm_vs_grid((roots, quad, scale): (Vec<i64>, Option<i64>, i64)) -> Result<(), TestCaseError> {
    let f = sturm_poly(&roots, quad, scale);
    // Grid of step 1/8 offset by 1/16 never hits a half-integer root.
    let bound = cauchy_bound(&f) + BigInt::one();
    let steps: i64 = (bound * BigInt::from(16)).try_into().unwrap();
    let mut changes = 0;
    let mut prev: Option<i8> = None;
    for i in -steps..=steps {
        let x = BigRational::new(BigInt::from(2 * i + 1), BigInt::from(16));
        let s = f.sign_at(&x);
        prop_assert!(s != 0);
        if prev.is_some_and(|q| q != s) {
            changes += 1;
        }
        prev = Some(s);
    }
    prop_assert_eq!(count_real_roots(&f), changes);
    prop_assert_eq!(count_real_roots(&f), roots.len());
    let isolated = isolate_real_roots(&f);
    prop_assert_eq!(isolated.len(), roots.len());
    for (r, &k) in isolated.iter().zip(&roots) {
        prop_assert!(r.interval().contains(&BigRational::new(BigInt::from(k), BigInt::from(2))));
    }
    Ok(())
}

pub fn det_positivity_strategy() -> impl Strategy<Value = (Vec<i64>, IntPoly)> {
    (prop::collection::vec(-3i64..=3, 9), poly_strategy(0, 3, 3))
}

/// Returns whether the hypothesis `P(α) ≥ 0` held, so callers can check the
/// corpus is not vacuous.
pub fn det_positivity((entries, q): (Vec<i64>, IntPoly)) -> Result<bool, TestCaseError> {
    let rows: Vec<&[i64]> = entries.chunks(3).collect();
    let m = IntMatrix::from_i64_rows(&rows);
    let hypothesis = isolate_real_roots(&char_poly(&m).unwrap()).iter().all(|x| sign_at(x, &q) >= 0);
    if hypothesis {
        let d = m.eval_poly(&q).det();
        prop_assert!(!d.is_negative(), "det P(M) = {} < 0 for M = {:?}, P = {}", d, m, q);
    }
    Ok(hypothesis)
}

const BLOCKS: [&[i64]; 6] = [&[1, 0, 1], &[1, 1, 1], &[-2, 1], &[-2, 0, 1], &[1, 3, 3, 3, 1], &[3, 1]];

/// Block choices, whether to include a Jordan pair, and a unimodular
/// conjugator given as elementary operations `(i, j, k)`: row i += k·row j.
pub fn jordan_strategy() -> impl Strategy<Value = (Vec<usize>, Option<usize>, Vec<(usize, usize, i64)>)> {
    (
        prop::collection::vec(0..BLOCKS.len(), 1..3),
        prop::option::of(0..4usize),
        prop::collection::vec((0..16usize, 0..16usize, -2i64..=2), 0..8),
    )
}

pub fn diagonalizable_vs_jordan(
    (blocks, jordan, ops): (Vec<usize>, Option<usize>, Vec<(usize, usize, i64)>),
) -> Result<(), TestCaseError> {
    let mut parts: Vec<IntMatrix> = blocks.iter().map(|&b| companion(&p(BLOCKS[b])).unwrap()).collect();
    if let Some(j) = jordan {
        parts.push(jordan_pair(&p(BLOCKS[j])));
    }
    let m = IntMatrix::block_diag(&parts);
    let n = m.rows();
    let mut u = IntMatrix::identity(n);
    for (i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for c in 0..n {
            let add = &u[(j, c)] * BigInt::from(k);
            u[(i, c)] += add;
        }
    }
    let conj = &(&u * &m) * &u.inverse().unwrap();
    prop_assert_eq!(char_poly(&conj).unwrap(), char_poly(&m).unwrap());
    prop_assert_eq!(is_diagonalizable(&conj).unwrap(), jordan.is_none());
    Ok(())
}

/// CLI invocations whose output must not depend on the thread count.
pub fn determinism_cases() -> Vec<Vec<String>> {
    let mut cases = Vec::new();
    for ex in ["j1", "j", "jordan", "inoue"] {
        let m = data_str(&format!("{ex}_matrix.json"));
        let f = data_str(&format!("{ex}_factorization.json"));
        cases.push(vec!["classify".into(), m.clone(), f.clone()]);
        cases.push(vec!["dirichlet".into(), m, f]);
    }
    cases.push(vec!["ot-compare".into(), data_str("xi_poly.json"), data_str("xi_units.json")]);
    cases
}

pub fn args(rest: &[String]) -> Vec<String> {
    std::iter::once("otforge".to_string()).chain(rest.iter().cloned()).collect()
}

/// Runs the dirichlet → build → invariants chain and returns the three
/// stdout documents.
pub fn pipeline(example: &str, threads: Option<usize>, dir: &std::path::Path) -> Vec<String> {
    let m = data_str(&format!("{example}_matrix.json"));
    let f = data_str(&format!("{example}_factorization.json"));
    let fam = dir.join(format!("{example}-family.json"));
    let man = dir.join(format!("{example}-manifold.json"));
    let run = |a: Vec<String>| {
        let out = otforge::cli::run_with(args(&a), threads);
        assert_eq!(out.code, 0, "{a:?}: {}", out.stderr);
        out.stdout
    };
    let family = run(vec!["dirichlet".into(), m.clone(), f.clone()]);
    std::fs::write(&fam, &family).unwrap();
    let manifold = run(vec!["build".into(), m, f, fam.to_string_lossy().into()]);
    std::fs::write(&man, &manifold).unwrap();
    let report = run(vec!["invariants".into(), man.to_string_lossy().into()]);
    vec![family, manifold, report]
}

