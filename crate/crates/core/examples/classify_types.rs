//! Type certificates for companion matrices of `(t²+1)·B₁`, `(t²+1)·B₁·B₂`
//! and a rotation with no real eigenvalue.

use otforge::classify::{check_type_j, FactoredCharPoly};
use otforge::polyring::{companion, IntPoly};

fn main() -> otforge::Result<()> {
    let a = IntPoly::from_i64s(&[1, 0, 1]);
    let b1 = IntPoly::from_i64s(&[1, 3, 3, 3, 1]);
    let b2 = IntPoly::from_i64s(&[1, 4, 3, 4, 1]);

    let cases = [
        ("(t^2+1) B1", FactoredCharPoly { b0: a.clone(), factors: vec![b1.clone()] }),
        ("(t^2+1) B1 B2", FactoredCharPoly { b0: a.clone(), factors: vec![b1.clone(), b2] }),
        ("t^2+1", FactoredCharPoly { b0: a.clone(), factors: vec![] }),
    ];
    for (name, f) in cases {
        let m = companion(&f.product())?;
        let cert = check_type_j(&m, &f)?;
        cert.verify()?;
        println!("{name}: {:?} (J0 {}, J {}, J1 {}), s = {}, n = {}", cert.status, cert.j0, cert.j, cert.j1, cert.s, cert.n);
        for c in &cert.coprimality {
            println!("  Res(#{}, #{}) = {}", c.first, c.second, c.resultant);
        }
        for reason in &cert.failures {
            println!("  fails: {reason}");
        }
    }
    Ok(())
}
