//! Resultants, Bezout certificates and CRT lifts for the quartic factors used
//! throughout the crate.

use otforge::polyring::{crt_lift, resultant, resultant_sylvester, strongly_coprime, IntPoly};

fn main() -> otforge::Result<()> {
    let a = IntPoly::from_i64s(&[1, 0, 1]);
    let b1 = IntPoly::from_i64s(&[1, 3, 3, 3, 1]);
    let b2 = IntPoly::from_i64s(&[1, 4, 3, 4, 1]);

    for (name, p, q) in [("Res(B1, t^2+1)", &b1, &a), ("Res(B2, B1)", &b2, &b1), ("Res(B2, t^2+1)", &b2, &a)] {
        let r = resultant(p, q)?;
        assert_eq!(r, resultant_sylvester(p, q)?);
        println!("{name} = {r}");
    }

    let cert = strongly_coprime(&b1, &a)?.expect("B1 and t^2+1 are strongly coprime");
    println!("({}) * B1 + ({}) * (t^2+1) = 1  [verified: {}]", cert.u, cert.v, cert.verify());

    let twice = IntPoly::from_i64s(&[0, 2]);
    println!("t and 2t strongly coprime: {}", strongly_coprime(&IntPoly::t(), &twice)?.is_some());

    let d = crt_lift(&[(a.clone(), IntPoly::t()), (b1.clone(), IntPoly::one())])?;
    println!("D = t mod (t^2+1), D = 1 mod B1  =>  D = {d}");
    Ok(())
}
