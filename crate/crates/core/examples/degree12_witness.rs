//! Irreducibility of a degree-12 polynomial through the Filaseta-Gross
//! criterion: nonnegative coefficients, degree at most 30, prime value at 10.

use num_bigint::BigInt;
use otforge::classify::{check_type_j0, irreducibility_witness, IrreducibilityWitness};
use otforge::polyring::{is_prime, resultant, IntPoly};
use otforge::realroots::root_counts;

fn main() -> otforge::Result<()> {
    let b1 = IntPoly::from_i64s(&[1, 0, 0, 0, 8, 20, 19, 20, 8, 0, 0, 0, 1]);
    let at_10 = b1.eval(&BigInt::from(10));
    println!("B1 = {b1}");
    println!("B1(-1) = {}", b1.eval(&BigInt::from(-1)));
    println!("B1(10) = {at_10}, prime: {}", is_prime(&at_10));

    let w = irreducibility_witness(&b1)?;
    assert!(matches!(w, IrreducibilityWitness::FilasetaGross { .. }));
    println!("witness: {w:?}, re-verified: {}", w.verify(&b1));

    let c = root_counts(&b1);
    println!("{} real roots, {} imaginary", c.distinct_real, c.imaginary_with_multiplicity);

    let a = IntPoly::from_i64s(&[1, 0, 1]);
    for q in 1..=3u32 {
        let b0 = a.pow(q);
        println!("Res(B1, (t^2+1)^{q}) = {}", resultant(&b1, &b0)?);
    }
    let cert = check_type_j0(&(&a * &b1));
    println!("(t^2+1) B1 of type J0: {}", cert.j0);
    Ok(())
}
