//! Certified real-root isolation and sign evaluation at real algebraic numbers.

use otforge::polyring::IntPoly;
use otforge::realroots::{isolate_real_roots, log_abs_enclosure, precision_from_bits, root_counts, sign_at};

fn main() -> otforge::Result<()> {
    let polys = [
        ("t^2+1", IntPoly::from_i64s(&[1, 0, 1])),
        ("B1", IntPoly::from_i64s(&[1, 3, 3, 3, 1])),
        ("B2", IntPoly::from_i64s(&[1, 4, 3, 4, 1])),
        ("(t-1)^2 (t+2)", IntPoly::from_i64s(&[2, -3, 0, 1])),
    ];
    for (name, p) in &polys {
        let c = root_counts(p);
        println!(
            "{name}: {} distinct real, {} imaginary (with multiplicity), real roots simple: {}",
            c.distinct_real, c.imaginary_with_multiplicity, c.real_roots_simple
        );
        for r in isolate_real_roots(p) {
            let i = r.interval();
            let fine = r.refine_to(&precision_from_bits(60));
            println!("  isolated in [{}, {}], refined ~ {:.15}", i.lo, i.hi, fine.approx());
        }
    }

    // t is a unit mod B1; its logs at the two real roots are certified nonzero.
    let b1 = &polys[1].1;
    let eps = precision_from_bits(64);
    for r in isolate_real_roots(b1) {
        let sign = sign_at(&r, &IntPoly::from_i64s(&[0, 1]));
        let log = log_abs_enclosure(&r, &IntPoly::t(), &eps)?;
        let (lo, hi) = log.to_f64_pair();
        println!("at {:.6}: sign(t) = {sign}, log|t| in [{lo:.17}, {hi:.17}]", r.refine_to(&eps).approx());
    }
    Ok(())
}
