//! The quartic field generated by `ξ = t²` in `ℤ[t]/B₁`: its OT action and
//! the exact identification with the matrix construction for `B_P`.

use otforge::classify::char_poly;
use otforge::config::Budgets;
use otforge::otbridge::compare_with_tm;
use otforge::polyring::{companion, IntPoly};
use otforge::units::unit_log_basis;

fn main() -> otforge::Result<()> {
    let b1 = IntPoly::from_i64s(&[1, 3, 3, 3, 1]);
    let c = companion(&b1)?;
    let p = char_poly(&(&c * &c))?;
    println!("P = minimal polynomial of t^2 mod B1 = {p}");

    let budgets = Budgets::default();
    let units = unit_log_basis(&p, 2, 4, budgets.precision_bits)?;
    let polys: Vec<IntPoly> = units.iter().map(|u| u.elem.rep().clone()).collect();
    println!("positive units with independent logs: {:?}", polys.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("as JSON: {}", serde_json::to_string(&polys).unwrap());

    let cert = compare_with_tm(&p, &polys, &budgets)?;
    println!("s = {}, n = {}", cert.action.s, cert.action.n);
    for check in &cert.checks {
        println!("  [{}] {}", if check.holds { "ok" } else { "FAIL" }, check.name);
    }
    for (i, (mult, mono)) in cert.action.multiplication_matrices.iter().zip(&cert.monodromies).enumerate() {
        println!("D{}: multiplication matrix == monodromy D{}(B_P^T): {}", i + 1, i + 1, mult == mono);
    }
    Ok(())
}
