//! Primary and custom Dirichlet families for the 6×6 companion matrix of
//! `(t²+1)·B₁`, plus the axiom checker on a family that must be rejected.

use otforge::classify::FactoredCharPoly;
use otforge::config::Budgets;
use otforge::polyring::{companion, IntPoly};
use otforge::units::{build_dirichlet_family, check_dirichlet, log_matrix_f64, unit_log_basis, Mode};

fn main() -> otforge::Result<()> {
    let a = IntPoly::from_i64s(&[1, 0, 1]);
    let b1 = IntPoly::from_i64s(&[1, 3, 3, 3, 1]);
    let f = FactoredCharPoly { b0: a, factors: vec![b1.clone()] };
    let m = companion(&f.product())?;
    let budgets = Budgets::default();

    let units = unit_log_basis(&b1, 2, budgets.coeff_bound, budgets.precision_bits)?;
    println!("units of Z[t]/B1 with independent logs:");
    for u in &units {
        println!("  {}  signs {:?}", u.elem.rep(), u.signs);
    }

    let family = build_dirichlet_family(&m, &f, &Mode::Primary, &budgets)?;
    println!("primary family (residue t mod t^2+1):");
    for (d, det) in family.polys.iter().zip(&family.certificate.dets) {
        println!("  D = {d}   det D(M) = {det}");
    }
    println!("log matrix ~ {:?}", log_matrix_f64(&family.certificate));
    let (lo, hi) = family.certificate.log_det.to_f64_pair();
    println!("log det in [{lo:.12}, {hi:.12}] at {} bits", family.certificate.precision_bits);

    let custom = build_dirichlet_family(&m, &f, &Mode::Custom(vec![IntPoly::from_i64s(&[-1])]), &budgets)?;
    println!("custom family (residue -1): {:?}", custom.polys.iter().map(ToString::to_string).collect::<Vec<_>>());

    let negated: Vec<IntPoly> = family.polys.iter().map(|p| -p).collect();
    println!("negated primary family: {:?}", check_dirichlet(&m, &negated, budgets.precision_bits)?);
    Ok(())
}
