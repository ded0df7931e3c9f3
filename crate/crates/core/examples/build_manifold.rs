//! Full manifold data for the 6×6 example: eigenbasis, lattice invariance
//! residuals at two float widths, twisted diagonal action and π₁.

use otforge::classify::FactoredCharPoly;
use otforge::config::{Budgets, FloatPrecision};
use otforge::manifold::{build_manifold, numeric_data};
use otforge::polyring::{companion, IntPoly};
use otforge::units::{build_dirichlet_family, Mode};

fn main() -> otforge::Result<()> {
    let f = FactoredCharPoly {
        b0: IntPoly::from_i64s(&[1, 0, 1]),
        factors: vec![IntPoly::from_i64s(&[1, 3, 3, 3, 1])],
    };
    let m = companion(&f.product())?;
    let budgets = Budgets::default();
    let family = build_dirichlet_family(&m, &f, &Mode::Primary, &budgets)?;
    let data = build_manifold(&m, &f, &family, &budgets)?;

    println!("s = {}, n = {}, complex dimension {}", data.s, data.n, data.complex_dimension);
    println!("nondegeneracy: {:?}", data.nondegeneracy.is_certified());
    println!("det Q = {:.6e}, Hadamard ratio {:.3e}", data.numeric.det_q, data.numeric.hadamard_ratio);
    for (i, mono) in data.monodromies.iter().enumerate() {
        println!("monodromy {}: det = {}", i + 1, mono.det());
    }

    for precision in [FloatPrecision::Double, FloatPrecision::DoubleDouble] {
        let b = Budgets { float_precision: precision, ..budgets.clone() };
        let block = numeric_data(&m, &f, &family.polys, &b)?;
        let r = &block.residuals;
        let worst = r.family.iter().map(|x| x.value).fold(r.g0.value, f64::max);
        println!("{}: worst residual {worst:.3e} (g0 {:.3e})", block.precision, r.g0.value);
    }

    println!("pi_1 = {} with {} relations, e.g.", data.group.description, data.group.relations.len());
    for rel in data.group.relations.iter().rev().take(3) {
        println!("  {rel}");
    }
    println!("fibration: {} -> {}", data.fibration.fiber, data.fibration.base);
    println!("checks passed: {}", data.certificates.join(", "));
    Ok(())
}
