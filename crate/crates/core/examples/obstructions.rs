//! Specialness, b₁ and the LCK / OT obstruction verdicts, for a diagonalizable
//! case and for a matrix with a non-trivial Jordan block over `t²+1`.

use otforge::classify::FactoredCharPoly;
use otforge::config::Budgets;
use otforge::invariants::{is_diagonalizable, obstruction_report};
use otforge::linalg::IntMatrix;
use otforge::polyring::{companion, IntPoly};
use otforge::units::{build_dirichlet_family, Mode};

/// `[[C_A, I], [0, C_A]] ⊕ C_B` for `A = t²+1`.
fn jordan_example(b: &IntPoly) -> otforge::Result<IntMatrix> {
    let ca = companion(&IntPoly::from_i64s(&[1, 0, 1]))?;
    let mut rows = vec![vec![0i64; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let x: i64 = ca[(i, j)].clone().try_into().unwrap();
            rows[i][j] = x;
            rows[i + 2][j + 2] = x;
        }
        rows[i][i + 2] = 1;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(IntMatrix::block_diag(&[IntMatrix::from_i64_rows(&refs), companion(b)?]))
}

fn main() -> otforge::Result<()> {
    let a = IntPoly::from_i64s(&[1, 0, 1]);
    let b1 = IntPoly::from_i64s(&[1, 3, 3, 3, 1]);
    let budgets = Budgets::default();

    let cases = [
        ("companion((t^2+1) B1)", companion(&(&a * &b1))?, FactoredCharPoly { b0: a.clone(), factors: vec![b1.clone()] }),
        ("Jordan block over t^2+1 (+) companion(B1)", jordan_example(&b1)?, FactoredCharPoly { b0: a.pow(2), factors: vec![b1.clone()] }),
    ];
    for (name, m, f) in cases {
        println!("{name}: M diagonalizable = {}", is_diagonalizable(&m)?);
        let family = build_dirichlet_family(&m, &f, &Mode::Primary, &budgets)?;
        let report = obstruction_report(&m, &f, &family, &budgets)?;
        if let Some(w) = &report.special {
            println!("  special witness n = {:?}, det(N - I) = {}", w.exponents, w.det_n_minus_i);
        }
        println!("  b1 = {:?}, non-diagonalizable D_i(M): {:?}", report.b1, report.nondiag_indices);
        println!("  LCK: {:?}, OT: {:?}", report.verdict_lck, report.verdict_ot);
    }
    Ok(())
}
