//! Full distance report for a 2×2 pair and for a pair in Case 1.
//!
//! cargo run --example distance_report

use projdist::distance::full_report;
use projdist::{ComplexMatrix, Tolerances};

fn main() -> projdist::Result<()> {
    let tol = Tolerances::default();
    let u = ComplexMatrix::diag_real(&[1.0, -1.0]);
    for t in [0.5f64, 0.8, 0.95] {
        let s = (t * (1.0 - t)).sqrt();
        let e = ComplexMatrix::from_real_rows(&[&[t, s], &[s, 1.0 - t]]);
        let r = full_report(&e, &u, &tol)?;
        println!("t = {t}: b = {:.6}, d = {:.6}, residual {:.1e}", r.b, r.d, r.residual_distance);
    }

    let e = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]);
    let u = ComplexMatrix::diag_real(&[1.0, 1.0, -1.0]);
    let r = full_report(&e, &u, &tol)?;
    println!("diagonal pair: case 1 = {}, b = {}, d = {}", r.case_one, r.b, r.d);
    Ok(())
}
