//! For `e = diag(1,0,0)` and `u = diag(1,1,−1)` every feasible projection
//! built from `e` and `u` is at distance 1, while a projection outside that
//! algebra gets to `1/√2`.
//!
//! cargo run --example projections_outside_algebra

use std::f64::consts::TAU;

use projdist::distance::full_report;
use projdist::oracle::general_family_3x3;
use projdist::{Complex64, ComplexMatrix, Tolerances};

fn main() -> projdist::Result<()> {
    let e = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]);
    let u = ComplexMatrix::diag_real(&[1.0, 1.0, -1.0]);
    let r = full_report(&e, &u, &Tolerances::default())?;
    println!("inside the algebra: case 1 = {}, d = {}", r.case_one, r.d);

    let steps = 8;
    for i in 0..=steps {
        let alpha = 0.5 * std::f64::consts::PI * i as f64 / steps as f64;
        let x = Complex64::from_polar(alpha.cos(), 0.0);
        let y = Complex64::from_polar(alpha.sin(), TAU / 3.0);
        let (_, dist) = general_family_3x3(x, y)?;
        println!("|x| = {:.4}, |y| = {:.4}: |e - q| = {dist:.6}", x.norm(), y.norm());
    }
    println!("minimum 1/sqrt(2) = {:.6}", 0.5f64.sqrt());
    Ok(())
}
