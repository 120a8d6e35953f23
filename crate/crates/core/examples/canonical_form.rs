//! Decompose a generated pair and print its canonical block structure.
//!
//! cargo run --example canonical_form

use projdist::halmos::{canonical_blocks, canonical_decomposition, reconstruct};
use projdist::matrices::operator_norm;
use projdist::oracle::{random_instance, InstanceSpec};
use projdist::Tolerances;

fn main() -> projdist::Result<()> {
    let tol = Tolerances::default();
    let spec = InstanceSpec::new([1, 1, 0, 1], vec![(0.2, 2), (0.75, 1)], 42);
    let inst = random_instance(&spec, &tol)?;

    let cf = canonical_decomposition(&inst.e, &inst.u, &tol)?;
    let d = cf.dims();
    println!("ambient dimension {}", cf.ambient_dim());
    println!("m00={} m01={} m10={} m11={} m={}", d.m00, d.m01, d.m10, d.m11, d.m);
    for datum in &cf.h_spectrum {
        println!("H eigenvalue {:.6} with multiplicity {}", datum.value, datum.multiplicity);
    }
    println!("case 1 (range of e meets an eigenspace of u): {}", cf.is_case_one());

    let w = cf.unitary();
    let e_c = &(&w.adjoint() * &inst.e) * &w;
    let (e_model, _) = canonical_blocks(&cf);
    println!("e in the canonical basis, max deviation from the block model: {:.1e}", (&e_c - &e_model).max_abs());

    let (e, u) = reconstruct(&cf);
    println!(
        "round trip: |e - e'| = {:.1e}, |u - u'| = {:.1e}",
        operator_norm(&(&e - &inst.e)),
        operator_norm(&(&u - &inst.u))
    );
    Ok(())
}
