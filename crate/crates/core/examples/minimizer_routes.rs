//! The nearest projection computed in the canonical basis and directly from
//! `e` and `u`.
//!
//! cargo run --example minimizer_routes

use projdist::distance::{distance_formula, eue_norm, minimizer_canonical, minimizer_cstar};
use projdist::family::AssembledResiduals;
use projdist::halmos::canonical_decomposition;
use projdist::matrices::operator_norm;
use projdist::oracle::{random_instance, InstanceSpec};
use projdist::Tolerances;

fn main() -> projdist::Result<()> {
    let tol = Tolerances::default();
    let spec = InstanceSpec::new([0, 2, 1, 0], vec![(0.3, 2), (0.6, 3)], 7);
    let inst = random_instance(&spec, &tol)?;
    let cf = canonical_decomposition(&inst.e, &inst.u, &tol)?;

    let b = eue_norm(&inst.e, &inst.u, Some(&cf), &tol)?;
    let d = distance_formula(b, cf.is_case_one())?;
    let q_canonical = minimizer_canonical(&cf)?;
    let q_direct = minimizer_cstar(&inst.e, &inst.u, &tol)?;

    println!("b = {b:.9}, d = {d:.9}");
    for (name, q) in [("canonical", &q_canonical), ("direct", &q_direct)] {
        let r = AssembledResiduals::of(q, &inst.u);
        println!(
            "{name:>9}: |e - q| = {:.9}, |q^2 - q| = {:.1e}, |quq| = {:.1e}",
            operator_norm(&(&inst.e - q)),
            r.idempotence,
            r.orthogonality
        );
    }
    println!("gap between routes: {:.1e}", operator_norm(&(&q_canonical - &q_direct)));
    Ok(())
}
