//! Enumerate and assemble members of the feasible family.
//!
//! cargo run --example feasible_family

use projdist::family::{
    build_family_element, check_orthogonality_conditions, check_projection_conditions, solve_family,
    AssembledResiduals, FamilyElement,
};
use projdist::halmos::canonical_decomposition;
use projdist::matrices::operator_norm;
use projdist::oracle::{random_instance, InstanceSpec};
use projdist::Tolerances;

fn main() -> projdist::Result<()> {
    let tol = Tolerances::default();
    let spec = InstanceSpec::new([0, 1, 1, 0], vec![(0.25, 1), (0.7, 2)], 3);
    let inst = random_instance(&spec, &tol)?;
    let cf = canonical_decomposition(&inst.e, &inst.u, &tol)?;
    let space = solve_family(&cf);
    println!("{space}");

    let count = space.chi_pattern_count().expect("few points");
    for index in 0..count {
        let chi = space.chi_pattern(index);
        let fe = FamilyElement {
            omega: vec![0.4; chi.len()],
            chi,
        };
        let w = fe.wstar();
        let q = build_family_element(&cf, &fe)?;
        let r = AssembledResiduals::of(&q, &inst.u);
        println!(
            "chi {:?}: conditions {} / {}, feasible {}, |e - q| = {:.6}",
            fe.chi,
            check_projection_conditions(&w).holds,
            check_orthogonality_conditions(&w).holds,
            r.feasible(1e-10),
            operator_norm(&(&inst.e - &q))
        );
    }
    Ok(())
}
