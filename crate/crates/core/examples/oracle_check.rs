//! Compare the closed-form distance with a brute-force search over the
//! feasible family on random instances.
//!
//! cargo run --example oracle_check

use projdist::distance::full_report;
use projdist::halmos::canonical_decomposition;
use projdist::oracle::{oracle_distance, random_instance, InstanceSpec};
use projdist::Tolerances;

fn main() -> projdist::Result<()> {
    let tol = Tolerances::default();
    for seed in 0..8 {
        let spec = InstanceSpec::random_case_two(seed, 12, 3);
        let inst = random_instance(&spec, &tol)?;
        let cf = canonical_decomposition(&inst.e, &inst.u, &tol)?;
        let report = full_report(&inst.e, &inst.u, &tol)?;
        let oracle = oracle_distance(&cf, 64)?;
        println!(
            "seed {seed}: dim {:>2}, {} points, formula {:.9}, oracle {:.9}, patterns {}, argmin chi {:?}",
            inst.e.rows(),
            cf.distinct_values().len(),
            report.d,
            oracle.min_value,
            oracle.patterns,
            oracle.argmin.chi
        );
    }
    Ok(())
}
