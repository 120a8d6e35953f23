//! Tabulate the exact distance against the `½b + 4b²` estimate.
//!
//! cargo run --example bound_curve

use projdist::cli::cmd_curve;
use projdist::distance::walters_useful_limit;

fn main() -> projdist::Result<()> {
    print!("{}", cmd_curve(0.0, 0.5, 11)?);
    println!("estimate reaches 1 at b = {:.6}", walters_useful_limit());
    Ok(())
}
