//! Polar angles where axially symmetric states vanish.
//!
//! cargo run --example nodal_cones

use algebraic_harmonics::su2::{self, AngularBasis};
use algebraic_harmonics::wavefield;

fn main() -> algebraic_harmonics::Result<()> {
    for l in 1..=5 {
        let state = su2::state(AngularBasis::new(l)?, 0)?;
        let cones: Vec<String> = wavefield::nodal_cones(&state)?
            .iter()
            .map(|c| format!("{:.4}", c.to_degrees()))
            .collect();
        println!("|{l},0> vanishes at theta = {} deg", cones.join(", "));
    }
    Ok(())
}
