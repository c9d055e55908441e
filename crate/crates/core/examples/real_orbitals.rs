//! The real basis: named p and d states and the generic cosine/sine labels.
//!
//! cargo run --example real_orbitals

use algebraic_harmonics::realbasis::{named_state, real_transform, valid_names};
use algebraic_harmonics::su2::AngularBasis;

fn main() -> algebraic_harmonics::Result<()> {
    for l in 0..=2 {
        for name in real_transform(AngularBasis::new(l)?).names() {
            let state = named_state(l, &name)?;
            let amps: Vec<String> = state
                .vector
                .amplitudes()
                .iter()
                .map(|z| format!("({:+.4},{:+.4})", z.re, z.im))
                .collect();
            println!("l={l} {name:>6}: {}", amps.join(" "));
        }
    }
    println!("names accepted at l=3: {}", valid_names(3).join(", "));
    Ok(())
}
