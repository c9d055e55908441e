//! Evaluates wavefunctions by rotating the state so the probe direction sits
//! on the pole, then prints the closed trigonometric form.
//!
//! cargo run --example probe_wavefunction -- 2 xy

use algebraic_harmonics::realbasis::named_state;
use algebraic_harmonics::wavefield::{self, SphericalPoint};

fn main() -> algebraic_harmonics::Result<()> {
    let mut args = std::env::args().skip(1);
    let l: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let name = args.next().unwrap_or_else(|| "xy".to_string());
    let state = named_state(l, &name)?;

    for (theta, phi) in [(0.0, 0.0), (0.6, 0.4), (1.2, 2.0), (2.5, 4.1)] {
        let y = wavefield::evaluate(&state.vector, SphericalPoint::new(theta, phi)?)?;
        println!(
            "Y_{name}({theta:.2}, {phi:.2}) = {:+.10} {:+.10}i",
            y.re, y.im
        );
    }

    let form = wavefield::trig_expansion(&state.vector)?;
    println!("Y_{name} = {form}");
    Ok(())
}
