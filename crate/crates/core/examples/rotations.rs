//! Rotation matrices from the generators: closed forms at l = 1 and 2, Euler
//! angles, and the eigendecomposition against a Taylor series.
//!
//! cargo run --example rotations

use std::f64::consts::FRAC_PI_2;

use algebraic_harmonics::realbasis::named_state;
use algebraic_harmonics::rotor::{self, RotationSpec};
use algebraic_harmonics::su2::{AngularBasis, Axis};

fn main() -> algebraic_harmonics::Result<()> {
    let phi = 0.8;
    for l in [1, 2] {
        let basis = AngularBasis::new(l)?;
        for axis in Axis::ALL {
            let generated = rotor::rotation(basis, axis, phi)?;
            let closed = if l == 1 {
                rotor::closed_form_l1(axis, phi)
            } else {
                rotor::closed_form_l2(axis, phi)
            };
            println!(
                "l={l} R_{axis}({phi}) vs closed form: {:.2e}",
                generated.matrix().max_abs_diff(&closed)?
            );
        }
    }

    let k = rotor::closed_form_l2_coeffs(phi);
    println!(
        "l=2 template coefficients at phi={phi}: A={:.4} F={:.4} J={:.4}",
        k.a, k.f, k.j
    );

    // a quarter turn about y carries |z> onto |x>
    let b1 = AngularBasis::new(1)?;
    let turned = rotor::rotation(b1, Axis::Y, FRAC_PI_2)?.apply(&named_state(1, "z")?.vector)?;
    println!(
        "R_y(pi/2)|z> - |x> : {:.2e}",
        turned.max_abs_diff(&named_state(1, "x")?.vector)?
    );

    let b = AngularBasis::new(6)?;
    let r = rotor::rotation_zyz(b, 0.3, 1.2, -0.5)?;
    println!(
        "Euler l=6 unitary defect: {:.2e}",
        r.matrix().unitary_defect()
    );

    let spec = RotationSpec::new(Axis::X, 2.5)?;
    let eigen = rotor::exp_rotation(b, spec)?;
    let taylor = rotor::exp_rotation_taylor(b, spec)?;
    println!(
        "eigen vs Taylor at l=6: {:.2e}",
        eigen.matrix().max_abs_diff(&taylor)?
    );
    Ok(())
}
