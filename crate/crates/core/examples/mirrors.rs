//! Mirror operators, their phases on |l,m>, and how they act on the
//! generators.
//!
//! cargo run --example mirrors

use std::f64::consts::PI;

use algebraic_harmonics::mirror::{self, conjugate_operator};
use algebraic_harmonics::rotor;
use algebraic_harmonics::su2::{self, AngularBasis, Axis};

fn main() -> algebraic_harmonics::Result<()> {
    let l = 3;
    let basis = AngularBasis::new(l)?;

    for axis in Axis::ALL {
        let phases: Vec<String> = (-(l as i32)..=l as i32)
            .map(|m| mirror::parity_phase(l, m, axis).map(|p| format!("{:+}", p.phase.re)))
            .collect::<Result<_, _>>()?;
        println!("P{axis} phases for m=-{l}..{l}: {}", phases.join(" "));
    }

    for p_axis in Axis::ALL {
        let p = mirror::mirror(basis, p_axis);
        let rels: Vec<String> = Axis::ALL
            .iter()
            .map(|&g| {
                let c = conjugate_operator(&p, &su2::generator(basis, g))?;
                Ok(match c.relation {
                    Some(r) => format!(
                        "L{g} -> {}{}",
                        if r.sign > 0 { "+" } else { "-" },
                        r.generator.name()
                    ),
                    None => format!("L{g} -> ?"),
                })
            })
            .collect::<algebraic_harmonics::Result<_>>()?;
        println!("P{p_axis} L P{p_axis}: {}", rels.join(", "));
    }

    let pxpy = mirror::mirror_x(basis)
        .matrix()
        .matmul(mirror::mirror_y(basis).matrix())?;
    let half_turn = rotor::rotation(basis, Axis::Z, -PI)?;
    println!(
        "Px Py vs e^(i Lz pi): {:.2e}",
        pxpy.max_abs_diff(half_turn.matrix())?
    );

    let diag = mirror::mirror_general(basis, PI / 4.0, PI / 3.0)?;
    let sq = diag.matrix().matmul(diag.matrix())?;
    println!(
        "P(pi/4, pi/3)^2 identity defect: {:.2e}",
        sq.max_abs_diff(&su2::OperatorMatrix::identity(basis))?
    );
    Ok(())
}
