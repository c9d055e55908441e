//! Builds the angular-momentum matrices for a chosen degree and checks the
//! algebra they satisfy.
//!
//! cargo run --example ladder_algebra -- 3

use algebraic_harmonics::su2::{self, AngularBasis, Generator};
use num_complex::Complex64;

fn main() -> algebraic_harmonics::Result<()> {
    let l: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let basis = AngularBasis::new(l)?;

    println!("l = {l}, basis m = {:?}", basis.ms().collect::<Vec<_>>());
    let lplus = Generator::Lplus.matrix(basis);
    for m in (-(l as i32)..l as i32).rev() {
        println!("  <{}|L+|{m}> = {:.6}", m + 1, lplus.element(m + 1, m)?.re);
    }

    let (lx, ly, lz) = (su2::l_x(basis), su2::l_y(basis), su2::l_z(basis));
    let defect = su2::commutator(&lx, &ly)?.max_abs_diff(&lz.scale(Complex64::new(0.0, 1.0)))?;
    println!("[Lx, Ly] - i Lz : {defect:.2e}");

    let casimir = su2::casimir(basis);
    println!(
        "L^2 diagonal    : {:?}",
        casimir.entries().diagonal().map(|z| z.re).as_slice()
    );

    // every |l,m> reached from |l,l> by repeated lowering
    for m in [l as i32, 0, -(l as i32)] {
        let lowered = su2::lowered_state(basis, m)?;
        let diff = lowered.max_abs_diff(&su2::state(basis, m)?)?;
        println!("lowered |{l},{m}> vs basis vector: {diff:.2e}");
    }
    Ok(())
}
