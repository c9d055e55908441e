//! Compares pole probing with the associated-Legendre recurrence.
//!
//! cargo run --release --example oracle_check -- 12

use algebraic_harmonics::oracle;

fn main() -> algebraic_harmonics::Result<()> {
    let l_max: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let report = oracle::equivalence_report(l_max, 50)?;
    for l in 0..=l_max {
        let worst = report
            .iter()
            .filter(|d| d.l == l)
            .map(|d| d.max_abs)
            .fold(0.0, f64::max);
        println!("l={l:>3}  worst |evaluate - sh_eval| = {worst:.2e}");
    }
    Ok(())
}
