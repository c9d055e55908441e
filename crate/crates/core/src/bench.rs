//! Timing of the two exponential routes: cached eigendecomposition against
//! the scaled Taylor series.

use std::time::Instant;

use crate::error::Result;
use crate::io::fmt_f64;
use crate::rotor::{self, RotationSpec};
use crate::su2::{self, AngularBasis, Axis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Eigen,
    Taylor,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Eigen => "eigen",
            Method::Taylor => "taylor",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub l: u32,
    pub method: Method,
    pub reps: usize,
    /// Mean wall time per repetition.
    pub seconds: f64,
    pub max_unitary_defect: f64,
}

/// Rotation timed by [`run`]: x axis, so the result is genuinely complex.
pub const BENCH_SPEC: RotationSpec = RotationSpec {
    axis: Axis::X,
    angle: 0.7,
};

pub fn run(ls: &[u32], reps: usize) -> Result<Vec<BenchRow>> {
    let reps = reps.max(1);
    let mut rows = Vec::with_capacity(2 * ls.len());
    for &l in ls {
        let basis = AngularBasis::new(l)?;
        // warm the decomposition cache so eigen timings measure the per-angle cost
        rotor::decomposition(basis, Axis::X)?;

        let start = Instant::now();
        let mut last = None;
        for _ in 0..reps {
            last = Some(rotor::exp_entries(basis, BENCH_SPEC)?);
        }
        let seconds = start.elapsed().as_secs_f64() / reps as f64;
        let defect = su2::unitary_defect(&last.expect("reps >= 1"));
        rows.push(BenchRow {
            l,
            method: Method::Eigen,
            reps,
            seconds,
            max_unitary_defect: defect,
        });

        let start = Instant::now();
        let mut last = None;
        for _ in 0..reps {
            last = Some(rotor::exp_rotation_taylor(basis, BENCH_SPEC)?);
        }
        let seconds = start.elapsed().as_secs_f64() / reps as f64;
        rows.push(BenchRow {
            l,
            method: Method::Taylor,
            reps,
            seconds,
            max_unitary_defect: last.expect("reps >= 1").unitary_defect(),
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("l,method,reps,wall_time_s,max_unitary_defect\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.l,
            r.method.name(),
            r.reps,
            fmt_f64(r.seconds),
            fmt_f64(r.max_unitary_defect)
        ));
    }
    out
}
