//! JSON interchange for matrices and states.
//!
//! All floats are written with 17 significant digits so identical inputs
//! give byte-identical files.

use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::{AngularBasis, OperatorMatrix, StateVector, Structure};

pub const ORDERING: &str = "m-descending";

/// `v` in scientific notation with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// serde_json formatter writing every float through [`fmt_f64`].
#[derive(Clone, Copy, Debug, Default)]
pub struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub l: u32,
    pub dimension: usize,
    pub ordering: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    pub structure: Structure,
    /// Row-major `[re, im]` entries.
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_operator(op: &OperatorMatrix, name: Option<&str>) -> Self {
        let m = op.entries();
        Self {
            l: op.basis().l(),
            dimension: m.nrows(),
            ordering: ORDERING.to_string(),
            operator: name.map(str::to_string),
            structure: op.structure(),
            entries: (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| pair(m[(r, c)])).collect())
                .collect(),
        }
    }

    /// Rebuilds the operator, re-checking the recorded structure flags.
    pub fn to_operator(&self) -> Result<OperatorMatrix> {
        check_ordering(&self.ordering)?;
        let basis = AngularBasis::new(self.l)?;
        let n = basis.dim();
        if self.entries.len() != n || self.entries.iter().any(|row| row.len() != n) {
            return Err(Error::parse("entries", format!("expected {n}x{n} matrix")));
        }
        let m = nalgebra::DMatrix::from_fn(n, n, |r, c| {
            let [re, im] = self.entries[r][c];
            Complex64::new(re, im)
        });
        OperatorMatrix::new(basis, m, self.structure)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub l: u32,
    #[serde(default = "default_ordering")]
    pub ordering: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub amplitudes: Vec<[f64; 2]>,
}

fn default_ordering() -> String {
    ORDERING.to_string()
}

fn check_ordering(ordering: &str) -> Result<()> {
    if ordering != ORDERING {
        return Err(Error::parse(
            "ordering",
            format!("only {ORDERING:?} is supported, got {ordering:?}"),
        ));
    }
    Ok(())
}

impl StateFile {
    pub fn from_state(state: &StateVector, label: Option<&str>) -> Self {
        Self {
            l: state.basis().l(),
            ordering: ORDERING.to_string(),
            label: label.map(str::to_string),
            amplitudes: state.amplitudes().iter().copied().map(pair).collect(),
        }
    }

    pub fn to_state(&self) -> Result<StateVector> {
        check_ordering(&self.ordering)?;
        let basis = AngularBasis::new(self.l)?;
        if self.amplitudes.len() != basis.dim() {
            return Err(Error::parse(
                "amplitudes",
                format!(
                    "expected {} entries for l={}, got {}",
                    basis.dim(),
                    self.l,
                    self.amplitudes.len()
                ),
            ));
        }
        StateVector::new(
            basis,
            self.amplitudes
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2;

    #[test]
    fn floats_use_seventeen_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
        let s = to_json_string(&[0.1_f64]).unwrap();
        assert_eq!(s, "[1.0000000000000001e-1]\n");
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![0.1]);
    }

    #[test]
    fn matrix_file_header_and_layout() {
        let b = AngularBasis::new(2).unwrap();
        let file = MatrixFile::from_operator(&su2::l_z(b), Some("Lz"));
        let text = to_json_string(&file).unwrap();
        assert!(text.contains("\"ordering\":\"m-descending\""));
        assert!(text.contains("\"hermitian\":true"));
        let diag: Vec<f64> = (0..5).map(|i| file.entries[i][i][0]).collect();
        assert_eq!(diag, vec![2.0, 1.0, 0.0, -1.0, -2.0]);
        let parsed: MatrixFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_operator().unwrap(), su2::l_z(b));
    }

    #[test]
    fn state_file_validation() {
        let bad = StateFile {
            l: 1,
            ordering: ORDERING.into(),
            label: None,
            amplitudes: vec![[1.0, 0.0]],
        };
        assert!(matches!(bad.to_state(), Err(Error::Parse { .. })));
        let wrong_order = StateFile {
            ordering: "m-ascending".into(),
            amplitudes: vec![[0.0, 0.0]; 3],
            ..bad
        };
        assert!(matches!(wrong_order.to_state(), Err(Error::Parse { .. })));
        let parsed: StateFile = serde_json::from_str(r#"{"l":0,"amplitudes":[[1,0]]}"#).unwrap();
        assert_eq!(parsed.to_state().unwrap().norm(), 1.0);
    }
}
