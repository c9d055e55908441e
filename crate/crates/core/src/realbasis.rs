//! Real spherical-harmonic combinations of the `|l,m>` states.
//!
//! For `m > 0` the cosine-type vector is `((-1)^m |l,m> + |l,-m>)/sqrt2` and
//! the sine-type vector is `((-1)^m |l,m> - |l,-m>)/(i sqrt2)`; `m = 0` maps
//! to itself. At `l <= 2` these are exactly the familiar `|x>, |y>, |z>` and
//! `|xy>, |x2-y2>, |yz>, |xz>, |z2>` states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::su2::{AngularBasis, OperatorMatrix, StateVector, Structure, I, ONE};

/// Position in the real basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealLabel {
    /// The `m = 0` state.
    Zonal,
    Cos(u32),
    Sin(u32),
}

impl RealLabel {
    /// Generic name, valid at every `l`: `m0`, `c<m>` or `s<m>`.
    pub fn generic_name(self) -> String {
        match self {
            RealLabel::Zonal => "m0".to_string(),
            RealLabel::Cos(m) => format!("c{m}"),
            RealLabel::Sin(m) => format!("s{m}"),
        }
    }

    /// Cartesian name where one exists (`l <= 2`).
    pub fn cartesian_name(self, l: u32) -> Option<&'static str> {
        use RealLabel::*;
        Some(match (l, self) {
            (0, Zonal) => "s",
            (1, Cos(1)) => "x",
            (1, Sin(1)) => "y",
            (1, Zonal) => "z",
            (2, Sin(2)) => "xy",
            (2, Cos(2)) => "x2-y2",
            (2, Sin(1)) => "yz",
            (2, Cos(1)) => "xz",
            (2, Zonal) => "z2",
            _ => return None,
        })
    }

    pub fn name(self, l: u32) -> String {
        self.cartesian_name(l)
            .map(str::to_string)
            .unwrap_or_else(|| self.generic_name())
    }

    /// Label stored at complex-basis index `i` (`m = l - i`): positive `m`
    /// is cosine-type, negative `m` sine-type.
    fn at(basis: AngularBasis, index: usize) -> RealLabel {
        let m = basis.m_at(index);
        match m.cmp(&0) {
            std::cmp::Ordering::Greater => RealLabel::Cos(m as u32),
            std::cmp::Ordering::Equal => RealLabel::Zonal,
            std::cmp::Ordering::Less => RealLabel::Sin(m.unsigned_abs()),
        }
    }

    fn index(self, basis: AngularBasis) -> Result<usize> {
        let m = match self {
            RealLabel::Zonal => 0,
            RealLabel::Cos(m) => m as i32,
            RealLabel::Sin(m) => -(m as i32),
        };
        if matches!(self, RealLabel::Cos(0) | RealLabel::Sin(0)) {
            return Err(Error::Domain("cos/sin labels need m >= 1".into()));
        }
        basis.index_of(m)
    }
}

impl fmt::Display for RealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.generic_name())
    }
}

/// Unitary change of basis from `|l,m>` amplitudes to real-basis amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct RealBasisTransform {
    basis: AngularBasis,
    /// Columns are the real-basis vectors expressed in `|l,m>`.
    vectors: DMatrix<Complex64>,
    /// `vectors^dagger`.
    matrix: OperatorMatrix,
    labels: Vec<RealLabel>,
}

fn sign(m: u32) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn real_transform(basis: AngularBasis) -> RealBasisTransform {
    let n = basis.dim();
    let labels: Vec<RealLabel> = (0..n).map(|i| RealLabel::at(basis, i)).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (k, label) in labels.iter().enumerate() {
        match *label {
            RealLabel::Zonal => vectors[(k, k)] = ONE,
            RealLabel::Cos(m) => {
                let (pos, neg) = (k, n - 1 - k);
                vectors[(pos, k)] = Complex64::from(sign(m) * FRAC_1_SQRT_2);
                vectors[(neg, k)] = Complex64::from(FRAC_1_SQRT_2);
            }
            RealLabel::Sin(m) => {
                // k indexes -m here; the +m partner sits at the mirrored index
                let (pos, neg) = (n - 1 - k, k);
                vectors[(pos, k)] = -I * (sign(m) * FRAC_1_SQRT_2);
                vectors[(neg, k)] = I * FRAC_1_SQRT_2;
            }
        }
    }
    let matrix = OperatorMatrix::new(basis, vectors.adjoint(), Structure::unitary())
        .expect("real-basis transform is unitary by construction");
    RealBasisTransform {
        basis,
        vectors,
        matrix,
        labels,
    }
}

impl RealBasisTransform {
    pub fn basis(&self) -> AngularBasis {
        self.basis
    }

    /// Maps `|l,m>` amplitudes to real-basis amplitudes.
    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[RealLabel] {
        &self.labels
    }

    pub fn names(&self) -> Vec<String> {
        self.labels
            .iter()
            .map(|lab| lab.name(self.basis.l()))
            .collect()
    }

    /// The real-basis vector for `label`, in `|l,m>` amplitudes.
    pub fn vector(&self, label: RealLabel) -> Result<StateVector> {
        let k = label.index(self.basis)?;
        Ok(StateVector::from_dvector(
            self.basis,
            self.vectors.column(k).into_owned(),
        ))
    }

    pub fn to_real(&self, state: &StateVector) -> Result<Vec<Complex64>> {
        Ok(self
            .matrix
            .apply(state)?
            .amplitudes()
            .iter()
            .copied()
            .collect())
    }

    pub fn from_real(&self, amplitudes: &[Complex64]) -> Result<StateVector> {
        let coeffs = StateVector::new(self.basis, amplitudes.to_vec())?;
        Ok(StateVector::from_dvector(
            self.basis,
            &self.vectors * coeffs.amplitudes(),
        ))
    }
}

/// A real-basis state with its name.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedState {
    pub l: u32,
    pub name: String,
    pub label: RealLabel,
    pub vector: StateVector,
}

/// Every name accepted by [`named_state`] at this `l`.
pub fn valid_names(l: u32) -> Vec<String> {
    let basis = match AngularBasis::new(l) {
        Ok(b) => b,
        Err(_) => return Vec::new(),
    };
    let mut names = Vec::new();
    for i in 0..basis.dim() {
        let label = RealLabel::at(basis, i);
        if let Some(c) = label.cartesian_name(l) {
            names.push(c.to_string());
        }
    }
    for i in 0..basis.dim() {
        names.push(RealLabel::at(basis, i).generic_name());
    }
    names
}

fn parse_label(l: u32, name: &str) -> Option<RealLabel> {
    let basis = AngularBasis::new(l).ok()?;
    for i in 0..basis.dim() {
        let label = RealLabel::at(basis, i);
        if label.cartesian_name(l) == Some(name) || label.generic_name() == name {
            return Some(label);
        }
    }
    None
}

pub fn named_state(l: u32, name: &str) -> Result<NamedState> {
    let basis = AngularBasis::new(l)?;
    let name = name.trim();
    let label = parse_label(l, name).ok_or_else(|| Error::UnknownName {
        l,
        name: name.to_string(),
        valid: valid_names(l),
    })?;
    let vector = real_transform(basis).vector(label)?;
    Ok(NamedState {
        l,
        name: label.name(l),
        label,
        vector,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{self, ZERO};

    fn amps(v: &StateVector) -> Vec<Complex64> {
        v.amplitudes().iter().copied().collect()
    }

    fn close(a: &[Complex64], b: &[Complex64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-15)
    }

    #[test]
    fn p_states_match_explicit_vectors() {
        let s = FRAC_1_SQRT_2;
        let x = named_state(1, "x").unwrap();
        assert!(close(&amps(&x.vector), &[ONE * -s, ZERO, ONE * s]));
        let y = named_state(1, "y").unwrap();
        assert!(close(&amps(&y.vector), &[I * s, ZERO, I * s]));
        let z = named_state(1, "z").unwrap();
        assert!(close(&amps(&z.vector), &[ZERO, ONE, ZERO]));
    }

    #[test]
    fn d_states_match_explicit_vectors() {
        let s = FRAC_1_SQRT_2;
        let check = |name: &str, want: [Complex64; 5]| {
            let v = named_state(2, name).unwrap();
            assert!(
                close(&amps(&v.vector), &want),
                "{name}: {:?}",
                amps(&v.vector)
            );
        };
        check("xy", [-I * s, ZERO, ZERO, ZERO, I * s]);
        check("x2-y2", [ONE * s, ZERO, ZERO, ZERO, ONE * s]);
        check("yz", [ZERO, I * s, ZERO, I * s, ZERO]);
        check("xz", [ZERO, ONE * -s, ZERO, ONE * s, ZERO]);
        check("z2", [ZERO, ZERO, ONE, ZERO, ZERO]);
    }

    #[test]
    fn s_state_is_one_dimensional() {
        let s = named_state(0, "s").unwrap();
        assert_eq!(amps(&s.vector), vec![ONE]);
    }

    #[test]
    fn generic_names_alias_cartesian_ones() {
        assert_eq!(
            named_state(2, "s2").unwrap().vector,
            named_state(2, "xy").unwrap().vector
        );
        assert_eq!(named_state(1, "m0").unwrap().name, "z");
        let f = named_state(3, "c2").unwrap();
        assert_eq!(f.name, "c2");
        assert!((f.vector.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        match named_state(1, "xy") {
            Err(Error::UnknownName { valid, .. }) => {
                assert!(valid.contains(&"x".to_string()));
                assert!(valid.contains(&"c1".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn transform_round_trips() {
        let b = AngularBasis::new(4).unwrap();
        let t = real_transform(b);
        let psi = su2::state(b, -3)
            .unwrap()
            .add(&su2::state(b, 2).unwrap().scale(I))
            .unwrap();
        let back = t.from_real(&t.to_real(&psi).unwrap()).unwrap();
        assert!(back.max_abs_diff(&psi).unwrap() < 1e-15);
        assert_eq!(t.names()[4], "m0");
    }
}
