//! Directional space-inversion (mirror) operators.
//!
//! `P_x`, `P_y`, `P_z` are built from their exact delta forms:
//! `(P_x)_{m,n} = delta_{m,-n}`, `(P_y)_{m,n} = (-1)^m delta_{m,-n}` and
//! `(P_z)_{m,n} = (-1)^{m+l} delta_{m,n}`. A mirror through an arbitrary
//! direction `(theta, phi)` is `P_x` conjugated by the rotation that carries
//! `+x` onto that direction.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rotor;
use crate::su2::{AngularBasis, Axis, Generator, OperatorMatrix, StateVector, Structure, ONE};

const INVOLUTION_TOL: f64 = 1e-12;
const RELATION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MirrorDirection {
    Axis(Axis),
    Direction { theta: f64, phi: f64 },
}

/// Involutive, unitary and Hermitian reflection operator.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorOperator {
    matrix: OperatorMatrix,
    direction: MirrorDirection,
}

impl MirrorOperator {
    fn new(
        basis: AngularBasis,
        entries: DMatrix<Complex64>,
        direction: MirrorDirection,
    ) -> Result<Self> {
        let real = matches!(direction, MirrorDirection::Axis(_));
        let structure = Structure {
            hermitian: true,
            unitary: true,
            real,
        };
        let matrix = OperatorMatrix::new(basis, entries, structure)?;
        let square = matrix.matmul(&matrix)?;
        let defect = square.max_abs_diff(&OperatorMatrix::identity(basis))?;
        if defect >= INVOLUTION_TOL {
            return Err(Error::Structure(format!(
                "mirror is not involutive: {defect:.3e}"
            )));
        }
        Ok(Self { matrix, direction })
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> OperatorMatrix {
        self.matrix
    }

    pub fn direction(&self) -> MirrorDirection {
        self.direction
    }

    pub fn basis(&self) -> AngularBasis {
        self.matrix.basis()
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.matrix.apply(state)
    }
}

fn signed_permutation(
    basis: AngularBasis,
    flip: bool,
    sign: impl Fn(i32) -> f64,
) -> DMatrix<Complex64> {
    let n = basis.dim();
    let mut entries = DMatrix::zeros(n, n);
    for row in 0..n {
        let m = basis.m_at(row);
        let col = if flip { n - 1 - row } else { row };
        entries[(row, col)] = Complex64::from(sign(m));
    }
    entries
}

fn parity(k: i32) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn mirror_x(basis: AngularBasis) -> MirrorOperator {
    let entries = signed_permutation(basis, true, |_| 1.0);
    MirrorOperator::new(basis, entries, MirrorDirection::Axis(Axis::X)).expect("exact permutation")
}

pub fn mirror_y(basis: AngularBasis) -> MirrorOperator {
    let entries = signed_permutation(basis, true, parity);
    MirrorOperator::new(basis, entries, MirrorDirection::Axis(Axis::Y)).expect("exact permutation")
}

pub fn mirror_z(basis: AngularBasis) -> MirrorOperator {
    let l = basis.l() as i32;
    let entries = signed_permutation(basis, false, |m| parity(m + l));
    MirrorOperator::new(basis, entries, MirrorDirection::Axis(Axis::Z)).expect("exact diagonal")
}

pub fn mirror(basis: AngularBasis, axis: Axis) -> MirrorOperator {
    match axis {
        Axis::X => mirror_x(basis),
        Axis::Y => mirror_y(basis),
        Axis::Z => mirror_z(basis),
    }
}

/// `P(theta, phi) = e^{-i L_z phi} e^{i L_y (pi/2 - theta)} P_x e^{-i L_y (pi/2 - theta)} e^{i L_z phi}`.
pub fn mirror_general(basis: AngularBasis, theta: f64, phi: f64) -> Result<MirrorOperator> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite("mirror direction"));
    }
    let tilt = FRAC_PI_2 - theta;
    let to_x = rotor::rotation(basis, Axis::Y, tilt)?
        .matrix()
        .matmul(rotor::rotation(basis, Axis::Z, -phi)?.matrix())?;
    let px = mirror_x(basis);
    let entries = to_x.adjoint().entries() * px.matrix().entries() * to_x.entries();
    MirrorOperator::new(basis, entries, MirrorDirection::Direction { theta, phi })
}

/// Scalar picked up by `|l,m>` under a cardinal mirror.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParityPhase {
    pub l: u32,
    pub m: i32,
    pub axis: Axis,
    pub phase: Complex64,
    /// Whether the image is `|l,-m>` rather than `|l,m>`.
    pub flips_m: bool,
}

/// `P_x|l,m> = |l,-m>`, `P_y|l,m> = (-1)^m |l,-m>`, `P_z|l,m> = (-1)^{l+m} |l,m>`.
pub fn parity_phase(l: u32, m: i32, axis: Axis) -> Result<ParityPhase> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!(
            "|m|={} exceeds l={l}",
            m.unsigned_abs()
        )));
    }
    let (sign, flips_m) = match axis {
        Axis::X => (1.0, true),
        Axis::Y => (parity(m), true),
        Axis::Z => (parity(l as i32 + m), false),
    };
    Ok(ParityPhase {
        l,
        m,
        axis,
        phase: ONE * sign,
        flips_m,
    })
}

/// `P L P^{-1} = sign * generator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationRelation {
    pub sign: i8,
    pub generator: Generator,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Conjugation {
    pub matrix: OperatorMatrix,
    /// Matching entry of the sign table when the result is `+-` a generator.
    pub relation: Option<ConjugationRelation>,
}

/// `P L P^{-1}`, identifying which `+-` generator relation it satisfies.
pub fn conjugate_operator(
    mirror: &MirrorOperator,
    operator: &OperatorMatrix,
) -> Result<Conjugation> {
    let basis = mirror.basis();
    basis.ensure_same(&operator.basis())?;
    let p = mirror.matrix().entries();
    let entries = p * operator.entries() * p.adjoint();
    let matrix = OperatorMatrix::general(basis, entries)?;

    let mut relation = None;
    if matrix.max_abs() >= RELATION_TOL {
        'search: for generator in Generator::ALL {
            let g = generator.matrix(basis);
            for sign in [1i8, -1] {
                let target = g.scale(Complex64::from(f64::from(sign)));
                if matrix.max_abs_diff(&target)? < RELATION_TOL {
                    relation = Some(ConjugationRelation { sign, generator });
                    break 'search;
                }
            }
        }
    }
    Ok(Conjugation { matrix, relation })
}
