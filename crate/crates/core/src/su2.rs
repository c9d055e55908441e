//! Matrix representation of the angular-momentum algebra on the spin-`l`
//! space.
//!
//! Every matrix and state in the crate uses the same index convention:
//! row/column `i` corresponds to `m = l - i`, so index 0 is the highest
//! weight `|l,l>` and index `2l` is `|l,-l>`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported angular momentum.
pub const MAX_L: u32 = 512;

const HERMITIAN_TOL: f64 = 1e-13;
const UNITARY_TOL: f64 = 1e-12;
const REAL_TOL: f64 = 1e-13;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Cartesian axis label shared by generators, rotations and mirrors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Levi-Civita symbol `epsilon_ijk`.
    pub fn epsilon(i: Axis, j: Axis, k: Axis) -> f64 {
        use Axis::*;
        match (i, j, k) {
            (X, Y, Z) | (Y, Z, X) | (Z, X, Y) => 1.0,
            (Y, X, Z) | (X, Z, Y) | (Z, Y, X) => -1.0,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::parse(
                "axis",
                format!("expected x, y or z, got {other:?}"),
            )),
        }
    }
}

/// The ordered `|l,m>` basis, `m` descending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AngularBasis {
    l: u32,
}

impl AngularBasis {
    pub fn new(l: u32) -> Result<Self> {
        if l > MAX_L {
            return Err(Error::Range {
                l: i64::from(l),
                max: MAX_L,
            });
        }
        Ok(Self { l })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dim(&self) -> usize {
        2 * self.l as usize + 1
    }

    /// `m` quantum number stored at `index`.
    pub fn m_at(&self, index: usize) -> i32 {
        debug_assert!(index < self.dim());
        self.l as i32 - index as i32
    }

    /// Index of `m`, or a domain error when `|m| > l`.
    pub fn index_of(&self, m: i32) -> Result<usize> {
        if m.unsigned_abs() > self.l {
            return Err(Error::Domain(format!(
                "m={m} outside -l..=l for l={}",
                self.l
            )));
        }
        Ok((self.l as i32 - m) as usize)
    }

    pub fn ms(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.dim()).map(|i| self.m_at(i))
    }

    pub(crate) fn ensure_same(&self, other: &AngularBasis) -> Result<()> {
        if self.l != other.l {
            return Err(Error::BasisMismatch {
                left: self.l,
                right: other.l,
            });
        }
        Ok(())
    }
}

impl TryFrom<i64> for AngularBasis {
    type Error = Error;

    fn try_from(l: i64) -> Result<Self> {
        match u32::try_from(l) {
            Ok(l) if l <= MAX_L => AngularBasis::new(l),
            _ => Err(Error::Range { l, max: MAX_L }),
        }
    }
}

/// Builds the basis for a signed `l`, rejecting negative or over-ceiling values.
pub fn build_basis(l: i64) -> Result<AngularBasis> {
    AngularBasis::try_from(l)
}

/// Structural properties asserted when an [`OperatorMatrix`] is built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub hermitian: bool,
    pub unitary: bool,
    pub real: bool,
}

impl Structure {
    pub const NONE: Structure = Structure {
        hermitian: false,
        unitary: false,
        real: false,
    };

    pub fn hermitian() -> Self {
        Structure {
            hermitian: true,
            ..Self::NONE
        }
    }

    pub fn unitary() -> Self {
        Structure {
            unitary: true,
            ..Self::NONE
        }
    }

    pub fn with_real(mut self, real: bool) -> Self {
        self.real = real;
        self
    }
}

/// Dense complex operator on the spin-`l` space.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    basis: AngularBasis,
    entries: DMatrix<Complex64>,
    structure: Structure,
}

impl OperatorMatrix {
    /// Wraps `entries`, checking every flag in `structure` numerically.
    pub fn new(
        basis: AngularBasis,
        entries: DMatrix<Complex64>,
        structure: Structure,
    ) -> Result<Self> {
        let n = basis.dim();
        if entries.shape() != (n, n) {
            return Err(Error::Structure(format!(
                "expected {n}x{n} entries for l={}, got {:?}",
                basis.l(),
                entries.shape()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("operator entries"));
        }
        if structure.hermitian {
            let defect = max_abs(&(&entries - entries.adjoint()));
            if defect >= HERMITIAN_TOL {
                return Err(Error::Structure(format!("hermitian defect {defect:.3e}")));
            }
        }
        if structure.unitary {
            let defect = unitary_defect(&entries);
            if defect >= UNITARY_TOL {
                return Err(Error::Structure(format!("unitary defect {defect:.3e}")));
            }
        }
        if structure.real {
            let defect = entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            if defect >= REAL_TOL {
                return Err(Error::Structure(format!("imaginary part {defect:.3e}")));
            }
        }
        Ok(Self {
            basis,
            entries,
            structure,
        })
    }

    /// Result of arithmetic where no structure is claimed.
    pub fn general(basis: AngularBasis, entries: DMatrix<Complex64>) -> Result<Self> {
        Self::new(basis, entries, Structure::NONE)
    }

    pub fn identity(basis: AngularBasis) -> Self {
        let n = basis.dim();
        Self {
            basis,
            entries: DMatrix::identity(n, n),
            structure: Structure {
                hermitian: true,
                unitary: true,
                real: true,
            },
        }
    }

    pub fn basis(&self) -> AngularBasis {
        self.basis
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    /// Entry `<l,row_m| O |l,col_m>`.
    pub fn element(&self, row_m: i32, col_m: i32) -> Result<Complex64> {
        let r = self.basis.index_of(row_m)?;
        let c = self.basis.index_of(col_m)?;
        Ok(self.entries[(r, c)])
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis,
            entries: self.entries.adjoint(),
            structure: self.structure,
        }
    }

    pub fn matmul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.basis.ensure_same(&rhs.basis)?;
        Ok(OperatorMatrix {
            basis: self.basis,
            entries: &self.entries * &rhs.entries,
            structure: Structure {
                unitary: self.structure.unitary && rhs.structure.unitary,
                ..Structure::NONE
            },
        })
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.basis.ensure_same(&rhs.basis)?;
        Ok(OperatorMatrix {
            basis: self.basis,
            entries: &self.entries + &rhs.entries,
            structure: Structure::NONE,
        })
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.basis.ensure_same(&rhs.basis)?;
        Ok(OperatorMatrix {
            basis: self.basis,
            entries: &self.entries - &rhs.entries,
            structure: Structure::NONE,
        })
    }

    pub fn scale(&self, factor: Complex64) -> OperatorMatrix {
        OperatorMatrix {
            basis: self.basis,
            entries: &self.entries * factor,
            structure: Structure::NONE,
        }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.basis.ensure_same(&state.basis)?;
        Ok(StateVector {
            basis: self.basis,
            amplitudes: &self.entries * &state.amplitudes,
        })
    }

    /// Largest elementwise deviation `max |A_ij - B_ij|`.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        self.basis.ensure_same(&other.basis)?;
        Ok(max_abs(&(&self.entries - &other.entries)))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn unitary_defect(&self) -> f64 {
        unitary_defect(&self.entries)
    }

    pub fn determinant(&self) -> Complex64 {
        self.entries.clone().determinant()
    }
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |(M^dagger M - I)_ij|`.
pub fn unitary_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let prod = m.adjoint() * m;
    let mut worst = 0.0_f64;
    for r in 0..n {
        for c in 0..n {
            let target = if r == c { ONE } else { ZERO };
            worst = worst.max((prod[(r, c)] - target).norm());
        }
    }
    worst
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.basis.ensure_same(&b.basis)?;
    OperatorMatrix::general(a.basis, &a.entries * &b.entries - &b.entries * &a.entries)
}

/// Complex amplitudes over an [`AngularBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    basis: AngularBasis,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(basis: AngularBasis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::Structure(format!(
                "state for l={} needs {} amplitudes, got {}",
                basis.l(),
                basis.dim(),
                amplitudes.len()
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(Self {
            basis,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub(crate) fn from_dvector(basis: AngularBasis, amplitudes: DVector<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), basis.dim());
        Self { basis, amplitudes }
    }

    pub fn zero(basis: AngularBasis) -> Self {
        Self {
            basis,
            amplitudes: DVector::zeros(basis.dim()),
        }
    }

    pub fn basis(&self) -> AngularBasis {
        self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Amplitude on `|l,m>`.
    pub fn component(&self, m: i32) -> Result<Complex64> {
        Ok(self.amplitudes[self.basis.index_of(m)?])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.basis.ensure_same(&other.basis)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn scale(&self, factor: Complex64) -> StateVector {
        StateVector {
            basis: self.basis,
            amplitudes: &self.amplitudes * factor,
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        self.basis.ensure_same(&other.basis)?;
        Ok(StateVector {
            basis: self.basis,
            amplitudes: &self.amplitudes + &other.amplitudes,
        })
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        self.basis.ensure_same(&other.basis)?;
        Ok((&self.amplitudes - &other.amplitudes)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max))
    }
}

/// `<l,m+1|L_+|l,m> = sqrt((l-m)(l+m+1))`, in product form.
fn raise_element(l: u32, m: i32) -> f64 {
    let l = f64::from(l);
    let m = f64::from(m);
    ((l - m) * (l + m + 1.0)).sqrt()
}

pub fn ladder_plus(basis: AngularBasis) -> OperatorMatrix {
    let n = basis.dim();
    let mut entries = DMatrix::zeros(n, n);
    // column i holds |l,m>, L_+ moves it to row i-1
    for col in 1..n {
        entries[(col - 1, col)] = Complex64::from(raise_element(basis.l(), basis.m_at(col)));
    }
    OperatorMatrix {
        basis,
        entries,
        structure: Structure::NONE.with_real(true),
    }
}

pub fn ladder_minus(basis: AngularBasis) -> OperatorMatrix {
    let plus = ladder_plus(basis);
    OperatorMatrix {
        basis,
        entries: plus.entries.transpose(),
        structure: plus.structure,
    }
}

pub fn l_x(basis: AngularBasis) -> OperatorMatrix {
    let sum = &ladder_plus(basis).entries + &ladder_minus(basis).entries;
    OperatorMatrix {
        basis,
        entries: sum * Complex64::from(0.5),
        structure: Structure::hermitian().with_real(true),
    }
}

pub fn l_y(basis: AngularBasis) -> OperatorMatrix {
    let diff = &ladder_plus(basis).entries - &ladder_minus(basis).entries;
    // (L_+ - L_-) / 2i
    OperatorMatrix {
        basis,
        entries: diff * Complex64::new(0.0, -0.5),
        structure: Structure::hermitian(),
    }
}

pub fn l_z(basis: AngularBasis) -> OperatorMatrix {
    let diag = DVector::from_iterator(
        basis.dim(),
        basis.ms().map(|m| Complex64::from(f64::from(m))),
    );
    OperatorMatrix {
        basis,
        entries: DMatrix::from_diagonal(&diag),
        structure: Structure::hermitian().with_real(true),
    }
}

pub fn generator(basis: AngularBasis, axis: Axis) -> OperatorMatrix {
    match axis {
        Axis::X => l_x(basis),
        Axis::Y => l_y(basis),
        Axis::Z => l_z(basis),
    }
}

/// Named operators of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Lx,
    Ly,
    Lz,
    Lplus,
    Lminus,
    Casimir,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Lx,
        Generator::Ly,
        Generator::Lz,
        Generator::Lplus,
        Generator::Lminus,
        Generator::Casimir,
    ];

    pub fn matrix(self, basis: AngularBasis) -> OperatorMatrix {
        match self {
            Generator::Lx => l_x(basis),
            Generator::Ly => l_y(basis),
            Generator::Lz => l_z(basis),
            Generator::Lplus => ladder_plus(basis),
            Generator::Lminus => ladder_minus(basis),
            Generator::Casimir => casimir(basis),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Lx => "Lx",
            Generator::Ly => "Ly",
            Generator::Lz => "Lz",
            Generator::Lplus => "Lplus",
            Generator::Lminus => "Lminus",
            Generator::Casimir => "L2",
        }
    }
}

/// `L^2 = L_- L_+ + L_z (1 + L_z)`.
pub fn casimir(basis: AngularBasis) -> OperatorMatrix {
    let n = basis.dim();
    let lz = l_z(basis).entries;
    let lowered = ladder_minus(basis).entries * ladder_plus(basis).entries;
    let entries = lowered + &lz * (DMatrix::identity(n, n) + &lz);
    OperatorMatrix {
        basis,
        entries,
        structure: Structure::hermitian().with_real(true),
    }
}

/// `C(l,|m|) = sqrt((l-|m|)! / (l+|m|)!)`.
pub fn lowering_coefficient(l: u32, m_abs: u32) -> Result<f64> {
    if m_abs > l {
        return Err(Error::Domain(format!("|m|={m_abs} exceeds l={l}")));
    }
    Ok(((l - m_abs + 1)..=(l + m_abs))
        .map(|k| 1.0 / f64::from(k).sqrt())
        .product())
}

/// The eigenstate `|l,m>`.
pub fn state(basis: AngularBasis, m: i32) -> Result<StateVector> {
    let idx = basis.index_of(m)?;
    let mut amplitudes = DVector::zeros(basis.dim());
    amplitudes[idx] = ONE;
    Ok(StateVector { basis, amplitudes })
}

/// `|l,m>` generated from the highest weight as
/// `sqrt((l+m)! / ((l-m)! (2l)!)) (L_-)^(l-m) |l,l>`.
pub fn lowered_state(basis: AngularBasis, m: i32) -> Result<StateVector> {
    basis.index_of(m)?;
    let l = basis.l() as i32;
    let lower = ladder_minus(basis);
    let mut v = state(basis, l)?;
    // (l+m)!/((l-m)!(2l)!) = prod_{k=1}^{l-m} 1/(k (2l-k+1))
    let mut norm = 1.0_f64;
    for k in 1..=(l - m) {
        v = lower.apply(&v)?;
        norm /= (f64::from(k) * f64::from(2 * l - k + 1)).sqrt();
    }
    Ok(v.scale(Complex64::from(norm)))
}
