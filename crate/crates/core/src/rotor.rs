//! Rotation operators `exp(-i L_k phi)` on the spin-`l` space.
//!
//! x- and y-axis exponentials come from one eigendecomposition of the real
//! symmetric tridiagonal `L_x` per `l`. Since `L_y = U L_x U^dagger` with
//! `U = exp(-i L_z pi/2)`, the y-rotation reuses the same eigenvectors and
//! is assembled in real arithmetic. z-rotations are the analytic diagonal.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::{self, AngularBasis, Axis, OperatorMatrix, StateVector, Structure, I};

/// Single-axis rotation `exp(-i L_axis angle)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationSpec {
    pub axis: Axis,
    pub angle: f64,
}

impl RotationSpec {
    pub fn new(axis: Axis, angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::NonFinite("rotation angle"));
        }
        Ok(Self { axis, angle })
    }
}

/// What a [`RotationOperator`] was generated from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationSource {
    Axis(RotationSpec),
    /// `R_z(alpha) R_y(beta) R_z(gamma)`.
    Euler {
        alpha: f64,
        beta: f64,
        gamma: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationOperator {
    matrix: OperatorMatrix,
    source: RotationSource,
}

impl RotationOperator {
    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> OperatorMatrix {
        self.matrix
    }

    pub fn source(&self) -> RotationSource {
        self.source
    }

    pub fn basis(&self) -> AngularBasis {
        self.matrix.basis()
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.matrix.apply(state)
    }

    /// The inverse rotation (its adjoint).
    pub fn inverse(&self) -> RotationOperator {
        let source = match self.source {
            RotationSource::Axis(spec) => RotationSource::Axis(RotationSpec {
                axis: spec.axis,
                angle: -spec.angle,
            }),
            RotationSource::Euler { alpha, beta, gamma } => RotationSource::Euler {
                alpha: -gamma,
                beta: -beta,
                gamma: -alpha,
            },
        };
        RotationOperator {
            matrix: self.matrix.adjoint(),
            source,
        }
    }
}

/// Eigenvectors of `L_x` with eigenvalues snapped to the exact spectrum
/// `l, l-1, ..., -l` (column `k` belongs to eigenvalue `l - k`).
#[derive(Debug)]
pub struct Decomposition {
    eigenvalues: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl Decomposition {
    fn compute(basis: AngularBasis) -> Result<Self> {
        let n = basis.dim();
        let generator = su2::l_x(basis);
        let lx = generator.entries().map(|z| z.re);
        let eigen = SymmetricEigen::new(lx);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));

        let mut eigenvalues = Vec::with_capacity(n);
        let mut vectors = DMatrix::zeros(n, n);
        for (k, &src) in order.iter().enumerate() {
            let exact = f64::from(basis.m_at(k));
            let computed = eigen.eigenvalues[src];
            if (computed - exact).abs() > 1e-6 * (1.0 + exact.abs()) {
                return Err(Error::Structure(format!(
                    "L_x eigenvalue {computed} does not match {exact} at l={}",
                    basis.l()
                )));
            }
            eigenvalues.push(exact);
            vectors.set_column(k, &eigen.eigenvectors.column(src));
        }
        Ok(Self {
            eigenvalues,
            vectors,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    /// `sum_k V_ak V_bk exp(-i lambda_k phi)` for one entry.
    fn entry(&self, rotations: &[Complex64], a: usize, b: usize) -> Complex64 {
        let va = self.vectors.row(a);
        let vb = self.vectors.row(b);
        va.iter()
            .zip(vb.iter())
            .zip(rotations)
            .map(|((&x, &y), &r)| r * (x * y))
            .sum()
    }

    fn phases(&self, angle: f64) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .map(|&lambda| Complex64::from_polar(1.0, -lambda * angle))
            .collect()
    }
}

type CacheMap = HashMap<(u32, Axis), Arc<Decomposition>>;

fn cache() -> &'static RwLock<CacheMap> {
    static CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cached decomposition backing x/y rotations at `l`. Both axes share the
/// `L_x` eigenvectors; they are stored under their own keys.
pub fn decomposition(basis: AngularBasis, axis: Axis) -> Result<Arc<Decomposition>> {
    if axis == Axis::Z {
        return Err(Error::Domain(
            "z rotations are diagonal and have no cached decomposition".into(),
        ));
    }
    let key = (basis.l(), axis);
    if let Some(found) = cache().read().expect("rotation cache poisoned").get(&key) {
        return Ok(Arc::clone(found));
    }
    let other = (basis.l(), if axis == Axis::X { Axis::Y } else { Axis::X });
    let shared = cache()
        .read()
        .expect("rotation cache poisoned")
        .get(&other)
        .cloned();
    let computed = match shared {
        Some(d) => d,
        None => Arc::new(Decomposition::compute(basis)?),
    };
    // racing writers computed identical values; keep whichever landed first
    let mut map = cache().write().expect("rotation cache poisoned");
    Ok(Arc::clone(map.entry(key).or_insert(computed)))
}

/// `exp(-i (m_a - m_b) pi/2)` applied to `z`, keeping the real part.
fn quarter_turn_real(z: Complex64, dm: i32) -> f64 {
    match dm.rem_euclid(4) {
        0 => z.re,
        1 => z.im,
        2 => -z.re,
        _ => -z.im,
    }
}

fn z_diagonal(basis: AngularBasis, angle: f64) -> DMatrix<Complex64> {
    let n = basis.dim();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::from_polar(1.0, -f64::from(basis.m_at(i)) * angle);
    }
    m
}

pub(crate) fn exp_entries(basis: AngularBasis, spec: RotationSpec) -> Result<DMatrix<Complex64>> {
    let n = basis.dim();
    match spec.axis {
        Axis::Z => Ok(z_diagonal(basis, spec.angle)),
        Axis::X => {
            let dec = decomposition(basis, Axis::X)?;
            let rot = dec.phases(spec.angle);
            let mut m = DMatrix::zeros(n, n);
            for a in 0..n {
                for b in a..n {
                    let v = dec.entry(&rot, a, b);
                    m[(a, b)] = v;
                    m[(b, a)] = v;
                }
            }
            Ok(m)
        }
        Axis::Y => {
            let dec = decomposition(basis, Axis::Y)?;
            let rot = dec.phases(spec.angle);
            let mut m = DMatrix::zeros(n, n);
            for a in 0..n {
                for b in a..n {
                    let s = dec.entry(&rot, a, b);
                    let dm = basis.m_at(a) - basis.m_at(b);
                    m[(a, b)] = Complex64::from(quarter_turn_real(s, dm));
                    m[(b, a)] = Complex64::from(quarter_turn_real(s, -dm));
                }
            }
            Ok(m)
        }
    }
}

/// `exp(-i L_axis angle)`.
pub fn exp_rotation(basis: AngularBasis, spec: RotationSpec) -> Result<RotationOperator> {
    if !spec.angle.is_finite() {
        return Err(Error::NonFinite("rotation angle"));
    }
    let entries = exp_entries(basis, spec)?;
    let structure = Structure::unitary().with_real(spec.axis == Axis::Y);
    Ok(RotationOperator {
        matrix: OperatorMatrix::new(basis, entries, structure)?,
        source: RotationSource::Axis(spec),
    })
}

/// Convenience wrapper around [`exp_rotation`].
pub fn rotation(basis: AngularBasis, axis: Axis, angle: f64) -> Result<RotationOperator> {
    exp_rotation(basis, RotationSpec::new(axis, angle)?)
}

/// `R_z(alpha) R_y(beta) R_z(gamma)`.
pub fn rotation_zyz(
    basis: AngularBasis,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<RotationOperator> {
    for v in [alpha, beta, gamma] {
        if !v.is_finite() {
            return Err(Error::NonFinite("Euler angle"));
        }
    }
    let left = z_diagonal(basis, alpha);
    let middle = exp_entries(
        basis,
        RotationSpec {
            axis: Axis::Y,
            angle: beta,
        },
    )?;
    let right = z_diagonal(basis, gamma);
    let entries = left * middle * right;
    Ok(RotationOperator {
        matrix: OperatorMatrix::new(basis, entries, Structure::unitary())?,
        source: RotationSource::Euler { alpha, beta, gamma },
    })
}

/// Row `m_row` of the Wigner-d matrix `exp(-i L_y beta)`, indexed by column.
pub(crate) fn wigner_d_row(basis: AngularBasis, m_row: i32, beta: f64) -> Result<Vec<f64>> {
    let a = basis.index_of(m_row)?;
    if basis.l() == 0 {
        return Ok(vec![1.0]);
    }
    let dec = decomposition(basis, Axis::Y)?;
    let rot = dec.phases(beta);
    Ok((0..basis.dim())
        .map(|b| quarter_turn_real(dec.entry(&rot, a, b), m_row - basis.m_at(b)))
        .collect())
}

/// `exp(-i L_axis angle)` by Taylor series with scaling and squaring.
/// Reference route for benchmarking; no structure is asserted.
pub fn exp_rotation_taylor(basis: AngularBasis, spec: RotationSpec) -> Result<OperatorMatrix> {
    if !spec.angle.is_finite() {
        return Err(Error::NonFinite("rotation angle"));
    }
    let n = basis.dim();
    let generator = su2::generator(basis, spec.axis);
    let a = generator.entries() * (-I * spec.angle);
    let norm = (0..n)
        .map(|c| a.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = &a * Complex64::from(0.5_f64.powi(squarings));

    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..64 {
        term = &term * &scaled * Complex64::from(1.0 / f64::from(k));
        sum += &term;
        if su2::max_abs(&term) < f64::EPSILON * 0.5 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    OperatorMatrix::general(basis, sum)
}

fn l1_basis() -> AngularBasis {
    AngularBasis::new(1).expect("l=1 is in range")
}

fn real3(rows: [[f64; 3]; 3]) -> DMatrix<Complex64> {
    DMatrix::from_fn(3, 3, |r, c| Complex64::from(rows[r][c]))
}

/// Constant + cosine + sine three-term forms of the l=1 rotations.
pub fn closed_form_l1(axis: Axis, phi: f64) -> OperatorMatrix {
    let (c, s) = (phi.cos(), phi.sin());
    let r2 = std::f64::consts::SQRT_2;
    let entries = match axis {
        Axis::X => {
            real3([[1.0, 0.0, -1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 1.0]]) * Complex64::from(0.5)
                + real3([[1.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 1.0]])
                    * Complex64::from(0.5 * c)
                - real3([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]) * (I * (s / r2))
        }
        Axis::Y => {
            real3([[1.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 1.0]]) * Complex64::from(0.5)
                + real3([[1.0, 0.0, -1.0], [0.0, 2.0, 0.0], [-1.0, 0.0, 1.0]])
                    * Complex64::from(0.5 * c)
                - real3([[0.0, 1.0, 0.0], [-1.0, 0.0, 1.0], [0.0, -1.0, 0.0]])
                    * Complex64::from(s / r2)
        }
        Axis::Z => {
            real3([[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]])
                + real3([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]) * Complex64::from(c)
                - real3([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, -1.0]]) * (I * s)
        }
    };
    OperatorMatrix::general(l1_basis(), entries).expect("3x3 finite entries")
}

/// Trigonometric coefficients of the l=2 x- and y-rotation templates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormL2Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub j: f64,
}

pub fn closed_form_l2_coeffs(phi: f64) -> ClosedFormL2Coefficients {
    let (c1, s1) = (phi.cos(), phi.sin());
    let (c2, s2) = ((2.0 * phi).cos(), (2.0 * phi).sin());
    let r6 = 6.0_f64.sqrt();
    ClosedFormL2Coefficients {
        a: 3.0 / 8.0 + c2 / 8.0 + c1 / 2.0,
        b: -s1 / 2.0 - s2 / 4.0,
        c: r6 / 8.0 * (c2 - 1.0),
        d: -s2 / 4.0 + s1 / 2.0,
        e: 3.0 / 8.0 + c2 / 8.0 - c1 / 2.0,
        f: (c1 + c2) / 2.0,
        g: -r6 / 4.0 * s2,
        h: (c2 - c1) / 2.0,
        j: 0.25 + 0.75 * c2,
    }
}

impl ClosedFormL2Coefficients {
    /// The x-rotation template at l=2.
    pub fn x_rotation(&self) -> OperatorMatrix {
        let r = |v: f64| Complex64::from(v);
        let i = |v: f64| I * v;
        let k = self;
        let rows = [
            [r(k.a), i(k.b), r(k.c), i(k.d), r(k.e)],
            [i(k.b), r(k.f), i(k.g), r(k.h), i(k.d)],
            [r(k.c), i(k.g), r(k.j), i(k.g), r(k.c)],
            [i(k.d), r(k.h), i(k.g), r(k.f), i(k.b)],
            [r(k.e), i(k.d), r(k.c), i(k.b), r(k.a)],
        ];
        template(rows)
    }

    /// The y-rotation template at l=2.
    pub fn y_rotation(&self) -> OperatorMatrix {
        let k = self;
        let rows = [
            [k.a, k.b, -k.c, -k.d, k.e],
            [-k.b, k.f, k.g, -k.h, -k.d],
            [-k.c, -k.g, k.j, k.g, -k.c],
            [k.d, -k.h, -k.g, k.f, k.b],
            [k.e, k.d, -k.c, -k.b, k.a],
        ]
        .map(|row| row.map(Complex64::from));
        template(rows)
    }
}

fn template(rows: [[Complex64; 5]; 5]) -> OperatorMatrix {
    let basis = AngularBasis::new(2).expect("l=2 is in range");
    OperatorMatrix::general(basis, DMatrix::from_fn(5, 5, |r, c| rows[r][c]))
        .expect("5x5 finite entries")
}

/// Closed-form l=2 rotation about any cardinal axis.
pub fn closed_form_l2(axis: Axis, phi: f64) -> OperatorMatrix {
    match axis {
        Axis::X => closed_form_l2_coeffs(phi).x_rotation(),
        Axis::Y => closed_form_l2_coeffs(phi).y_rotation(),
        Axis::Z => {
            let basis = AngularBasis::new(2).expect("l=2 is in range");
            OperatorMatrix::general(basis, z_diagonal(basis, phi)).expect("finite diagonal")
        }
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::su2::{ONE, ZERO};

    fn basis(l: u32) -> AngularBasis {
        AngularBasis::new(l).unwrap()
    }

    #[test]
    fn zero_angle_is_identity() {
        for l in 0..6 {
            for axis in Axis::ALL {
                let r = rotation(basis(l), axis, 0.0).unwrap();
                let id = OperatorMatrix::identity(basis(l));
                assert!(r.matrix().max_abs_diff(&id).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn y_quarter_turn_maps_z_to_x() {
        let b = basis(1);
        let r = rotation(b, Axis::Y, FRAC_PI_2).unwrap();
        let z = su2::state(b, 0).unwrap();
        let x = StateVector::new(
            b,
            vec![
                Complex64::from(-0.5_f64.sqrt()),
                ZERO,
                Complex64::from(0.5_f64.sqrt()),
            ],
        )
        .unwrap();
        assert!(r.apply(&z).unwrap().max_abs_diff(&x).unwrap() < 1e-14);
    }

    #[test]
    fn z_rotation_is_analytic_diagonal() {
        let phi = 0.37;
        let r = rotation(basis(2), Axis::Z, phi).unwrap();
        let expected = [2.0, 1.0, 0.0, -1.0, -2.0];
        for (i, m) in expected.iter().enumerate() {
            let want = Complex64::from_polar(1.0, -m * phi);
            assert!((r.matrix().entries()[(i, i)] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn euler_special_cases() {
        let b = basis(3);
        let id = OperatorMatrix::identity(b);
        assert!(
            rotation_zyz(b, 0.0, 0.0, 0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(&id)
                .unwrap()
                < 1e-14
        );
        let e = rotation_zyz(b, 0.0, 0.8, 0.0).unwrap();
        let y = rotation(b, Axis::Y, 0.8).unwrap();
        assert!(e.matrix().max_abs_diff(y.matrix()).unwrap() < 1e-14);
        let cancel = rotation_zyz(b, 1.1, 0.0, -1.1).unwrap();
        assert!(cancel.matrix().max_abs_diff(&id).unwrap() < 1e-14);
    }

    #[test]
    fn euler_inverse_round_trips() {
        let b = basis(4);
        let r = rotation_zyz(b, 0.3, 1.2, -2.0).unwrap();
        let inv = r.inverse();
        let RotationSource::Euler { alpha, beta, gamma } = inv.source() else {
            panic!("expected Euler source");
        };
        let rebuilt = rotation_zyz(b, alpha, beta, gamma).unwrap();
        assert!(rebuilt.matrix().max_abs_diff(inv.matrix()).unwrap() < 1e-13);
    }

    #[test]
    fn non_finite_angle_rejected() {
        assert!(matches!(
            rotation(basis(1), Axis::X, f64::NAN),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            rotation_zyz(basis(1), 0.0, f64::INFINITY, 0.0),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn closed_form_l1_examples() {
        let x = closed_form_l1(Axis::X, PI);
        let e = x.entries();
        assert!((e[(1, 1)].re + 1.0).abs() < 1e-15);
        assert!(e[(0, 0)].norm() < 1e-15 && e[(2, 2)].norm() < 1e-15);
        assert!((e[(0, 2)].re + 1.0).abs() < 1e-15 && (e[(2, 0)].re + 1.0).abs() < 1e-15);

        let z = closed_form_l1(Axis::Z, FRAC_PI_2);
        let want = [-I, ONE, I];
        for (i, w) in want.iter().enumerate() {
            assert!((z.entries()[(i, i)] - w).norm() < 1e-15);
        }
        let y = closed_form_l1(Axis::Y, 0.0);
        assert!(
            y.max_abs_diff(&OperatorMatrix::identity(l1_basis()))
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn closed_form_l2_coefficient_examples() {
        let k = closed_form_l2_coeffs(PI);
        assert!((k.e - 1.0).abs() < 1e-15);
        let k = closed_form_l2_coeffs(0.0);
        assert_eq!((k.a, k.c, k.j, k.f), (1.0, 0.0, 1.0, 1.0));
        assert_eq!((k.b, k.d, k.e, k.g, k.h), (0.0, 0.0, 0.0, 0.0, 0.0));
        let k = closed_form_l2_coeffs(FRAC_PI_2);
        assert!((k.j + 0.5).abs() < 1e-15);
    }

    #[test]
    fn taylor_reference_matches_eigen_route() {
        for l in [0, 1, 2, 7] {
            for axis in Axis::ALL {
                let spec = RotationSpec::new(axis, 2.3).unwrap();
                let eig = exp_rotation(basis(l), spec).unwrap();
                let tay = exp_rotation_taylor(basis(l), spec).unwrap();
                assert!(
                    eig.matrix().max_abs_diff(&tay).unwrap() < 1e-12,
                    "l={l} {axis}"
                );
            }
        }
    }

    #[test]
    fn wigner_row_matches_full_matrix() {
        let b = basis(5);
        let full = rotation(b, Axis::Y, 1.9).unwrap();
        for m in -5..=5 {
            let row = wigner_d_row(b, m, 1.9).unwrap();
            let r = b.index_of(m).unwrap();
            for (c, v) in row.iter().enumerate() {
                assert!((full.matrix().entries()[(r, c)].re - v).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn decomposition_is_shared_between_threads() {
        let b = basis(9);
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(move || decomposition(b, Axis::X).unwrap()))
            .collect();
        let first = decomposition(b, Axis::X).unwrap();
        for h in handles {
            let d = h.join().unwrap();
            assert!(Arc::ptr_eq(&d, &first) || d.vectors() == first.vectors());
        }
        assert_eq!(first.eigenvalues()[0], 9.0);
    }
}
