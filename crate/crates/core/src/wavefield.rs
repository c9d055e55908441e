//! Wavefunctions on the sphere, evaluated by pole probing.
//!
//! The only amplitude a state has at the north pole is its `m = 0`
//! component, since `<theta=0|l,m> = 0` for `m != 0`. To read the value at
//! `(theta, phi)` the state is rotated back by `R(phi, theta) =
//! exp(-i L_z phi) exp(-i L_y theta)` and its pole amplitude taken:
//!
//! ```text
//! <theta, phi|psi> = N_l * [R(phi, theta)^dagger psi]_{m=0}
//! ```
//!
//! with `N_l = sqrt((2l+1)/4pi)` fixing unit norm on the sphere.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::rotor;
use crate::su2::{AngularBasis, Axis, StateVector, ZERO};

const TWO_PI: f64 = 2.0 * PI;

/// A point on the unit sphere, `theta` in `[0, pi]` and `phi` in `[0, 2pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    theta: f64,
    phi: f64,
}

impl SphericalPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite("spherical point"));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain(format!("theta={theta} outside [0, pi]")));
        }
        if !(0.0..TWO_PI).contains(&phi) {
            return Err(Error::Domain(format!("phi={phi} outside [0, 2pi)")));
        }
        Ok(Self { theta, phi })
    }

    /// Canonical point for arbitrary finite angles.
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite("spherical point"));
        }
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Ok(Self::from_cartesian([st * cp, st * sp, ct]))
    }

    pub fn from_cartesian(v: [f64; 3]) -> Self {
        let [x, y, z] = v;
        let theta = x.hypot(y).atan2(z);
        let mut phi = y.atan2(x).rem_euclid(TWO_PI);
        if phi >= TWO_PI {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Active rotation of the point by `angle` about `axis`.
    pub fn rotated(&self, axis: Axis, angle: f64) -> Self {
        let [x, y, z] = self.to_cartesian();
        let (s, c) = angle.sin_cos();
        let v = match axis {
            Axis::X => [x, c * y - s * z, s * y + c * z],
            Axis::Y => [c * x + s * z, y, -s * x + c * z],
            Axis::Z => [c * x - s * y, s * x + c * y, z],
        };
        Self::from_cartesian(v)
    }

    /// Reflection of the point through the plane normal to `axis`.
    pub fn mirrored(&self, axis: Axis) -> Self {
        let [x, y, z] = self.to_cartesian();
        let v = match axis {
            Axis::X => [-x, y, z],
            Axis::Y => [x, -y, z],
            Axis::Z => [x, y, -z],
        };
        Self::from_cartesian(v)
    }
}

/// `N_l = sqrt((2l+1)/4pi)`, the pole value of the unit-norm `|l,0>`.
pub fn pole_amplitude(l: u32) -> f64 {
    ((2.0 * f64::from(l) + 1.0) / (4.0 * PI)).sqrt()
}

/// Pole-probe weights for one polar angle: `N_l d_{0,j}(-theta)`.
struct ThetaRow {
    weights: Vec<f64>,
}

impl ThetaRow {
    fn new(basis: AngularBasis, theta: f64) -> Result<Self> {
        let n_l = pole_amplitude(basis.l());
        let weights = rotor::wigner_d_row(basis, 0, -theta)?
            .into_iter()
            .map(|d| d * n_l)
            .collect();
        Ok(Self { weights })
    }

    fn value(&self, basis: AngularBasis, amplitudes: &DVector<Complex64>, phi: f64) -> Complex64 {
        self.weights
            .iter()
            .zip(amplitudes.iter())
            .enumerate()
            .map(|(j, (&w, &a))| a * Complex64::from_polar(w, f64::from(basis.m_at(j)) * phi))
            .sum()
    }
}

/// `<theta, phi|psi>`.
pub fn evaluate(state: &StateVector, p: SphericalPoint) -> Result<Complex64> {
    let basis = state.basis();
    let row = ThetaRow::new(basis, p.theta)?;
    Ok(row.value(basis, state.amplitudes(), p.phi))
}

/// Values on the tensor grid `thetas x phis`, row-major in theta.
pub fn evaluate_grid(
    state: &StateVector,
    thetas: &[f64],
    phis: &[f64],
) -> Result<Vec<Vec<Complex64>>> {
    let basis = state.basis();
    thetas
        .par_iter()
        .map(|&theta| {
            let row = ThetaRow::new(basis, theta)?;
            Ok(phis
                .iter()
                .map(|&phi| row.value(basis, state.amplitudes(), phi))
                .collect())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Cos,
    Sin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Re,
    Im,
}

/// One term `c * theta_fn(k theta) * phi_fn(m phi)` of the real or
/// imaginary part. The polar function is `cos` for even `m`, `sin` for odd.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub part: Part,
    pub k: u32,
    pub m: u32,
    pub phi: Trig,
    pub coefficient: f64,
}

impl TrigTerm {
    pub fn theta_fn(&self) -> Trig {
        theta_trig(self.m)
    }

    fn basis_value(&self, theta: f64, phi: f64) -> f64 {
        let t = match self.theta_fn() {
            Trig::Cos => (f64::from(self.k) * theta).cos(),
            Trig::Sin => (f64::from(self.k) * theta).sin(),
        };
        let p = match self.phi {
            Trig::Cos => (f64::from(self.m) * phi).cos(),
            Trig::Sin => (f64::from(self.m) * phi).sin(),
        };
        t * p
    }
}

fn theta_trig(m: u32) -> Trig {
    if m.is_multiple_of(2) {
        Trig::Cos
    } else {
        Trig::Sin
    }
}

/// Exact band-limited trigonometric form of a wavefunction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigForm {
    pub l: u32,
    pub terms: Vec<TrigTerm>,
}

/// Coefficients below this magnitude are dropped.
pub const PRUNE_TOL: f64 = 1e-12;

impl TrigForm {
    pub fn evaluate(&self, p: SphericalPoint) -> Complex64 {
        self.terms.iter().fold(ZERO, |acc, t| {
            let v = t.coefficient * t.basis_value(p.theta, p.phi);
            match t.part {
                Part::Re => acc + v,
                Part::Im => acc + Complex64::new(0.0, v),
            }
        })
    }

    /// Coefficient of one term, zero when pruned or absent.
    pub fn coefficient(&self, part: Part, k: u32, m: u32, phi: Trig) -> f64 {
        self.terms
            .iter()
            .find(|t| t.part == part && t.k == k && t.m == m && t.phi == phi)
            .map_or(0.0, |t| t.coefficient)
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.part == Part::Re)
    }

    /// Human-readable formula, e.g. `0.48860251190291992 cos(1θ)`.
    pub fn formula(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if t.coefficient < 0.0 { '-' } else { '+' };
            if i == 0 {
                if sign == '-' {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let _ = write!(out, "{}", fmt_f64(t.coefficient.abs()));
            if t.part == Part::Im {
                out.push_str(" i");
            }
            let theta = match (t.theta_fn(), t.k) {
                (Trig::Cos, 0) => String::new(),
                (Trig::Cos, k) => format!(" cos({k}θ)"),
                (Trig::Sin, k) => format!(" sin({k}θ)"),
            };
            out.push_str(&theta);
            if t.m > 0 {
                let f = if t.phi == Trig::Cos { "cos" } else { "sin" };
                let _ = write!(out, " {f}({}φ)", t.m);
            }
        }
        out
    }
}

impl fmt::Display for TrigForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.formula())
    }
}

/// Least-squares solver for polar profiles in `{cos k theta}` or `{sin k theta}`.
struct ProfileFit {
    ks: Vec<u32>,
    svd: nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl ProfileFit {
    fn new(l: u32, trig: Trig, thetas: &[f64]) -> Result<Self> {
        let ks: Vec<u32> = match trig {
            Trig::Cos => (0..=l).collect(),
            Trig::Sin => (1..=l).collect(),
        };
        let a = DMatrix::from_fn(thetas.len(), ks.len(), |r, c| {
            let x = f64::from(ks[c]) * thetas[r];
            match trig {
                Trig::Cos => x.cos(),
                Trig::Sin => x.sin(),
            }
        });
        let svd = a.svd(true, true);
        if let (Some(max), Some(min)) = (
            svd.singular_values.iter().copied().reduce(f64::max),
            svd.singular_values.iter().copied().reduce(f64::min),
        ) {
            if min <= 1e-10 * max {
                return Err(Error::IllConditioned(format!(
                    "polar design matrix singular values {min:.3e}/{max:.3e}"
                )));
            }
        }
        Ok(Self { ks, svd })
    }

    fn solve(&self, samples: &DVector<f64>) -> Result<Vec<(u32, f64)>> {
        if self.ks.is_empty() {
            return Ok(Vec::new());
        }
        let x = self
            .svd
            .solve(samples, 0.0)
            .map_err(|e| Error::IllConditioned(e.to_string()))?;
        Ok(self.ks.iter().copied().zip(x.iter().copied()).collect())
    }
}

/// Fits the exact trigonometric form of `state` from a `(2l+2) x (2l+2)`
/// sample grid.
pub fn trig_expansion(state: &StateVector) -> Result<TrigForm> {
    let l = state.basis().l();
    let n = 2 * l as usize + 2;
    let thetas: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * PI / n as f64).collect();
    let phis: Vec<f64> = (0..n).map(|j| j as f64 * TWO_PI / n as f64).collect();
    let grid = evaluate_grid(state, &thetas, &phis)?;

    let even = ProfileFit::new(l, Trig::Cos, &thetas)?;
    // sin k theta with 1 <= k <= l is empty at l = 0, where no odd m exists
    let odd = if l > 0 {
        Some(ProfileFit::new(l, Trig::Sin, &thetas)?)
    } else {
        None
    };

    let mut terms = Vec::new();
    for m in 0..=l {
        let fit = if m % 2 == 0 {
            &even
        } else {
            odd.as_ref().expect("odd m implies l >= 1")
        };
        // Fourier coefficients in phi at every sampled theta
        let mut cos_part = vec![ZERO; n];
        let mut sin_part = vec![ZERO; n];
        for (i, row) in grid.iter().enumerate() {
            let norm = if m == 0 { 1.0 } else { 2.0 } / n as f64;
            for (j, &y) in row.iter().enumerate() {
                let (s, c) = (f64::from(m) * phis[j]).sin_cos();
                cos_part[i] += y * (c * norm);
                sin_part[i] += y * (s * norm);
            }
        }
        for (phi, profile) in [(Trig::Cos, &cos_part), (Trig::Sin, &sin_part)] {
            if m == 0 && phi == Trig::Sin {
                continue;
            }
            for part in [Part::Re, Part::Im] {
                let samples = DVector::from_iterator(
                    n,
                    profile
                        .iter()
                        .map(|z| if part == Part::Re { z.re } else { z.im }),
                );
                for (k, coefficient) in fit.solve(&samples)? {
                    if coefficient.abs() >= PRUNE_TOL {
                        terms.push(TrigTerm {
                            part,
                            k,
                            m,
                            phi,
                            coefficient,
                        });
                    }
                }
            }
        }
    }
    terms.sort_by_key(|t| (t.part, t.m, t.phi, t.k));
    Ok(TrigForm { l, terms })
}

/// Largest `|amplitude|` outside `m = 0`.
fn off_axis_weight(state: &StateVector) -> f64 {
    let basis = state.basis();
    state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| basis.m_at(*i) != 0)
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max)
}

/// Polar angles in `(0, pi)` where an axially symmetric state vanishes.
pub fn nodal_cones(state: &StateVector) -> Result<Vec<f64>> {
    let off = off_axis_weight(state);
    if off >= 1e-10 * state.norm().max(1.0) {
        return Err(Error::NotAxisymmetric(off));
    }
    let zonal = state.component(0)?;
    if zonal.norm() == 0.0 {
        return Ok(Vec::new());
    }
    let form = trig_expansion(state)?;
    let phase = zonal.conj() / zonal.norm();
    let profile = |theta: f64| {
        let p = SphericalPoint { theta, phi: 0.0 };
        (phase * form.evaluate(p)).re
    };

    let intervals = 64 * (state.basis().l() as usize + 1);
    let h = PI / intervals as f64;
    let mut roots = Vec::new();
    let mut a = 0.0;
    let mut fa = profile(a);
    for i in 1..=intervals {
        let b = if i == intervals { PI } else { i as f64 * h };
        let fb = profile(b);
        if fa == 0.0 && i > 1 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            roots.push(bisect(&profile, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseSign {
    Plus,
    Minus,
}

impl PhaseSign {
    pub fn group_name(self) -> &'static str {
        match self {
            PhaseSign::Plus => "phase_plus",
            PhaseSign::Minus => "phase_minus",
        }
    }

    fn of(v: f64) -> Self {
        if v < 0.0 {
            PhaseSign::Minus
        } else {
            PhaseSign::Plus
        }
    }
}

/// Latitude-longitude surface `r = gain * |Y(theta, phi)|`.
///
/// Row `i` sits at `theta = i pi / (n_theta - 1)`, column `j` at
/// `phi = 2 pi j / n_phi`; pole rows repeat one vertex per column.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeMesh {
    pub n_theta: usize,
    pub n_phi: usize,
    pub gain: f64,
    pub label: String,
    pub l: u32,
    pub vertices: Vec<[f64; 3]>,
    /// Signed wavefunction value at each vertex.
    pub values: Vec<f64>,
    pub signs: Vec<PhaseSign>,
}

pub const MIN_RESOLUTION: usize = 8;

pub fn mesh_grid(n_theta: usize, n_phi: usize) -> (Vec<f64>, Vec<f64>) {
    let thetas = (0..n_theta)
        .map(|i| {
            if n_theta == 1 {
                0.0
            } else {
                i as f64 * PI / (n_theta - 1) as f64
            }
        })
        .collect();
    let phis = (0..n_phi)
        .map(|j| j as f64 * TWO_PI / n_phi as f64)
        .collect();
    (thetas, phis)
}

pub fn shape_mesh(
    state: &StateVector,
    label: &str,
    n_theta: usize,
    n_phi: usize,
    gain: f64,
) -> Result<ShapeMesh> {
    if n_theta < MIN_RESOLUTION || n_phi < MIN_RESOLUTION {
        return Err(Error::Domain(format!(
            "mesh resolution {n_theta}x{n_phi} below {MIN_RESOLUTION}x{MIN_RESOLUTION}"
        )));
    }
    if !gain.is_finite() || gain <= 0.0 {
        return Err(Error::Domain(format!(
            "gain must be positive and finite, got {gain}"
        )));
    }
    let (thetas, phis) = mesh_grid(n_theta, n_phi);
    let grid = evaluate_grid(state, &thetas, &phis)?;

    let scale = grid.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let imag = grid
        .iter()
        .flatten()
        .map(|z| z.im.abs())
        .fold(0.0, f64::max);
    if imag > 1e-10 * scale.max(1.0) {
        return Err(Error::ComplexValued(imag));
    }

    let mut vertices = Vec::with_capacity(n_theta * n_phi);
    let mut values = Vec::with_capacity(n_theta * n_phi);
    let mut signs = Vec::with_capacity(n_theta * n_phi);
    let zero = 1e-13 * scale;
    for (i, row) in grid.iter().enumerate() {
        for (j, y) in row.iter().enumerate() {
            let p = SphericalPoint {
                theta: thetas[i],
                phi: phis[j],
            };
            let r = y.re.abs();
            let [x, yy, z] = p.to_cartesian();
            vertices.push([gain * r * x, gain * r * yy, gain * r * z]);
            values.push(y.re);
            let sign = if r <= zero && (i == 0 || i == n_theta - 1) {
                // pole: follow the adjacent latitude
                let neighbour = if i == 0 { 1 } else { n_theta - 2 };
                PhaseSign::of(grid[neighbour][j].re)
            } else {
                PhaseSign::of(y.re)
            };
            signs.push(sign);
        }
    }
    Ok(ShapeMesh {
        n_theta,
        n_phi,
        gain,
        label: label.to_string(),
        l: state.basis().l(),
        vertices,
        values,
        signs,
    })
}

impl ShapeMesh {
    pub fn vertex_index(&self, i: usize, j: usize) -> usize {
        i * self.n_phi + j
    }

    /// Quad faces as vertex indices, counter-clockwise seen from outside.
    pub fn faces(&self) -> Vec<[usize; 4]> {
        let mut faces = Vec::with_capacity((self.n_theta - 1) * self.n_phi);
        for i in 0..self.n_theta - 1 {
            for j in 0..self.n_phi {
                let jn = (j + 1) % self.n_phi;
                faces.push([
                    self.vertex_index(i, j),
                    self.vertex_index(i + 1, j),
                    self.vertex_index(i + 1, jn),
                    self.vertex_index(i, jn),
                ]);
            }
        }
        faces
    }

    fn face_sign(&self, face: &[usize; 4]) -> PhaseSign {
        let total: f64 = face
            .iter()
            .map(|&v| match self.signs[v] {
                PhaseSign::Plus => self.values[v].abs(),
                PhaseSign::Minus => -self.values[v].abs(),
            })
            .sum();
        if total == 0.0 {
            // all four corners on a node; fall back to the first corner's sign
            self.signs[face[0]]
        } else {
            PhaseSign::of(total)
        }
    }

    /// Wavefront OBJ with faces split into `phase_plus` / `phase_minus` groups.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# shape mesh r = |Y(theta, phi)|");
        let _ = writeln!(
            out,
            "# state {} l={} resolution {}x{} gain {}",
            self.label,
            self.l,
            self.n_theta,
            self.n_phi,
            fmt_f64(self.gain)
        );
        let _ = writeln!(out, "o {}", sanitize(&self.label));
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "v {} {} {}",
                fmt_f64(v[0]),
                fmt_f64(v[1]),
                fmt_f64(v[2])
            );
        }
        let faces = self.faces();
        for sign in [PhaseSign::Plus, PhaseSign::Minus] {
            let group: Vec<_> = faces.iter().filter(|f| self.face_sign(f) == sign).collect();
            if group.is_empty() {
                continue;
            }
            let _ = writeln!(out, "g {}", sign.group_name());
            let _ = writeln!(out, "usemtl {}", sign.group_name());
            for f in group {
                let _ = writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
            }
        }
        out
    }
}

fn sanitize(label: &str) -> String {
    let s: String = label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() {
        "state".to_string()
    } else {
        s
    }
}
