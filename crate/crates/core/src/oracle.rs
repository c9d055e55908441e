//! Reference spherical harmonics from associated-Legendre recurrences.
//!
//! Nothing here touches the operator algebra; it exists to check the
//! algebraic evaluation against the conventional analytic functions.
//! The Condon-Shortley phase is included in `P_l^m`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::su2::AngularBasis;
use crate::wavefield::{self, SphericalPoint};

fn check_x(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x={x} outside [-1, 1]")));
    }
    Ok(())
}

/// `P_l^m(x)` for `0 <= m <= l`, by upward recurrence in `l`.
pub fn assoc_legendre(l: u32, m: u32, x: f64) -> Result<f64> {
    if m > l {
        return Err(Error::Domain(format!("m={m} exceeds l={l}")));
    }
    check_x(x)?;
    let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    let mut pmm = 1.0;
    let mut odd = 1.0;
    for _ in 0..m {
        pmm *= -odd * somx2;
        odd += 2.0;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut prev = pmm;
    let mut cur = x * f64::from(2 * m + 1) * pmm;
    for ll in (m + 2)..=l {
        let next =
            (f64::from(2 * ll - 1) * x * cur - f64::from(ll + m - 1) * prev) / f64::from(ll - m);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// All `P_l^m(x)` with `0 <= m <= l <= l_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendreTable {
    l_max: u32,
    x: f64,
    values: Vec<f64>,
}

impl LegendreTable {
    pub fn new(l_max: u32, x: f64) -> Result<Self> {
        check_x(x)?;
        let mut values = Vec::with_capacity(((l_max + 1) * (l_max + 2) / 2) as usize);
        for l in 0..=l_max {
            for m in 0..=l {
                values.push(assoc_legendre(l, m, x)?);
            }
        }
        Ok(Self { l_max, x, values })
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn get(&self, l: u32, m: u32) -> Option<f64> {
        (m <= l && l <= self.l_max).then(|| self.values[(l * (l + 1) / 2 + m) as usize])
    }
}

/// Unit-normalized `P_l^m(cos theta)` including `sqrt((2l+1)/4pi (l-m)!/(l+m)!)`,
/// by the normalized recurrence (no factorials).
fn normalized_legendre(l: u32, m: u32, theta: f64) -> f64 {
    let (s, x) = theta.sin_cos();
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        let k = f64::from(k);
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mf = f64::from(m);
    let mut prev = pmm;
    let mut cur = (2.0 * mf + 3.0).sqrt() * x * pmm;
    for ll in (m + 2)..=l {
        let lf = f64::from(ll);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let b = ((lp * lp - mf * mf) / (4.0 * lp * lp - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Y_lm(theta, phi)` with unit norm on the sphere.
pub fn sh_eval(l: u32, m: i32, p: SphericalPoint) -> Result<Complex64> {
    let m_abs = m.unsigned_abs();
    if m_abs > l {
        return Err(Error::Domain(format!("|m|={m_abs} exceeds l={l}")));
    }
    let value = normalized_legendre(l, m_abs, p.theta());
    let positive = Complex64::from_polar(value, f64::from(m_abs) * p.phi());
    if m >= 0 {
        Ok(positive)
    } else if m_abs.is_multiple_of(2) {
        Ok(positive.conj())
    } else {
        Ok(-positive.conj())
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and its derivative
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Product rule on the sphere: Gauss-Legendre in `cos theta` times a
/// uniform `phi` grid.
#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    theta_weights: Vec<f64>,
    phi_weight: f64,
}

impl SphereQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n_theta);
        Self {
            thetas: nodes.iter().map(|x| x.acos()).collect(),
            phis: (0..n_phi)
                .map(|j| 2.0 * PI * j as f64 / n_phi as f64)
                .collect(),
            theta_weights: weights,
            phi_weight: 2.0 * PI / n_phi as f64,
        }
    }

    /// Exact for products of two harmonics with degree up to `l`.
    pub fn for_degree(l: u32) -> Self {
        let n = 2 * l as usize + 2;
        Self::new(n, n)
    }

    /// `sum w_ij f[i][j]` over values laid out as `thetas x phis`.
    pub fn integrate(&self, values: &[Vec<Complex64>]) -> Complex64 {
        values
            .iter()
            .zip(&self.theta_weights)
            .map(|(row, &w)| row.iter().sum::<Complex64>() * (w * self.phi_weight))
            .sum()
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, usize, SphericalPoint)> + '_ {
        self.thetas.iter().enumerate().flat_map(move |(i, &t)| {
            self.phis.iter().enumerate().map(move |(j, &p)| {
                (
                    i,
                    j,
                    SphericalPoint::new(t, p).expect("quadrature nodes lie on the sphere"),
                )
            })
        })
    }
}

/// Worst deviation between pole probing and the recurrence for one `(l, m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deviation {
    pub l: u32,
    pub m: i32,
    pub max_abs: f64,
}

/// Compares `wavefield::evaluate(|l,m>)` with [`sh_eval`] on an `n x n`
/// grid for every `(l, m)` with `l <= l_max`.
pub fn equivalence_report(l_max: u32, n: usize) -> Result<Vec<Deviation>> {
    let (thetas, phis) = wavefield::mesh_grid(n, n);
    let pairs: Vec<(u32, i32)> = (0..=l_max)
        .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m)))
        .collect();
    pairs
        .par_iter()
        .map(|&(l, m)| {
            let basis = AngularBasis::new(l)?;
            let state = crate::su2::state(basis, m)?;
            let grid = wavefield::evaluate_grid(&state, &thetas, &phis)?;
            let mut worst = 0.0_f64;
            for (i, row) in grid.iter().enumerate() {
                for (j, &y) in row.iter().enumerate() {
                    let p = SphericalPoint::new(thetas[i], phis[j])?;
                    worst = worst.max((y - sh_eval(l, m, p)?).norm());
                }
            }
            Ok(Deviation {
                l,
                m,
                max_abs: worst,
            })
        })
        .collect()
}
