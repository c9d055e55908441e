//! Acceptance suite. Run with `--nocapture` to see one line per criterion.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use algebraic_harmonics::mirror::{self, MirrorOperator};
use algebraic_harmonics::oracle::{self, sh_eval};
use algebraic_harmonics::realbasis::named_state;
use algebraic_harmonics::rotor::{self, rotation};
use algebraic_harmonics::su2::{self, AngularBasis, Axis, OperatorMatrix, StateVector};
use algebraic_harmonics::wavefield::{self, evaluate, Part, SphericalPoint, Trig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn basis(l: u32) -> AngularBasis {
    AngularBasis::new(l).unwrap()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `worst < tol` as an outcome with a short report.
fn bound(what: &str, worst: f64, tol: f64) -> Outcome {
    let msg = format!("{what}: worst {worst:.3e} (tol {tol:.0e})");
    if worst < tol {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = true;
    let mut msgs = Vec::new();
    for p in parts {
        match p {
            Ok(m) => msgs.push(m),
            Err(m) => {
                ok = false;
                msgs.push(format!("FAILED {m}"));
            }
        }
    }
    let joined = msgs.join("; ");
    if ok {
        Ok(joined)
    } else {
        Err(joined)
    }
}

fn random_state(rng: &mut ChaCha8Rng, b: AngularBasis) -> StateVector {
    let amps: Vec<Complex64> = (0..b.dim())
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let v = StateVector::new(b, amps).unwrap();
    let n = v.norm();
    v.scale(c(1.0 / n))
}

fn rotation_closed_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b1 = basis(1);
    let b2 = basis(2);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let phi = rng.random_range(-2.0 * PI..2.0 * PI);
        for axis in Axis::ALL {
            // l = 1: L^3 = L, so exp(-i L phi) = 1 - i sin(phi) L - (1 - cos(phi)) L^2
            let g = su2::generator(b1, axis);
            let g2 = g.matmul(&g).unwrap();
            let three_term = OperatorMatrix::identity(b1)
                .add(&g.scale(Complex64::new(0.0, -phi.sin())))
                .unwrap()
                .sub(&g2.scale(c(1.0 - phi.cos())))
                .unwrap();
            let generated = rotation(b1, axis, phi).unwrap();
            worst = worst.max(generated.matrix().max_abs_diff(&three_term).unwrap());
            worst = worst.max(
                generated
                    .matrix()
                    .max_abs_diff(&rotor::closed_form_l1(axis, phi))
                    .unwrap(),
            );

            let generated = rotation(b2, axis, phi).unwrap();
            worst = worst.max(
                generated
                    .matrix()
                    .max_abs_diff(&rotor::closed_form_l2(axis, phi))
                    .unwrap(),
            );
        }
    }
    bound("l=1 and l=2, 100 angles, 3 axes", worst, 1e-12)
}

fn algebra_suite() -> Outcome {
    let mut worst_comm = 0.0_f64;
    let mut worst_cas = 0.0_f64;
    let mut worst_ann = 0.0_f64;
    for l in 0..=10 {
        let b = basis(l);
        let (lx, ly, lz) = (su2::l_x(b), su2::l_y(b), su2::l_z(b));
        let i = Complex64::new(0.0, 1.0);
        for (a, bb, cc) in [(&lx, &ly, &lz), (&ly, &lz, &lx), (&lz, &lx, &ly)] {
            let comm = su2::commutator(a, bb).unwrap();
            worst_comm = worst_comm.max(comm.max_abs_diff(&cc.scale(i)).unwrap());
        }
        let lf = f64::from(l);
        let target = OperatorMatrix::identity(b).scale(c(lf * (lf + 1.0)));
        worst_cas = worst_cas.max(su2::casimir(b).max_abs_diff(&target).unwrap());
        let sum_sq = lx
            .matmul(&lx)
            .unwrap()
            .add(&ly.matmul(&ly).unwrap())
            .unwrap()
            .add(&lz.matmul(&lz).unwrap())
            .unwrap();
        worst_cas = worst_cas.max(sum_sq.max_abs_diff(&target).unwrap());

        let top = su2::state(b, l as i32).unwrap();
        let bottom = su2::state(b, -(l as i32)).unwrap();
        worst_ann = worst_ann.max(su2::ladder_plus(b).apply(&top).unwrap().norm());
        worst_ann = worst_ann.max(su2::ladder_minus(b).apply(&bottom).unwrap().norm());
    }
    all(vec![
        bound("commutators", worst_comm, 1e-12),
        bound("Casimir", worst_cas, 1e-12),
        bound("annihilation", worst_ann, 1e-12),
    ])
}

fn parity_laws() -> Outcome {
    let mut phase_errors = Vec::new();
    let mut worst_fn = 0.0_f64;
    let probe: Vec<SphericalPoint> = [(0.3, 0.2), (1.1, 2.5), (2.0, 4.0), (2.9, 5.9)]
        .iter()
        .map(|&(t, p)| SphericalPoint::new(t, p).unwrap())
        .collect();
    for l in 0..=6u32 {
        let b = basis(l);
        for m in -(l as i32)..=l as i32 {
            let expected = [
                (Axis::X, 1.0, -m),
                (Axis::Y, if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 }, -m),
                (
                    Axis::Z,
                    if (l as i32 + m).rem_euclid(2) == 0 {
                        1.0
                    } else {
                        -1.0
                    },
                    m,
                ),
            ];
            for (axis, alpha, image_m) in expected {
                let pp = mirror::parity_phase(l, m, axis).unwrap();
                if (pp.phase - c(alpha)).norm() > 0.0 || pp.flips_m != (axis != Axis::Z) {
                    phase_errors.push(format!("{axis} l={l} m={m}"));
                }
                let image = mirror::mirror(b, axis)
                    .apply(&su2::state(b, m).unwrap())
                    .unwrap();
                let want = su2::state(b, image_m).unwrap().scale(c(alpha));
                if image.max_abs_diff(&want).unwrap() > 0.0 {
                    phase_errors.push(format!("matrix {axis} l={l} m={m}"));
                }
                // the same phase seen as a reflection of the function itself
                for p in &probe {
                    let lhs = alpha * sh_eval(l, image_m, *p).unwrap();
                    let rhs = sh_eval(l, m, p.mirrored(axis)).unwrap();
                    worst_fn = worst_fn.max((lhs - rhs).norm());
                }
            }
        }
    }
    let phases = if phase_errors.is_empty() {
        Ok("alpha_x, alpha_y, alpha_z exact for l <= 6".to_string())
    } else {
        Err(format!("phase mismatches: {}", phase_errors.join(", ")))
    };

    let mut worst_prod = 0.0_f64;
    let mut worst_dir = 0.0_f64;
    for l in 0..=6 {
        let b = basis(l);
        let (px, py, pz) = (
            mirror::mirror_x(b),
            mirror::mirror_y(b),
            mirror::mirror_z(b),
        );
        let prod =
            |a: &MirrorOperator, bb: &MirrorOperator| a.matrix().matmul(bb.matrix()).unwrap();
        // e^{i L pi} is the rotation by -pi
        for (lhs, axis) in [
            (prod(&px, &py), Axis::Z),
            (prod(&py, &pz), Axis::X),
            (prod(&pz, &px), Axis::Y),
        ] {
            let r = rotation(b, axis, -PI).unwrap();
            worst_prod = worst_prod.max(lhs.max_abs_diff(r.matrix()).unwrap());
        }
        for (theta, phi, target) in [
            (FRAC_PI_2, 0.0, &px),
            (FRAC_PI_2, FRAC_PI_2, &py),
            (0.0, 0.0, &pz),
            (0.0, 1.234, &pz),
        ] {
            let general = mirror::mirror_general(b, theta, phi).unwrap();
            worst_dir = worst_dir.max(general.matrix().max_abs_diff(target.matrix()).unwrap());
        }
    }
    all(vec![
        phases,
        bound("reflected functions", worst_fn, 1e-12),
        bound("mirror products vs pi-rotations", worst_prod, 1e-11),
        bound("P(theta,phi) at cardinal directions", worst_dir, 1e-12),
    ])
}

fn trig_closed_forms() -> Outcome {
    let a = wavefield::pole_amplitude(1);
    let l0 = wavefield::pole_amplitude(2);
    let r3 = 3.0_f64.sqrt();

    let check =
        |label: &str, name: (u32, &str), want: &[(u32, u32, Trig, f64)]| -> (f64, Option<String>) {
            let form =
                wavefield::trig_expansion(&named_state(name.0, name.1).unwrap().vector).unwrap();
            let mut worst = 0.0_f64;
            for &(k, m, phi, coef) in want {
                worst = worst.max((form.coefficient(Part::Re, k, m, phi) - coef).abs());
            }
            let extra = form.terms.iter().any(|t| {
                !want.iter().any(|&(k, m, phi, _)| {
                    t.part == Part::Re && t.k == k && t.m == m && t.phi == phi
                })
            });
            (
                worst,
                extra.then(|| format!("{label} has extra terms: {}", form.formula())),
            )
        };

    let mut worst = 0.0_f64;
    let mut problems = Vec::new();
    for (label, name, want) in [
        ("z", (1, "z"), vec![(1, 0, Trig::Cos, a)]),
        (
            "z2",
            (2, "z2"),
            vec![
                (0, 0, Trig::Cos, l0 / 4.0),
                (2, 0, Trig::Cos, 3.0 * l0 / 4.0),
            ],
        ),
        (
            "xy",
            (2, "xy"),
            vec![
                (0, 2, Trig::Sin, r3 / 4.0 * l0),
                (2, 2, Trig::Sin, -r3 / 4.0 * l0),
            ],
        ),
    ] {
        let (w, extra) = check(label, name, &want);
        worst = worst.max(w);
        problems.extend(extra);
    }

    // L0 is the sin^2(theta) sin(2 phi) amplitude of |xy>, l0 the pole value of |z2>
    let xy = wavefield::trig_expansion(&named_state(2, "xy").unwrap().vector).unwrap();
    let z2 = wavefield::trig_expansion(&named_state(2, "z2").unwrap().vector).unwrap();
    let big_l0 = 2.0 * xy.coefficient(Part::Re, 0, 2, Trig::Sin);
    let small_l0 =
        z2.coefficient(Part::Re, 0, 0, Trig::Cos) + z2.coefficient(Part::Re, 2, 0, Trig::Cos);
    let ratio_err = (big_l0 / small_l0 - r3 / 2.0).abs();

    let mut parts = vec![
        bound("coefficients of |z>, |z2>, |xy>", worst, 1e-10),
        bound("L0/l0 - sqrt3/2", ratio_err, 1e-10),
    ];
    if !problems.is_empty() {
        parts.push(Err(problems.join(", ")));
    }
    all(parts)
}

fn nodal_cones() -> Outcome {
    let cones =
        wavefield::nodal_cones(&named_state(2, "z2").unwrap().vector).map_err(|e| e.to_string())?;
    let deg: Vec<f64> = cones.iter().map(|c| c.to_degrees()).collect();
    if deg.len() != 2 {
        return Err(format!("expected two cones, got {deg:?}"));
    }
    let worst = (deg[0] - 54.7356).abs().max((deg[1] - 125.2644).abs());
    bound(
        &format!("cones at {:.4} and {:.4} deg", deg[0], deg[1]),
        worst,
        1e-3,
    )
}

fn decomposition_identity() -> Outcome {
    let b = basis(2);
    let xz = named_state(2, "xz").unwrap().vector;
    let yz = named_state(2, "yz").unwrap().vector;
    let z2 = named_state(2, "z2").unwrap().vector;
    let from_xz = rotation(b, Axis::Y, -FRAC_PI_4)
        .unwrap()
        .apply(&xz)
        .unwrap();
    let from_yz = rotation(b, Axis::X, FRAC_PI_4).unwrap().apply(&yz).unwrap();
    let sum = from_xz
        .add(&from_yz)
        .unwrap()
        .scale(c(1.0 / 3.0_f64.sqrt()));
    bound(
        "|z2> from rotated |xz> and |yz>",
        sum.max_abs_diff(&z2).unwrap(),
        1e-12,
    )
}

fn oracle_equivalence() -> Outcome {
    let report = oracle::equivalence_report(10, 50).map_err(|e| e.to_string())?;
    let worst = report.iter().map(|d| d.max_abs).fold(0.0, f64::max);
    if report.len() != 121 {
        return Err(format!("expected 121 (l,m) pairs, got {}", report.len()));
    }
    bound("121 (l,m) pairs on 50x50 grid", worst, 1e-10)
}

fn two_sphere_geometry() -> Outcome {
    let a = wavefield::pole_amplitude(1);
    let state = su2::state(basis(1), 0).unwrap();
    let mesh = wavefield::shape_mesh(&state, "1,0", 64, 128, 1.0).map_err(|e| e.to_string())?;
    let mut worst = 0.0_f64;
    for &[x, y, z] in &mesh.vertices {
        let centre = if z >= 0.0 { a / 2.0 } else { -a / 2.0 };
        let lhs = x * x + y * y + (z - centre).powi(2);
        worst = worst.max((lhs - (a / 2.0).powi(2)).abs());
    }
    bound(&format!("{} vertices", mesh.vertices.len()), worst, 1e-10)
}

fn covariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (thetas, phis) = wavefield::mesh_grid(21, 24);
    let mut worst_rot = 0.0_f64;
    let mut worst_mir = 0.0_f64;
    for l in 0..=8 {
        let b = basis(l);
        let psi = random_state(&mut rng, b);
        for axis in Axis::ALL {
            let angle = rng.random_range(-PI..PI);
            let rotated = rotation(b, axis, angle).unwrap().apply(&psi).unwrap();
            let mirrored = mirror::mirror(b, axis).apply(&psi).unwrap();
            for &t in &thetas {
                for &p in &phis {
                    let pt = SphericalPoint::new(t, p).unwrap();
                    let lhs = evaluate(&rotated, pt).unwrap();
                    let rhs = evaluate(&psi, pt.rotated(axis, -angle)).unwrap();
                    worst_rot = worst_rot.max((lhs - rhs).norm());
                    let lhs = evaluate(&mirrored, pt).unwrap();
                    let rhs = evaluate(&psi, pt.mirrored(axis)).unwrap();
                    worst_mir = worst_mir.max((lhs - rhs).norm());
                }
            }
        }
    }

    let mut worst_pole = 0.0_f64;
    for l in 1..=10 {
        let b = basis(l);
        for m in (-(l as i32)..=l as i32).filter(|&m| m != 0) {
            let s = su2::state(b, m).unwrap();
            for theta in [0.0, PI] {
                for phi in [0.0, 0.7, 3.0, 5.5] {
                    let y = evaluate(&s, SphericalPoint::new(theta, phi).unwrap()).unwrap();
                    worst_pole = worst_pole.max(y.norm());
                }
            }
        }
    }
    all(vec![
        bound("rotations", worst_rot, 1e-10),
        bound("mirrors", worst_mir, 1e-10),
        bound("m != 0 at the poles", worst_pole, 1e-13),
    ])
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 9] = [
        ("1 closed-form rotations", rotation_closed_forms),
        ("2 algebra suite", algebra_suite),
        ("3 parity laws", parity_laws),
        ("4 trigonometric closed forms", trig_closed_forms),
        ("5 nodal cones of |z2>", nodal_cones),
        ("6 decomposition identity", decomposition_identity),
        ("7 oracle equivalence", oracle_equivalence),
        ("8 two-sphere geometry of |1,0>", two_sphere_geometry),
        ("9 rotation and mirror covariance", covariance),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(msg) => println!("PASS [{name}] {msg}"),
            Err(msg) => {
                println!("FAIL [{name}] {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
