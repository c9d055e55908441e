//! Command-line front end shared by the `harmonics` binary and the tests.
//!
//! Exit codes: 0 on success, 1 on numeric or validation failures, 2 on
//! usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{fmt_f64, to_json_string, MatrixFile, StateFile};
use crate::su2::{self, AngularBasis, Axis, Generator, StateVector};
use crate::wavefield::{self, Part, SphericalPoint, Trig};
use crate::{bench, mirror, oracle, realbasis, rotor};

/// Tolerance used by `verify`.
pub const VERIFY_TOL: f64 = 1e-10;
const VERIFY_GRID: usize = 50;

#[derive(Debug, Parser)]
#[command(
    name = "harmonics",
    version,
    about = "Spherical harmonics from angular-momentum algebra"
)]
struct Cli {
    /// Read and write angles in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OpName {
    #[value(name = "Lx")]
    Lx,
    #[value(name = "Ly")]
    Ly,
    #[value(name = "Lz")]
    Lz,
    #[value(name = "Lplus")]
    Lplus,
    #[value(name = "Lminus")]
    Lminus,
    #[value(name = "L2")]
    L2,
    #[value(name = "Px")]
    Px,
    #[value(name = "Py")]
    Py,
    #[value(name = "Pz")]
    Pz,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StateArgs {
    /// Eigenstate |l,m> as `L,M`.
    #[arg(long, allow_hyphen_values = true)]
    lm: Option<String>,
    /// Real-basis state as `L:NAME`, e.g. `2:z2` or `3:c2`.
    #[arg(long)]
    named: Option<String>,
    /// JSON amplitude file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an operator matrix as JSON.
    Matrices {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long)]
        op: OpName,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rotation matrix about a cardinal axis or by z-y-z Euler angles.
    Rotate {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, value_parser = parse_axis, conflicts_with = "euler", requires = "angle")]
        axis: Option<Axis>,
        #[arg(long, allow_hyphen_values = true, requires = "axis")]
        angle: Option<f64>,
        /// `ALPHA,BETA,GAMMA` for R_z(alpha) R_y(beta) R_z(gamma).
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<String>,
        /// Emit the rotated state instead of the matrix.
        #[arg(long)]
        apply: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Mirror operator along a cardinal axis or a direction `THETA,PHI`.
    Mirror {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, value_parser = parse_axis, conflicts_with = "dir")]
        axis: Option<Axis>,
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<String>,
        #[arg(long)]
        apply: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a wavefunction at a point or on a grid (CSV).
    Eval {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
        point: Option<String>,
        /// `NTxNP` latitude-longitude grid including both poles.
        #[arg(long)]
        grid: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Closed trigonometric form of a wavefunction (JSON).
    Trig {
        #[command(flatten)]
        state: StateArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shape mesh r = |Y| as Wavefront OBJ.
    Mesh {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        res: String,
        #[arg(long, default_value_t = 1.0)]
        gain: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare pole probing against the Legendre recurrence.
    Verify {
        #[arg(long, default_value_t = 10)]
        lmax: u32,
    },
    /// Time the exponential routes.
    Bench {
        /// Comma-separated l values.
        #[arg(long)]
        l: String,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_axis(s: &str) -> std::result::Result<Axis, String> {
    s.parse::<Axis>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx<'a> {
    degrees: bool,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn angle_in(&self, v: f64) -> f64 {
        if self.degrees {
            v.to_radians()
        } else {
            v
        }
    }

    fn angle_out(&self, v: f64) -> f64 {
        if self.degrees {
            v.to_degrees()
        } else {
            v
        }
    }

    fn emit(&mut self, output: Option<&Path>, text: &str) -> Result<()> {
        match output {
            Some(path) => std::fs::write(path, text)?,
            None => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        degrees: cli.degrees,
        stdout,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "usage error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(stderr, "error: {}", e.to_string().replace('\n', " "));
            1
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> CliResult<i32> {
    match command {
        Command::Matrices { l, op, output } => matrices(ctx, l, op, output.as_deref()),
        Command::Rotate {
            l,
            axis,
            angle,
            euler,
            apply,
            output,
        } => rotate(
            ctx,
            l,
            axis,
            angle,
            euler.as_deref(),
            apply.as_deref(),
            output.as_deref(),
        ),
        Command::Mirror {
            l,
            axis,
            dir,
            apply,
            output,
        } => mirror_cmd(
            ctx,
            l,
            axis,
            dir.as_deref(),
            apply.as_deref(),
            output.as_deref(),
        ),
        Command::Eval {
            state,
            point,
            grid,
            output,
        } => eval(
            ctx,
            &state,
            point.as_deref(),
            grid.as_deref(),
            output.as_deref(),
        ),
        Command::Trig { state, output } => trig(ctx, &state, output.as_deref()),
        Command::Mesh {
            state,
            res,
            gain,
            output,
        } => mesh(ctx, &state, &res, gain, &output),
        Command::Verify { lmax } => verify(ctx, lmax),
        Command::Bench { l, reps, output } => bench_cmd(ctx, &l, reps, output.as_deref()),
    }
}

fn parse_list(field: &str, text: &str, expected: usize) -> Result<Vec<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::parse(field, format!("{s:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if values.len() != expected {
        return Err(Error::parse(
            field,
            format!(
                "expected {expected} comma-separated numbers, got {}",
                values.len()
            ),
        ));
    }
    Ok(values)
}

fn parse_resolution(field: &str, text: &str) -> Result<(usize, usize)> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::parse(field, format!("expected NTxNP, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| Error::parse(field, format!("{s:?}: {e}")))
    };
    Ok((parse(a)?, parse(b)?))
}

/// Resolves a state specification to a vector plus a display label.
pub fn resolve_state(
    lm: Option<&str>,
    named: Option<&str>,
    file: Option<&Path>,
) -> Result<(StateVector, String)> {
    match (lm, named, file) {
        (Some(text), None, None) => {
            let (l, m) = text
                .split_once(',')
                .ok_or_else(|| Error::parse("lm", format!("expected L,M, got {text:?}")))?;
            let l: i64 = l
                .trim()
                .parse()
                .map_err(|e| Error::parse("lm", format!("l: {e}")))?;
            let m: i32 = m
                .trim()
                .parse()
                .map_err(|e| Error::parse("lm", format!("m: {e}")))?;
            let basis = su2::build_basis(l)?;
            Ok((su2::state(basis, m)?, format!("{l},{m}")))
        }
        (None, Some(text), None) => {
            let (l, name) = text
                .split_once(':')
                .ok_or_else(|| Error::parse("named", format!("expected L:NAME, got {text:?}")))?;
            let l: u32 = l
                .trim()
                .parse()
                .map_err(|e| Error::parse("named", format!("l: {e}")))?;
            let state = realbasis::named_state(l, name)?;
            Ok((state.vector, format!("{l}:{}", state.name)))
        }
        (None, None, Some(path)) => {
            let file = StateFile::read(path)?;
            let label = file.label.clone().unwrap_or_else(|| {
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "state".into())
            });
            Ok((file.to_state()?, label))
        }
        _ => Err(Error::parse(
            "state",
            "give exactly one of --lm, --named or --file",
        )),
    }
}

fn state_from_args(args: &StateArgs) -> Result<(StateVector, String)> {
    resolve_state(
        args.lm.as_deref(),
        args.named.as_deref(),
        args.file.as_deref(),
    )
}

fn matrices(ctx: &mut Ctx<'_>, l: i64, op: OpName, output: Option<&Path>) -> CliResult<i32> {
    let basis = su2::build_basis(l)?;
    let (matrix, name) = match op {
        OpName::Lx => (Generator::Lx.matrix(basis), "Lx"),
        OpName::Ly => (Generator::Ly.matrix(basis), "Ly"),
        OpName::Lz => (Generator::Lz.matrix(basis), "Lz"),
        OpName::Lplus => (Generator::Lplus.matrix(basis), "Lplus"),
        OpName::Lminus => (Generator::Lminus.matrix(basis), "Lminus"),
        OpName::L2 => (Generator::Casimir.matrix(basis), "L2"),
        OpName::Px => (mirror::mirror_x(basis).into_matrix(), "Px"),
        OpName::Py => (mirror::mirror_y(basis).into_matrix(), "Py"),
        OpName::Pz => (mirror::mirror_z(basis).into_matrix(), "Pz"),
    };
    let text = to_json_string(&MatrixFile::from_operator(&matrix, Some(name)))?;
    ctx.emit(output, &text)?;
    Ok(0)
}

fn read_state_for(basis: AngularBasis, path: &Path) -> Result<StateVector> {
    let state = StateFile::read(path)?.to_state()?;
    if state.basis() != basis {
        return Err(Error::BasisMismatch {
            left: basis.l(),
            right: state.basis().l(),
        });
    }
    Ok(state)
}

#[allow(clippy::too_many_arguments)]
fn rotate(
    ctx: &mut Ctx<'_>,
    l: i64,
    axis: Option<Axis>,
    angle: Option<f64>,
    euler: Option<&str>,
    apply: Option<&Path>,
    output: Option<&Path>,
) -> CliResult<i32> {
    let basis = su2::build_basis(l)?;
    let (rotation, name) = match (axis, angle, euler) {
        (Some(axis), Some(angle), None) => {
            let angle = ctx.angle_in(angle);
            let r = rotor::rotation(basis, axis, angle)?;
            (r, format!("exp(-i L{axis} {})", fmt_f64(angle)))
        }
        (None, None, Some(text)) => {
            let v = parse_list("euler", text, 3)?;
            let (a, b, g) = (ctx.angle_in(v[0]), ctx.angle_in(v[1]), ctx.angle_in(v[2]));
            let r = rotor::rotation_zyz(basis, a, b, g)?;
            (
                r,
                format!("Rz({}) Ry({}) Rz({})", fmt_f64(a), fmt_f64(b), fmt_f64(g)),
            )
        }
        _ => {
            return Err(Failure::Usage(
                "rotate needs either --axis with --angle, or --euler".into(),
            ))
        }
    };
    let text = match apply {
        Some(path) => {
            let state = read_state_for(basis, path)?;
            to_json_string(&StateFile::from_state(&rotation.apply(&state)?, None))?
        }
        None => to_json_string(&MatrixFile::from_operator(rotation.matrix(), Some(&name)))?,
    };
    ctx.emit(output, &text)?;
    Ok(0)
}

fn mirror_cmd(
    ctx: &mut Ctx<'_>,
    l: i64,
    axis: Option<Axis>,
    dir: Option<&str>,
    apply: Option<&Path>,
    output: Option<&Path>,
) -> CliResult<i32> {
    let basis = su2::build_basis(l)?;
    let (op, name) = match (axis, dir) {
        (Some(axis), None) => (mirror::mirror(basis, axis), format!("P{axis}")),
        (None, Some(text)) => {
            let v = parse_list("dir", text, 2)?;
            let (theta, phi) = (ctx.angle_in(v[0]), ctx.angle_in(v[1]));
            (
                mirror::mirror_general(basis, theta, phi)?,
                format!("P({}, {})", fmt_f64(theta), fmt_f64(phi)),
            )
        }
        _ => return Err(Failure::Usage("mirror needs --axis or --dir".into())),
    };
    let text = match apply {
        Some(path) => {
            let state = read_state_for(basis, path)?;
            to_json_string(&StateFile::from_state(&op.apply(&state)?, None))?
        }
        None => to_json_string(&MatrixFile::from_operator(op.matrix(), Some(&name)))?,
    };
    ctx.emit(output, &text)?;
    Ok(0)
}

fn eval(
    ctx: &mut Ctx<'_>,
    state: &StateArgs,
    point: Option<&str>,
    grid: Option<&str>,
    output: Option<&Path>,
) -> CliResult<i32> {
    let (state, _) = state_from_args(state)?;
    let (thetas, phis) = match (point, grid) {
        (Some(text), None) => {
            let v = parse_list("point", text, 2)?;
            let p = SphericalPoint::new(ctx.angle_in(v[0]), ctx.angle_in(v[1]))?;
            (vec![p.theta()], vec![p.phi()])
        }
        (None, Some(text)) => {
            let (nt, np) = parse_resolution("grid", text)?;
            if nt == 0 || np == 0 {
                return Err(Error::parse("grid", "resolution must be positive").into());
            }
            wavefield::mesh_grid(nt, np)
        }
        _ => return Err(Failure::Usage("eval needs --point or --grid".into())),
    };
    let values = wavefield::evaluate_grid(&state, &thetas, &phis)?;
    let mut csv = String::from("theta,phi,re,im\n");
    for (i, row) in values.iter().enumerate() {
        for (j, y) in row.iter().enumerate() {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(ctx.angle_out(thetas[i])),
                fmt_f64(ctx.angle_out(phis[j])),
                fmt_f64(y.re),
                fmt_f64(y.im)
            ));
        }
    }
    ctx.emit(output, &csv)?;
    Ok(0)
}

#[derive(Serialize)]
struct TermView {
    part: Part,
    k: u32,
    theta: Trig,
    m: u32,
    phi: Trig,
    coefficient: f64,
}

#[derive(Serialize)]
struct TrigView {
    state: String,
    l: u32,
    terms: Vec<TermView>,
    formula: String,
}

fn trig(ctx: &mut Ctx<'_>, state: &StateArgs, output: Option<&Path>) -> CliResult<i32> {
    let (state, label) = state_from_args(state)?;
    let form = wavefield::trig_expansion(&state)?;
    let view = TrigView {
        state: label,
        l: form.l,
        terms: form
            .terms
            .iter()
            .map(|t| TermView {
                part: t.part,
                k: t.k,
                theta: t.theta_fn(),
                m: t.m,
                phi: t.phi,
                coefficient: t.coefficient,
            })
            .collect(),
        formula: form.formula(),
    };
    ctx.emit(output, &to_json_string(&view)?)?;
    if output.is_some() {
        writeln!(ctx.stdout, "Y = {}", view.formula).map_err(Error::from)?;
    }
    Ok(0)
}

fn mesh(
    ctx: &mut Ctx<'_>,
    state: &StateArgs,
    res: &str,
    gain: f64,
    output: &Path,
) -> CliResult<i32> {
    let (state, label) = state_from_args(state)?;
    let (nt, np) = parse_resolution("res", res)?;
    let mesh = wavefield::shape_mesh(&state, &label, nt, np, gain)?;
    std::fs::write(output, mesh.to_obj()).map_err(Error::from)?;
    let faces = mesh.faces().len();
    writeln!(
        ctx.stdout,
        "wrote {} ({} vertices, {} faces)",
        output.display(),
        mesh.vertices.len(),
        faces
    )
    .map_err(Error::from)?;
    if let Ok(cones) = wavefield::nodal_cones(&state) {
        let list: Vec<String> = cones
            .iter()
            .map(|&c| format!("{:.4}", ctx.angle_out(c)))
            .collect();
        let unit = if ctx.degrees { "deg" } else { "rad" };
        writeln!(ctx.stdout, "nodal cones ({unit}): {}", list.join(", ")).map_err(Error::from)?;
    }
    Ok(0)
}

fn verify(ctx: &mut Ctx<'_>, lmax: u32) -> CliResult<i32> {
    if lmax > su2::MAX_L {
        return Err(Error::Range {
            l: i64::from(lmax),
            max: su2::MAX_L,
        }
        .into());
    }
    let report = oracle::equivalence_report(lmax, VERIFY_GRID)?;
    let mut text = String::from("l,m,max_deviation\n");
    let mut worst = 0.0_f64;
    for d in &report {
        text.push_str(&format!("{},{},{}\n", d.l, d.m, fmt_f64(d.max_abs)));
        worst = worst.max(d.max_abs);
    }
    let pass = worst < VERIFY_TOL;
    text.push_str(&format!(
        "# {} (l <= {lmax}, {VERIFY_GRID}x{VERIFY_GRID} grid, worst {} vs tolerance {})\n",
        if pass { "PASS" } else { "FAIL" },
        fmt_f64(worst),
        fmt_f64(VERIFY_TOL)
    ));
    ctx.emit(None, &text)?;
    Ok(if pass { 0 } else { 1 })
}

fn bench_cmd(ctx: &mut Ctx<'_>, ls: &str, reps: usize, output: Option<&Path>) -> CliResult<i32> {
    let ls: Vec<u32> = ls
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|e| Error::parse("l", format!("{s:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    let rows = bench::run(&ls, reps)?;
    ctx.emit(output, &bench::to_csv(&rows))?;
    Ok(0)
}
