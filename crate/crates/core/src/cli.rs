//! The `frontlab` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::GeomError;
use crate::grid::SampleGrid;
use crate::mesh::{build_mesh, MeshOptions, Which, DEFAULT_GRID};
use crate::report::{classify_surface, ClassifyReport};
use crate::surface::{parse_surface, Domain, PolySurface, SurfaceError};
use crate::sweep::{run_sweep, write_csv, SweepSpec};
use crate::verify::{fault_from_env, run_battery, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MATH: i32 = 3;

/// Version of the `classify --json` layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "frontlab",
    version,
    about = "Geometry of cuspidal edges and their parallel and dual surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report frame, curvature, ridge, parallel, contact and dual data at the origin.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Export a sampled surface and its singular set as Wavefront OBJ.
    Mesh {
        file: PathBuf,
        #[arg(long)]
        which: Which,
        /// Offset of the parallel surface (default: 1/κ̂₂ at the origin).
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        #[arg(long, num_args = 2, value_names = ["N", "M"])]
        grid: Option<Vec<usize>>,
        #[arg(long = "box", num_args = 4, value_names = ["UMIN", "UMAX", "VMIN", "VMAX"], allow_negative_numbers = true)]
        bbox: Option<Vec<f64>>,
        #[arg(long)]
        skip_degenerate: bool,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Tabulate normal-form predicates over a coefficient grid as CSV.
    Sweep {
        /// e.g. `b30=-1:1:21,b12=-1:1:21,b20=1`
        #[arg(long, allow_hyphen_values = true)]
        nf: String,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Run the seeded cross-check battery.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Math(GeomError),
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Surface(SurfaceError::Parse { .. } | SurfaceError::Constraint(_)) => {
                Failure::Input(e.to_string())
            }
            e => Failure::Math(e),
        }
    }
}

fn load(path: &Path) -> Result<PolySurface, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("IoError: {}: {e}", path.display())))?;
    parse_surface(&text).map_err(|e| GeomError::from(e).into())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Input(format!("IoError: {}: {e}", path.display())))
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    schema_version: u32,
    file: String,
    #[serde(flatten)]
    report: &'a ClassifyReport,
}

fn mesh_options(
    p: &PolySurface,
    which: Which,
    t: Option<f64>,
    grid: Option<Vec<usize>>,
    bbox: Option<Vec<f64>>,
    skip_degenerate: bool,
) -> Result<MeshOptions, Failure> {
    let domain = match bbox.as_deref() {
        Some(&[umin, umax, vmin, vmax]) => Domain {
            umin,
            umax,
            vmin,
            vmax,
        },
        Some(_) => return Err(Failure::Input("--box takes four numbers".into())),
        None => p.domain.unwrap_or_default(),
    };
    if !(domain.umin < domain.umax && domain.vmin < domain.vmax) {
        return Err(Failure::Input(
            "--box needs umin < umax and vmin < vmax".into(),
        ));
    }
    let (nu, nv) = match grid.as_deref() {
        Some(&[n, m]) => (n, m),
        Some(_) => return Err(Failure::Input("--grid takes two integers".into())),
        None => (DEFAULT_GRID, DEFAULT_GRID),
    };
    if nu < 2 || nv < 2 {
        return Err(Failure::Input(
            "--grid needs at least 2 nodes per axis".into(),
        ));
    }
    if matches!(t, Some(x) if x == 0.0 || !x.is_finite()) {
        return Err(Failure::Input("--t must be finite and non-zero".into()));
    }
    Ok(MeshOptions {
        which,
        t,
        grid: SampleGrid::new(domain, nu, nv),
        skip_degenerate,
    })
}

fn execute(
    cmd: Command,
    tol: &Tolerances,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Input(format!("IoError: {e}"));
    match cmd {
        Command::Classify { file, json } => {
            let p = load(&file)?;
            let r = classify_surface(&p, tol)?;
            if json {
                let doc = ClassifyJson {
                    schema_version: SCHEMA_VERSION,
                    file: file.display().to_string(),
                    report: &r,
                };
                let s = serde_json::to_string_pretty(&doc)
                    .map_err(|e| Failure::Input(e.to_string()))?;
                writeln!(out, "{s}").map_err(io)?;
            } else {
                writeln!(out, "surface: {}", file.display()).map_err(io)?;
                write!(out, "{r}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Mesh {
            file,
            which,
            t,
            grid,
            bbox,
            skip_degenerate,
            output,
        } => {
            let p = load(&file)?;
            let opts = mesh_options(&p, which, t, grid, bbox, skip_degenerate)?;
            let m = build_mesh(&p, &opts, tol)?;
            for w in &m.warnings {
                writeln!(err, "warning: {w}").map_err(io)?;
            }
            write_file(&output, m.to_obj().as_bytes())?;
            writeln!(
                out,
                "wrote {} ({} vertices, {} faces, {} singular segments)",
                output.display(),
                m.vertices.iter().flatten().count(),
                m.faces().len(),
                m.singular.len()
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { nf, output } => {
            let spec: SweepSpec = nf
                .parse()
                .map_err(|e: crate::sweep::SweepSpecError| Failure::Input(e.to_string()))?;
            let rows = run_sweep(&spec, tol);
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| Failure::Input(format!("IoError: {e}")))?;
            write_file(&output, &buf)?;
            writeln!(out, "wrote {} ({} rows)", output.display(), rows.len()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { seed, json } => {
            let r = run_battery(seed, tol, fault_from_env());
            if json {
                let s =
                    serde_json::to_string_pretty(&r).map_err(|e| Failure::Input(e.to_string()))?;
                writeln!(out, "{s}").map_err(io)?;
            } else {
                writeln!(out, "{r}").map_err(io)?;
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let tol = match Tolerances::from_env() {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    match execute(cli.command, &tol, out, err) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            EXIT_MATH
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("frontlab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn unknown_flags_and_commands_are_input_errors() {
        assert_eq!(call(&["classify", "x.surf", "--bogus"]).0, EXIT_INPUT);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(
            call(&["mesh", "x.surf", "--which", "focal", "-o", "a.obj"]).0,
            EXIT_INPUT
        );
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = call(&["classify", "/nonexistent/file.surf"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("IoError"));
    }

    #[test]
    fn bad_sweep_range_is_input_error() {
        let (code, _, err) = call(&["sweep", "--nf", "b30=1:-1:5", "-o", "/dev/null"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("empty range"), "{err}");
    }
}
