//! The `hcmc` command line: profiles, classification, translation
//! curves, estimates, limaçons, meshes and parameter sweeps.
//!
//! Exit codes: 0 on success, 2 for inadmissible parameters or bad usage,
//! 1 for numerical failures. Errors go to stderr as one JSON object.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use hcmc_core::barrier_estimates::barrier_report;
use hcmc_core::export::formats::{write_translation_csv, TranslationDocument};
use hcmc_core::export::{
    build_mesh, parse_grid, plan_assembly, write_json, write_profile_csv, ProfileDocument,
};
use hcmc_core::limacon::{critical_cos, ell, limacon_min_distance, LimaconSpec};
use hcmc_core::quadrature::set_default_rel_tol;
use hcmc_core::rot_profile::{classify, Profile, ProfileParams};
use hcmc_core::trans_profile::{TranslationParams, TranslationProfile};
use hcmc_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_PARAMS: i32 = 2;

/// Environment variable overriding the quadrature tolerance.
pub const TOL_ENV: &str = "HCMC_TOL";

#[derive(Debug, Parser)]
#[command(name = "hcmc", version, about = "Hypersurfaces of constant r-th mean curvature in H^n x R")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Debug, Clone, Copy, Args)]
struct RotArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: u32,
    #[arg(long = "H", allow_negative_numbers = true)]
    h: f64,
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
}

impl RotArgs {
    fn params(&self) -> hcmc_core::Result<ProfileParams> {
        let p = ProfileParams::new(self.n, self.r, self.h, self.d)?;
        p.check_admissible()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write here instead of stdout (atomically, via a temporary file).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a rotational profile.
    Profile {
        #[command(flatten)]
        rot: RotArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Right end for unbounded profiles.
        #[arg(long)]
        extent: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Classify the hypersurface generated by a profile.
    Classify {
        #[command(flatten)]
        rot: RotArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Sample a translation profile.
    Translate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "H", allow_negative_numbers = true)]
        h: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Sphere and cylinder radii, annulus heights and radii.
    Estimates {
        #[command(flatten)]
        rot: RotArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Inner-loop radius of a limaçon, by formula and by minimisation.
    Limacon {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[command(flatten)]
        output: Output,
    },
    /// OBJ mesh of the assembled surface (n = 2).
    Mesh {
        #[command(flatten)]
        rot: RotArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 48)]
        azimuthal: usize,
        /// Periods listed for periodic surfaces.
        #[arg(long, default_value_t = 2)]
        periods: usize,
        /// Output file; the singular vertex list goes to `<out>.singular`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every point of a grid such as `d=-1:1:21;H=0.5,1`.
    Sweep {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long = "H", allow_negative_numbers = true)]
        h: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        d: Option<f64>,
        #[arg(long)]
        grid: String,
        /// Directory receiving one JSON file per grid point.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_parameter_error() { EXIT_PARAMS } else { EXIT_NUMERIC };
        Failure { code, kind: e.kind().to_string(), message: e.to_string() }
    }
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_PARAMS, kind: "usage".into(), message: msg.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: EXIT_NUMERIC, kind: "io".into(), message: format!("{}: {e}", path.display()) }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Writes `bytes` to `path` through a temporary file in the same directory.
fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| Failure::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Failure::io(path, e))?;
    tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    Ok(())
}

fn emit(out: &mut dyn Write, target: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match target {
        Some(p) => write_atomic(p, bytes),
        None => out.write_all(bytes).map_err(|e| Failure::io(Path::new("<stdout>"), e)),
    }
}

fn json_bytes<T: Serialize>(v: &T) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    write_json(&mut buf, v)?;
    buf.push(b'\n');
    Ok(buf)
}

fn require_json(format: Format, what: &str) -> CliResult<()> {
    if format != Format::Json {
        return Err(Failure::usage(format!("{what} supports --format json only")));
    }
    Ok(())
}

fn cmd_profile(rot: RotArgs, samples: usize, extent: Option<f64>, output: &Output) -> CliResult<Vec<u8>> {
    let params = rot.params()?;
    let prof = match extent {
        Some(x) => Profile::with_extent(params, x)?,
        None => Profile::new(params)?,
    };
    let s = prof.sample(samples)?;
    match output.format {
        Format::Json => json_bytes(&ProfileDocument { params, domain: *prof.domain(), samples: s }),
        Format::Csv => {
            let mut buf = Vec::new();
            write_profile_csv(&mut buf, &s)?;
            Ok(buf)
        }
        Format::Obj => Err(Failure::usage("profile supports json or csv; use `mesh` for obj")),
    }
}

fn cmd_translate(n: u32, r: u32, h: f64, eps: f64, samples: usize, output: &Output) -> CliResult<Vec<u8>> {
    let params = TranslationParams::new(n, r, h, eps)?;
    let prof = TranslationProfile::new(params)?;
    let s = prof.sample(samples)?;
    match output.format {
        Format::Json => json_bytes(&TranslationDocument { params, rho_plus: prof.rho_plus(), samples: s }),
        Format::Csv => {
            let mut buf = Vec::new();
            write_translation_csv(&mut buf, &s)?;
            Ok(buf)
        }
        Format::Obj => Err(Failure::usage("translate supports json or csv")),
    }
}

fn cmd_limacon(a: f64, c: f64) -> CliResult<Vec<u8>> {
    let spec = LimaconSpec::new(a, c)?;
    let l = ell(a, c)?;
    let (theta0, dist) = limacon_min_distance(&spec);
    json_bytes(&json!({
        "a": a,
        "c": c,
        "ell": l,
        "oracle": { "theta0": theta0, "distance": dist },
        "agreement": (l - dist).abs(),
        "critical_cos": critical_cos(&spec),
        "radii": { "separating": a - c, "inner": l, "outer": a + 2.0 * c },
    }))
}

fn cmd_mesh(
    rot: RotArgs,
    samples: usize,
    azimuthal: usize,
    periods: usize,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let params = rot.params()?;
    let prof = Profile::new(params)?;
    let row = classify(&params)?.table_row;
    let plan = plan_assembly(&prof, row, periods)?;
    let mesh = build_mesh(&prof, &plan, samples, azimuthal)?;
    let mut obj = Vec::new();
    let io = |e| Failure::io(Path::new("<buffer>"), e);
    mesh.write_obj(&mut obj).map_err(io)?;
    match out_path {
        Some(p) => {
            write_atomic(p, &obj)?;
            let mut side = Vec::new();
            mesh.write_singular_sidecar(&mut side).map_err(io)?;
            let mut sp = p.as_os_str().to_owned();
            sp.push(".singular");
            write_atomic(Path::new(&sp), &side)
        }
        None => {
            for i in &mesh.singular {
                writeln!(obj, "# singular {}", i + 1).map_err(io)?;
            }
            emit(out, None, &obj)
        }
    }
}

#[derive(Debug, Serialize)]
struct SweepLine {
    index: usize,
    point: serde_json::Map<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    record: Option<hcmc_core::rot_profile::ClassificationRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inadmissible: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn sweep_point(
    index: usize,
    base: (Option<u32>, Option<u32>, Option<f64>, Option<f64>),
    point: &[(String, f64)],
) -> SweepLine {
    let (mut n, mut r, mut h, mut d) = (base.0.map(f64::from), base.1.map(f64::from), base.2, base.3);
    let mut map = serde_json::Map::new();
    for (k, v) in point {
        map.insert(k.clone(), json!(v));
        match k.as_str() {
            "n" => n = Some(*v),
            "r" => r = Some(*v),
            "H" => h = Some(*v),
            "d" => d = Some(*v),
            _ => {}
        }
    }
    let mut line = SweepLine { index, point: map, record: None, inadmissible: None, error: None };
    let as_order = |x: Option<f64>| x.filter(|v| v.fract() == 0.0 && *v >= 0.0 && *v <= 1e6).map(|v| v as u32);
    let (Some(n), Some(r), Some(h), Some(d)) = (as_order(n), as_order(r), h, d) else {
        line.inadmissible = Some("n, r, H and d must all be given, with integer n and r".into());
        return line;
    };
    match ProfileParams::new(n, r, h, d).and_then(|p| classify(&p)) {
        Ok(rec) => line.record = Some(rec),
        Err(e) if e.is_parameter_error() => line.inadmissible = Some(e.to_string()),
        Err(e) => line.error = Some(e.to_string()),
    }
    line
}

fn cmd_sweep(
    base: (Option<u32>, Option<u32>, Option<f64>, Option<f64>),
    grid: &str,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let g = parse_grid(grid)?;
    for axis in &g.axes {
        if !["n", "r", "H", "d"].contains(&axis.key.as_str()) {
            return Err(Failure::usage(format!("unknown grid key {:?}; use n, r, H or d", axis.key)));
        }
    }
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    }
    let lines: Vec<CliResult<SweepLine>> = g
        .points()
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let line = sweep_point(i, base, p);
            if let Some(dir) = dir {
                write_atomic(&dir.join(format!("point-{i:06}.json")), &json_bytes(&line)?)?;
            }
            Ok(line)
        })
        .collect();
    let mut buf = Vec::new();
    for l in lines {
        let l = l?;
        serde_json::to_writer(&mut buf, &l).map_err(|e| Failure::from(Error::Numeric(e.to_string())))?;
        buf.push(b'\n');
    }
    emit(out, None, &buf)
}

fn apply_tolerance_env() -> CliResult<()> {
    if let Ok(v) = std::env::var(TOL_ENV) {
        let tol: f64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{TOL_ENV} must be a number, got {v:?}")))?;
        set_default_rel_tol(tol)?;
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    apply_tolerance_env()?;
    match cli.cmd {
        Command::Profile { rot, samples, extent, output } => {
            let bytes = cmd_profile(rot, samples, extent, &output)?;
            emit(out, output.out.as_deref(), &bytes)
        }
        Command::Classify { rot, output } => {
            require_json(output.format, "classify")?;
            let rec = classify(&rot.params()?)?;
            emit(out, output.out.as_deref(), &json_bytes(&rec)?)
        }
        Command::Translate { n, r, h, eps, samples, output } => {
            let bytes = cmd_translate(n, r, h, eps, samples, &output)?;
            emit(out, output.out.as_deref(), &bytes)
        }
        Command::Estimates { rot, output } => {
            require_json(output.format, "estimates")?;
            let rep = barrier_report(rot.n, rot.r, rot.h, rot.d)?;
            emit(out, output.out.as_deref(), &json_bytes(&rep)?)
        }
        Command::Limacon { a, c, output } => {
            require_json(output.format, "limacon")?;
            emit(out, output.out.as_deref(), &cmd_limacon(a, c)?)
        }
        Command::Mesh { rot, samples, azimuthal, periods, out: path } => {
            cmd_mesh(rot, samples, azimuthal, periods, path.as_deref(), out)
        }
        Command::Sweep { n, r, h, d, grid, out: dir } => cmd_sweep((n, r, h, d), &grid, dir.as_deref(), out),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            return report(err, Failure::usage(e.render().to_string()));
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => report(err, f),
    }
}

fn report(err: &mut dyn Write, f: Failure) -> i32 {
    let obj = json!({ "error": f.kind, "message": f.message.trim_end(), "exit_code": f.code });
    let _ = writeln!(err, "{obj}");
    f.code
}
