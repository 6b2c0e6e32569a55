//! Command line front end.
//!
//! Exit codes: 0 success, 1 consistency violation between report sections,
//! 2 unparsable input, 3 unclassifiable group, 4 unreadable or unwritable
//! path, 5 verification inconclusive.

use crate::algebra::Mat2;
use crate::error::Error;
use crate::group::{classify, GroupPoint, LieGroupModel, TraceClass};
use crate::surface::{
    load_mesh, make_round_sphere, make_self_intersecting_sphere, save_mesh, SphereMesh,
};
use crate::verify::{consistency_violations, full_report, Verdict, VerifyConfig};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "lglab",
    version,
    about = "Metric Lie groups R^2 x_A R: classification, test spheres, and embeddedness checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a plane automorphism matrix or a (D, b) moduli point.
    Classify(ClassifyArgs),
    /// Emit the (D, b) moduli grid of non-unimodular groups as CSV.
    Moduli(ModuliArgs),
    /// Generate a test sphere and write it as an OBJ file.
    MakeSurface(MakeSurfaceArgs),
    /// Run the embeddedness checks and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    /// Matrix entries a,b,c,d in row-major order.
    #[arg(long, value_name = "a,b,c,d")]
    matrix: Option<String>,
    /// Moduli coordinates D,b of a non-unimodular group.
    #[arg(long = "Db", alias = "db", value_name = "D,b")]
    db: Option<String>,
}

#[derive(Args)]
struct ModuliArgs {
    #[arg(long, default_value_t = -2.0)]
    dmin: f64,
    #[arg(long, default_value_t = 4.0)]
    dmax: f64,
    #[arg(long, default_value_t = 2.0)]
    bmax: f64,
    /// Grid resolution along each axis.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(2..))]
    steps: u32,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MakeSurfaceArgs {
    #[command(subcommand)]
    kind: SurfaceKind,
}

#[derive(Subcommand)]
enum SurfaceKind {
    /// Subdivided icosahedral sphere of coordinate radius r at the origin.
    Round {
        #[arg(long, default_value_t = 0.2)]
        r: f64,
        #[arg(long, default_value_t = 4)]
        level: u32,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Self-intersecting control sphere (funnel-deformed icosphere).
    Control {
        #[arg(long, default_value_t = 3)]
        level: u32,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Group spec: r3 | nil3 | sol3:c | e2tilde:c | h3 | nonuni:D,b | matrix:a,b,c,d.
    #[arg(long, value_name = "SPEC")]
    group: String,
    /// Surface spec: round:r:level | control:level | path to an OBJ file.
    #[arg(long, value_name = "SPEC")]
    surface: String,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 32)]
    z_samples: usize,
    #[arg(long, default_value_t = 64)]
    fiber_grid: usize,
    /// Jitter seed; the LGLAB_SEED environment variable overrides it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Run the CLI against `args` (including the program name), writing to the
/// given streams, and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match cli.command {
        Command::Classify(a) => cmd_classify(a, out, err),
        Command::Moduli(a) => cmd_moduli(a, out, err),
        Command::MakeSurface(a) => cmd_make_surface(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
    }
}

fn parse_floats(text: &str, n: usize, what: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(format!("{what}: expected {n} comma-separated numbers, got '{text}'"));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("{what}: '{p}' is not a number"))
        })
        .collect()
}

fn cmd_classify(args: ClassifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let built = if let Some(text) = &args.matrix {
        match parse_floats(text, 4, "--matrix") {
            Ok(v) => classify(Mat2::new(v[0], v[1], v[2], v[3])),
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return 2;
            }
        }
    } else {
        let text = args.db.as_ref().expect("arg group requires one input");
        match parse_floats(text, 2, "--Db") {
            Ok(v) => LieGroupModel::nonunimodular(v[0], v[1]),
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return 2;
            }
        }
    };
    let model = match built {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 3;
        }
    };
    let trace_class = match model.trace_class {
        TraceClass::Unimodular => "unimodular",
        TraceClass::NonUnimodularNormalized => "non-unimodular (normalized to trace 2)",
    };
    let _ = writeln!(out, "label: {}", model.label);
    let _ = writeln!(out, "trace class: {trace_class}");
    let _ = writeln!(out, "D: {}", model.d_invariant);
    if let Some((a, b)) = model.canonical_ab() {
        let _ = writeln!(out, "canonical (a, b): ({a}, {b})");
    }
    if model.is_hyperbolic_plane_product() {
        let _ = writeln!(out, "product geometry: H2(-4) x R");
    }
    if model.orientation_flipped || model.trace_rescale != 1.0 {
        let _ = writeln!(
            out,
            "normalization: trace rescale {}, orientation flipped {}",
            model.trace_rescale, model.orientation_flipped
        );
    }
    let _ = writeln!(out, "admits open book: {}", model.admits_open_book);
    let m = model.matrix;
    let json = serde_json::json!({
        "label": model.label.to_string(),
        "traceClass": trace_class,
        "d": model.d_invariant,
        "admitsOpenBook": model.admits_open_book,
        "matrix": [m.a, m.b, m.c, m.d],
    });
    let _ = writeln!(out, "{json}");
    0
}

fn cmd_moduli(args: ModuliArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let steps = args.steps as usize;
    let mut csv = String::from("D,b,a,valid\n");
    for i in 0..steps {
        let d = args.dmin + (args.dmax - args.dmin) * i as f64 / (steps - 1) as f64;
        for j in 0..steps {
            let b = args.bmax * j as f64 / (steps - 1) as f64;
            match crate::algebra::solve_a_from_db(d, b) {
                Ok(a) => csv.push_str(&format!("{d},{b},{a},true\n")),
                Err(_) => csv.push_str(&format!("{d},{b},,false\n")),
            }
        }
    }
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &csv) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 4;
            }
            let _ = writeln!(out, "wrote {} rows to {}", steps * steps, path.display());
        }
        None => {
            let _ = write!(out, "{csv}");
        }
    }
    0
}

fn cmd_make_surface(args: MakeSurfaceArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (mesh, path) = match args.kind {
        SurfaceKind::Round { r, level, out: path } => {
            if !(r > 0.0 && r.is_finite()) {
                let _ = writeln!(err, "error: radius must be positive, got {r}");
                return 2;
            }
            if level > 7 {
                let _ = writeln!(err, "error: round level must be at most 7, got {level}");
                return 2;
            }
            (make_round_sphere(GroupPoint::IDENTITY, r, level), path)
        }
        SurfaceKind::Control { level, out: path } => {
            if !(2..=7).contains(&level) {
                let _ = writeln!(err, "error: control level must be in 2..=7, got {level}");
                return 2;
            }
            (make_self_intersecting_sphere(level), path)
        }
    };
    if let Err(e) = save_mesh(&mesh, &path) {
        let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
        return 4;
    }
    let _ = writeln!(
        out,
        "wrote {}: V={} E={} F={} chi={}",
        path.display(),
        mesh.vertex_count(),
        mesh.edge_count(),
        mesh.face_count(),
        mesh.euler_characteristic()
    );
    0
}

fn parse_group(spec: &str) -> Result<Result<LieGroupModel, Error>, String> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    let parse1 = |text: &str| parse_floats(text, 1, "group parameter").map(|v| v[0]);
    Ok(match (head, rest) {
        ("r3", None) => Ok(LieGroupModel::r3()),
        ("nil3", None) => Ok(LieGroupModel::nil3()),
        ("h3", None) => Ok(LieGroupModel::h3()),
        ("sol3", Some(c)) => LieGroupModel::sol3(parse1(c)?),
        ("e2tilde", Some(c)) => LieGroupModel::e2tilde(parse1(c)?),
        ("nonuni", Some(db)) => {
            let v = parse_floats(db, 2, "nonuni parameters")?;
            LieGroupModel::nonunimodular(v[0], v[1])
        }
        ("matrix", Some(abcd)) => {
            let v = parse_floats(abcd, 4, "matrix entries")?;
            classify(Mat2::new(v[0], v[1], v[2], v[3]))
        }
        _ => return Err(format!("unknown group spec '{spec}'")),
    })
}

fn build_surface(spec: &str, err: &mut dyn Write) -> Result<SphereMesh, i32> {
    if let Some(rest) = spec.strip_prefix("round:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let parsed = (parts.len() == 2)
            .then(|| Some((parts[0].parse::<f64>().ok()?, parts[1].parse::<u32>().ok()?)))
            .flatten();
        match parsed {
            Some((r, level)) if r > 0.0 && r.is_finite() && level <= 7 => {
                Ok(make_round_sphere(GroupPoint::IDENTITY, r, level))
            }
            _ => {
                let _ = writeln!(err, "error: bad surface spec '{spec}', want round:r:level");
                Err(2)
            }
        }
    } else if let Some(rest) = spec.strip_prefix("control:") {
        match rest.parse::<u32>() {
            Ok(level) if (2..=7).contains(&level) => Ok(make_self_intersecting_sphere(level)),
            _ => {
                let _ = writeln!(err, "error: bad surface spec '{spec}', want control:level (2..=7)");
                Err(2)
            }
        }
    } else {
        load_mesh(spec).map_err(|e| {
            let _ = writeln!(err, "error: cannot load {spec}: {e}");
            match e {
                Error::Io(_) => 4,
                _ => 2,
            }
        })
    }
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let seed = match std::env::var("LGLAB_SEED") {
        Ok(text) => match text.parse::<u64>() {
            Ok(v) => v,
            Err(_) => {
                let _ = writeln!(err, "error: LGLAB_SEED must be an unsigned integer, got '{text}'");
                return 2;
            }
        },
        Err(_) => args.seed,
    };
    let model = match parse_group(&args.group) {
        Ok(Ok(m)) => m,
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            return 3;
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let mesh = match build_surface(&args.surface, err) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let config = VerifyConfig {
        z_samples: args.z_samples,
        fiber_grid: args.fiber_grid,
        seed,
    };
    let report = match full_report(&model, &mesh, config) {
        Ok(r) => r,
        Err(Error::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            return 4;
        }
        Err(e) => {
            // Verification could not complete on this input.
            let _ = writeln!(err, "error: {e}");
            return 5;
        }
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 4;
            }
            let _ = writeln!(
                out,
                "wrote {}: group {} verdict {:?}",
                path.display(),
                report.group,
                report.verdict
            );
        }
        None => {
            let _ = write!(out, "{json}");
        }
    }
    let violations = consistency_violations(&report, model.admits_open_book);
    for v in &violations {
        let _ = writeln!(err, "consistency violation: {v}");
    }
    if !violations.is_empty() {
        return 1;
    }
    if report.verdict == Verdict::Inconclusive {
        return 5;
    }
    0
}
