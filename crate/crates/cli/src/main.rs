mod config;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use k3wall::brill_noether::{self, corollary_range, lm_vector, mercat_scan, oracle_conditions};
use k3wall::exact::{int_to_json, parse_rat};
use k3wall::mukai::{self, MukaiVector};
use k3wall::render::{self, FigureKind, FigureParams};
use k3wall::restriction::certify_restriction;
use k3wall::stabspace::{self, StabilityParam};
use k3wall::{ml_stability, Certificate, Error, SurfaceData, Verdict};

use config::SurfaceSpec;

/// Exact wall-crossing certificates on polarized K3 surfaces of Picard rank one.
#[derive(Parser, Debug)]
#[command(name = "k3wall", version, about)]
struct Cli {
    /// Half the polarization degree, H^2 = 2 d'.
    #[arg(long, global = true, allow_negative_numbers = true)]
    d_prime: Option<i64>,

    /// TOML file with keys d_prime, gram, root_bound.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Print rationals as fixed-precision decimals instead of "p/q".
    #[arg(long, global = true)]
    decimal: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mukai pairing, Euler characteristic and discriminants of two classes.
    Pairing {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// All roots with coordinates bounded by --bound, with their holes.
    Roots {
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Projections of a class, and optionally its central charge at (b, w^2).
    Project {
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long)]
        w_sq: Option<String>,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Certificate that F|_C is slope-stable for every C in |H|.
    CertifyRestriction {
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Restricted Lazarsfeld-Mukai bundle of a g^h_d: certificate and Mercat flags.
    Lm {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        d: i64,
        /// h^0(C, A) = h + 1, the rank of the bundle.
        #[arg(long)]
        sections: i64,
    },
    /// Oracle versus closed form over a grid of (h, d, g).
    MercatScan {
        #[arg(long)]
        g_max: i64,
        /// Largest bundle rank n = h + 1.
        #[arg(long)]
        rank_max: i64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Certificate that the kernel bundle M_L of L = lH is slope-stable.
    MlCertify {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Write an SVG figure.
    Plot {
        /// space, holes, walls, theorem_path or ml_triangle.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        out: PathBuf,
        /// Print the exact scene as JSON instead of a summary.
        #[arg(long)]
        dump_scene: bool,
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long, default_value_t = 1)]
        l: i64,
        #[arg(long, default_value_t = render::DEFAULT_SAMPLES)]
        samples: usize,
    },
}

/// A failure to be reported on stderr with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inapplicable(_) | Error::ConditionStar(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure { code: 2, message }
    }
}

struct Outcome {
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, passed: true }
    }

    fn certificate(cert: &Certificate) -> Self {
        Outcome { json: cert.to_json(), passed: cert.verdict == Verdict::Pass }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("k3wall: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", output::render(outcome.json, cli.decimal));
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("k3wall: {}", f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}

fn spec(cli: &Cli) -> Result<SurfaceSpec, Failure> {
    match &cli.config {
        Some(path) => Ok(SurfaceSpec::load(path)?),
        None => Ok(SurfaceSpec::default()),
    }
}

fn parse_vector(surface: &SurfaceData, text: &str) -> Result<MukaiVector, Failure> {
    let v: MukaiVector = text.parse()?;
    surface.check(&v)?;
    Ok(v)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let spec = spec(cli)?;
    let surface = || spec.surface(cli.d_prime).map_err(Failure::from);
    match &cli.command {
        Command::Pairing { v, w } => {
            let surface = surface()?;
            let (v, w) = (parse_vector(&surface, v)?, parse_vector(&surface, w)?);
            Ok(Outcome::ok(json!({
                "surface": surface,
                "v": v,
                "w": w,
                "pairing": int_to_json(&mukai::pairing(&surface, &v, &w)?),
                "euler_characteristic": int_to_json(&mukai::euler_characteristic(&surface, &v, &w)?),
                "v_squared": int_to_json(&mukai::self_pairing(&surface, &v)?),
                "w_squared": int_to_json(&mukai::self_pairing(&surface, &w)?),
                "delta_H_v": mukai::discriminant(&surface, &v)?.to_string(),
                "delta_H_w": mukai::discriminant(&surface, &w)?.to_string(),
            })))
        }
        Command::Roots { bound } => {
            let surface = surface()?;
            let bound = spec.root_bound(*bound);
            roots(&surface, bound).map(Outcome::ok)
        }
        Command::Project { vector, b, w_sq, bound } => {
            let surface = surface()?;
            let v = parse_vector(&surface, vector)?;
            let param = match (b, w_sq) {
                (Some(b), Some(w)) => Some(StabilityParam::new(parse_rat(b)?, parse_rat(w)?)?),
                (None, None) => None,
                _ => return Err("--b and --w-sq must be given together".to_string().into()),
            };
            project(&surface, &v, param.as_ref(), spec.root_bound(*bound)).map(Outcome::ok)
        }
        Command::CertifyRestriction { vector } => {
            let surface = surface()?;
            let v = parse_vector(&surface, vector)?;
            Ok(Outcome::certificate(&certify_restriction(&surface, &v)?))
        }
        Command::Lm { g, d, sections } => lm(*g, *d, *sections),
        Command::MercatScan { g_max, rank_max, out, csv, jobs } => {
            scan(*g_max, *rank_max, out, csv.as_deref(), *jobs).map(Outcome::ok)
        }
        Command::MlCertify { l, bound } => {
            let surface = surface()?;
            let bound = spec.root_bound(*bound);
            Ok(Outcome::certificate(&ml_stability::certify_ml(&surface, *l, bound)?))
        }
        Command::Plot { kind, out, dump_scene, bound, vector, l, samples } => {
            let surface = surface()?;
            let kind: FigureKind = kind.parse()?;
            let vector = vector.as_deref().map(|t| parse_vector(&surface, t)).transpose()?;
            let params = FigureParams { samples: *samples, root_bound: spec.root_bound(*bound), vector, l: *l };
            plot(&surface, kind, &params, out, *dump_scene).map(Outcome::ok)
        }
    }
}

fn roots(surface: &SurfaceData, bound: u32) -> Result<Value, Failure> {
    let mut list = Vec::new();
    for delta in stabspace::enumerate_roots(surface, bound)? {
        let pr = match stabspace::project_pr(surface, &delta) {
            Ok(p) => serde_json::to_value(p).expect("point serializes"),
            Err(Error::ProjectionUndefined) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        let hole = match stabspace::hole_segment(surface, &delta) {
            Ok(seg) => serde_json::to_value(seg).expect("segment serializes"),
            Err(Error::NoGeometricHole(_)) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        list.push(json!({ "v": delta, "pr": pr, "hole": hole }));
    }
    Ok(json!({
        "surface": surface,
        "root_bound": bound,
        "count": list.len(),
        "roots": list,
    }))
}

fn project(
    surface: &SurfaceData,
    v: &MukaiVector,
    param: Option<&StabilityParam>,
    bound: u32,
) -> Result<Value, Failure> {
    let (r, c, s) = stabspace::project_p1(surface, v)?;
    let pr = match stabspace::project_pr(surface, v) {
        Ok(p) => serde_json::to_value(p).expect("point serializes"),
        Err(Error::ProjectionUndefined) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let vertical = match stabspace::vertical_line_of(surface, v) {
        Ok(b) => Value::String(b.to_string()),
        Err(_) => Value::Null,
    };
    let mut out = json!({
        "surface": surface,
        "v": v,
        "p1": [int_to_json(&r), c.to_string(), int_to_json(&s)],
        "pr": pr,
        "vertical_line": vertical,
        "delta_H": mukai::discriminant(surface, v)?.to_string(),
    });
    if let Some(p) = param {
        let (re, im) = stabspace::central_charge(surface, p, v)?;
        let k = stabspace::k_map(surface, p);
        let hole = stabspace::first_hole_containing(surface, &k, bound)?;
        out["sigma"] = json!({
            "b": p.b.to_string(),
            "w_sq": p.w_sq.to_string(),
            "k": k,
            "re_z": re.to_string(),
            "im_z_over_w": im.to_string(),
            "root_bound": bound,
            "geometric": hole.is_none(),
            "blocking_root": hole.map(|(d, _)| serde_json::to_value(d).expect("vector serializes")),
        });
    }
    Ok(out)
}

fn lm(g: i64, d: i64, sections: i64) -> Result<Outcome, Failure> {
    let h = sections - 1;
    let (surface, v) = lm_vector(g, d, h)?;
    let cert = certify_restriction(&surface, &v)?;
    let conditions = oracle_conditions(g, d, h);
    let oracle = conditions.iter().all(|c| c.passed);
    let flag_failure = conditions
        .iter()
        .find(|c| !c.passed)
        .map(|c| c.name.split(':').next().unwrap_or(&c.name).to_string());
    let closed_form = match corollary_range(g, d, h) {
        Ok(b) => Value::Bool(b),
        Err(Error::Inapplicable(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let first_failure = flag_failure.or_else(|| {
        (cert.verdict != Verdict::Pass).then(|| cert.first_failure.clone().unwrap_or_default())
    });
    let passed = first_failure.is_none();
    let json = json!({
        "g": g,
        "d": d,
        "h": h,
        "h_prime": brill_noether::h_prime(g, d, h),
        "rho": brill_noether::brill_noether_rho(h, d, g),
        "vector": v,
        "certificate": cert.to_json(),
        "mercat": {
            "conditions": conditions,
            "oracle_counterexample": oracle,
            "corollary_range": closed_form,
        },
        "verdict": if passed { "pass" } else { "fail" },
        "first_failure": first_failure,
    });
    Ok(Outcome { json, passed })
}

fn scan(
    g_max: i64,
    rank_max: i64,
    out: &Path,
    csv: Option<&Path>,
    jobs: Option<usize>,
) -> Result<Value, Failure> {
    let h_max = rank_max - 1;
    let report = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| format!("cannot start {n} workers: {e}"))?
            .install(|| mercat_scan(g_max, h_max))?,
        None => mercat_scan(g_max, h_max)?,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_file(out, text.as_bytes())?;
    if let Some(path) = csv {
        write_file(path, report.to_csv().as_bytes())?;
    }
    Ok(json!({
        "grid": report.grid,
        "out": out.display().to_string(),
        "instances": report.instances.len(),
        "counterexamples": report.counterexamples().count(),
        "agreement": report.agreement,
    }))
}

fn plot(
    surface: &SurfaceData,
    kind: FigureKind,
    params: &FigureParams,
    out: &Path,
    dump_scene: bool,
) -> Result<Value, Failure> {
    let scene = render::figure(surface, kind, params)?;
    write_file(out, &render::emit_svg(&scene))?;
    if dump_scene {
        return Ok(serde_json::to_value(&scene).expect("scene serializes"));
    }
    let holes = scene
        .layers
        .iter()
        .filter(|l| matches!(&l.primitive, render::Primitive::Segment { .. } | render::Primitive::Ray { .. }) && l.style == "hole")
        .count();
    Ok(json!({
        "out": out.display().to_string(),
        "d_prime": surface.d_prime().to_string(),
        "samples": scene.samples,
        "root_bound": params.root_bound,
        "layers": scene.layers.len(),
        "root_markers": scene.count_style("root"),
        "holes": holes,
        "viewport": scene.viewport,
    }))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::from(format!("cannot write {}: {e}", path.display())))
}
