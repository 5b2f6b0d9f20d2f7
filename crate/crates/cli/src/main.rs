use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use normalis_core::constructions::{self, LayeredParams};
use normalis_core::double_normal::red_blue_decomposition;
use normalis_core::io::{graph_to_svg, tiling_to_off, to_json_string, PointSetFile};
use normalis_core::spherical::{
    crossing_classes, delaunay_tiling, euler_audit, reduce_to_gprime, sphere_double_normals, strict_gabriel,
    weak_gabriel,
};
use normalis_core::verify::suite::run_suite;
use normalis_core::verify::{check_bound, random_search, TheoremId, Verdict};
use normalis_core::{diameter_graph, double_normal_graph, DnMode, Error, PointSet, Space, Tolerance};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_WRONG_SPACE: u8 = 3;

#[derive(Parser)]
#[command(name = "normalis", version, about = "Double-normal pairs, spherical Gabriel graphs and Delaunay tilings")]
struct Cli {
    /// Overrides the boundary tolerance of every input.
    #[arg(long, env = "NORMALIS_TOL", global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one of the extremal configurations as a point-set file.
    Generate(GenerateArgs),
    /// Build a graph on a point set and export it.
    Analyze(AnalyzeArgs),
    /// Check a bound on a point set, or run the full acceptance battery.
    Verify(VerifyArgs),
    /// Anneal towards configurations with many double-normal pairs.
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    RegularPolygon,
    OddExtremal,
    SymmetricCircle,
    Cube,
    Octahedron,
    Rhombicuboctahedron,
    FivePoint,
    Layered,
    NearExtremal,
    Fig2,
}

#[derive(clap::Args)]
struct GenerateArgs {
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Chord length of the layered construction (chosen automatically if absent).
    #[arg(long)]
    c: Option<f64>,
    /// Angles in degrees for symmetric-circle; each also adds its antipode.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    angles: Vec<f64>,
    /// Offset in degrees for five-point.
    #[arg(long, allow_hyphen_values = true)]
    offset: Option<f64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Dn,
    DnStrict,
    Diameter,
    Gabriel,
    GabrielStrict,
    Delaunay,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Off,
    Svg,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "dn")]
    graph: GraphKind,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "suite", conflicts_with = "suite")]
    input: Option<PathBuf>,
    #[arg(long, required_unless_present = "suite")]
    theorem: Option<TheoremId>,
    #[arg(long)]
    suite: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Plane,
    Space3,
    Sphere,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Plane => Space::Plane,
            SpaceArg::Space3 => Space::Space3,
            SpaceArg::Sphere => Space::Sphere,
        }
    }
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Where to write the best configuration.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WrongSpace { .. } => EXIT_WRONG_SPACE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let base = match cli.tol {
        Some(eps) => {
            let t = Tolerance::default().with_boundary_eps(eps);
            t.validate()?;
            Some(t)
        }
        None => None,
    };
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Analyze(a) => analyze(a, base),
        Command::Verify(a) => verify(a, base),
        Command::Search(a) => search(a),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, env_tol: Option<Tolerance>) -> Result<PointSet, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let file = PointSetFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let v = file.to_point_set(Tolerance::default())?;
    // the environment wins over per-file overrides
    match env_tol {
        Some(t) => Ok(v.with_tolerance(v.tol().with_boundary_eps(t.boundary_eps))?),
        None => Ok(v),
    }
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("{kind} requires --{flag}")))
}

fn generate(a: GenerateArgs) -> Outcome {
    let (v, meta) = match a.kind {
        Kind::RegularPolygon => {
            let n = need(a.n, "n", "regular-polygon")?;
            (constructions::regular_polygon(n)?, json!({"generator": "regular-polygon", "n": n}))
        }
        Kind::OddExtremal => {
            let n = need(a.n, "n", "odd-extremal")?;
            (constructions::planar_odd_extremal(n)?, json!({"generator": "odd-extremal", "n": n}))
        }
        Kind::SymmetricCircle => {
            if a.angles.is_empty() {
                return Err(usage("symmetric-circle requires --angles"));
            }
            let rad: Vec<f64> = a.angles.iter().map(|d| d.to_radians()).collect();
            (
                constructions::symmetric_circle_set(&rad)?,
                json!({"generator": "symmetric-circle", "angles_deg": a.angles}),
            )
        }
        Kind::Cube => (constructions::cube_vertices(), json!({"generator": "cube"})),
        Kind::Octahedron => (constructions::octahedron_vertices(), json!({"generator": "octahedron"})),
        Kind::Rhombicuboctahedron => (
            constructions::rhombicuboctahedron_vertices(),
            json!({"generator": "rhombicuboctahedron"}),
        ),
        Kind::FivePoint => match a.offset {
            Some(d) => (
                constructions::five_point_strict_with_offset(d)?,
                json!({"generator": "five-point", "offset_deg": d}),
            ),
            None => (constructions::five_point_strict(), json!({"generator": "five-point"})),
        },
        Kind::Layered => {
            let p = LayeredParams {
                k: need(a.k, "k", "layered")?,
                m: need(a.m, "m", "layered")?,
                c: a.c,
            };
            let c = constructions::layered_side_length(&p)?;
            (
                constructions::layered_construction(&p)?,
                json!({"generator": "layered", "k": p.k, "m": p.m, "c": c}),
            )
        }
        Kind::NearExtremal => {
            let n = need(a.n, "n", "near-extremal")?;
            let (m, k) = constructions::near_extremal_params(n)?;
            (
                constructions::near_extremal(n)?,
                json!({"generator": "near-extremal", "n": n, "k": k, "m": m}),
            )
        }
        Kind::Fig2 => (constructions::seven_point_example(), json!({"generator": "fig2"})),
    };
    emit(a.out.as_deref(), &PointSetFile::from_point_set(&v, meta).to_json())?;
    Ok(0)
}

fn census_value<K: ToString, V: Into<Value> + Copy>(m: &std::collections::BTreeMap<K, V>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect())
}

fn graph_name(g: GraphKind) -> &'static str {
    match g {
        GraphKind::Dn => "dn",
        GraphKind::DnStrict => "dn-strict",
        GraphKind::Diameter => "diameter",
        GraphKind::Gabriel => "gabriel",
        GraphKind::GabrielStrict => "gabriel-strict",
        GraphKind::Delaunay => "delaunay",
    }
}

fn analyze(a: AnalyzeArgs, env_tol: Option<Tolerance>) -> Outcome {
    let v = load(&a.input, env_tol)?;
    if a.format == Format::Off && a.graph != GraphKind::Delaunay {
        return Err(usage("OFF output is available for --graph delaunay only"));
    }
    let mut census = serde_json::Map::new();
    let graph = match a.graph {
        GraphKind::Dn | GraphKind::DnStrict => {
            let mode = if a.graph == GraphKind::Dn { DnMode::Weak } else { DnMode::Strict };
            let g = double_normal_graph(&v, mode)?;
            match v.space() {
                Space::Plane => {
                    let rb = red_blue_decomposition(&v, &g)?;
                    census.insert("red".into(), rb.red_edges.len().into());
                    census.insert("blue".into(), rb.blue_edges.len().into());
                    census.insert("claims_hold".into(), rb.all_passed().into());
                    rb.colored(&g)
                }
                Space::Sphere => {
                    let lift = sphere_double_normals(&v, mode)?;
                    census.insert("e1".into(), lift.e1.edge_count().into());
                    census.insert("e2".into(), lift.e2.edge_count().into());
                    census.insert("antipodal_points".into(), lift.intersection.len().into());
                    census.insert("gabriel_containment".into(), lift.gabriel_containment_holds().into());
                    g
                }
                Space::Space3 => g,
            }
        }
        GraphKind::Diameter => diameter_graph(&v)?,
        GraphKind::Gabriel | GraphKind::GabrielStrict => {
            let g = if a.graph == GraphKind::Gabriel { weak_gabriel(&v)? } else { strict_gabriel(&v)? };
            let report = crossing_classes(&g, &v)?;
            census.insert("crossing_polygons".into(), census_value(&report.g_census));
            let gp = reduce_to_gprime(&g, &v, &report)?;
            census.insert("reduced_edges".into(), gp.edge_count().into());
            if let Ok(audit) = euler_audit(&gp, &v, &report) {
                census.insert("faces".into(), census_value(&audit.f_census));
                census.insert("euler_holds".into(), audit.all_hold().into());
            }
            g
        }
        GraphKind::Delaunay => {
            let t = delaunay_tiling(&v)?;
            if a.format == Format::Off {
                emit(a.out.as_deref(), &tiling_to_off(&t))?;
                return Ok(0);
            }
            census.insert("faces".into(), census_value(&t.face_census));
            census.insert("origin_case".into(), serde_json::to_value(t.origin_case).unwrap_or(Value::Null));
            census.insert("origin_flagged".into(), t.origin_flagged.into());
            t.graph()
        }
    };
    let text = match a.format {
        Format::Svg => graph_to_svg(&v, &graph),
        _ => {
            let dim = v.space().dimension();
            let doc = json!({
                "space": v.space(),
                "graph": graph_name(a.graph),
                "n": v.len(),
                "vertices": v.points().iter().map(|p| p.to_array()[..dim].to_vec()).collect::<Vec<_>>(),
                "edge_count": graph.edge_count(),
                "edges": graph.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
                "colors": graph.colors(),
                "census": census,
            });
            to_json_string(&doc)
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

fn verify(a: VerifyArgs, env_tol: Option<Tolerance>) -> Outcome {
    if a.suite {
        let items = run_suite();
        if a.json {
            print!("{}", to_json_string(&items));
        } else {
            for item in &items {
                println!("{item}");
            }
        }
        return Ok(if items.iter().all(|i| i.passed) { 0 } else { EXIT_VIOLATION });
    }
    let (Some(input), Some(theorem)) = (a.input, a.theorem) else {
        return Err(usage("verify needs an input file and --theorem, or --suite"));
    };
    let v = load(&input, env_tol)?;
    let r = check_bound(&v, theorem)?;
    if a.json {
        print!("{}", to_json_string(&r));
    } else {
        println!("theorem:   {}", r.theorem);
        println!("n:         {}", r.n);
        println!("bound:     {}{}", r.bound.value, if r.bound.in_range { "" } else { " (outside stated range)" });
        println!("observed:  {}", r.observed);
        println!("equality:  {}", r.equality);
        if let Some(preds) = &r.characterization {
            for p in preds {
                println!("  [{}] {}", if p.holds { "x" } else { " " }, p.name);
            }
        }
        println!("verdict:   {:?}", r.verdict);
    }
    Ok(if r.verdict == Verdict::Fail { EXIT_VIOLATION } else { 0 })
}

fn search(a: SearchArgs) -> Outcome {
    let s = random_search(a.space.into(), a.n, a.budget, a.seed)?;
    let points = match &s.violation {
        Some(w) => w.points.clone(),
        None => s.best_points.clone(),
    };
    let dim = Space::from(a.space).dimension();
    let meta = json!({
        "search": {"seed": s.seed, "budget": s.budget, "iterations": s.iterations, "best_n": s.best_n},
        "violation": s.violation.as_ref().map(|w| json!({"iteration": w.iteration, "observed": w.observed})),
    });
    let file = PointSetFile {
        space: s.space,
        points: points.iter().map(|p| p[..dim].to_vec()).collect(),
        tolerance: None,
        meta,
    };
    if let Some(out) = &a.out {
        emit(Some(out), &file.to_json())?;
    }
    if a.json {
        print!("{}", to_json_string(&s));
    } else {
        println!("best N:     {}", s.best_n);
        if let Some(b) = &s.bound {
            println!("bound:      {}", b.value);
        }
        println!("iterations: {}", s.iterations);
        if let Some(w) = &s.violation {
            println!("VIOLATION at iteration {}: N = {}", w.iteration, w.observed);
        }
    }
    Ok(if s.violation.is_some() { EXIT_VIOLATION } else { 0 })
}
