use clap::{Args, Parser, Subcommand, ValueEnum};
use pathforest::generators::{generate, GenSpec, Generated, Model};
use pathforest::integrate::{
    cde_solve, conditional_variation_lb, default_grid, lift_linear, rough_integral, stieltjes,
    tree_integral, young, CdeOptions, CdeScheme, ConstantField, FnControlled, Integrand,
    LinearField, Primitive, RoughOptions, RoughPath, TreeIntegralOptions, YoungOptions,
};
use pathforest::io;
use pathforest::path::{embed_cadlag, JumpWeights};
use pathforest::tree::{
    build_merge_tree, discretization_floor, flatten, leaf_pairs, trim_events, trim_profile,
    ScaleGrid, DEFAULT_RATIO, DEFAULT_SCALES, FLOOR_FACTOR,
};
use pathforest::variation::{
    hurst_drawdown_profile, hurst_ratio, pvar_bounds, variation_index, VariationReport, Window,
};
use pathforest::{Error, SampledPath};
use serde_json::{json, Value};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Real trees of sampled paths: trimming profiles, variation and Hurst
/// estimates, tree, Young and rough integrals.
///
/// Inputs are CSV with header `t,value` or `t,left,right`. Paths with jumps
/// are embedded into continuous paths before tree-based analysis. Set
/// PATHFOREST_THREADS to cap the worker pool.
#[derive(Parser, Debug)]
#[command(name = "pathforest", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Simulate a path and write it as CSV.
    Generate(GenerateArgs),
    /// Dump the merge tree as JSON.
    Tree(InputArgs),
    /// Stopping times and leaves at one scale, or the flattened path.
    Trim(TrimArgs),
    /// Leaf counts and lengths per scale (CSV a,N,L).
    Profile(ProfileArgs),
    /// p-variation: exact value, tree bounds and scaling estimates.
    Pvar(PvarArgs),
    /// Variation index from the slope of log N against -log a.
    Dimension(GridInput),
    /// Hurst estimates from the length ratio and the drawdown statistic.
    Hurst(GridInput),
    /// Integral of an integrand against the input path.
    Integrate(IntegrateArgs),
    /// Rough integral of a second path against the input path.
    Rough(RoughArgs),
    /// Solve dx = f(x) d(omega) driven by the input path.
    Cde(CdeArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input CSV.
    #[arg(short, long)]
    input: PathBuf,
    /// Output file (default stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Smallest scale (default: the discretization floor, 4x the largest increment).
    #[arg(long)]
    amin: Option<f64>,
    /// Largest scale (default: sup - inf).
    #[arg(long)]
    amax: Option<f64>,
    /// Number of scales (default 40; with --amin, spread geometrically from --amax).
    #[arg(long)]
    scales: Option<usize>,
    /// Geometric ratio between consecutive scales (default 2^-1/4).
    #[arg(long)]
    ratio: Option<f64>,
    /// Explicit comma-separated scales; overrides the other grid flags.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct GridInput {
    #[command(flatten)]
    io: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Fbm,
    Brownian,
    Stable,
    Cpoisson,
    Star,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "fbm")]
    model: ModelArg,
    /// Hurst index for fbm.
    #[arg(long, default_value_t = 0.5)]
    hurst: f64,
    /// Stability index for stable, decay exponent for star.
    #[arg(long, default_value_t = 1.5)]
    alpha: f64,
    /// Number of increments.
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ensemble member (independent stream of the same seed).
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Scale of the increments.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Jump rate for cpoisson.
    #[arg(long, default_value_t = 10.0)]
    rate: f64,
    /// Standard deviation of cpoisson jumps.
    #[arg(long, default_value_t = 1.0)]
    jump_std: f64,
    /// Number of teeth for star.
    #[arg(long, default_value_t = 64)]
    teeth: usize,
    /// Output file (default stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print the generator description as JSON instead of the CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TrimArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Trimming scale.
    #[arg(short, long)]
    a: f64,
    /// Write the flattened path as CSV instead of the JSON report.
    #[arg(long)]
    flatten: bool,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    io: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Full JSON profile instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PvarArgs {
    #[command(flatten)]
    io: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(short, default_value_t = 2.0)]
    p: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum Method {
    All,
    Tree,
    Young,
    Stieltjes,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    #[command(flatten)]
    io: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Integrand: time | value | cos | sin | exp | square | poly:c0,c1,... | file:<csv>.
    /// `value` and the named functions are applied to the input path.
    #[arg(long, default_value = "time")]
    rho: String,
    #[arg(long, value_enum, default_value = "all")]
    method: Method,
    /// Convergence tolerance of the tree and Young integrals.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Also report the lower bound for the conditional q-variation of rho.
    #[arg(short = 'q')]
    q: Option<f64>,
}

#[derive(Args, Debug)]
struct RoughArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Second component eta (CSV); the integral is of eta against the input.
    /// Defaults to the input itself.
    #[arg(long)]
    eta: Option<PathBuf>,
    /// Holder exponent declared for the lift, must exceed 1/3.
    #[arg(short = 'r', long, default_value_t = 0.5)]
    r: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldArg {
    /// f(x) = x.
    Linear,
    /// f(x) = 1.
    Constant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    Picard,
    Taylor,
}

#[derive(Args, Debug)]
struct CdeArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum, default_value = "linear")]
    field: FieldArg,
    #[arg(long, default_value_t = 1.0)]
    x0: f64,
    #[arg(long, value_enum, default_value = "picard")]
    scheme: SchemeArg,
    /// Minimum number of uniform time steps.
    #[arg(long, default_value_t = 1024)]
    steps: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Print a JSON summary instead of the solution CSV.
    #[arg(long)]
    json: bool,
}

/// Failure before any computation: exit 2.
struct Usage(String);

enum Failure {
    Usage(Usage),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn sink(output: &Option<PathBuf>) -> Run<Box<dyn Write>> {
    Ok(match output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn emit_json(output: &Option<PathBuf>, v: &Value) -> Run<()> {
    let mut w = sink(output)?;
    serde_json::to_writer_pretty(&mut w, v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

/// Continuous input, embedding paths with jumps.
fn load(input: &PathBuf) -> Run<SampledPath> {
    Ok(load_with_floor(input)?.0)
}

/// Input plus its discretization floor. For paths with jumps the floor only
/// looks at the motion between jumps, so pure-jump paths have none.
fn load_with_floor(input: &PathBuf) -> Run<(SampledPath, Option<f64>)> {
    Ok(match io::read_path_file(input)? {
        Generated::Continuous(p) => {
            let f = discretization_floor(&p);
            (p, f)
        }
        Generated::Cadlag(c) => {
            let creep = (1..c.len())
                .map(|k| (c.left()[k] - c.right()[k - 1]).abs())
                .fold(0.0, f64::max);
            let p = embed_cadlag(&c, &JumpWeights::Proportional)?.path;
            let f = FLOOR_FACTOR * creep;
            let floor = (f > 0.0 && f < p.range()).then_some(f);
            (p, floor)
        }
    })
}

fn positive(name: &str, x: Option<f64>) -> Run<Option<f64>> {
    match x {
        Some(v) if !(v > 0.0) || !v.is_finite() => {
            Err(Usage(format!("--{name} must be positive, got {v}")).into())
        }
        _ => Ok(x),
    }
}

fn build_grid(g: &GridArgs, path: &SampledPath, floor: Option<f64>) -> Run<ScaleGrid> {
    if let Some(scales) = &g.grid {
        if scales.iter().any(|a| !(*a > 0.0)) {
            return Err(Usage("--grid scales must be positive".into()).into());
        }
        return Ok(ScaleGrid::explicit(scales.clone())?);
    }
    let amin = positive("amin", g.amin)?;
    let amax = positive("amax", g.amax)?;
    if let Some(r) = g.ratio {
        if !(r > 0.0 && r < 1.0) {
            return Err(Usage(format!("--ratio must lie in (0, 1), got {r}")).into());
        }
    }
    if g.scales == Some(0) {
        return Err(Usage("--scales must be at least 1".into()).into());
    }
    if path.is_constant() {
        return Err(Error::ConstantPath.into());
    }
    let amax = amax.unwrap_or_else(|| path.range());
    let ratio = g.ratio.unwrap_or(DEFAULT_RATIO);
    Ok(match (amin, g.scales) {
        (Some(lo), Some(n)) if g.ratio.is_none() => ScaleGrid::between(amax, lo, n)?,
        (Some(lo), n) => {
            if lo > amax {
                return Err(Usage(format!("--amin {lo} above --amax {amax}")).into());
            }
            let fit = ((lo / amax).ln() / ratio.ln() + 1e-9).floor() as usize + 1;
            ScaleGrid::geometric(amax, ratio, n.map_or(fit, |n| n.min(fit)))?
        }
        (None, n) => {
            let g = ScaleGrid::geometric(amax, ratio, n.unwrap_or(DEFAULT_SCALES))?;
            match floor {
                Some(f) => g.with_floor(f),
                None => g,
            }
        }
    })
}

fn parse_rho(desc: &str, omega: &SampledPath) -> Run<Integrand> {
    let of = |f| Ok(Integrand::of_path(f, omega));
    match desc {
        "time" => Ok(Integrand::time()),
        "value" => of(Primitive::Identity),
        "cos" => of(Primitive::Cos),
        "sin" => of(Primitive::Sin),
        "exp" => of(Primitive::Exp),
        "square" => of(Primitive::Square),
        _ => {
            if let Some(cs) = desc.strip_prefix("poly:") {
                let coeffs = cs
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Usage(format!("bad polynomial {cs:?}: {e}")))?;
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Usage(format!("bad polynomial {cs:?}")).into());
                }
                Ok(Integrand::Polynomial(coeffs))
            } else if let Some(file) = desc.strip_prefix("file:") {
                Ok(Integrand::Sampled(io::read_continuous_file(file)?))
            } else {
                Err(Usage(format!("unknown integrand {desc:?}")).into())
            }
        }
    }
}

fn cmd_generate(a: &GenerateArgs) -> Run<()> {
    let model = match a.model {
        ModelArg::Fbm => Model::Fbm { hurst: a.hurst },
        ModelArg::Brownian => Model::Brownian,
        ModelArg::Stable => Model::Stable { alpha: a.alpha },
        ModelArg::Cpoisson => Model::CompoundPoisson {
            rate: a.rate,
            jump_std: a.jump_std,
        },
        ModelArg::Star => Model::Star {
            alpha: a.alpha,
            teeth: a.teeth,
        },
    };
    if a.n == 0 {
        return Err(Usage("--n must be at least 1".into()).into());
    }
    let spec = GenSpec {
        stream: a.stream,
        sigma: a.sigma,
        ..GenSpec::new(model, a.n, a.seed)
    };
    let path = generate(&spec)?;
    if a.json {
        return emit_json(&a.output, &json!({"schema": 1, "spec": spec}));
    }
    let mut w = sink(&a.output)?;
    io::write_generated(&mut w, &path)?;
    w.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

fn cmd_tree(a: &InputArgs) -> Run<()> {
    let path = load(&a.input)?;
    let tree = build_merge_tree(&path)?;
    let mut v = io::tree_json(&tree);
    v["leafCount"] = json!(tree.leaf_count());
    v["totalLength"] = json!(tree.total_length());
    emit_json(&a.output, &v)
}

fn cmd_trim(a: &TrimArgs) -> Run<()> {
    if !(a.a > 0.0) || !a.a.is_finite() {
        return Err(Usage(format!("-a must be positive, got {}", a.a)).into());
    }
    let path = load(&a.io.input)?;
    if a.flatten {
        let flat = flatten(&path, a.a)?;
        let mut w = sink(&a.io.output)?;
        io::write_path(&mut w, &flat)?;
        w.flush().map_err(|e| Error::Io(e.to_string()))?;
        return Ok(());
    }
    let ev = trim_events(&path, a.a)?;
    let leaves = leaf_pairs(&path, a.a)?;
    emit_json(
        &a.io.output,
        &json!({"schema": 1, "scale": a.a, "count": ev.count, "events": ev, "leaves": leaves}),
    )
}

fn cmd_profile(a: &ProfileArgs) -> Run<()> {
    let (path, floor) = load_with_floor(&a.io.input)?;
    let grid = build_grid(&a.grid, &path, floor)?;
    let prof = trim_profile(&path, &grid)?;
    if a.json {
        return emit_json(&a.io.output, &json!({"schema": 1, "profile": prof}));
    }
    let mut w = sink(&a.io.output)?;
    io::write_profile(&mut w, &prof)?;
    w.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

fn cmd_pvar(a: &PvarArgs) -> Run<()> {
    if !(a.p >= 1.0) || !a.p.is_finite() {
        return Err(Usage(format!("-p must be at least 1, got {}", a.p)).into());
    }
    let (path, floor) = load_with_floor(&a.io.input)?;
    let bounds = pvar_bounds(&path, a.p)?;
    let grid = build_grid(&a.grid, &path, floor)?;
    let prof = trim_profile(&path, &grid)?;
    let w = Window::default();
    let fit = variation_index(&prof, &w).ok();
    let mut rep = VariationReport::new(&bounds, fit.as_ref());
    rep.hurst_ratio = hurst_ratio(&prof, &w).ok().map(|h| h.hurst);
    rep.hurst_drawdown = hurst_drawdown_profile(&prof, &w).ok().map(|d| d.statistic);
    emit_json(
        &a.io.output,
        &serde_json::to_value(&rep).expect("serializable"),
    )
}

fn cmd_dimension(a: &GridInput) -> Run<()> {
    let (path, floor) = load_with_floor(&a.io.input)?;
    let prof = trim_profile(&path, &build_grid(&a.grid, &path, floor)?)?;
    let fit = variation_index(&prof, &Window::default())?;
    emit_json(
        &a.io.output,
        &json!({"schema": 1, "index": fit.estimate, "r2": fit.r2, "fit": fit}),
    )
}

fn cmd_hurst(a: &GridInput) -> Run<()> {
    let (path, floor) = load_with_floor(&a.io.input)?;
    let prof = trim_profile(&path, &build_grid(&a.grid, &path, floor)?)?;
    let w = Window::default();
    let ratio = hurst_ratio(&prof, &w)?;
    let dd = hurst_drawdown_profile(&prof, &w)?;
    emit_json(
        &a.io.output,
        &json!({
            "schema": 1,
            "hurst_ratio": ratio.hurst,
            "hurst_drawdown": dd.hurst,
            "drawdown_statistic": dd.statistic,
            "ratio": ratio,
            "drawdown": dd,
        }),
    )
}

fn cmd_integrate(a: &IntegrateArgs) -> Run<()> {
    if !(a.tol > 0.0) {
        return Err(Usage("--tol must be positive".into()).into());
    }
    if let Some(q) = a.q {
        if !(q >= 1.0 && q.is_finite()) {
            return Err(Usage(format!("-q must be at least 1, got {q}")).into());
        }
    }
    let path = load(&a.io.input)?;
    let rho = parse_rho(&a.rho, &path)?;
    let grid = if a.grid.grid.is_some() || a.grid.amin.is_some() || a.grid.scales.is_some() {
        build_grid(&a.grid, &path, discretization_floor(&path))?
    } else {
        default_grid(&path)?
    };
    let mut routes = serde_json::Map::new();
    let mut value = None;
    let mut trace = json!([]);
    let mut error_bar = 0.0;
    let mut converged = true;
    let want = |m: Method| a.method == Method::All || a.method == m;
    if want(Method::Stieltjes) {
        let s = stieltjes(&rho, &path, 1);
        routes.insert("stieltjes".into(), json!(s));
        value = Some(s);
    }
    if want(Method::Young) {
        let opts = YoungOptions {
            tol: a.tol,
            ..Default::default()
        };
        let y = young(&rho, &path, &opts)?;
        routes.insert("young".into(), json!(y.value));
        if a.method == Method::Young {
            value = Some(y.value);
            trace = json!(y.trace);
        }
    }
    if want(Method::Tree) {
        let opts = TreeIntegralOptions {
            tol: a.tol,
            ..Default::default()
        };
        let t = tree_integral(&rho, &path, &grid, &opts)?;
        routes.insert("tree_flatten".into(), json!(t.route_a));
        routes.insert("tree_levels".into(), json!(t.route_b));
        if a.method != Method::Stieltjes {
            value = Some(t.value);
            trace = json!(t.trace);
            error_bar = t.error_bar;
            converged = t.converged;
        }
    }
    let mut out = json!({
        "schema": 1,
        "value": value,
        "route_values": routes,
        "trace": trace,
        "error_bar": error_bar,
        "converged": converged,
    });
    if let Some(q) = a.q {
        out["conditional_variation_lb"] = json!(conditional_variation_lb(&rho, &path, q, &grid)?);
    }
    emit_json(&a.io.output, &out)
}

fn cmd_rough(a: &RoughArgs) -> Run<()> {
    if !(a.r > 1.0 / 3.0 && a.r <= 1.0) {
        return Err(Usage(format!("-r must lie in (1/3, 1], got {}", a.r)).into());
    }
    let omega = load(&a.io.input)?;
    let eta = match &a.eta {
        Some(p) => load(p)?,
        None => omega.clone(),
    };
    let lift = lift_linear(&[omega.clone(), eta.clone()])?.with_exponent(a.r);
    // rho = (eta, 0) as a one-form in (omega, eta); d rho_0 / d eta = 1.
    let ci = FnControlled {
        d: 2,
        rho: |t: f64| vec![lift.xi(t)[1], 0.0],
        phi: |_t: f64| vec![0.0, 0.0, 1.0, 0.0],
    };
    let opts = RoughOptions {
        tol: a.tol,
        ..Default::default()
    };
    let r = rough_integral(&ci, &lift, 0.0, 1.0, &opts)?;
    let g = lift.gamma(0.0, 1.0);
    emit_json(
        &a.io.output,
        &json!({
            "schema": 1,
            "value": r.value,
            "route_values": {"rough": r.value, "levy_area": 0.5 * (g[1] - g[2])},
            "trace": r.levels,
            "error_bar": 0.0,
            "converged": r.converged,
            "exponent": r.exponent,
        }),
    )
}

fn cmd_cde(a: &CdeArgs) -> Run<()> {
    if a.steps == 0 {
        return Err(Usage("--steps must be at least 1".into()).into());
    }
    let omega = load(&a.io.input)?;
    let opts = CdeOptions {
        scheme: match a.scheme {
            SchemeArg::Picard => CdeScheme::Picard,
            SchemeArg::Taylor => CdeScheme::Taylor,
        },
        tol: a.tol,
        steps: a.steps,
        ..Default::default()
    };
    let sol = match a.field {
        FieldArg::Linear => cde_solve(&LinearField::scalar(), &[omega], &[a.x0], &opts)?,
        FieldArg::Constant => cde_solve(&ConstantField::identity(1), &[omega], &[a.x0], &opts)?,
    };
    if a.json {
        return emit_json(
            &a.io.output,
            &json!({
                "schema": 1,
                "x0": a.x0,
                "final": sol.final_state()[0],
                "ratio": sol.final_state()[0] / a.x0,
                "iterations": sol.iterations,
                "splits": sol.splits,
                "steps": sol.times.len() - 1,
            }),
        );
    }
    let mut w = sink(&a.io.output)?;
    io::write_path(&mut w, &sol.component(0)?)?;
    w.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

fn run(cli: &Cli) -> Run<()> {
    match &cli.cmd {
        Cmd::Generate(a) => cmd_generate(a),
        Cmd::Tree(a) => cmd_tree(a),
        Cmd::Trim(a) => cmd_trim(a),
        Cmd::Profile(a) => cmd_profile(a),
        Cmd::Pvar(a) => cmd_pvar(a),
        Cmd::Dimension(a) => cmd_dimension(a),
        Cmd::Hurst(a) => cmd_hurst(a),
        Cmd::Integrate(a) => cmd_integrate(a),
        Cmd::Rough(a) => cmd_rough(a),
        Cmd::Cde(a) => cmd_cde(a),
    }
}

fn threads() -> std::result::Result<(), Usage> {
    let Ok(s) = std::env::var("PATHFOREST_THREADS") else {
        return Ok(());
    };
    let n: usize = s.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Usage(format!(
            "PATHFOREST_THREADS must be a positive integer, got {s:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = threads().map_err(Failure::from).and_then(|_| run(&cli));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            let v = json!({"schema": 1, "error": {"kind": e.kind(), "message": e.to_string()}});
            eprintln!("{v}");
            ExitCode::from(1)
        }
    }
}
