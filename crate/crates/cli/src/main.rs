use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rdist::analog::{analog_navigate, AnalogNetwork, DEFAULT_MAX_ITER, DEFAULT_TOL};
use rdist::experiments::{
    bench_runtimes, emit_csv, format_float, log_grid, output_file_name, sweep_gamma,
    weighted_correlation, GammaGrid, GraphFamily, SweepRecord,
};
use rdist::graph::{self, read_edge_list};
use rdist::navigation::greedy_descent;
use rdist::oracles::{bfs_apsp, dijkstra_apsp, exact_apsp, floyd_warshall, graph_diameter};
use rdist::resolvent::{
    gamma_bounds, r_distance, resolvent, round_up, suggest_gamma, DEFAULT_SAFETY,
};
use rdist::{DistanceMatrix, Error, Graph, GraphKind};

const EXIT_FAILURE: u8 = 1;
const EXIT_UNREACHABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rdist",
    version,
    about = "All-pairs shortest paths by resolvent inversion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Compute an all-pairs distance matrix and write it as CSV.
    Distances(DistancesArgs),
    /// Find a path between two vertices.
    Navigate(NavigateArgs),
    /// Sweep gamma and record global/local accuracy.
    Sweep(SweepArgs),
    /// Correlate R-distance with true distance on weighted dense graphs.
    Correlate(CorrelateArgs),
    /// Time the R-distance against Floyd-Warshall and repeated Dijkstra.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Hanoi,
    Grid,
    Tree,
    Dense,
    Powerlaw,
    Weighted,
}

#[derive(Args)]
struct FamilyParams {
    /// Edge probability (dense, weighted).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Degree exponent (powerlaw).
    #[arg(long, default_value_t = 3.0)]
    exponent: f64,
    /// Smallest edge weight (weighted).
    #[arg(long, default_value_t = 1.0)]
    wmin: f64,
    /// Largest edge weight (weighted).
    #[arg(long, default_value_t = 100.0)]
    wmax: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl FamilyParams {
    fn family(&self, f: Family) -> GraphFamily {
        match f {
            Family::Hanoi => GraphFamily::Hanoi,
            Family::Grid => GraphFamily::Grid,
            Family::Tree => GraphFamily::BinaryTree,
            Family::Dense => GraphFamily::RandomDense {
                p: self.p,
                seed: self.seed,
            },
            Family::Powerlaw => GraphFamily::PowerLaw {
                exponent: self.exponent,
                seed: self.seed,
            },
            Family::Weighted => GraphFamily::WeightedDense {
                p: self.p,
                w_min: self.wmin,
                w_max: self.wmax,
                seed: self.seed,
            },
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    family: Family,
    /// Grid side length.
    #[arg(long)]
    side: Option<usize>,
    /// Number of Hanoi disks.
    #[arg(long)]
    disks: Option<u32>,
    /// Binary tree levels.
    #[arg(long)]
    levels: Option<u32>,
    /// Vertex count (dense, powerlaw, weighted).
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    params: FamilyParams,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceMethod {
    Rdist,
    Floyd,
    Dijkstra,
    Bfs,
}

#[derive(Clone, Copy, Debug)]
enum Gamma {
    Auto,
    Value(f64),
}

fn parse_gamma(s: &str) -> Result<Gamma, String> {
    if s == "auto" {
        return Ok(Gamma::Auto);
    }
    match s.parse::<f64>() {
        Ok(g) if g > 0.0 && g < 1.0 => Ok(Gamma::Value(g)),
        _ => Err(format!("expected `auto` or a number in (0, 1), got `{s}`")),
    }
}

#[derive(Args)]
struct GammaChoice {
    /// `auto` or an explicit gain in (0, 1).
    #[arg(long, default_value = "auto", value_parser = parse_gamma)]
    gamma: Gamma,
    /// Fraction of the critical gain used by `--gamma auto`.
    #[arg(long, default_value_t = DEFAULT_SAFETY)]
    safety: f64,
}

#[derive(Args)]
struct DistancesArgs {
    /// Edge-list file.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = DistanceMethod::Rdist)]
    method: DistanceMethod,
    #[command(flatten)]
    gamma: GammaChoice,
    /// Output CSV; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NavigateMethod {
    Rdist,
    Exact,
    Analog,
}

#[derive(Args)]
struct NavigateArgs {
    input: PathBuf,
    #[arg(long)]
    start: usize,
    #[arg(long)]
    goal: usize,
    #[arg(long, value_enum, default_value_t = NavigateMethod::Rdist)]
    method: NavigateMethod,
    #[command(flatten)]
    gamma: GammaChoice,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// `auto-grid` or a comma-separated list of gains.
    #[arg(long, default_value = "auto-grid")]
    gammas: String,
    #[command(flatten)]
    params: FamilyParams,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct CorrelateArgs {
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    wmin: f64,
    #[arg(long, default_value_t = 100.0)]
    wmax: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated gains; defaults to 1e-12 .. 1e-2 at four per decade.
    #[arg(long, value_delimiter = ',')]
    gammas: Vec<f64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Family::Dense)]
    family: Family,
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Timed runs per algorithm, after one discarded warm-up.
    #[arg(long, default_value_t = 5)]
    runs: usize,
    #[arg(long, default_value_t = DEFAULT_SAFETY)]
    safety: f64,
    #[command(flatten)]
    params: FamilyParams,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

enum Failure {
    Lib(Error),
    Message(String),
    Unreachable(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn write_output(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Message(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Message(format!("cannot write to stdout: {e}"))),
    }
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Message(format!("`generate {family}` needs --{flag}")))
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let p = &args.params;
    let g = match args.family {
        Family::Hanoi => graph::gen_hanoi(require(args.disks, "disks", "hanoi")?)?,
        Family::Grid => graph::gen_grid(require(args.side, "side", "grid")?)?,
        Family::Tree => graph::gen_binary_tree(require(args.levels, "levels", "tree")?)?,
        Family::Dense => graph::gen_random_dense(require(args.n, "n", "dense")?, p.p, p.seed)?,
        Family::Powerlaw => {
            graph::gen_power_law(require(args.n, "n", "powerlaw")?, p.exponent, p.seed)?
        }
        Family::Weighted => graph::gen_weighted_dense(
            require(args.n, "n", "weighted")?,
            p.p,
            p.wmin,
            p.wmax,
            p.seed,
        )?,
    };
    write_output(args.out.as_deref(), &g.to_edge_list().to_text())
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let el = read_edge_list(path)?;
    let kind = GraphKind::infer(el.edges().iter().map(|e| &e.weight));
    Ok(Graph::from_edge_list(&el, kind)?)
}

/// Explicit gamma, or `suggest_gamma` from the Floyd-Warshall diameter with
/// the bounds reported on stderr.
fn choose_gamma(g: &Graph, choice: &GammaChoice) -> Result<f64, Failure> {
    if let Gamma::Value(v) = choice.gamma {
        return Ok(v);
    }
    let d_max = graph_diameter(&floyd_warshall(g)).ceil().max(1.0) as u32;
    let bounds = gamma_bounds(g, d_max)?;
    eprintln!(
        "critical gain {:.6e}, precision floor {:.6e} (diameter {d_max})",
        bounds.critical_gain, bounds.precision_floor_for_dmax
    );
    match suggest_gamma(&bounds, choice.safety) {
        Ok(gamma) => {
            eprintln!("gamma {gamma:.6e}");
            Ok(gamma)
        }
        Err(e @ Error::Infeasible { .. }) => Err(Failure::Message(format!(
            "{e}: no gain is both above the precision floor and below the critical gain; \
             distances up to {d_max} cannot be resolved in double precision"
        ))),
        Err(e) => Err(e.into()),
    }
}

fn r_estimate(g: &Graph, gamma: f64) -> Result<DistanceMatrix, Failure> {
    let raw = r_distance(&resolvent(g, gamma)?);
    Ok(if g.kind().is_integral() {
        round_up(&raw)
    } else {
        raw
    })
}

fn distances_csv(d: &DistanceMatrix) -> String {
    let mut out = String::new();
    for i in 0..d.n() {
        let row: Vec<String> = d.row(i).iter().map(|&x| format_float(x)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

fn cmd_distances(args: DistancesArgs) -> CmdResult {
    let g = load_graph(&args.input)?;
    let d = match args.method {
        DistanceMethod::Rdist => r_estimate(&g, choose_gamma(&g, &args.gamma)?)?,
        DistanceMethod::Floyd => floyd_warshall(&g),
        DistanceMethod::Dijkstra => dijkstra_apsp(&g),
        DistanceMethod::Bfs => bfs_apsp(&g)?,
    };
    write_output(args.out.as_deref(), &distances_csv(&d))
}

fn cmd_navigate(args: NavigateArgs) -> CmdResult {
    let g = load_graph(&args.input)?;
    let (path, iterations) = match args.method {
        NavigateMethod::Exact => (
            greedy_descent(&g, &exact_apsp(&g), args.start, args.goal, None)?,
            None,
        ),
        NavigateMethod::Rdist => {
            let gamma = choose_gamma(&g, &args.gamma)?;
            let est = r_distance(&resolvent(&g, gamma)?);
            (greedy_descent(&g, &est, args.start, args.goal, None)?, None)
        }
        NavigateMethod::Analog => {
            if g.kind() != GraphKind::Unweighted {
                return Err(Failure::Message(
                    "analog navigation models unweighted graphs only".into(),
                ));
            }
            let gamma = choose_gamma(&g, &args.gamma)?;
            let mut net = AnalogNetwork::from_graph(&g, gamma)?;
            let walk = analog_navigate(
                &mut net,
                args.start,
                args.goal,
                None,
                DEFAULT_TOL,
                DEFAULT_MAX_ITER,
            )?;
            (walk.path, Some(walk.settle_iterations))
        }
    };
    let vertices: Vec<String> = path.vertices.iter().map(usize::to_string).collect();
    println!("path: {}", vertices.join(" "));
    println!("length: {}", path.length);
    if let Some(its) = iterations {
        let its: Vec<String> = its.iter().map(usize::to_string).collect();
        println!("settle iterations: {}", its.join(" "));
    }
    if path.reached {
        Ok(())
    } else {
        Err(Failure::Unreachable(format!(
            "goal {} not reached from {} (stopped at {})",
            args.goal,
            args.start,
            path.vertices.last().copied().unwrap_or(args.start)
        )))
    }
}

fn parse_grid(s: &str) -> Result<GammaGrid, Failure> {
    if s == "auto-grid" {
        return Ok(GammaGrid::Auto);
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map(GammaGrid::List)
        .map_err(|e| Failure::Message(format!("bad --gammas `{s}`: {e}")))
}

fn interval(recs: &[&SweepRecord], ok: impl Fn(&SweepRecord) -> bool) -> String {
    let hits: Vec<f64> = recs.iter().filter(|r| ok(r)).map(|r| r.gamma).collect();
    match (hits.first(), hits.last()) {
        (Some(lo), Some(hi)) => format!("[{lo:.3e}, {hi:.3e}]"),
        _ => "never".into(),
    }
}

fn create_dir(dir: &Path) -> CmdResult {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Message(format!("cannot create {}: {e}", dir.display())))
}

fn cmd_sweep(args: SweepArgs) -> CmdResult {
    let family = args.params.family(args.family);
    let grid = parse_grid(&args.gammas)?;
    create_dir(&args.out_dir)?;
    let records = sweep_gamma(&family, &args.sizes, &grid)?;
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n_vertices).collect();
    sizes.dedup();
    for n in sizes {
        let recs: Vec<&SweepRecord> = records.iter().filter(|r| r.n_vertices == n).collect();
        let path = args
            .out_dir
            .join(output_file_name("sweep", family.name(), n));
        emit_csv(&recs.iter().map(|&r| r.clone()).collect::<Vec<_>>(), &path)?;
        println!(
            "{}: {} points, global=1 on {}, local=1 on {}",
            path.display(),
            recs.len(),
            interval(&recs, |r| r.global_fraction == 1.0),
            interval(&recs, |r| r.local_fraction == 1.0)
        );
    }
    Ok(())
}

fn cmd_correlate(args: CorrelateArgs) -> CmdResult {
    let gammas = if args.gammas.is_empty() {
        log_grid(1e-12, 1e-2, 4)
    } else {
        args.gammas.clone()
    };
    create_dir(&args.out_dir)?;
    let run = weighted_correlation(args.n, args.p, args.wmin, args.wmax, &gammas, args.seed)?;
    let path = args
        .out_dir
        .join(output_file_name("correlate", "weighted", args.n));
    emit_csv(&run.records, &path)?;
    let best = run
        .records
        .iter()
        .map(|r| r.r_squared)
        .fold(f64::NAN, f64::max);
    println!(
        "{}: {} points, best r^2 {best:.6}, {} skipped",
        path.display(),
        run.records.len(),
        run.skipped.len()
    );
    for s in &run.skipped {
        eprintln!("skipped gamma {:.3e}: {}", s.gamma, s.reason);
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let family = args.params.family(args.family);
    create_dir(&args.out_dir)?;
    for &n in &args.sizes {
        let recs = bench_runtimes(&[family], &[n], args.safety, args.runs)?;
        let path = args
            .out_dir
            .join(output_file_name("bench", family.name(), n));
        emit_csv(&recs, &path)?;
        let ratios: Vec<String> = recs
            .iter()
            .skip(1)
            .map(|r| format!("{}/rdist={:.2}", r.algorithm, r.ratio_to_r_distance))
            .collect();
        println!("{}: {}", path.display(), ratios.join(", "));
    }
    Ok(())
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("RDIST_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| format!("RDIST_THREADS must be a non-negative integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_FAILURE);
    }
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Distances(a) => cmd_distances(a),
        Command::Navigate(a) => cmd_navigate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Correlate(a) => cmd_correlate(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unreachable(msg)) => {
            eprintln!("unreachable: {msg}");
            ExitCode::from(EXIT_UNREACHABLE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
        Err(Failure::Message(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
