//! Command-line front end: generate graphs, solve all-pairs shortest
//! paths, verify results against the brute-force oracle, report
//! essential-arc statistics, and run counter sweeps.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors. Machine-readable data goes to files or standard output;
//! summaries and counters go to standard error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sapsp::bench::{emit_report, parse_config, ExperimentConfig, Family, MRule};
use sapsp::{
    essential_edges, floyd_warshall, gen_complete_digraph, gen_cycle_digraph, gen_random_dag,
    gen_random_digraph, parse_graph_file, solve_apsp, solve_dag_apsp_with, verify_counters,
    verify_matrix, verify_sorted_lists, write_graph_file, ApspResult, Graph, RunCounters,
    SsspEngine, Tolerance, VerificationReport, Variant,
};

#[derive(Parser)]
#[command(name = "sapsp", version, about = "All-pairs shortest paths from any single-source solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    RandomStrong,
    Complete,
    Dag,
    Cycle,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::RandomStrong => Family::RandomStrong,
            FamilyArg::Complete => Family::Complete,
            FamilyArg::Dag => Family::Dag,
            FamilyArg::Cycle => Family::Cycle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Dijkstra,
    Dag,
    BellmanFord,
}

impl EngineArg {
    fn engine(self) -> SsspEngine {
        match self {
            EngineArg::Dijkstra => SsspEngine::Dijkstra,
            EngineArg::Dag => SsspEngine::DagTopological,
            EngineArg::BellmanFord => SsspEngine::BellmanFord,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Basic,
    Improved,
}

impl VariantArg {
    fn variant(self) -> Variant {
        match self {
            VariantArg::Basic => Variant::Basic,
            VariantArg::Improved => Variant::Improved,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file from one of the seeded families.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Arc count; required for random-strong and dag, ignored otherwise.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        wmin: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 100)]
        wmax: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve all-pairs shortest paths for a graph file.
    Solve {
        input: PathBuf,
        /// Defaults to dijkstra, or to the topological engine with --dag.
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
        #[arg(long, value_enum, default_value_t = VariantArg::Improved)]
        variant: VariantArg,
        /// Route through the acyclic pipeline (reweight, solve, shift
        /// back); required for graphs with negative arc lengths.
        #[arg(long)]
        dag: bool,
        /// Output format: json (full result) or tsv (matrix only).
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a solve result against the brute-force oracle.
    Verify { graph: PathBuf, result: PathBuf },
    /// Print the graph's size and its essential-arc count.
    Stats {
        input: PathBuf,
        /// Also list the essential arcs.
        #[arg(long)]
        essential: bool,
        /// Run the cubic oracle even above the n = 500 cap.
        #[arg(long)]
        force: bool,
    },
    /// Sweep graph families and record operation counters.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    /// Flat key=value config file; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Comma-separated list of vertex counts.
    #[arg(long)]
    n: Option<String>,
    /// Arc-count rule: absolute ("400") or per-vertex ("4n").
    #[arg(long)]
    m: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    wmin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    wmax: Option<i64>,
    /// Comma-separated seed list.
    #[arg(long)]
    seeds: Option<String>,
    /// Comma-separated variant list.
    #[arg(long)]
    variants: Option<String>,
    /// Comma-separated engine list.
    #[arg(long)]
    engines: Option<String>,
    #[arg(long)]
    oracle_cap: Option<usize>,
    /// Report format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { family, n, m, wmin, wmax, seed, out } => {
            cmd_gen(family.family(), n, m, wmin, wmax, seed, out)
        }
        Command::Solve { input, engine, variant, dag, format, out } => {
            cmd_solve(input, engine, variant.variant(), dag, &format, out)
        }
        Command::Verify { graph, result } => cmd_verify(graph, result),
        Command::Stats { input, essential, force } => cmd_stats(input, essential, force),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn emit(out: Option<PathBuf>, data: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(&path, data).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_gen(
    family: Family,
    n: usize,
    m: Option<usize>,
    wmin: i64,
    wmax: i64,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let need_m = || m.ok_or_else(|| anyhow!("--m is required for the {family} family"));
    let g = match family {
        Family::RandomStrong => gen_random_digraph(n, need_m()?, wmin, wmax, seed)?,
        Family::Complete => gen_complete_digraph(n, wmin, wmax, seed)?,
        Family::Dag => gen_random_dag(n, need_m()?, wmin, wmax, seed)?,
        Family::Cycle => gen_cycle_digraph(n, wmin, wmax, seed)?,
    };
    emit(out, &write_graph_file(&g))?;
    eprintln!("generated {family}: n = {}, m = {}", g.n(), g.m());
    Ok(ExitCode::SUCCESS)
}

fn print_counters(counters: &RunCounters) {
    eprintln!(
        "psi_calls={} cursor_advances={} viability_checks={} peak_aux_arcs={} peak_active_cursors={} wall_ms={:.3}",
        counters.psi_calls,
        counters.cursor_advances,
        counters.viability_checks,
        counters.peak_aux_arcs,
        counters.peak_active_cursors,
        counters.wall_time.as_secs_f64() * 1e3,
    );
}

fn cmd_solve(
    input: PathBuf,
    engine: Option<EngineArg>,
    variant: Variant,
    dag: bool,
    format: &str,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let g = load_graph(&input)?;
    let engine = engine
        .map(EngineArg::engine)
        .unwrap_or(if dag { SsspEngine::DagTopological } else { SsspEngine::Dijkstra });
    let result = if dag {
        solve_dag_apsp_with(&g, engine, variant, |_| {})?
    } else {
        if g.has_negative() {
            bail!("{} has negative arc lengths; pass --dag to use the acyclic pipeline", input.display());
        }
        solve_apsp(&g, engine, variant)?
    };
    let rendered = match format {
        "json" => result.to_json(),
        "tsv" => result.to_tsv(),
        other => bail!("unknown format '{other}' (expected json or tsv)"),
    };
    emit(out, &rendered)?;
    print_counters(&result.counters);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(graph: PathBuf, result: PathBuf) -> Result<ExitCode> {
    let g = load_graph(&graph)?;
    let text = fs::read_to_string(&result).with_context(|| format!("reading {}", result.display()))?;
    let result: ApspResult =
        ApspResult::from_json(&text).with_context(|| format!("parsing {}", result.display()))?;
    if result.n != g.n() {
        bail!("result has n = {} but the graph has n = {}", result.n, g.n());
    }
    let dm = floyd_warshall(&g)?;
    let (_, mstar) = essential_edges(&g, &dm);
    let mut report: VerificationReport =
        verify_matrix(&result.matrix, &dm, Tolerance::for_graph(&g))?;
    report.merge(verify_sorted_lists(&result.lists, &dm, result.potentials.as_deref()));
    report.merge(verify_counters(&result.counters, &g, mstar, result.variant));
    let rendered = serde_json::json!({
        "passed": report.passed(),
        "mstar": mstar,
        "violations": report.violations,
    });
    println!("{}", serde_json::to_string_pretty(&rendered)?);
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_stats(input: PathBuf, essential: bool, force: bool) -> Result<ExitCode> {
    let g = load_graph(&input)?;
    if g.n() > 500 && !force {
        bail!("n = {} is above the n = 500 oracle cap; pass --force to run anyway", g.n());
    }
    let dm = floyd_warshall(&g)?;
    let (arcs, mstar) = essential_edges(&g, &dm);
    println!("n = {}", g.n());
    println!("m = {}", g.m());
    println!("mstar = {mstar}");
    if essential {
        for id in arcs {
            let arc = g.arc(id);
            println!("{} -> {} ({})", arc.tail + 1, arc.head + 1, arc.length);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_list<T, E>(value: &str, what: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr<Err = E>,
    E: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|tok| tok.parse().map_err(|e| anyhow!("bad {what} '{tok}': {e}")))
        .collect()
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_config(&text)?
        }
        None => {
            let family = args.family.ok_or_else(|| anyhow!("either --config or --family is required"))?;
            ExperimentConfig::new(family.family())
        }
    };
    if let Some(family) = args.family {
        cfg.family = family.family();
    }
    if let Some(n) = &args.n {
        cfg.n_values = parse_list(n, "n")?;
    }
    if let Some(m) = &args.m {
        cfg.m_rule = MRule::parse(m).ok_or_else(|| anyhow!("bad m rule '{m}'"))?;
    }
    if let Some(wmin) = args.wmin {
        cfg.wmin = wmin;
    }
    if let Some(wmax) = args.wmax {
        cfg.wmax = wmax;
    }
    if let Some(seeds) = &args.seeds {
        cfg.seeds = parse_list(seeds, "seed")?;
    }
    if let Some(variants) = &args.variants {
        cfg.variants = variants
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|tok| Variant::from_name(tok).ok_or_else(|| anyhow!("unknown variant '{tok}'")))
            .collect::<Result<_>>()?;
    }
    if let Some(engines) = &args.engines {
        cfg.engines = engines
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|tok| SsspEngine::from_name(tok).ok_or_else(|| anyhow!("unknown engine '{tok}'")))
            .collect::<Result<_>>()?;
    }
    if let Some(cap) = args.oracle_cap {
        cfg.oracle_cap = cap;
    }
    let records = sapsp::bench::run_suite(&cfg)?;
    let rendered = emit_report(&records, &args.format)?;
    emit(args.out, &rendered)?;
    eprintln!("ran {} cells", records.len());
    Ok(ExitCode::SUCCESS)
}
