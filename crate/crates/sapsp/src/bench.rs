//! Experiment runner: sweeps graph families, sizes, seeds, variants and
//! engines, records the operation counters, and verifies each cell
//! against the brute-force oracle while that stays affordable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counters::RunCounters;
use crate::dag::{solve_dag_apsp_with, DagError};
use crate::driver::{solve_apsp, SolveError, Variant};
use crate::generate::{gen_complete_digraph, gen_cycle_digraph, gen_random_dag, gen_random_digraph};
use crate::graph::{Graph, GraphError};
use crate::oracle::{essential_edges, floyd_warshall, verify_counters, verify_matrix, verify_sorted_lists, OracleError, Tolerance};
use crate::result::ApspResult;
use crate::sssp::{InputRequirement, SsspEngine};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown report format '{0}' (expected csv or json)")]
    UnknownFormat(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Graph family a sweep draws its cells from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    RandomStrong,
    Complete,
    Dag,
    Cycle,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::RandomStrong, Family::Complete, Family::Dag, Family::Cycle];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomStrong => "random-strong",
            Family::Complete => "complete",
            Family::Dag => "dag",
            Family::Cycle => "cycle",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Arc-count rule for the families that take one: either an absolute
/// count or a per-vertex multiple like `4n`. The resolved value is
/// clamped into the family's feasible range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MRule {
    Absolute(usize),
    PerVertex(f64),
}

impl MRule {
    pub fn parse(s: &str) -> Option<MRule> {
        let s = s.trim();
        if let Some(factor) = s.strip_suffix('n') {
            let factor = if factor.is_empty() { 1.0 } else { factor.parse().ok()? };
            Some(MRule::PerVertex(factor))
        } else {
            s.parse().ok().map(MRule::Absolute)
        }
    }

    fn resolve(self, n: usize, family: Family) -> usize {
        let raw = match self {
            MRule::Absolute(m) => m,
            MRule::PerVertex(f) => (f * n as f64).round() as usize,
        };
        match family {
            Family::RandomStrong => raw.clamp(n, n * (n - 1)),
            Family::Dag => raw.min(n * (n - 1) / 2),
            Family::Complete | Family::Cycle => raw,
        }
    }
}

/// One full sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    pub n_values: Vec<usize>,
    pub m_rule: MRule,
    pub wmin: i64,
    pub wmax: i64,
    pub seeds: Vec<u64>,
    pub variants: Vec<Variant>,
    pub engines: Vec<SsspEngine>,
    /// Cells at most this large are verified against the cubic oracle.
    pub oracle_cap: usize,
}

impl ExperimentConfig {
    pub fn new(family: Family) -> ExperimentConfig {
        ExperimentConfig {
            family,
            n_values: Vec::new(),
            m_rule: MRule::PerVertex(4.0),
            wmin: 0,
            wmax: 100,
            seeds: vec![0],
            variants: Variant::ALL.to_vec(),
            engines: vec![SsspEngine::Dijkstra],
            oracle_cap: 500,
        }
    }
}

/// Flat `key=value` config file; `#` starts a comment. Keys: family, n,
/// m, wmin, wmax, seeds, variants, engines, oracle_cap.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, BenchError> {
    let mut cfg = ExperimentConfig::new(Family::RandomStrong);
    let mut family_seen = false;
    let err = |line: usize, msg: String| BenchError::Config { line, msg };
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(err(lineno, format!("expected key=value, got '{line}'")));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "family" => {
                cfg.family = Family::from_name(value)
                    .ok_or_else(|| err(lineno, format!("unknown family '{value}'")))?;
                family_seen = true;
            }
            "n" => {
                cfg.n_values = split_list(value)
                    .map(|tok| tok.parse().map_err(|_| err(lineno, format!("bad n '{tok}'"))))
                    .collect::<Result<_, _>>()?;
            }
            "m" => {
                cfg.m_rule =
                    MRule::parse(value).ok_or_else(|| err(lineno, format!("bad m rule '{value}'")))?;
            }
            "wmin" => {
                cfg.wmin = value.parse().map_err(|_| err(lineno, format!("bad wmin '{value}'")))?;
            }
            "wmax" => {
                cfg.wmax = value.parse().map_err(|_| err(lineno, format!("bad wmax '{value}'")))?;
            }
            "seeds" => {
                cfg.seeds = split_list(value)
                    .map(|tok| tok.parse().map_err(|_| err(lineno, format!("bad seed '{tok}'"))))
                    .collect::<Result<_, _>>()?;
            }
            "variants" => {
                cfg.variants = split_list(value)
                    .map(|tok| {
                        Variant::from_name(tok)
                            .ok_or_else(|| err(lineno, format!("unknown variant '{tok}'")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            "engines" => {
                cfg.engines = split_list(value)
                    .map(|tok| {
                        SsspEngine::from_name(tok)
                            .ok_or_else(|| err(lineno, format!("unknown engine '{tok}'")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            "oracle_cap" => {
                cfg.oracle_cap =
                    value.parse().map_err(|_| err(lineno, format!("bad oracle_cap '{value}'")))?;
            }
            other => return Err(err(lineno, format!("unknown key '{other}'"))),
        }
    }
    if !family_seen {
        return Err(err(0, "missing 'family'".to_string()));
    }
    Ok(cfg)
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// Verification outcome of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum VerifyStatus {
    Passed,
    Failed,
    /// Above the oracle cap: counters recorded, nothing checked.
    Unverified,
    /// Engine and family are incompatible; the cell did not run.
    Skipped(String),
}

impl VerifyStatus {
    fn csv_cell(&self) -> &'static str {
        match self {
            VerifyStatus::Passed => "true",
            VerifyStatus::Failed => "false",
            VerifyStatus::Unverified => "unverified",
            VerifyStatus::Skipped(_) => "skipped",
        }
    }
}

/// One sweep cell: the config echo, the graph's measured shape, the run
/// counters, and the verification outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    #[serde(with = "family_repr")]
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub mstar: Option<usize>,
    pub seed: u64,
    #[serde(with = "variant_repr")]
    pub variant: Variant,
    #[serde(with = "engine_repr")]
    pub engine: SsspEngine,
    pub counters: RunCounters,
    pub verified: VerifyStatus,
}

macro_rules! name_repr {
    ($mod_name:ident, $ty:ty) => {
        mod $mod_name {
            use serde::{de::Error, Deserialize, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(x: &$ty, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(x.name())
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<$ty, D::Error> {
                let name = String::deserialize(d)?;
                <$ty>::from_name(&name).ok_or_else(|| D::Error::custom(format!("unknown name '{name}'")))
            }
        }
    };
}

name_repr!(family_repr, super::Family);
name_repr!(variant_repr, crate::driver::Variant);
name_repr!(engine_repr, crate::sssp::SsspEngine);

fn generate(family: Family, n: usize, m: usize, wmin: i64, wmax: i64, seed: u64) -> Result<Graph, GraphError> {
    match family {
        Family::RandomStrong => gen_random_digraph(n, m, wmin, wmax, seed),
        Family::Complete => gen_complete_digraph(n, wmin, wmax, seed),
        Family::Dag => gen_random_dag(n, m, wmin, wmax, seed),
        Family::Cycle => gen_cycle_digraph(n, wmin, wmax, seed),
    }
}

fn compatibility(engine: SsspEngine, family: Family, g: &Graph) -> Result<(), String> {
    match engine.requirement() {
        InputRequirement::AnyWeights => Ok(()),
        InputRequirement::NonNegativeWeights => {
            if g.has_negative() {
                Err(format!("{engine} requires non-negative weights"))
            } else {
                Ok(())
            }
        }
        InputRequirement::AcyclicGraph => {
            if family == Family::Dag {
                Ok(())
            } else {
                Err(format!("{engine} requires acyclic input"))
            }
        }
    }
}

fn solve_cell(
    family: Family,
    g: &Graph,
    engine: SsspEngine,
    variant: Variant,
) -> Result<ApspResult, BenchError> {
    match family {
        // The acyclic pipeline reweights first, so any engine fits.
        Family::Dag => Ok(solve_dag_apsp_with(g, engine, variant, |_| {})?),
        _ => Ok(solve_apsp(g, engine, variant)?),
    }
}

/// Runs every (n, seed, variant, engine) cell of the sweep. Deterministic
/// apart from the recorded wall times.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, BenchError> {
    let mut records = Vec::new();
    for &n in &cfg.n_values {
        let m = cfg.m_rule.resolve(n, cfg.family);
        for &seed in &cfg.seeds {
            let g = generate(cfg.family, n, m, cfg.wmin, cfg.wmax, seed)?;
            let oracle = if n <= cfg.oracle_cap {
                let dm = floyd_warshall(&g)?;
                let (_, mstar) = essential_edges(&g, &dm);
                Some((dm, mstar))
            } else {
                None
            };
            for &variant in &cfg.variants {
                for &engine in &cfg.engines {
                    let mut record = ExperimentRecord {
                        family: cfg.family,
                        n,
                        m: g.m(),
                        mstar: oracle.as_ref().map(|&(_, mstar)| mstar),
                        seed,
                        variant,
                        engine,
                        counters: RunCounters::default(),
                        verified: VerifyStatus::Unverified,
                    };
                    if let Err(reason) = compatibility(engine, cfg.family, &g) {
                        record.verified = VerifyStatus::Skipped(reason);
                        records.push(record);
                        continue;
                    }
                    let result = solve_cell(cfg.family, &g, engine, variant)?;
                    record.counters = result.counters;
                    if let Some((dm, mstar)) = &oracle {
                        let tolerance = Tolerance::for_graph(&g);
                        let mut report = verify_matrix(&result.matrix, dm, tolerance)?;
                        report.merge(verify_sorted_lists(&result.lists, dm, result.potentials.as_deref()));
                        report.merge(verify_counters(&result.counters, &g, *mstar, variant));
                        record.verified =
                            if report.passed() { VerifyStatus::Passed } else { VerifyStatus::Failed };
                    }
                    records.push(record);
                }
            }
        }
    }
    Ok(records)
}

pub const CSV_HEADER: &str =
    "family,n,m,mstar,variant,engine,psi_calls,cursor_advances,peak_aux_arcs,peak_active_cursors,wall_ms,verified";

/// Renders records as `csv` (stable column order) or `json` (full
/// round-trip of every field).
pub fn emit_report(records: &[ExperimentRecord], format: &str) -> Result<String, BenchError> {
    match format {
        "csv" => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in records {
                let mstar = r.mstar.map_or(String::new(), |x| x.to_string());
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{:.3},{}\n",
                    r.family,
                    r.n,
                    r.m,
                    mstar,
                    r.variant,
                    r.engine,
                    r.counters.psi_calls,
                    r.counters.cursor_advances,
                    r.counters.peak_aux_arcs,
                    r.counters.peak_active_cursors,
                    r.counters.wall_time.as_secs_f64() * 1e3,
                    r.verified.csv_cell(),
                ));
            }
            Ok(out)
        }
        "json" => {
            let mut out = serde_json::to_string_pretty(records)?;
            out.push('\n');
            Ok(out)
        }
        other => Err(BenchError::UnknownFormat(other.to_string())),
    }
}
