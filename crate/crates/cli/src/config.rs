//! Experiment files.
//!
//! ```toml
//! [experiment]
//! problem = "sphere"   # or: tsp = "cities.tsp", relative to this file
//! dimension = 5
//! budget = 10000       # evaluations, or tour constructions for aco
//! seeds = 100
//! base_seed = 0
//! accuracy = 1e-6      # optional target for fixed-accuracy comparisons
//! output = "runs/sphere"  # relative to the working directory
//!
//! [algorithms.de]
//! kind = "de"
//! F = 0.5
//! C_r = 0.9
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use swarmbench::combinatorial::{AcoConfig, RouteGraph};
use swarmbench::{benchfns, AlgorithmConfig, Problem};

use crate::error::{CliError, CliResult};
use crate::manifest::sha256_hex;

pub const SEED_ENV: &str = "SWARMBENCH_SEED";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    experiment: ExperimentSection,
    #[serde(default)]
    algorithms: BTreeMap<String, toml::Table>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentSection {
    problem: Option<String>,
    dimension: Option<usize>,
    tsp: Option<PathBuf>,
    budget: u64,
    seeds: u64,
    #[serde(default)]
    base_seed: u64,
    accuracy: Option<f64>,
    output: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub enum AlgorithmSpec {
    Continuous(AlgorithmConfig),
    Aco(AcoConfig),
}

impl AlgorithmSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgorithmSpec::Continuous(c) => c.name(),
            AlgorithmSpec::Aco(_) => "aco",
        }
    }
}

#[derive(Clone)]
pub enum ProblemSpec {
    Continuous(Problem),
    Tsp(RouteGraph),
}

impl ProblemSpec {
    pub fn describe(&self) -> String {
        match self {
            ProblemSpec::Continuous(p) => format!("{}-{}d", p.name(), p.dimension()),
            ProblemSpec::Tsp(g) => format!("tsp-{}", g.len()),
        }
    }
}

/// A parsed and validated experiment.
#[derive(Clone)]
pub struct ExperimentConfig {
    pub problem: ProblemSpec,
    pub algorithms: Vec<(String, AlgorithmSpec)>,
    pub budget: u64,
    pub seeds: Vec<u64>,
    pub accuracy: Option<f64>,
    pub output: Option<PathBuf>,
    pub config_sha256: String,
}

fn parse_algorithm(label: &str, mut table: toml::Table) -> CliResult<AlgorithmSpec> {
    let kind = match table.get("kind") {
        Some(toml::Value::String(k)) => k.clone(),
        Some(_) => return Err(CliError::parse(format!("algorithms.{label}: `kind` must be a string"))),
        None => return Err(CliError::parse(format!("algorithms.{label}: missing `kind`"))),
    };
    let known: Vec<&str> = AlgorithmConfig::NAMES.iter().copied().chain(["aco"]).collect();
    if !known.contains(&kind.as_str()) {
        return Err(CliError::parse(format!(
            "algorithms.{label}: unknown kind `{kind}` (known: {})",
            known.join(", ")
        )));
    }
    let wrap = |e: toml::de::Error| CliError::parse(format!("algorithms.{label}: {}", e.message()));
    if kind == "aco" {
        table.remove("kind");
        let cfg: AcoConfig = toml::Value::Table(table).try_into().map_err(wrap)?;
        cfg.validate().map_err(|e| CliError::invalid(format!("algorithms.{label}: {e}")))?;
        Ok(AlgorithmSpec::Aco(cfg))
    } else {
        let cfg: AlgorithmConfig = toml::Value::Table(table).try_into().map_err(wrap)?;
        cfg.validate().map_err(|e| CliError::invalid(format!("algorithms.{label}: {e}")))?;
        Ok(AlgorithmSpec::Continuous(cfg))
    }
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses an experiment file. `base_dir` resolves a relative `tsp` path and
/// `seed_override` replaces `base_seed` when given.
pub fn parse_experiment(text: &str, base_dir: &Path, seed_override: Option<u64>) -> CliResult<ExperimentConfig> {
    let file: ExperimentFile = toml::from_str(text).map_err(|e| CliError::parse(format!("config: {}", e.message())))?;
    let ex = file.experiment;
    if file.algorithms.is_empty() {
        return Err(CliError::invalid("config: at least one [algorithms.<label>] table is required"));
    }
    if ex.seeds == 0 {
        return Err(CliError::invalid("invalid parameter `seeds` = 0: must be in [1, inf)"));
    }
    if ex.budget == 0 {
        return Err(CliError::invalid("invalid parameter `budget` = 0: must be in [1, inf)"));
    }
    if let Some(delta) = ex.accuracy {
        if !delta.is_finite() {
            return Err(CliError::invalid(format!("invalid parameter `accuracy` = {delta}: must be finite")));
        }
    }
    let problem = match (&ex.problem, &ex.tsp) {
        (Some(name), None) => {
            let lookup = benchfns::lookup(name).map_err(|_| {
                let names: Vec<&str> = benchfns::FUNCTIONS.iter().map(|f| f.name).collect();
                CliError::invalid(format!("invalid parameter `problem` = {name}: must be one of {}", names.join(", ")))
            })?;
            let d = ex.dimension.unwrap_or(lookup.min_dimension.max(2));
            ProblemSpec::Continuous(
                benchfns::make(name, d).map_err(|e| CliError::invalid(format!("invalid parameter `dimension`: {e}")))?,
            )
        }
        (None, Some(path)) => {
            if ex.dimension.is_some() {
                return Err(CliError::parse("config: `dimension` does not apply to a tsp problem"));
            }
            let path = base_dir.join(path);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::other(format!("cannot read {}: {e}", path.display())))?;
            ProblemSpec::Tsp(RouteGraph::parse(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?)
        }
        _ => return Err(CliError::parse("config: set exactly one of `problem` and `tsp` in [experiment]")),
    };

    let mut algorithms = Vec::new();
    for (label, table) in file.algorithms {
        if !valid_label(&label) {
            return Err(CliError::parse(format!(
                "algorithms.{label}: labels may contain only letters, digits, `_` and `-`"
            )));
        }
        let spec = parse_algorithm(&label, table)?;
        let fits = matches!(
            (&spec, &problem),
            (AlgorithmSpec::Aco(_), ProblemSpec::Tsp(_)) | (AlgorithmSpec::Continuous(_), ProblemSpec::Continuous(_))
        );
        if !fits {
            return Err(CliError::invalid(format!(
                "algorithms.{label}: kind `{}` cannot run on problem {}",
                spec.kind(),
                problem.describe()
            )));
        }
        algorithms.push((label, spec));
    }

    let base = seed_override.unwrap_or(ex.base_seed);
    let seeds = (0..ex.seeds)
        .map(|i| base.checked_add(i))
        .collect::<Option<Vec<u64>>>()
        .ok_or_else(|| CliError::invalid("invalid parameter `base_seed`: base_seed + seeds overflows"))?;

    Ok(ExperimentConfig {
        problem,
        algorithms,
        budget: ex.budget,
        seeds,
        accuracy: ex.accuracy,
        output: ex.output,
        config_sha256: sha256_hex(text.as_bytes()),
    })
}

pub fn seed_from_env() -> CliResult<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::parse(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::parse(format!("{SEED_ENV}: {e}"))),
    }
}
