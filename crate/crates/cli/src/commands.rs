use std::path::{Path, PathBuf};

use rayon::prelude::*;
use swarmbench::combinatorial::aco_optimize;
use swarmbench::stats::{compare_fixed_accuracy, compare_fixed_budget, summarize, AccuracyOutcome, ComparisonReport};
use swarmbench::{benchfns, run_labeled, AlgorithmConfig, Budget, RunRecord};

use crate::config::{AlgorithmSpec, ExperimentConfig, ProblemSpec};
use crate::error::{CliError, CliResult};
use crate::manifest::{write_atomic, write_run_directory, Manifest, RunDirectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Measure {
    /// Best value reached within the budget.
    Budget,
    /// Evaluations needed to reach the target accuracy.
    Accuracy,
}

fn run_one(ex: &ExperimentConfig, label: &str, spec: &AlgorithmSpec, seed: u64) -> CliResult<RunRecord> {
    match (spec, &ex.problem) {
        (AlgorithmSpec::Continuous(cfg), ProblemSpec::Continuous(problem)) => {
            let mut budget = Budget::new(ex.budget);
            if let Some(delta) = ex.accuracy {
                budget = budget.with_target_accuracy(delta);
            }
            Ok(run_labeled(label, cfg, problem, budget, seed)?)
        }
        (AlgorithmSpec::Aco(cfg), ProblemSpec::Tsp(graph)) => {
            let mut record = aco_optimize(graph, cfg, ex.budget, seed)?.record;
            record.algorithm = label.to_string();
            if let Some(delta) = ex.accuracy {
                record.target_accuracy = Some(delta);
                record.evals_to_accuracy = record.curve.iter().find(|&&(_, v)| v <= delta).map(|&(e, _)| e);
            }
            Ok(record)
        }
        _ => Err(CliError::invalid(format!("algorithms.{label}: kind does not match the problem"))),
    }
}

/// Runs the full grid, parallel across seeds, and writes the run directory.
pub fn cmd_run(ex: &ExperimentConfig, out: &Path, jobs: Option<usize>) -> CliResult<Manifest> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::parse("--jobs must be at least 1"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::other(e.to_string()))?;
    let mut records = Vec::new();
    for (label, spec) in &ex.algorithms {
        let batch: Vec<RunRecord> =
            pool.install(|| ex.seeds.par_iter().map(|&seed| run_one(ex, label, spec, seed)).collect::<CliResult<_>>())?;
        records.extend(batch.into_iter().map(|r| (label.clone(), r)));
    }
    let manifest = Manifest {
        config_sha256: ex.config_sha256.clone(),
        problem: ex.problem.describe(),
        budget: ex.budget,
        target_accuracy: ex.accuracy,
        algorithms: ex.algorithms.iter().map(|(l, s)| (l.clone(), s.kind().to_string())).collect(),
        files: Vec::new(),
    };
    write_run_directory(out, manifest, &records)
}

fn common_budget(label: &str, records: &[RunRecord]) -> CliResult<u64> {
    let first = records[0].budget;
    if let Some(r) = records.iter().find(|r| r.budget != first) {
        return Err(CliError::other(format!(
            "records for `{label}` use different budgets ({first} and {})",
            r.budget
        )));
    }
    Ok(first)
}

pub fn cmd_compare(dir: &Path, a: &str, b: &str, measure: Measure) -> CliResult<ComparisonReport> {
    let run = RunDirectory::open(dir)?;
    let (ra, rb) = (run.records(a)?, run.records(b)?);
    let (ba, bb) = (common_budget(a, ra)?, common_budget(b, rb)?);
    if ba != bb {
        return Err(swarmbench::Error::MismatchedBudgets { a: ba, b: bb }.into());
    }
    match measure {
        Measure::Budget => {
            let values = |rs: &[RunRecord]| rs.iter().map(|r| r.final_best).collect::<Vec<_>>();
            let sa = summarize(&values(ra))?.with_budget(ba);
            let sb = summarize(&values(rb))?.with_budget(bb);
            Ok(compare_fixed_budget(&sa, &sb)?)
        }
        Measure::Accuracy => {
            let delta = |label: &str, rs: &[RunRecord]| -> CliResult<f64> {
                let d = rs[0].target_accuracy.ok_or_else(|| {
                    CliError::other(format!(
                        "fixed-accuracy comparison needs a target accuracy, but the runs for `{label}` were made \
                         without one; set `accuracy` in [experiment] and run again (it must be known at run time)"
                    ))
                })?;
                if rs.iter().any(|r| r.target_accuracy != Some(d)) {
                    return Err(CliError::other(format!("records for `{label}` use different target accuracies")));
                }
                Ok(d)
            };
            let (da, db) = (delta(a, ra)?, delta(b, rb)?);
            if da != db {
                return Err(CliError::other(format!(
                    "target accuracies differ: {da} for `{a}`, {db} for `{b}`"
                )));
            }
            Ok(compare_fixed_accuracy(
                &AccuracyOutcome::from_records(ra),
                &AccuracyOutcome::from_records(rb),
            )?)
        }
    }
}

pub fn default_report_path(dir: &Path, a: &str, b: &str, measure: Measure) -> PathBuf {
    let m = match measure {
        Measure::Budget => "budget",
        Measure::Accuracy => "accuracy",
    };
    dir.join("reports").join(format!("{a}-vs-{b}-{m}.json"))
}

pub fn write_report(path: &Path, report: &ComparisonReport) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(report).expect("report is serializable");
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.len() == 1 {
        return (values[0], 0.0);
    }
    let s = summarize(values).expect("at least two finite values");
    (s.mean, s.std)
}

/// CSV of mean and standard deviation of best-so-far across seeds, on the
/// union of every record's checkpoints. A cell is empty until every seed of
/// that algorithm has a value.
pub fn cmd_curve(dir: &Path, labels: &[String]) -> CliResult<String> {
    if labels.is_empty() {
        return Err(CliError::parse("curve needs at least one algorithm"));
    }
    let run = RunDirectory::open(dir)?;
    let groups = labels.iter().map(|l| run.records(l)).collect::<CliResult<Vec<_>>>()?;
    let mut grid: Vec<u64> = groups.iter().flat_map(|rs| rs.iter().flat_map(|r| r.curve.iter().map(|&(e, _)| e))).collect();
    grid.sort_unstable();
    grid.dedup();

    let mut out = String::from("evals");
    for l in labels {
        out.push_str(&format!(",{l}_mean_best,{l}_std_best"));
    }
    out.push('\n');
    for e in grid {
        out.push_str(&e.to_string());
        for rs in &groups {
            let values: Option<Vec<f64>> = rs.iter().map(|r| r.best_at(e)).collect();
            match values {
                Some(v) => {
                    let (m, s) = mean_std(&v);
                    out.push_str(&format!(",{m},{s}"));
                }
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn list_functions() -> String {
    let mut out = format!("{:<12} {:<20} {:>9} {:>10}\n", "name", "domain", "optimum", "min_dim");
    for f in benchfns::FUNCTIONS {
        out.push_str(&format!(
            "{:<12} {:<20} {:>9} {:>10}\n",
            f.name,
            format!("[{}, {}]^d", f.lower, f.upper),
            f.optimum_value,
            f.min_dimension
        ));
    }
    out
}

pub fn list_algorithms() -> String {
    let mut out = String::new();
    for name in AlgorithmConfig::NAMES {
        let cfg = AlgorithmConfig::default_for(name).expect("known");
        let json = serde_json::to_value(&cfg).expect("serializable");
        out.push_str(&format!("{name:<15} {}\n", defaults_line(&json)));
    }
    let aco = serde_json::to_value(swarmbench::combinatorial::AcoConfig::default()).expect("serializable");
    out.push_str(&format!("{:<15} {}\n", "aco", defaults_line(&aco)));
    out
}

fn defaults_line(v: &serde_json::Value) -> String {
    let Some(map) = v.as_object() else { return String::new() };
    map.iter()
        .filter(|(k, _)| k.as_str() != "kind")
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
