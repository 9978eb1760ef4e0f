use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use swarmbench::stats::synthetic_sample;
use swarmbench::{RngStream, RunRecord};
use swarmbench_cli::config::parse_experiment;
use swarmbench_cli::manifest::{write_run_directory, Manifest, MANIFEST};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_swarmbench"));
    c.env_remove("SWARMBENCH_SEED");
    c
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("experiment.toml");
    std::fs::write(&path, body).unwrap();
    path
}

fn run_config(config: &Path, out: &Path) -> Output {
    bin().args(["run", "--config"]).arg(config).arg("--out").arg(out).output().unwrap()
}

const DE_SPHERE: &str = r#"
[experiment]
problem = "sphere"
dimension = 5
budget = 2000
seeds = 100
accuracy = 1e-3

[algorithms.de]
kind = "de"
F = 0.5
C_r = 0.9
"#;

fn files_under(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.is_dir() {
            out.extend(files_under(&p));
        } else {
            out.push(p);
        }
    }
    out.sort();
    out
}

#[test]
fn run_writes_one_record_per_seed_and_is_repeatable() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), DE_SPHERE);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let o = run_config(&config, &a);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_dir(a.join("de")).unwrap().count(), 100);
    assert!(a.join(MANIFEST).exists());

    let o = bin().args(["run", "--jobs", "3", "--config"]).arg(&config).arg("--out").arg(&b).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let (fa, fb) = (files_under(&a), files_under(&b));
    assert_eq!(fa.len(), 101);
    for (x, y) in fa.iter().zip(&fb) {
        assert_eq!(x.strip_prefix(&a).unwrap(), y.strip_prefix(&b).unwrap());
        assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap(), "{}", x.display());
    }

    // Re-running into the same directory overwrites identically.
    let before = std::fs::read(a.join("de/seed-7.json")).unwrap();
    assert!(run_config(&config, &a).status.success());
    assert_eq!(std::fs::read(a.join("de/seed-7.json")).unwrap(), before);
}

#[test]
fn seed_env_overrides_base_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &DE_SPHERE.replace("seeds = 100", "seeds = 2"));
    let out = tmp.path().join("run");
    let o = bin().env("SWARMBENCH_SEED", "40").args(["run", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(out.join("de/seed-40.json").exists() && out.join("de/seed-41.json").exists());
    let r = RunRecord::from_json(&std::fs::read_to_string(out.join("de/seed-41.json")).unwrap()).unwrap();
    assert_eq!(r.seed, 41);

    let o = bin().env("SWARMBENCH_SEED", "x").args(["run", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes_name_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let config = write_config(tmp.path(), &DE_SPHERE.replace("F = 0.5", "F = 3.0"));
    let o = run_config(&config, &out);
    assert_eq!(o.status.code(), Some(3));
    let msg = stderr(&o);
    assert!(msg.contains("`F`") && msg.contains("[0, 2]"), "{msg}");
    assert!(!out.exists());

    let config = write_config(tmp.path(), &DE_SPHERE.replace("budget = 2000", "budget = \"lots\""));
    assert_eq!(run_config(&config, &out).status.code(), Some(2));
    let config = write_config(tmp.path(), "[experiment\n");
    assert_eq!(run_config(&config, &out).status.code(), Some(2));
    let config = write_config(tmp.path(), &DE_SPHERE.replace("n = 20\n", "").replace("C_r = 0.9", "C_r = 1.5"));
    let o = run_config(&config, &out);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("C_r"));
}

fn synthetic_dir(dir: &Path, specs: &[(&str, f64, f64)], target: Option<f64>) {
    let mut records = Vec::new();
    for (k, &(label, mean, std)) in specs.iter().enumerate() {
        let values = synthetic_sample(mean, std, 100, &mut RngStream::new(k as u64 + 1));
        for (seed, v) in values.into_iter().enumerate() {
            records.push((
                label.to_string(),
                RunRecord {
                    algorithm: label.into(),
                    seed: seed as u64,
                    budget: 1000,
                    target_accuracy: target,
                    curve: vec![(1000, v)],
                    final_best: v,
                    final_best_position: vec![0.0],
                    evals_to_accuracy: None,
                },
            ));
        }
    }
    let manifest = Manifest {
        config_sha256: String::new(),
        problem: "synthetic".into(),
        budget: 1000,
        target_accuracy: target,
        algorithms: specs.iter().map(|s| (s.0.to_string(), "synthetic".to_string())).collect(),
        files: vec![],
    };
    write_run_directory(dir, manifest, &records).unwrap();
}

#[test]
fn compare_reports_ratio_line_and_warning() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("synthetic");
    synthetic_dir(&dir, &[("A", 0.001, 0.01), ("B", 0.001, 0.02)], None);
    let o = bin().arg("compare").arg(&dir).args(["A", "B", "--measure", "budget"]).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("1.00 ± 22.36"), "{text}");
    assert!(text.contains("warning: normalized ratios are not a valid comparison"), "{text}");
    assert!(text.contains("A better, marginal"), "{text}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("reports/A-vs-B-budget.json")).unwrap()).unwrap();
    assert_eq!(report["verdict"], "marginal");
    assert_eq!(report["favours"], "A");

    let o = bin().arg("compare").arg(&dir).args(["A", "A"]).output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: indistinguishable"), "{}", stdout(&o));

    let o = bin().arg("compare").arg(&dir).args(["A", "C"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no records for algorithm `C`"));
}

#[test]
fn accuracy_mode_requires_target_at_run_time() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("synthetic");
    synthetic_dir(&dir, &[("A", 1.0, 0.1), ("B", 2.0, 0.1)], None);
    let o = bin().arg("compare").arg(&dir).args(["A", "B", "--measure", "accuracy"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("target accuracy") && stderr(&o).contains("run time"), "{}", stderr(&o));
}

#[test]
fn accuracy_mode_on_real_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let body = DE_SPHERE.replace("seeds = 100", "seeds = 10")
        + "\n[algorithms.slow]\nkind = \"de\"\nF = 0.5\nC_r = 0.1\nn = 40\n";
    let config = write_config(tmp.path(), &body);
    let out = tmp.path().join("run");
    assert!(run_config(&config, &out).status.success());
    let o = bin().arg("compare").arg(&out).args(["de", "slow", "--measure", "accuracy"]).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: de better"), "{}", stdout(&o));
}

#[test]
fn compare_refuses_tampered_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("synthetic");
    synthetic_dir(&dir, &[("A", 0.001, 0.01), ("B", 0.002, 0.01)], None);
    let path = dir.join("B/seed-3.json");
    let text = std::fs::read_to_string(&path).unwrap().replace("\"seed\": 3", "\"seed\": 3 ");
    std::fs::write(&path, text).unwrap();
    let o = bin().arg("compare").arg(&dir).args(["A", "B"]).output().unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("does not match the manifest"));
    let o = bin().arg("curve").arg(&dir).arg("A").output().unwrap();
    assert_eq!(o.status.code(), Some(4));
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| if c.is_empty() { None } else { Some(c.parse().unwrap()) }).collect())
        .collect();
    (header, rows)
}

#[test]
fn curve_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let body = DE_SPHERE.replace("seeds = 100", "seeds = 1")
        + "\n[algorithms.pattern]\nkind = \"pattern_search\"\n";
    let config = write_config(tmp.path(), &body);
    let out = tmp.path().join("one");
    assert!(run_config(&config, &out).status.success());
    let o = bin().arg("curve").arg(&out).arg("de").output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let record = RunRecord::from_json(&std::fs::read_to_string(out.join("de/seed-0.json")).unwrap()).unwrap();
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["evals", "de_mean_best", "de_std_best"]);
    let from_csv: Vec<(u64, f64)> = rows.iter().map(|r| (r[0].unwrap() as u64, r[1].unwrap())).collect();
    assert_eq!(from_csv, record.curve);
    assert!(rows.iter().all(|r| r[2] == Some(0.0)));

    let config = write_config(tmp.path(), &(DE_SPHERE.replace("seeds = 100", "seeds = 30") + "\n[algorithms.pattern]\nkind = \"pattern_search\"\n"));
    let out = tmp.path().join("many");
    assert!(run_config(&config, &out).status.success());
    let csv = tmp.path().join("curve.csv");
    let o = bin().arg("curve").arg(&out).args(["de", "pattern", "--out"]).arg(&csv).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = parse_csv(&std::fs::read_to_string(&csv).unwrap());
    assert_eq!(header.len(), 5);
    for col in [1, 3] {
        let means: Vec<f64> = rows.iter().filter_map(|r| r[col]).collect();
        assert!(!means.is_empty());
        assert!(means.windows(2).all(|w| w[1] <= w[0]), "column {col}");
        assert!(rows.iter().filter_map(|r| r[col + 1]).all(|s| s >= 0.0));
    }
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
}

#[test]
fn aco_runs_on_tsp_files() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::copy(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/cities6.tsp"), tmp.path().join("cities6.tsp")).unwrap();
    let config = write_config(
        tmp.path(),
        "[experiment]\ntsp = \"cities6.tsp\"\nbudget = 300\nseeds = 3\n\n[algorithms.aco]\nkind = \"aco\"\nants = 6\n",
    );
    let out = tmp.path().join("run");
    let o = run_config(&config, &out);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = RunRecord::from_json(&std::fs::read_to_string(out.join("aco/seed-2.json")).unwrap()).unwrap();
    assert_eq!(r.evaluations(), 300);
    assert_eq!(r.final_best_position.len(), 6);

    let config = write_config(tmp.path(), "[experiment]\ntsp = \"cities6.tsp\"\nbudget = 30\nseeds = 1\n\n[algorithms.de]\nkind = \"de\"\n");
    assert_eq!(run_config(&config, &out).status.code(), Some(3));
}

#[test]
fn committed_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut kinds = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let text = std::fs::read_to_string(&path).unwrap();
            let ex = parse_experiment(&text, &dir, None).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            kinds.extend(ex.algorithms.iter().map(|(_, s)| s.kind().to_string()));
        }
    }
    for name in swarmbench::AlgorithmConfig::NAMES.iter().chain(&["aco"]) {
        assert!(kinds.iter().any(|k| k == name), "no example config for {name}");
    }
}

#[test]
fn listings() {
    let o = bin().arg("list-functions").output().unwrap();
    assert!(o.status.success());
    for f in ["sphere", "rosenbrock", "ackley", "rastrigin", "griewank", "two_well"] {
        assert!(stdout(&o).contains(f));
    }
    let o = bin().arg("list-algorithms").output().unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("F=0.5") && text.contains("C_r=0.9"), "{text}");
    assert_eq!(text.lines().count(), 10);
}
