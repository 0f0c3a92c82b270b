//! Ratio benchmarking over a directory of instance files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::Instance;
use crate::oracle::{solve_exact_sor_with, OracleCaps};
use crate::report::{ratio, run, within_factor, Algorithm, RunConfig};
use crate::search::DEFAULT_NODE_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowStatus {
    /// Ran, and the ratio (if certified) is within the guarantee.
    Ok,
    /// Ran, and the ratio exceeds the guarantee.
    Violation,
    /// Not run: the instance is beyond the oracle caps.
    Skipped,
    /// The solver or the oracle failed.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: String,
    pub epsilon: f64,
    pub status: RowStatus,
    pub cost: Option<f64>,
    pub opt: Option<f64>,
    pub ratio: Option<f64>,
    /// Empty when the algorithm carries no guarantee.
    pub guarantee: Option<f64>,
    pub wall_ms: Option<f64>,
    pub nodes: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub epsilons: Vec<f64>,
    pub node_budget: u64,
    /// Compare against the oracle; instances beyond `caps` are skipped.
    pub with_oracle: bool,
    pub caps: OracleCaps,
    pub check_triangle: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: vec![Algorithm::Cover2, Algorithm::Sor7Exact, Algorithm::Oracle],
            epsilons: vec![1.0],
            node_budget: DEFAULT_NODE_BUDGET,
            with_oracle: true,
            caps: OracleCaps::default(),
            check_triangle: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BenchSummary {
    pub rows: Vec<BenchRow>,
    /// Files that could not be read as instances, with the reason.
    pub parse_errors: Vec<(PathBuf, String)>,
}

impl BenchSummary {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.status == RowStatus::Violation).count()
    }

    /// Rows as CSV with a header; no rows gives an empty output.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }
}

/// `*.json` files of `dir`, sorted by file name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    Ok(files)
}

/// Instances by file stem, and unreadable files with the reason.
pub type LoadedCorpus = (Vec<(String, Instance)>, Vec<(PathBuf, String)>);

/// Loads every corpus file; unreadable ones are listed, not fatal.
pub fn load_corpus(dir: &Path, check_triangle: bool) -> Result<LoadedCorpus> {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for path in corpus_files(dir)? {
        match Instance::load(&path, check_triangle) {
            Ok(inst) => ok.push((name_of(&path), inst)),
            Err(e) => bad.push((path, e.to_string())),
        }
    }
    Ok((ok, bad))
}

fn name_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

pub fn bench_dir(dir: &Path, cfg: &BenchConfig) -> Result<BenchSummary> {
    let (instances, parse_errors) = load_corpus(dir, cfg.check_triangle)?;
    let mut summary = bench_instances(&instances, cfg);
    summary.parse_errors = parse_errors;
    Ok(summary)
}

/// One row per (instance, algorithm, epsilon), in that nesting order.
pub fn bench_instances(instances: &[(String, Instance)], cfg: &BenchConfig) -> BenchSummary {
    let mut rows = Vec::new();
    for (name, inst) in instances {
        let opt = if cfg.with_oracle {
            match solve_exact_sor_with(inst, cfg.caps) {
                Ok(o) => Some(Ok(o.opt_cost)),
                Err(e) => Some(Err(e)),
            }
        } else {
            None
        };
        for &algo in &cfg.algorithms {
            for &eps in &cfg.epsilons {
                let guarantee = algo.guarantee(eps).factor();
                let mut row = BenchRow {
                    instance: name.clone(),
                    algorithm: algo.id().into(),
                    epsilon: eps,
                    status: RowStatus::Ok,
                    cost: None,
                    opt: None,
                    ratio: None,
                    guarantee,
                    wall_ms: None,
                    nodes: None,
                    message: String::new(),
                };
                match &opt {
                    Some(Err(crate::Error::OracleCapExceeded(msg))) => {
                        row.status = RowStatus::Skipped;
                        row.message = format!("beyond oracle caps: {msg}");
                        rows.push(row);
                        continue;
                    }
                    Some(Err(e)) => {
                        row.status = RowStatus::Error;
                        row.message = format!("oracle: {e}");
                        rows.push(row);
                        continue;
                    }
                    Some(Ok(o)) => row.opt = Some(*o),
                    None => {}
                }
                let mut rc = RunConfig::new(algo, eps);
                rc.node_budget = cfg.node_budget;
                match run(inst, &rc) {
                    Ok((_, rep)) => {
                        row.cost = Some(rep.cost);
                        row.wall_ms = Some(rep.wall_ms);
                        row.nodes = Some(rep.nodes);
                        if !rep.feasible {
                            row.status = RowStatus::Violation;
                            row.message = rep.violations.join("; ");
                        } else if let Some(o) = row.opt {
                            row.ratio = Some(ratio(rep.cost, o));
                            if guarantee.is_some_and(|f| !within_factor(rep.cost, o, f)) {
                                row.status = RowStatus::Violation;
                                row.message = "ratio exceeds guarantee".into();
                            }
                        }
                    }
                    Err(e) => {
                        row.status = RowStatus::Error;
                        row.message = e.to_string();
                    }
                }
                rows.push(row);
            }
        }
    }
    BenchSummary { rows, parse_errors: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{color4, line4, triv1};
    use crate::generate::{generate, GeneratorMode, GeneratorSpec};

    fn named() -> Vec<(String, Instance)> {
        vec![("line4".into(), line4(2, 0)), ("color4".into(), color4(1, [1, 1])), ("triv1".into(), triv1())]
    }

    #[test]
    fn named_instances_give_nine_ok_rows() {
        let s = bench_instances(&named(), &BenchConfig::default());
        assert_eq!(s.rows.len(), 9);
        assert!(s.rows.iter().all(|r| r.status == RowStatus::Ok), "{:?}", s.rows);
        assert_eq!(s.violations(), 0);
    }

    #[test]
    fn empty_corpus_is_empty_csv() {
        let dir = tempfile::tempdir().unwrap();
        let s = bench_dir(dir.path(), &BenchConfig::default()).unwrap();
        assert!(s.rows.is_empty());
        assert_eq!(s.to_csv_string(), "");
    }

    #[test]
    fn oversized_instance_is_skipped() {
        let spec = GeneratorSpec { n: 20, omega: 1, k: 2, m: vec![0], dim: 2, mode: GeneratorMode::Uniform, seed: 1 };
        let s = bench_instances(&[("big".into(), generate(&spec).unwrap())], &BenchConfig::default());
        assert!(s.rows.iter().all(|r| r.status == RowStatus::Skipped));
    }

    #[test]
    fn parse_errors_are_listed() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.json"), line4(2, 0).to_json_string()).unwrap();
        fs::write(dir.path().join("b.json"), "{").unwrap();
        fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        let s = bench_dir(dir.path(), &BenchConfig::default()).unwrap();
        assert_eq!(s.rows.len(), 3);
        assert_eq!(s.parse_errors.len(), 1);
        let csv = s.to_csv_string();
        assert!(csv.starts_with("instance,algorithm,epsilon,status,"));
        assert_eq!(csv.lines().count(), 4);
    }
}
