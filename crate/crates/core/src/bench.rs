//! Batch runs over instance files and seeds, aggregation, and cover checking.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Deserialize;

use crate::construct::{init_vc, max_gain_construct_vc, min_gain_construct_vc};
use crate::counters::OpCounters;
use crate::graph::{Graph, VertexId};
use crate::io::{parse_dimacs, write_solution, AggregateRow, RunRecord};
use crate::search::{solve, SearchConfig};
use crate::{rng_from_seed, Error, OptInfo, Result, TieBreak};

pub use crate::io::Variant;

/// `"a..b"` (inclusive on both ends) or a single seed `"a"`.
pub fn parse_seed_range(s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || Error::Config(format!("bad seed range '{s}', expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

#[derive(Debug, Clone)]
pub struct InstanceRunConfig {
    pub instances: Vec<PathBuf>,
    pub variant: Variant,
    pub seeds: RangeInclusive<u64>,
    pub cutoff_seconds: f64,
    pub max_steps: Option<u64>,
    pub tie_break: TieBreak,
    pub jobs: usize,
    /// When set, one solution file per run is written here.
    pub solution_dir: Option<PathBuf>,
}

impl InstanceRunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cutoff_seconds.is_finite() && self.cutoff_seconds > 0.0) {
            return Err(Error::Config(format!(
                "cutoff must be a positive number of seconds, got {}",
                self.cutoff_seconds
            )));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if self.instances.is_empty() {
            return Err(Error::Config("no instances given".into()));
        }
        Ok(())
    }
}

/// Result of one solver invocation on an in-memory graph.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub cover: Vec<VertexId>,
    pub opt_info: OptInfo,
    pub steps: u64,
    pub elapsed: Duration,
    pub counters: OpCounters,
}

pub fn run_variant(
    graph: &Graph,
    variant: Variant,
    seed: u64,
    cutoff: Duration,
    max_steps: Option<u64>,
    tie: TieBreak,
) -> Result<RunOutput> {
    let started = Instant::now();
    let mut rng = rng_from_seed(seed);
    let constructed = match variant {
        Variant::Lincom => {
            let config = SearchConfig {
                seed,
                cutoff,
                max_steps,
                tie_break: tie,
                audit_every: None,
            };
            let out = solve(graph, &config)?;
            return Ok(RunOutput {
                cover: out.best_cover,
                opt_info: out.opt_info,
                steps: out.steps,
                elapsed: out.elapsed,
                counters: out.counters,
            });
        }
        Variant::InitvcOnly => init_vc(graph, tie, &mut rng),
        Variant::MinGain => min_gain_construct_vc(graph, tie, &mut rng),
        Variant::MaxGain => max_gain_construct_vc(graph, tie, &mut rng),
    };
    Ok(RunOutput {
        cover: constructed.cover,
        opt_info: constructed.opt_info,
        steps: 0,
        elapsed: started.elapsed(),
        counters: constructed.counters,
    })
}

pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .or_else(|| path.file_name())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn load_instance(path: &Path) -> Result<Graph> {
    Ok(parse_dimacs(BufReader::new(File::open(path)?))?.graph)
}

fn failed_record(config: &InstanceRunConfig, name: &str, seed: u64, error: String) -> RunRecord {
    RunRecord {
        instance_name: name.to_string(),
        solver_variant: config.variant,
        seed,
        cutoff_seconds: config.cutoff_seconds,
        cover_size_min: None,
        cover_size_avg: None,
        optimal_guaranteed: false,
        steps: 0,
        elapsed_seconds: 0.0,
        op_counters: Default::default(),
        error: Some(error),
    }
}

fn run_one(config: &InstanceRunConfig, name: &str, graph: &Graph, seed: u64) -> RunRecord {
    let cutoff = Duration::from_secs_f64(config.cutoff_seconds);
    let out = match run_variant(graph, config.variant, seed, cutoff, config.max_steps, config.tie_break) {
        Ok(out) => out,
        Err(e) => return failed_record(config, name, seed, e.to_string()),
    };
    let mut record = RunRecord {
        instance_name: name.to_string(),
        solver_variant: config.variant,
        seed,
        cutoff_seconds: config.cutoff_seconds,
        cover_size_min: Some(out.cover.len()),
        cover_size_avg: Some(out.cover.len() as f64),
        optimal_guaranteed: out.opt_info.is_guaranteed(),
        steps: out.steps,
        elapsed_seconds: out.elapsed.as_secs_f64(),
        op_counters: out.counters.to_map(),
        error: None,
    };
    if let Some(dir) = &config.solution_dir {
        let path = dir.join(format!("{name}.{}.{seed}.sol", config.variant));
        let text = write_solution(&out.cover, out.opt_info.is_guaranteed());
        if let Err(e) = std::fs::write(&path, text) {
            record.error = Some(format!("writing {}: {e}", path.display()));
        }
    }
    record
}

/// Runs every (instance, seed) pair on a pool of `jobs` threads. Records come
/// back ordered by instance (as given) and then seed. An instance that fails
/// to load produces failed records and the suite carries on.
pub fn run_suite(config: &InstanceRunConfig) -> Result<Vec<RunRecord>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let seeds: Vec<u64> = config.seeds.clone().collect();
    let records = pool.install(|| {
        config
            .instances
            .par_iter()
            .map(|path| {
                let name = instance_name(path);
                match load_instance(path) {
                    Ok(graph) => seeds
                        .par_iter()
                        .map(|&seed| run_one(config, &name, &graph, seed))
                        .collect::<Vec<_>>(),
                    Err(e) => {
                        log::error!("{}: {e}", path.display());
                        seeds
                            .iter()
                            .map(|&seed| failed_record(config, &name, seed, format!("{}: {e}", path.display())))
                            .collect()
                    }
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(records.into_iter().flatten().collect())
}

/// Groups records by (instance, variant) in order of first appearance.
/// `C_min` is the minimum and `C_avg` the mean over successful runs.
pub fn aggregate(records: &[RunRecord], baseline: Option<&HashMap<String, usize>>) -> Vec<AggregateRow> {
    let mut order: Vec<(String, Variant)> = Vec::new();
    let mut groups: HashMap<(String, Variant), Vec<&RunRecord>> = HashMap::new();
    for r in records {
        let key = (r.instance_name.clone(), r.solver_variant);
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let group = &groups[&key];
            let ok: Vec<usize> = group.iter().filter_map(|r| r.cover_size_min).collect();
            let cmin = ok.iter().copied().min();
            let cavg = (!ok.is_empty()).then(|| ok.iter().sum::<usize>() as f64 / ok.len() as f64);
            let optimal = !ok.is_empty()
                && group
                    .iter()
                    .filter(|r| r.cover_size_min.is_some())
                    .all(|r| r.optimal_guaranteed);
            let baseline_cmin = baseline.and_then(|b| b.get(&key.0).copied());
            let delta = match (baseline_cmin, cmin) {
                (Some(b), Some(c)) => Some(b as i64 - c as i64),
                _ => None,
            };
            AggregateRow {
                instance: key.0,
                variant: key.1,
                runs: group.len(),
                failed: group.len() - ok.len(),
                cmin,
                cavg,
                optimal,
                baseline_cmin,
                delta,
            }
        })
        .collect()
}

#[derive(Deserialize)]
struct BaselineRow {
    instance: String,
    cmin: Option<usize>,
}

/// Reads a CSV with at least `instance` and `cmin` columns; keeps the
/// smallest `cmin` per instance.
pub fn load_baseline<R: std::io::Read>(reader: R) -> Result<HashMap<String, usize>> {
    let mut out: HashMap<String, usize> = HashMap::new();
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    for row in rdr.deserialize() {
        let row: BaselineRow = row?;
        if let Some(c) = row.cmin {
            let e = out.entry(row.instance).or_insert(c);
            *e = (*e).min(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub valid: bool,
    /// First uncovered edge in edge-list order, 1-based.
    pub violated: Option<(usize, usize)>,
}

/// Checks a cover given as 1-based vertex ids.
pub fn verify_cover(graph: &Graph, ids: &[usize]) -> Result<CoverCheck> {
    let n = graph.vertex_count();
    let mut in_cover = vec![false; n];
    for &id in ids {
        if id < 1 || id > n {
            return Err(Error::UnknownVertex { id, vertex_count: n });
        }
        in_cover[id - 1] = true;
    }
    let violated = graph
        .edges()
        .iter()
        .find(|&&(a, b)| !in_cover[a as usize] && !in_cover[b as usize])
        .map(|&(a, b)| (a as usize + 1, b as usize + 1));
    Ok(CoverCheck {
        valid: violated.is_none(),
        violated,
    })
}

pub fn verify_cover_file<R: BufRead>(graph: &Graph, reader: R) -> Result<CoverCheck> {
    verify_cover(graph, &crate::io::parse_cover_file(reader)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, petersen_graph};

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seed_range("1..10").unwrap(), 1..=10);
        assert_eq!(parse_seed_range("4").unwrap(), 4..=4);
        assert_eq!(parse_seed_range("2..=3").unwrap(), 2..=3);
        assert!(parse_seed_range("5..1").is_err());
        assert!(parse_seed_range("a..b").is_err());
    }

    #[test]
    fn verify_examples() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            verify_cover(&g, &[2]).unwrap(),
            CoverCheck { valid: true, violated: None }
        );
        assert_eq!(verify_cover(&g, &[1]).unwrap().violated, Some((2, 3)));
        assert!(matches!(
            verify_cover(&g, &[4]),
            Err(Error::UnknownVertex { id: 4, .. })
        ));
        let empty = build_graph(3, &[]).unwrap();
        assert!(verify_cover(&empty, &[]).unwrap().valid);
    }

    fn rec(name: &str, seed: u64, size: Option<usize>, opt: bool) -> RunRecord {
        RunRecord {
            instance_name: name.into(),
            solver_variant: Variant::Lincom,
            seed,
            cutoff_seconds: 1.0,
            cover_size_min: size,
            cover_size_avg: size.map(|s| s as f64),
            optimal_guaranteed: opt,
            steps: 0,
            elapsed_seconds: 0.0,
            op_counters: Default::default(),
            error: size.is_none().then(|| "boom".to_string()),
        }
    }

    #[test]
    fn aggregate_min_mean_and_delta() {
        let records = [
            rec("a", 1, Some(10), true),
            rec("a", 2, Some(12), false),
            rec("b", 1, None, false),
            rec("b", 2, Some(5), true),
        ];
        let baseline: HashMap<_, _> = [("a".to_string(), 11)].into_iter().collect();
        let rows = aggregate(&records, Some(&baseline));
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].cmin, Some(10));
        assert_eq!(rows[0].cavg, Some(11.0));
        assert!(!rows[0].optimal);
        assert_eq!(rows[0].delta, Some(1));
        assert_eq!(rows[1].failed, 1);
        assert!(rows[1].optimal);
        assert_eq!(rows[1].delta, None);
    }

    #[test]
    fn baseline_keeps_smallest() {
        let csv = "instance,variant,cmin\na,lincom,7\na,lincom,6\nb,lincom,\n";
        let b = load_baseline(csv.as_bytes()).unwrap();
        assert_eq!(b.get("a"), Some(&6));
        assert_eq!(b.get("b"), None);
    }

    #[test]
    fn every_variant_returns_a_cover() {
        let g = petersen_graph();
        for variant in [Variant::Lincom, Variant::InitvcOnly, Variant::MinGain, Variant::MaxGain] {
            let out = run_variant(&g, variant, 3, Duration::from_secs(5), Some(1000), TieBreak::Random).unwrap();
            let ids: Vec<usize> = out.cover.iter().map(|&v| v as usize + 1).collect();
            assert!(verify_cover(&g, &ids).unwrap().valid, "{variant}");
        }
    }

    #[test]
    fn config_validation() {
        let mut c = InstanceRunConfig {
            instances: vec!["x".into()],
            variant: Variant::Lincom,
            seeds: 1..=1,
            cutoff_seconds: 0.0,
            max_steps: None,
            tie_break: TieBreak::Random,
            jobs: 1,
            solution_dir: None,
        };
        assert!(c.validate().is_err());
        c.cutoff_seconds = 1.0;
        assert!(c.validate().is_ok());
        c.jobs = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn suite_marks_missing_instance_and_continues() {
        let dir = std::env::temp_dir().join(format!("mvc-suite-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let good = dir.join("tri.dimacs");
        std::fs::write(&good, "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        let config = InstanceRunConfig {
            instances: vec![dir.join("missing.dimacs"), good],
            variant: Variant::Lincom,
            seeds: 1..=3,
            cutoff_seconds: 1.0,
            max_steps: Some(100),
            tie_break: TieBreak::Random,
            jobs: 2,
            solution_dir: Some(dir.clone()),
        };
        let records = run_suite(&config).unwrap();
        assert_eq!(records.len(), 6);
        assert!(records[..3].iter().all(|r| r.error.is_some()));
        assert!(records[3..].iter().all(|r| r.cover_size_min == Some(2) && r.optimal_guaranteed));
        assert_eq!(records.iter().map(|r| r.seed).collect::<Vec<_>>(), vec![1, 2, 3, 1, 2, 3]);
        assert!(dir.join("tri.lincom.2.sol").exists());
        std::fs::remove_dir_all(&dir).ok();
    }
}
