//! DIMACS graph input, solution files, and CSV / JSON-lines result output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::graph::{build_graph_with_stats, Graph, VertexId};
use crate::{Error, Result};

/// A parsed DIMACS file plus what was tolerated while reading it.
#[derive(Debug, Clone)]
pub struct DimacsGraph {
    pub graph: Graph,
    pub declared_edges: usize,
    /// Self-loops and duplicate edges dropped.
    pub dropped: usize,
    pub warnings: Vec<String>,
}

fn parse_field<T: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("{what} '{token}' is not a non-negative integer"),
    })
}

/// Reads `p edge <n> <m>` (or `p col`) and `e <u> <v>` lines with 1-based
/// ids. Comment lines start with `c`; blank lines are skipped. The declared
/// edge count is advisory.
pub fn parse_dimacs<R: BufRead>(mut reader: R) -> Result<DimacsGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    let mut buf = String::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = buf.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "second problem line".into(),
                    });
                }
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("unsupported problem type {:?}", other.unwrap_or("")),
                        })
                    }
                }
                let n = parse_field(tokens.next(), line_no, "vertex count")?;
                let m = parse_field(tokens.next(), line_no, "edge count")?;
                pairs.reserve(m);
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "edge line before the problem line".into(),
                    });
                };
                let u: usize = parse_field(tokens.next(), line_no, "endpoint")?;
                let v: usize = parse_field(tokens.next(), line_no, "endpoint")?;
                for id in [u, v] {
                    if id < 1 || id > n {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("vertex id {id} outside 1..={n}"),
                        });
                    }
                }
                pairs.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unrecognized line type '{other}'"),
                })
            }
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: line_no,
        message: "missing problem line".into(),
    })?;
    let (graph, stats) = build_graph_with_stats(n, &pairs)?;
    let mut warnings = Vec::new();
    if stats.dropped() > 0 {
        warnings.push(format!(
            "dropped {} self-loops and {} duplicate edges",
            stats.self_loops, stats.duplicates
        ));
    }
    if graph.edge_count() != m {
        warnings.push(format!("declared {m} edges, kept {}", graph.edge_count()));
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(DimacsGraph {
        graph,
        declared_edges: m,
        dropped: stats.dropped(),
        warnings,
    })
}

pub fn write_dimacs(graph: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", graph.vertex_count(), graph.edge_count());
    for &(a, b) in graph.edges() {
        let _ = writeln!(out, "e {} {}", a + 1, b + 1);
    }
    out
}

/// `s vc <size> <optimal|unknown>` followed by one `v <id>` (1-based) per vertex.
pub fn write_solution(cover: &[VertexId], optimal: bool) -> String {
    let mut out = format!(
        "s vc {} {}\n",
        cover.len(),
        if optimal { "optimal" } else { "unknown" }
    );
    for &v in cover {
        let _ = writeln!(out, "v {}", v + 1);
    }
    out
}

/// Reads 1-based vertex ids from a solution file. Accepts `v <id>` lines or
/// bare ids; `s` and `c` lines are skipped.
pub fn parse_cover_file<R: BufRead>(reader: R) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('s') || line.starts_with('c') {
            continue;
        }
        let token = line.strip_prefix('v').map(str::trim).unwrap_or(line);
        ids.push(parse_field(Some(token), i + 1, "vertex id")?);
    }
    Ok(ids)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Lincom,
    InitvcOnly,
    MinGain,
    MaxGain,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Lincom => "lincom",
            Variant::InitvcOnly => "initvc-only",
            Variant::MinGain => "min-gain",
            Variant::MaxGain => "max-gain",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lincom" => Ok(Variant::Lincom),
            "initvc-only" => Ok(Variant::InitvcOnly),
            "min-gain" => Ok(Variant::MinGain),
            "max-gain" => Ok(Variant::MaxGain),
            _ => Err(Error::Config(format!("unknown variant '{s}'"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One (instance, variant, seed) run. Cover sizes are absent when the run failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    #[serde(rename = "instance")]
    pub instance_name: String,
    #[serde(rename = "variant")]
    pub solver_variant: Variant,
    pub seed: u64,
    #[serde(rename = "cutoff")]
    pub cutoff_seconds: f64,
    #[serde(rename = "cmin")]
    pub cover_size_min: Option<usize>,
    #[serde(rename = "cavg")]
    pub cover_size_avg: Option<f64>,
    #[serde(rename = "optimal")]
    pub optimal_guaranteed: bool,
    pub steps: u64,
    #[serde(rename = "elapsed")]
    pub elapsed_seconds: f64,
    #[serde(rename = "counters")]
    pub op_counters: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" => Ok(Format::JsonLines),
            _ => Err(Error::Config(format!("unknown format '{s}'"))),
        }
    }
}

fn opt_cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_to_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// CSV columns `instance,variant,seed,cutoff,cmin,cavg,optimal,steps,elapsed`
/// followed by `counter:<name>` for every counter name seen, sorted.
pub fn emit_records(records: &[RunRecord], format: Format) -> Result<String> {
    match format {
        Format::JsonLines => {
            let mut out = String::new();
            for r in records {
                out.push_str(&serde_json::to_string(r)?);
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let counters: BTreeSet<&str> = records
                .iter()
                .flat_map(|r| r.op_counters.keys().map(String::as_str))
                .collect();
            let mut header: Vec<String> = ["instance", "variant", "seed", "cutoff", "cmin", "cavg", "optimal", "steps", "elapsed"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            header.extend(counters.iter().map(|c| format!("counter:{c}")));
            let mut rows = vec![header];
            for r in records {
                let mut row = vec![
                    r.instance_name.clone(),
                    r.solver_variant.to_string(),
                    r.seed.to_string(),
                    r.cutoff_seconds.to_string(),
                    opt_cell(r.cover_size_min),
                    opt_cell(r.cover_size_avg),
                    r.optimal_guaranteed.to_string(),
                    r.steps.to_string(),
                    format!("{:.6}", r.elapsed_seconds),
                ];
                row.extend(counters.iter().map(|c| opt_cell(r.op_counters.get(*c))));
                rows.push(row);
            }
            csv_to_string(rows)
        }
    }
}

/// Per-instance summary over all seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub instance: String,
    pub variant: Variant,
    pub runs: usize,
    pub failed: usize,
    pub cmin: Option<usize>,
    pub cavg: Option<f64>,
    /// Every successful run was certified optimal.
    pub optimal: bool,
    pub baseline_cmin: Option<usize>,
    /// `baseline_cmin - cmin`; positive when this run found the smaller cover.
    pub delta: Option<i64>,
}

pub fn emit_aggregates(rows: &[AggregateRow], format: Format) -> Result<String> {
    match format {
        Format::JsonLines => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&serde_json::to_string(r)?);
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let header = ["instance", "variant", "runs", "failed", "cmin", "cavg", "optimal", "baseline_cmin", "delta"];
            let mut table = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            for r in rows {
                table.push(vec![
                    r.instance.clone(),
                    r.variant.to_string(),
                    r.runs.to_string(),
                    r.failed.to_string(),
                    opt_cell(r.cmin),
                    opt_cell(r.cavg),
                    r.optimal.to_string(),
                    opt_cell(r.baseline_cmin),
                    opt_cell(r.delta),
                ]);
            }
            csv_to_string(table)
        }
    }
}
