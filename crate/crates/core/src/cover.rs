//! Candidate cover with incrementally maintained scores and uncovered edges.

use rand::Rng;

use crate::counters::OpCounters;
use crate::graph::{Graph, VertexId};
use crate::oracle;
use crate::partitions::AltPartitions;
use crate::SolverRng;

const ABSENT: u32 = u32::MAX;

/// Edge ids with O(1) insert, delete and uniform sampling.
#[derive(Debug, Clone)]
pub struct UncoveredEdges {
    items: Vec<u32>,
    index: Vec<u32>,
}

impl UncoveredEdges {
    fn new(edge_count: usize) -> Self {
        UncoveredEdges {
            items: Vec::new(),
            index: vec![ABSENT; edge_count],
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.index[e] != ABSENT
    }

    fn insert(&mut self, e: usize) {
        debug_assert_eq!(self.index[e], ABSENT);
        self.index[e] = self.items.len() as u32;
        self.items.push(e as u32);
    }

    fn remove(&mut self, e: usize) {
        let i = self.index[e] as usize;
        debug_assert_ne!(i, ABSENT as usize);
        let last = self.items.pop().unwrap();
        if last as usize != e {
            self.items[i] = last;
            self.index[last as usize] = i as u32;
        }
        self.index[e] = ABSENT;
    }

    pub fn sample(&self, rng: &mut SolverRng) -> Option<usize> {
        if self.items.is_empty() {
            None
        } else {
            Some(self.items[rng.gen_range(0..self.items.len())] as usize)
        }
    }
}

/// A vertex set `C` over a graph with every vertex's gain or loss kept in
/// [`AltPartitions`]. Adding or removing a vertex costs O(1 + d(v)).
#[derive(Debug, Clone)]
pub struct CoverState<'g> {
    graph: &'g Graph,
    parts: AltPartitions,
    uncovered_count: usize,
    uncovered: Option<UncoveredEdges>,
    audit_every: Option<u64>,
    flips: u64,
}

impl<'g> CoverState<'g> {
    /// `C = ∅`; all edges uncovered.
    pub fn new(graph: &'g Graph) -> Self {
        CoverState {
            graph,
            parts: AltPartitions::new(graph),
            uncovered_count: graph.edge_count(),
            uncovered: None,
            audit_every: None,
            flips: 0,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn partitions(&self) -> &AltPartitions {
        &self.parts
    }

    pub fn partitions_mut(&mut self) -> &mut AltPartitions {
        &mut self.parts
    }

    pub fn counters(&self) -> &OpCounters {
        &self.parts.counters
    }

    pub fn counters_mut(&mut self) -> &mut OpCounters {
        &mut self.parts.counters
    }

    #[inline]
    pub fn in_cover(&self, v: usize) -> bool {
        self.parts.in_cover(v)
    }

    /// gain(v) for outside vertices, loss(v) for cover vertices.
    #[inline]
    pub fn score(&self, v: usize) -> usize {
        self.parts.score(v)
    }

    pub fn cover_size(&self) -> usize {
        self.parts.cover_size()
    }

    pub fn uncovered_count(&self) -> usize {
        self.uncovered_count
    }

    pub fn is_cover(&self) -> bool {
        self.uncovered_count == 0
    }

    pub fn uncovered_edges(&self) -> Option<&UncoveredEdges> {
        self.uncovered.as_ref()
    }

    /// Starts tracking the set of uncovered edges (O(|E|) once).
    pub fn track_uncovered_edges(&mut self) {
        let mut set = UncoveredEdges::new(self.graph.edge_count());
        for (e, &(a, b)) in self.graph.edges().iter().enumerate() {
            if !self.parts.in_cover(a as usize) && !self.parts.in_cover(b as usize) {
                set.insert(e);
            }
        }
        self.uncovered = Some(set);
    }

    /// Run [`audit`](Self::audit) after every `k` additions/removals, panicking on mismatch.
    pub fn set_audit_interval(&mut self, every: Option<u64>) {
        self.audit_every = every.filter(|&k| k > 0);
    }

    pub fn cover_vertices(&self) -> Vec<VertexId> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.parts.in_cover(v))
            .map(|v| v as VertexId)
            .collect()
    }

    /// Puts `v` into the cover and updates every neighbor's score.
    pub fn add(&mut self, v: usize) {
        self.uncovered_count -= self.parts.score(v);
        self.parts.place_into_cover(v);
        let graph = self.graph;
        for (&n, &e) in graph.neighbors(v).iter().zip(graph.incident_edges(v)) {
            let n = n as usize;
            self.parts.counters.neighbor_visits += 1;
            if self.parts.in_cover(n) {
                self.parts.loss_minus_minus(n);
            } else {
                self.parts.gain_minus_minus(n);
                if let Some(set) = self.uncovered.as_mut() {
                    set.remove(e as usize);
                }
            }
        }
        self.after_flip();
    }

    /// Takes `v` out of the cover and updates every neighbor's score.
    pub fn remove(&mut self, v: usize) {
        self.uncovered_count += self.parts.score(v);
        self.parts.place_out_of_cover(v);
        let graph = self.graph;
        for (&n, &e) in graph.neighbors(v).iter().zip(graph.incident_edges(v)) {
            let n = n as usize;
            self.parts.counters.neighbor_visits += 1;
            if self.parts.in_cover(n) {
                self.parts.loss_plus_plus(n);
            } else {
                self.parts.gain_plus_plus(n);
                if let Some(set) = self.uncovered.as_mut() {
                    set.insert(e as usize);
                }
            }
        }
        self.after_flip();
    }

    fn after_flip(&mut self) {
        if let Some(k) = self.audit_every {
            self.flips += 1;
            if self.flips.is_multiple_of(k) {
                if let Err(msg) = self.audit() {
                    panic!("cover state audit failed after {} flips: {msg}", self.flips);
                }
            }
        }
    }

    /// From-scratch comparison of every score, the layout, and the uncovered
    /// edge bookkeeping against the definitions.
    pub fn audit(&self) -> Result<(), String> {
        self.parts.check_layout()?;
        let in_cover = self.parts.in_cover_flags();
        let expected = oracle::recompute_scores(self.graph, in_cover);
        for (v, &s) in expected.iter().enumerate() {
            if self.parts.score(v) != s {
                let what = if in_cover[v] { "loss" } else { "gain" };
                return Err(format!("{what}({v}) stored {} but is {s}", self.parts.score(v)));
            }
        }
        let truly_uncovered = oracle::uncovered_edges(self.graph, in_cover);
        if truly_uncovered.len() != self.uncovered_count {
            return Err(format!(
                "uncovered count {} but {} edges are uncovered",
                self.uncovered_count,
                truly_uncovered.len()
            ));
        }
        if let Some(set) = &self.uncovered {
            if set.len() != truly_uncovered.len() || truly_uncovered.iter().any(|&e| !set.contains(e)) {
                return Err("uncovered edge set differs from recount".into());
            }
        }
        Ok(())
    }
}
