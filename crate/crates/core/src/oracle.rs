//! Ground truth for tests: exact small-instance optimum, the quadratic
//! textbook constructors, and direct evaluation of gain/loss.

use rand::Rng;

use crate::graph::{Graph, VertexId};
use crate::{Error, Result, SolverRng, TieBreak};

/// Largest graph [`exact_min_vc`] accepts.
pub const EXACT_LIMIT: usize = 26;
/// Largest graph for which all minimum covers are enumerated.
pub const ENUMERATE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub optimum_size: usize,
    pub one_optimal_cover: Vec<VertexId>,
    /// Every minimum cover, when the graph has at most [`ENUMERATE_LIMIT`] vertices.
    pub all_minimum_covers: Option<Vec<Vec<VertexId>>>,
}

/// gain(v) for `v ∉ C`, loss(v) for `v ∈ C`, evaluated edge by edge.
pub fn recompute_scores(graph: &Graph, in_cover: &[bool]) -> Vec<usize> {
    let mut score = vec![0; graph.vertex_count()];
    for &(a, b) in graph.edges() {
        let (a, b) = (a as usize, b as usize);
        match (in_cover[a], in_cover[b]) {
            // removing the sole covering endpoint uncovers the edge
            (true, false) => score[a] += 1,
            (false, true) => score[b] += 1,
            // adding either endpoint covers it
            (false, false) => {
                score[a] += 1;
                score[b] += 1;
            }
            (true, true) => {}
        }
    }
    score
}

pub fn uncovered_edges(graph: &Graph, in_cover: &[bool]) -> Vec<usize> {
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|&(_, &(a, b))| !in_cover[a as usize] && !in_cover[b as usize])
        .map(|(e, _)| e)
        .collect()
}

pub fn is_vertex_cover(graph: &Graph, cover: &[VertexId]) -> bool {
    let mut in_cover = vec![false; graph.vertex_count()];
    for &v in cover {
        in_cover[v as usize] = true;
    }
    uncovered_edges(graph, &in_cover).is_empty()
}

fn masks(graph: &Graph) -> Vec<u32> {
    (0..graph.vertex_count())
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

fn mask_is_cover(graph: &Graph, mask: u32) -> bool {
    graph
        .edges()
        .iter()
        .all(|&(a, b)| mask & (1 << a | 1 << b) != 0)
}

fn mask_to_vertices(mask: u32) -> Vec<VertexId> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

struct BranchAndBound {
    adj: Vec<u32>,
    best: usize,
    best_mask: u32,
}

impl BranchAndBound {
    /// Size of a greedy maximal matching on the live vertices; any cover needs
    /// one endpoint per matched edge.
    fn matching_bound(&self, alive: u32) -> usize {
        let mut free = alive;
        let mut size = 0;
        while free != 0 {
            let u = free.trailing_zeros() as usize;
            free &= !(1 << u);
            let partners = self.adj[u] & free;
            if partners != 0 {
                free &= !(1 << partners.trailing_zeros());
                size += 1;
            }
        }
        size
    }

    fn search(&mut self, alive: u32, chosen: u32, count: usize) {
        let mut pivot = None;
        let mut pivot_degree = 0;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & alive).count_ones();
            if d > pivot_degree {
                pivot_degree = d;
                pivot = Some(v);
            }
        }
        let Some(v) = pivot else {
            if count < self.best {
                self.best = count;
                self.best_mask = chosen;
            }
            return;
        };
        if count + self.matching_bound(alive) >= self.best {
            return;
        }
        let bit = 1u32 << v;
        let nb = self.adj[v] & alive;
        self.search(alive & !bit, chosen | bit, count + 1);
        self.search(alive & !nb & !bit, chosen | nb, count + nb.count_ones() as usize);
    }
}

/// Exact minimum vertex cover by branch and bound on a maximum-degree vertex
/// (take it, or take all its neighbors) with a matching lower bound.
pub fn exact_min_vc(graph: &Graph) -> Result<ExactResult> {
    let n = graph.vertex_count();
    if n > EXACT_LIMIT {
        return Err(Error::TooLarge {
            limit: EXACT_LIMIT,
            vertex_count: n,
        });
    }
    let all = (1u32 << n) - 1;
    let mut bb = BranchAndBound {
        adj: masks(graph),
        best: n,
        best_mask: all,
    };
    bb.search(all, 0, 0);
    let all_minimum_covers = (n <= ENUMERATE_LIMIT).then(|| {
        (0..=all)
            .filter(|m| m.count_ones() as usize == bb.best && mask_is_cover(graph, *m))
            .map(mask_to_vertices)
            .collect()
    });
    Ok(ExactResult {
        optimum_size: bb.best,
        one_optimal_cover: mask_to_vertices(bb.best_mask),
        all_minimum_covers,
    })
}

/// Minimum cover size by trying every subset. Exists to check [`exact_min_vc`].
pub fn brute_force_min_vc(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    assert!(n <= 20, "brute force is limited to 20 vertices");
    (0u32..1 << n)
        .filter(|&m| mask_is_cover(graph, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Picks among `candidates` per the tie-break: smallest id, or reservoir-uniform.
struct TieChooser {
    best: Option<usize>,
    seen: u64,
}

impl TieChooser {
    fn new() -> Self {
        TieChooser { best: None, seen: 0 }
    }

    fn reset(&mut self) {
        self.best = None;
        self.seen = 0;
    }

    /// Offers `v` (visited in increasing id order) as another tied candidate.
    fn offer(&mut self, v: usize, tie: TieBreak, rng: &mut SolverRng) {
        self.seen += 1;
        match tie {
            TieBreak::Deterministic => {
                if self.best.is_none() {
                    self.best = Some(v);
                }
            }
            TieBreak::Random => {
                if rng.gen_range(0..self.seen) == 0 {
                    self.best = Some(v);
                }
            }
        }
    }
}

struct NaiveState<'g> {
    graph: &'g Graph,
    gain: Vec<usize>,
    in_cover: Vec<bool>,
    uncovered: usize,
}

impl<'g> NaiveState<'g> {
    fn new(graph: &'g Graph) -> Self {
        NaiveState {
            graph,
            gain: graph.degrees().collect(),
            in_cover: vec![false; graph.vertex_count()],
            uncovered: graph.edge_count(),
        }
    }

    fn add(&mut self, v: usize) {
        self.in_cover[v] = true;
        self.uncovered -= self.gain[v];
        for &n in self.graph.neighbors(v) {
            if !self.in_cover[n as usize] {
                self.gain[n as usize] -= 1;
            }
        }
    }

    fn cover(&self) -> Vec<VertexId> {
        (0..self.in_cover.len())
            .filter(|&v| self.in_cover[v])
            .map(|v| v as VertexId)
            .collect()
    }
}

/// Textbook max-gain construction: a full O(|V|) scan per pick.
pub fn naive_max_gain(graph: &Graph, tie: TieBreak, rng: &mut SolverRng) -> Vec<VertexId> {
    let mut st = NaiveState::new(graph);
    let mut chooser = TieChooser::new();
    while st.uncovered > 0 {
        let best_gain = (0..graph.vertex_count())
            .filter(|&v| !st.in_cover[v])
            .map(|v| st.gain[v])
            .max()
            .unwrap();
        chooser.reset();
        for v in 0..graph.vertex_count() {
            if !st.in_cover[v] && st.gain[v] == best_gain {
                chooser.offer(v, tie, rng);
            }
        }
        st.add(chooser.best.unwrap());
    }
    st.cover()
}

/// Textbook min-gain construction: find a vertex of minimum positive gain by
/// a full scan, then add all of its outside neighbors in adjacency order.
pub fn naive_min_gain(graph: &Graph, tie: TieBreak, rng: &mut SolverRng) -> Vec<VertexId> {
    let mut st = NaiveState::new(graph);
    let mut chooser = TieChooser::new();
    while st.uncovered > 0 {
        let least = (0..graph.vertex_count())
            .filter(|&v| !st.in_cover[v] && st.gain[v] > 0)
            .map(|v| st.gain[v])
            .min()
            .unwrap();
        chooser.reset();
        for v in 0..graph.vertex_count() {
            if !st.in_cover[v] && st.gain[v] == least {
                chooser.offer(v, tie, rng);
            }
        }
        let v = chooser.best.unwrap();
        for &n in graph.neighbors(v) {
            if !st.in_cover[n as usize] {
                st.add(n as usize);
            }
        }
    }
    st.cover()
}
