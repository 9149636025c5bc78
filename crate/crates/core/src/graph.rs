//! Immutable simple undirected graph in compressed sparse row form.

use rand::Rng;

use crate::{rng_from_seed, Error, Result};

/// Dense 0-based vertex index.
pub type VertexId = u32;

/// Simple undirected graph. Adjacency lists are contiguous and sorted, and
/// every adjacency entry carries the id of its edge so edge-indexed state can
/// be updated during neighbor scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    incident: Vec<u32>,
    edges: Vec<(VertexId, VertexId)>,
    max_degree: usize,
}

/// Input lines rejected while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl BuildStats {
    pub fn dropped(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[VertexId] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    #[inline]
    pub fn incident_edges(&self, v: usize) -> &[u32] {
        &self.incident[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edges as `(lower, higher)` pairs in lexicographic order; the index is the edge id.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn average_degree(&self) -> f64 {
        if self.vertex_count() == 0 {
            0.0
        } else {
            2.0 * self.edge_count() as f64 / self.vertex_count() as f64
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// O(log d) membership test on the smaller of the two sorted adjacency lists.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&(b as VertexId)).is_ok()
    }
}

/// Builds a graph, silently dropping self-loops and duplicate edges.
pub fn build_graph(vertex_count: usize, raw_edges: &[(usize, usize)]) -> Result<Graph> {
    build_graph_with_stats(vertex_count, raw_edges).map(|(g, _)| g)
}

/// Like [`build_graph`] but also reports how many input pairs were dropped.
///
/// Runs in O(|V| + |E|): pairs are normalized to `(lower, higher)`, put in
/// lexicographic order by two stable counting-sort passes, then deduplicated.
pub fn build_graph_with_stats(
    vertex_count: usize,
    raw_edges: &[(usize, usize)],
) -> Result<(Graph, BuildStats)> {
    let mut stats = BuildStats::default();
    let mut pairs = Vec::with_capacity(raw_edges.len());
    for &(u, v) in raw_edges {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::VertexOutOfRange { u, v, vertex_count });
        }
        if u == v {
            stats.self_loops += 1;
            continue;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs.push((a as VertexId, b as VertexId));
    }

    let pairs = counting_sort_by(&counting_sort_by(&pairs, vertex_count, |p| p.1), vertex_count, |p| p.0);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(pairs.len());
    for p in pairs {
        if edges.last() == Some(&p) {
            stats.duplicates += 1;
        } else {
            edges.push(p);
        }
    }

    let mut offsets = vec![0usize; vertex_count + 1];
    for &(a, b) in &edges {
        offsets[a as usize + 1] += 1;
        offsets[b as usize + 1] += 1;
    }
    for i in 0..vertex_count {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut neighbors = vec![0 as VertexId; 2 * edges.len()];
    let mut incident = vec![0u32; 2 * edges.len()];
    // Lexicographic edge order leaves every adjacency list sorted.
    for (e, &(a, b)) in edges.iter().enumerate() {
        let (a, b) = (a as usize, b as usize);
        neighbors[fill[a]] = b as VertexId;
        incident[fill[a]] = e as u32;
        fill[a] += 1;
        neighbors[fill[b]] = a as VertexId;
        incident[fill[b]] = e as u32;
        fill[b] += 1;
    }
    let max_degree = offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);

    Ok((
        Graph {
            offsets,
            neighbors,
            incident,
            edges,
            max_degree,
        },
        stats,
    ))
}

fn counting_sort_by<F>(pairs: &[(VertexId, VertexId)], buckets: usize, key: F) -> Vec<(VertexId, VertexId)>
where
    F: Fn(&(VertexId, VertexId)) -> VertexId,
{
    let mut start = vec![0usize; buckets + 1];
    for p in pairs {
        start[key(p) as usize + 1] += 1;
    }
    for i in 0..buckets {
        start[i + 1] += start[i];
    }
    let mut out = vec![(0, 0); pairs.len()];
    for p in pairs {
        let k = key(p) as usize;
        out[start[k]] = *p;
        start[k] += 1;
    }
    out
}

/// Erdős–Rényi G(n, p), sampled by geometric skipping so the cost is
/// O(n + |E|) rather than O(n²).
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    assert!(n >= 1, "random_graph needs at least one vertex");
    assert!((0.0..=1.0).contains(&edge_prob), "edge probability must lie in [0, 1]");
    let mut pairs = Vec::new();
    if edge_prob >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                pairs.push((w, v));
            }
        }
    } else if edge_prob > 0.0 {
        let mut rng = rng_from_seed(seed);
        let log_q = (1.0 - edge_prob).ln();
        let mut v = 1usize;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                pairs.push((w as usize, v));
            }
        }
    }
    build_graph(n, &pairs).expect("generated pairs are in range")
}

pub fn complete_graph(n: usize) -> Graph {
    random_graph(n.max(1), 1.0, 0)
}

/// Star with vertex 0 as the center.
pub fn star_graph(leaves: usize) -> Graph {
    let pairs: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
    build_graph(leaves + 1, &pairs).unwrap()
}

pub fn path_graph(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build_graph(n, &pairs).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build_graph(n, &pairs).unwrap()
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
pub fn petersen_graph() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
        pairs.push((i, i + 5));
    }
    build_graph(10, &pairs).unwrap()
}
