//! Alternative partitions: every vertex occupies one slot of a single array,
//! and the array is cut into regions by score and side of the cover.
//!
//! ```text
//! | parked | loss-0 | gain-0 | loss-1 | gain-1 | ... | loss-dmax | gain-dmax |
//! ```
//!
//! `loss-k` holds cover vertices whose removal would uncover `k` edges,
//! `gain-k` holds outside vertices whose insertion would cover `k` edges.
//! Region boundaries are kept in `loss_start` / `gain_start`; an empty region
//! is two equal boundaries. Moving a vertex between adjacent regions is one or
//! two swaps at region boundaries plus as many pointer shifts.
//!
//! Parked vertices are fixed cover members. They sit in a prefix that no scan
//! visits; their loss is still tracked so it can be audited.

use std::fmt::Write as _;
use std::ops::Range;

use rand::Rng;

use crate::counters::OpCounters;
use crate::graph::{Graph, VertexId};
use crate::{SolverRng, TieBreak};

#[derive(Debug, Clone)]
pub struct AltPartitions {
    slot: Vec<VertexId>,
    position: Vec<u32>,
    score: Vec<u32>,
    degree: Vec<u32>,
    in_cover: Vec<bool>,
    parked: Vec<bool>,
    /// `max_score + 2` entries; the last one is the array length.
    loss_start: Vec<usize>,
    gain_start: Vec<usize>,
    cover_size: usize,
    parked_count: usize,
    pub counters: OpCounters,
}

impl AltPartitions {
    /// Empty cover: every vertex sits in `gain-d(v)`, laid out by counting sort on degree.
    pub fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let max_score = graph.max_degree();
        let degree: Vec<u32> = graph.degrees().map(|d| d as u32).collect();
        let mut parts = AltPartitions {
            slot: vec![0; n],
            position: vec![0; n],
            score: degree.clone(),
            degree,
            in_cover: vec![false; n],
            parked: vec![false; n],
            loss_start: vec![0; max_score + 2],
            gain_start: vec![0; max_score + 1],
            cover_size: 0,
            parked_count: 0,
            counters: OpCounters::default(),
        };
        parts.relayout();
        parts
    }

    pub fn vertex_count(&self) -> usize {
        self.slot.len()
    }

    pub fn max_score(&self) -> usize {
        self.gain_start.len() - 1
    }

    #[inline]
    pub fn score(&self, v: usize) -> usize {
        self.score[v] as usize
    }

    #[inline]
    pub fn in_cover(&self, v: usize) -> bool {
        self.in_cover[v]
    }

    pub fn in_cover_flags(&self) -> &[bool] {
        &self.in_cover
    }

    #[inline]
    pub fn is_parked(&self, v: usize) -> bool {
        self.parked[v]
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v] as usize
    }

    pub fn slot(&self, i: usize) -> VertexId {
        self.slot[i]
    }

    pub fn cover_size(&self) -> usize {
        self.cover_size
    }

    /// Cover vertices that are not parked.
    pub fn removable_count(&self) -> usize {
        self.cover_size - self.parked_count
    }

    pub fn parked_range(&self) -> Range<usize> {
        0..self.loss_start[0]
    }

    #[inline]
    pub fn loss_region(&self, k: usize) -> Range<usize> {
        self.loss_start[k]..self.gain_start[k]
    }

    #[inline]
    pub fn gain_region(&self, k: usize) -> Range<usize> {
        self.gain_start[k]..self.loss_start[k + 1]
    }

    pub fn members(&self, range: Range<usize>) -> &[VertexId] {
        &self.slot[range]
    }

    /// Parks the given cover vertices and rebuilds the layout in O(|V| + d_max).
    pub fn park(&mut self, fixed: &[bool]) {
        for (v, &f) in fixed.iter().enumerate() {
            if f {
                assert!(self.in_cover[v], "vertex {v} is fixed but not in the cover");
            }
            self.parked[v] = f;
        }
        self.parked_count = fixed.iter().filter(|&&f| f).count();
        self.relayout();
    }

    /// Counting sort of all vertices on (score, side), parked vertices first.
    fn relayout(&mut self) {
        let n = self.slot.len();
        let max_score = self.max_score();
        let keys = 2 * (max_score + 1);
        let key = |p: &Self, v: usize| 2 * p.score[v] as usize + usize::from(!p.in_cover[v]);

        let mut start = vec![0usize; keys + 1];
        let mut parked = 0;
        for v in 0..n {
            if self.parked[v] {
                parked += 1;
            } else {
                start[key(self, v) + 1] += 1;
            }
        }
        start[0] = parked;
        for i in 0..keys {
            start[i + 1] += start[i];
        }
        for k in 0..=max_score {
            self.loss_start[k] = start[2 * k];
            self.gain_start[k] = start[2 * k + 1];
        }
        self.loss_start[max_score + 1] = n;

        let mut next_parked = 0;
        for v in 0..n {
            let at = if self.parked[v] {
                next_parked += 1;
                next_parked - 1
            } else {
                let k = key(self, v);
                start[k] += 1;
                start[k] - 1
            };
            self.slot[at] = v as VertexId;
            self.position[v] = at as u32;
        }
        self.counters.layout_ops += (n + keys) as u64;
    }

    #[inline]
    fn swap_slots(&mut self, i: usize, j: usize) {
        let a = self.slot[i];
        let b = self.slot[j];
        self.slot[i] = b;
        self.slot[j] = a;
        self.position[b as usize] = i as u32;
        self.position[a as usize] = j as u32;
        self.counters.cell_writes += 2;
    }

    #[inline]
    fn shift(&mut self) {
        self.counters.cell_writes += 1;
    }

    /// Moves `v` from `gain-k` to `loss-k`: swap with the region's first slot,
    /// then advance the `gain-k` boundary.
    pub fn place_into_cover(&mut self, v: usize) {
        assert!(!self.in_cover[v], "vertex {v} is already in the cover");
        let k = self.score[v] as usize;
        let p = self.position[v] as usize;
        debug_assert!(self.gain_region(k).contains(&p));
        let boundary = self.gain_start[k];
        self.swap_slots(p, boundary);
        self.gain_start[k] += 1;
        self.shift();
        self.in_cover[v] = true;
        self.cover_size += 1;
        self.counters.partition_moves += 1;
    }

    /// Mirror of [`place_into_cover`](Self::place_into_cover).
    pub fn place_out_of_cover(&mut self, v: usize) {
        assert!(self.in_cover[v], "vertex {v} is not in the cover");
        assert!(!self.parked[v], "vertex {v} is fixed in the cover");
        let k = self.score[v] as usize;
        let p = self.position[v] as usize;
        debug_assert!(self.loss_region(k).contains(&p));
        let boundary = self.gain_start[k] - 1;
        self.swap_slots(p, boundary);
        self.gain_start[k] -= 1;
        self.shift();
        self.in_cover[v] = false;
        self.cover_size -= 1;
        self.counters.partition_moves += 1;
    }

    /// `gain-k` to `gain-(k-1)`, crossing `loss-k`.
    pub fn gain_minus_minus(&mut self, v: usize) {
        assert!(!self.in_cover[v], "gain update on cover vertex {v}");
        let k = self.score[v] as usize;
        assert!(k > 0, "gain of vertex {v} would drop below zero");
        debug_assert!(self.gain_region(k).contains(&(self.position[v] as usize)));
        let b = self.gain_start[k];
        self.swap_slots(self.position[v] as usize, b);
        self.gain_start[k] += 1;
        let b = self.loss_start[k];
        self.swap_slots(self.position[v] as usize, b);
        self.loss_start[k] += 1;
        self.counters.cell_writes += 2;
        self.score[v] -= 1;
        self.counters.partition_moves += 1;
    }

    /// `gain-k` to `gain-(k+1)`, crossing `loss-(k+1)`.
    pub fn gain_plus_plus(&mut self, v: usize) {
        assert!(!self.in_cover[v], "gain update on cover vertex {v}");
        let k = self.score[v] as usize;
        assert!(k < self.degree[v] as usize, "gain of vertex {v} would exceed its degree");
        debug_assert!(self.gain_region(k).contains(&(self.position[v] as usize)));
        let b = self.loss_start[k + 1] - 1;
        self.swap_slots(self.position[v] as usize, b);
        self.loss_start[k + 1] -= 1;
        let b = self.gain_start[k + 1] - 1;
        self.swap_slots(self.position[v] as usize, b);
        self.gain_start[k + 1] -= 1;
        self.counters.cell_writes += 2;
        self.score[v] += 1;
        self.counters.partition_moves += 1;
    }

    /// `loss-k` to `loss-(k-1)`, crossing `gain-(k-1)`. Parked vertices only update their score.
    pub fn loss_minus_minus(&mut self, v: usize) {
        assert!(self.in_cover[v], "loss update on outside vertex {v}");
        let k = self.score[v] as usize;
        assert!(k > 0, "loss of vertex {v} would drop below zero");
        if !self.parked[v] {
            debug_assert!(self.loss_region(k).contains(&(self.position[v] as usize)));
            let b = self.loss_start[k];
            self.swap_slots(self.position[v] as usize, b);
            self.loss_start[k] += 1;
            let b = self.gain_start[k - 1];
            self.swap_slots(self.position[v] as usize, b);
            self.gain_start[k - 1] += 1;
            self.counters.cell_writes += 2;
        }
        self.score[v] -= 1;
        self.counters.partition_moves += 1;
    }

    /// `loss-k` to `loss-(k+1)`, crossing `gain-k`. Parked vertices only update their score.
    pub fn loss_plus_plus(&mut self, v: usize) {
        assert!(self.in_cover[v], "loss update on outside vertex {v}");
        let k = self.score[v] as usize;
        assert!(k < self.degree[v] as usize, "loss of vertex {v} would exceed its degree");
        if !self.parked[v] {
            debug_assert!(self.loss_region(k).contains(&(self.position[v] as usize)));
            let b = self.gain_start[k] - 1;
            self.swap_slots(self.position[v] as usize, b);
            self.gain_start[k] -= 1;
            let b = self.loss_start[k + 1] - 1;
            self.swap_slots(self.position[v] as usize, b);
            self.loss_start[k + 1] -= 1;
            self.counters.cell_writes += 2;
        }
        self.score[v] += 1;
        self.counters.partition_moves += 1;
    }

    /// One draw over a contiguous region, or its smallest vertex id.
    pub fn pick(&self, range: Range<usize>, tie: TieBreak, rng: &mut SolverRng) -> VertexId {
        debug_assert!(!range.is_empty());
        match tie {
            TieBreak::Random => self.slot[rng.gen_range(range)],
            TieBreak::Deterministic => *self.slot[range].iter().min().unwrap(),
        }
    }

    /// Smallest `k` whose `loss-k` region is non-empty.
    pub fn min_loss(&mut self) -> Option<usize> {
        for k in 0..=self.max_score() {
            self.counters.boundary_tests += 1;
            if self.loss_start[k] != self.gain_start[k] {
                return Some(k);
            }
        }
        None
    }

    /// A uniformly random removable cover vertex of minimum loss; `None` when
    /// every cover vertex is parked.
    pub fn random_min_loss_vertex(&mut self, tie: TieBreak, rng: &mut SolverRng) -> Option<VertexId> {
        let k = self.min_loss()?;
        Some(self.pick(self.loss_region(k), tie, rng))
    }

    /// Smallest positive `k` with a non-empty `gain-k` region.
    pub fn min_gain_partition(&mut self) -> Option<usize> {
        for k in 1..=self.max_score() {
            self.counters.boundary_tests += 1;
            if !self.gain_region(k).is_empty() {
                return Some(k);
            }
        }
        None
    }

    /// Largest positive `k` with a non-empty `gain-k` region.
    pub fn max_gain_partition(&mut self) -> Option<usize> {
        self.max_gain_partition_below(self.max_score())
    }

    /// Descends from `cursor` to the first non-empty gain region. Valid as a
    /// persistent cursor while no gain ever increases.
    pub fn max_gain_partition_below(&mut self, cursor: usize) -> Option<usize> {
        let mut k = cursor;
        while k > 0 {
            self.counters.boundary_tests += 1;
            if !self.gain_region(k).is_empty() {
                return Some(k);
            }
            k -= 1;
        }
        None
    }

    /// Structural audit: permutation, boundary order, and region membership.
    pub fn check_layout(&self) -> Result<(), String> {
        let n = self.slot.len();
        for i in 0..n {
            let v = self.slot[i] as usize;
            if v >= n || self.position[v] as usize != i {
                return Err(format!("slot/position mismatch at slot {i}"));
            }
        }
        let max_score = self.max_score();
        let mut prev = self.loss_start[0];
        for k in 0..=max_score {
            for b in [self.loss_start[k], self.gain_start[k], self.loss_start[k + 1]] {
                if b < prev {
                    return Err(format!("boundaries out of order around k = {k}"));
                }
                prev = b;
            }
        }
        if self.loss_start[max_score + 1] != n {
            return Err("last boundary is not the array length".into());
        }
        let mut covered = 0;
        let mut parked = 0;
        for v in 0..n {
            let p = self.position[v] as usize;
            let k = self.score[v] as usize;
            if k > self.degree[v] as usize {
                return Err(format!("vertex {v} has score {k} above its degree"));
            }
            covered += usize::from(self.in_cover[v]);
            if self.parked[v] {
                parked += 1;
                if !self.in_cover[v] || !self.parked_range().contains(&p) {
                    return Err(format!("parked vertex {v} misplaced"));
                }
                continue;
            }
            let region = if self.in_cover[v] { self.loss_region(k) } else { self.gain_region(k) };
            if !region.contains(&p) {
                let side = if self.in_cover[v] { "loss" } else { "gain" };
                return Err(format!("vertex {v} at slot {p} is outside {side}-{k} {region:?}"));
            }
        }
        if covered != self.cover_size || parked != self.parked_count {
            return Err("cover size bookkeeping is off".into());
        }
        Ok(())
    }

    /// One line per score, e.g. `loss-3: v4 v17 | gain-3: v2`. Scores with
    /// both regions empty are skipped.
    pub fn dump(&self) -> String {
        let list = |r: Range<usize>| {
            self.slot[r].iter().map(|v| format!(" v{v}")).collect::<String>()
        };
        let mut out = String::new();
        if !self.parked_range().is_empty() {
            let _ = writeln!(out, "fixed:{}", list(self.parked_range()));
        }
        for k in 0..=self.max_score() {
            let (l, g) = (self.loss_region(k), self.gain_region(k));
            if l.is_empty() && g.is_empty() {
                continue;
            }
            let _ = writeln!(out, "loss-{k}:{} | gain-{k}:{}", list(l), list(g));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, complete_graph, star_graph};
    use crate::rng_from_seed;
    use proptest::prelude::*;

    fn sorted(mut v: Vec<VertexId>) -> Vec<VertexId> {
        v.sort_unstable();
        v
    }

    #[test]
    fn init_is_counting_sort_on_degree() {
        // degrees [3, 1, 2, 1, 1]
        let g = build_graph(5, &[(0, 1), (0, 2), (0, 3), (2, 4)]).unwrap();
        let p = AltPartitions::new(&g);
        assert_eq!(p.members(p.gain_region(0)), &[] as &[VertexId]);
        assert_eq!(p.members(p.gain_region(1)), &[1, 3, 4]);
        assert_eq!(p.members(p.gain_region(2)), &[2]);
        assert_eq!(p.members(p.gain_region(3)), &[0]);
        for k in 0..=3 {
            assert!(p.loss_region(k).is_empty());
        }
        p.check_layout().unwrap();
    }

    #[test]
    fn empty_graph_all_gain_zero() {
        let g = build_graph(4, &[]).unwrap();
        let p = AltPartitions::new(&g);
        assert_eq!(p.members(p.gain_region(0)), &[0, 1, 2, 3]);
        assert_eq!(p.max_score(), 0);
        p.check_layout().unwrap();
    }

    #[test]
    fn triangle_all_gain_two() {
        let p = AltPartitions::new(&complete_graph(3));
        assert_eq!(sorted(p.members(p.gain_region(2)).to_vec()), vec![0, 1, 2]);
        assert!(p.gain_region(0).is_empty() && p.gain_region(1).is_empty());
    }

    /// Two vertices of gain 52 sharing one neighborhood, arranged so the
    /// region's left boundary holds v91 and v68 sits right after it.
    #[test]
    fn figure_move_of_v68() {
        let hubs: Vec<usize> = (100..152).collect();
        let mut pairs = Vec::new();
        for &h in &hubs {
            pairs.push((68, h));
            pairs.push((91, h));
        }
        let g = build_graph(152, &pairs).unwrap();
        let mut p = AltPartitions::new(&g);
        assert_eq!(p.members(p.gain_region(52)), &[68, 91]);
        p.place_into_cover(91);
        p.place_out_of_cover(91);
        assert_eq!(p.members(p.gain_region(52)), &[91, 68]);

        let boundary = p.gain_region(52).start;
        p.place_into_cover(68);
        assert_eq!(p.slot(boundary), 68);
        assert_eq!(p.slot(boundary + 1), 91);
        assert_eq!(p.gain_region(52).start, boundary + 1);
        assert_eq!(p.loss_region(52).end - 1, boundary);
        assert_eq!(p.score(68), 52);
        p.check_layout().unwrap();
    }

    #[test]
    fn singleton_region_self_swap() {
        let g = star_graph(3);
        let mut p = AltPartitions::new(&g);
        assert_eq!(p.members(p.gain_region(3)), &[0]);
        p.place_into_cover(0);
        assert!(p.gain_region(3).is_empty());
        assert_eq!(p.members(p.loss_region(3)), &[0]);
        p.check_layout().unwrap();
    }

    #[test]
    fn place_in_then_out_restores_membership() {
        let g = complete_graph(3);
        let mut p = AltPartitions::new(&g);
        p.place_into_cover(1);
        assert_eq!(p.members(p.loss_region(2)), &[1]);
        p.place_out_of_cover(1);
        assert!(!p.in_cover(1));
        assert!(p.gain_region(2).contains(&p.position(1)));
        p.check_layout().unwrap();
    }

    #[test]
    fn loss_zero_member_moves_to_gain_zero() {
        let g = build_graph(2, &[]).unwrap();
        let mut p = AltPartitions::new(&g);
        p.place_into_cover(0);
        assert_eq!(p.members(p.loss_region(0)), &[0]);
        p.place_out_of_cover(0);
        assert_eq!(sorted(p.members(p.gain_region(0)).to_vec()), vec![0, 1]);
    }

    #[test]
    fn unit_score_moves() {
        let g = complete_graph(3);
        let mut p = AltPartitions::new(&g);
        p.gain_minus_minus(2);
        assert_eq!(p.members(p.gain_region(1)), &[2]);
        p.gain_minus_minus(2);
        assert_eq!(p.members(p.gain_region(0)), &[2]);
        p.gain_plus_plus(2);
        assert_eq!(p.members(p.gain_region(1)), &[2]);
        p.check_layout().unwrap();

        p.place_into_cover(0);
        p.loss_minus_minus(0);
        p.loss_minus_minus(0);
        assert_eq!(p.members(p.loss_region(0)), &[0]);
        p.loss_plus_plus(0);
        assert_eq!(p.members(p.loss_region(1)), &[0]);
        p.check_layout().unwrap();
    }

    #[test]
    #[should_panic(expected = "already in the cover")]
    fn double_insert_panics() {
        let mut p = AltPartitions::new(&complete_graph(3));
        p.place_into_cover(0);
        p.place_into_cover(0);
    }

    #[test]
    #[should_panic(expected = "below zero")]
    fn gain_underflow_panics() {
        let mut p = AltPartitions::new(&build_graph(2, &[]).unwrap());
        p.gain_minus_minus(0);
    }

    #[test]
    #[should_panic(expected = "exceed its degree")]
    fn gain_overflow_panics() {
        let mut p = AltPartitions::new(&complete_graph(3));
        p.gain_plus_plus(0);
    }

    #[test]
    fn extremal_scans() {
        let g = star_graph(3);
        let mut p = AltPartitions::new(&g);
        assert_eq!(p.min_gain_partition(), Some(1));
        assert_eq!(p.max_gain_partition(), Some(3));
        let mut p = AltPartitions::new(&complete_graph(3));
        assert_eq!(p.min_gain_partition(), Some(2));
        assert_eq!(p.max_gain_partition(), Some(2));
    }

    #[test]
    fn min_loss_scan_skips_parked() {
        let g = complete_graph(4);
        let mut p = AltPartitions::new(&g);
        p.place_into_cover(0);
        p.place_into_cover(1);
        p.loss_minus_minus(0);
        p.loss_minus_minus(0);
        p.loss_minus_minus(0);
        let mut rng = rng_from_seed(1);
        assert_eq!(p.random_min_loss_vertex(TieBreak::Random, &mut rng), Some(0));
        let mut fixed = vec![false; 4];
        fixed[0] = true;
        p.park(&fixed);
        p.check_layout().unwrap();
        assert_eq!(p.random_min_loss_vertex(TieBreak::Random, &mut rng), Some(1));
        fixed[1] = true;
        p.park(&fixed);
        assert_eq!(p.removable_count(), 0);
        assert_eq!(p.random_min_loss_vertex(TieBreak::Random, &mut rng), None);
        assert_eq!(p.dump(), "fixed: v0 v1\nloss-3: | gain-3: v2 v3\n");
    }

    #[test]
    fn dump_format() {
        let mut p = AltPartitions::new(&star_graph(2));
        p.place_into_cover(0);
        assert_eq!(p.dump(), "loss-1: | gain-1: v1 v2\nloss-2: v0 | gain-2:\n");
    }

    #[test]
    fn moves_touch_constant_cells() {
        let g = complete_graph(6);
        let mut p = AltPartitions::new(&g);
        let mut last = p.counters.cell_writes;
        let mut check = |p: &AltPartitions| {
            let d = p.counters.cell_writes - last;
            assert!(d <= 8, "{d} cells");
            last = p.counters.cell_writes;
        };
        p.gain_minus_minus(3);
        check(&p);
        p.gain_plus_plus(3);
        check(&p);
        p.place_into_cover(3);
        check(&p);
        p.loss_minus_minus(3);
        check(&p);
        p.loss_plus_plus(3);
        check(&p);
        p.place_out_of_cover(3);
        check(&p);
    }

    #[derive(Debug, Clone)]
    enum Op {
        Flip(usize),
        Up(usize),
        Down(usize),
    }

    proptest! {
        /// Model-based check against a plain (side, score) shadow.
        #[test]
        fn primitives_preserve_layout(
            seed in 0u64..1000,
            ops in proptest::collection::vec(
                prop_oneof![
                    (0usize..30).prop_map(Op::Flip),
                    (0usize..30).prop_map(Op::Up),
                    (0usize..30).prop_map(Op::Down),
                ],
                1..300,
            ),
        ) {
            let g = crate::graph::random_graph(30, 0.25, seed);
            let mut p = AltPartitions::new(&g);
            let mut side = [false; 30];
            let mut score: Vec<usize> = g.degrees().collect();
            for op in ops {
                match op {
                    Op::Flip(v) => {
                        if side[v] { p.place_out_of_cover(v) } else { p.place_into_cover(v) }
                        side[v] = !side[v];
                    }
                    Op::Up(v) if score[v] < g.degree(v) => {
                        if side[v] { p.loss_plus_plus(v) } else { p.gain_plus_plus(v) }
                        score[v] += 1;
                    }
                    Op::Down(v) if score[v] > 0 => {
                        if side[v] { p.loss_minus_minus(v) } else { p.gain_minus_minus(v) }
                        score[v] -= 1;
                    }
                    _ => {}
                }
                prop_assert!(p.check_layout().is_ok(), "{:?}", p.check_layout());
            }
            for v in 0..30 {
                prop_assert_eq!(p.in_cover(v), side[v]);
                prop_assert_eq!(p.score(v), score[v]);
            }
        }
    }
}
