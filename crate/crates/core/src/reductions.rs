//! Degree-1 and degree-2 reduction rules, stated on the residual graph
//! `G - C`: an outside vertex's gain is its residual degree, so the rules scan
//! the `gain-1` and `gain-2` regions directly.
//!
//! Vertices put into `C` while no max-gain pick has happened yet are inferred:
//! some minimum cover contains all of them, so they are marked fixed.

use std::collections::VecDeque;

use crate::cover::CoverState;
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSet {
    pub fixed: Vec<bool>,
    pub max_gain_used: bool,
}

impl FixedSet {
    pub fn new(vertex_count: usize) -> Self {
        FixedSet {
            fixed: vec![false; vertex_count],
            max_gain_used: false,
        }
    }

    pub fn count(&self) -> usize {
        self.fixed.iter().filter(|&&f| f).count()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        (0..self.fixed.len())
            .filter(|&v| self.fixed[v])
            .map(|v| v as VertexId)
            .collect()
    }
}

fn put(state: &mut CoverState<'_>, fixed: &mut FixedSet, v: usize) {
    debug_assert!(!state.in_cover(v));
    state.add(v);
    if !fixed.max_gain_used {
        fixed.fixed[v] = true;
    }
}

/// The outside neighbors of an outside vertex whose gain is 2.
fn residual_pair(state: &mut CoverState<'_>, v: usize) -> (usize, usize) {
    let graph = state.graph();
    let mut found = [usize::MAX; 2];
    let mut i = 0;
    for &n in graph.neighbors(v) {
        state.counters_mut().neighbor_visits += 1;
        if !state.in_cover(n as usize) {
            found[i] = n as usize;
            i += 1;
            if i == 2 {
                break;
            }
        }
    }
    debug_assert_eq!(i, 2, "vertex {v} does not have gain 2");
    (found[0], found[1])
}

fn triangle_targets(state: &mut CoverState<'_>, v: usize) -> Option<(usize, usize)> {
    let (a, b) = residual_pair(state, v);
    state.graph().has_edge(a, b).then_some((a, b))
}

/// A partner `u` is an outside neighbor of both `a` and `b` with gain 2, so
/// its residual pair is exactly `{a, b}`.
fn quadrilateral_targets(state: &mut CoverState<'_>, v: usize) -> Option<(usize, usize)> {
    let (a, b) = residual_pair(state, v);
    let graph = state.graph();
    if graph.has_edge(a, b) {
        return None;
    }
    let (hub, other) = if graph.degree(a) <= graph.degree(b) { (a, b) } else { (b, a) };
    for &u in graph.neighbors(hub) {
        let u = u as usize;
        state.counters_mut().neighbor_visits += 1;
        if u != v && !state.in_cover(u) && state.score(u) == 2 && graph.has_edge(u, other) {
            return Some((a, b));
        }
    }
    None
}

fn degree1_target(state: &mut CoverState<'_>, v: usize) -> usize {
    let graph = state.graph();
    for &n in graph.neighbors(v) {
        state.counters_mut().neighbor_visits += 1;
        if !state.in_cover(n as usize) {
            return n as usize;
        }
    }
    unreachable!("gain-1 vertex {v} has no outside neighbor")
}

/// Scans the `gain-k` region in slot order, applying `rule` to each member
/// until a whole pass changes nothing. `rule` returns the number of vertices
/// it added.
fn scan_to_fixpoint<F>(state: &mut CoverState<'_>, k: usize, mut rule: F) -> usize
where
    F: FnMut(&mut CoverState<'_>, usize) -> usize,
{
    if k > state.partitions().max_score() {
        return 0;
    }
    let mut total = 0;
    loop {
        let mut added_in_pass = 0;
        let mut i = state.partitions().gain_region(k).start;
        loop {
            let region = state.partitions().gain_region(k);
            i = i.max(region.start);
            if i >= region.end {
                break;
            }
            let v = state.partitions().slot(i) as usize;
            let added = rule(state, v);
            if added == 0 {
                i += 1;
            }
            added_in_pass += added;
        }
        total += added_in_pass;
        if added_in_pass == 0 {
            return total;
        }
    }
}

/// Outside vertex `v` with gain 2 whose residual neighbors `n1`, `n2` are
/// adjacent: put `n1` and `n2` into the cover.
pub fn apply_triangle_rule_to_fixpoint(state: &mut CoverState<'_>, fixed: &mut FixedSet) -> usize {
    scan_to_fixpoint(state, 2, |state, v| match triangle_targets(state, v) {
        Some((a, b)) => {
            put(state, fixed, a);
            put(state, fixed, b);
            state.counters_mut().triangle_rule += 1;
            2
        }
        None => 0,
    })
}

/// Two outside vertices `u != v` of gain 2 with the same non-adjacent residual
/// neighbors `n1`, `n2`: put `n1` and `n2` into the cover.
pub fn apply_quadrilateral_rule_to_fixpoint(state: &mut CoverState<'_>, fixed: &mut FixedSet) -> usize {
    scan_to_fixpoint(state, 2, |state, v| match quadrilateral_targets(state, v) {
        Some((a, b)) => {
            put(state, fixed, a);
            put(state, fixed, b);
            state.counters_mut().quadrilateral_rule += 1;
            2
        }
        None => 0,
    })
}

/// Outside vertex `v` with gain 1: put its one residual neighbor into the cover.
pub fn apply_degree1_rule_to_fixpoint(state: &mut CoverState<'_>, fixed: &mut FixedSet) -> usize {
    scan_to_fixpoint(state, 1, |state, v| {
        let u = degree1_target(state, v);
        put(state, fixed, u);
        state.counters_mut().degree1_rule += 1;
        1
    })
}

/// Triangle, quadrilateral, then degree-1, each to its own fixpoint.
/// Returns the number of vertices added by the sweep.
pub fn apply_rules_once(state: &mut CoverState<'_>, fixed: &mut FixedSet) -> usize {
    apply_triangle_rule_to_fixpoint(state, fixed)
        + apply_quadrilateral_rule_to_fixpoint(state, fixed)
        + apply_degree1_rule_to_fixpoint(state, fixed)
}

const TRIANGLE: usize = 0;
const QUADRILATERAL: usize = 1;
const DEGREE1: usize = 2;

/// Incremental rule application for construction, where gains only fall.
///
/// Whether a rule fires on an outside vertex depends only on its residual
/// neighborhood (plus, for the quadrilateral rule, a partner's, and a new
/// partner gets queued itself). So a vertex is queued when its gain drops to
/// 1 or 2 and examined once per queueing, instead of rescanning the gain-1 /
/// gain-2 regions after every addition.
#[derive(Debug, Clone)]
pub struct RuleQueue {
    queues: [VecDeque<u32>; 3],
    queued: [Vec<bool>; 3],
}

impl RuleQueue {
    /// Seeds the queues with the current gain-1 and gain-2 members, in slot order.
    pub fn new(state: &CoverState<'_>) -> Self {
        let n = state.graph().vertex_count();
        let mut q = RuleQueue {
            queues: Default::default(),
            queued: [vec![false; n], vec![false; n], vec![false; n]],
        };
        let parts = state.partitions();
        for k in [2, 1] {
            if k <= parts.max_score() {
                for &v in parts.members(parts.gain_region(k)) {
                    q.push(v as usize, k);
                }
            }
        }
        q
    }

    fn push(&mut self, v: usize, gain: usize) {
        let rules: &[usize] = match gain {
            1 => &[DEGREE1],
            2 => &[TRIANGLE, QUADRILATERAL],
            _ => &[],
        };
        for &r in rules {
            if !self.queued[r][v] {
                self.queued[r][v] = true;
                self.queues[r].push_back(v as u32);
            }
        }
    }

    /// Adds `v` to the cover and queues the outside neighbors whose gain it lowered.
    pub fn add(&mut self, state: &mut CoverState<'_>, v: usize) {
        state.add(v);
        let graph = state.graph();
        for &n in graph.neighbors(v) {
            let n = n as usize;
            state.counters_mut().neighbor_visits += 1;
            if !state.in_cover(n) {
                self.push(n, state.score(n));
            }
        }
    }

    fn put(&mut self, state: &mut CoverState<'_>, fixed: &mut FixedSet, v: usize) {
        self.add(state, v);
        if !fixed.max_gain_used {
            fixed.fixed[v] = true;
        }
    }

    /// Next queued outside vertex for `rule` that still has the gain the rule needs.
    fn pop(&mut self, state: &CoverState<'_>, rule: usize) -> Option<usize> {
        let want = if rule == DEGREE1 { 1 } else { 2 };
        while let Some(v) = self.queues[rule].pop_front() {
            let v = v as usize;
            self.queued[rule][v] = false;
            if !state.in_cover(v) && state.score(v) == want {
                return Some(v);
            }
        }
        None
    }

    fn drain(&mut self, state: &mut CoverState<'_>, fixed: &mut FixedSet, rule: usize) -> usize {
        let mut added = 0;
        while let Some(v) = self.pop(state, rule) {
            let targets = match rule {
                TRIANGLE => triangle_targets(state, v).map(|(a, b)| [Some(a), Some(b)]),
                QUADRILATERAL => quadrilateral_targets(state, v).map(|(a, b)| [Some(a), Some(b)]),
                _ => Some([Some(degree1_target(state, v)), None]),
            };
            let Some(targets) = targets else { continue };
            for t in targets.into_iter().flatten() {
                self.put(state, fixed, t);
                added += 1;
            }
            let c = state.counters_mut();
            match rule {
                TRIANGLE => c.triangle_rule += 1,
                QUADRILATERAL => c.quadrilateral_rule += 1,
                _ => c.degree1_rule += 1,
            }
        }
        added
    }

    /// Applies triangle, quadrilateral and degree-1 (in that priority) until
    /// none fires anywhere. Returns the number of vertices added.
    pub fn run_to_fixpoint(&mut self, state: &mut CoverState<'_>, fixed: &mut FixedSet) -> usize {
        let mut total = 0;
        loop {
            let added = self.drain(state, fixed, TRIANGLE)
                + self.drain(state, fixed, QUADRILATERAL)
                + self.drain(state, fixed, DEGREE1);
            total += added;
            if added == 0 {
                return total;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, complete_graph, cycle_graph, path_graph, star_graph};

    #[test]
    fn triangle_rule_on_k3() {
        let g = complete_graph(3);
        let mut s = CoverState::new(&g);
        let mut f = FixedSet::new(3);
        assert_eq!(apply_triangle_rule_to_fixpoint(&mut s, &mut f), 2);
        assert!(s.is_cover());
        assert_eq!(s.cover_size(), 2);
        assert_eq!(f.count(), 2);
        assert_eq!(s.counters().triangle_rule, 1);
    }

    #[test]
    fn triangle_rule_skips_path() {
        let g = path_graph(3);
        let mut s = CoverState::new(&g);
        let mut f = FixedSet::new(3);
        assert_eq!(apply_triangle_rule_to_fixpoint(&mut s, &mut f), 0);
    }

    #[test]
    fn rules_do_nothing_on_covered_graph() {
        let g = complete_graph(3);
        let mut s = CoverState::new(&g);
        s.add(0);
        s.add(1);
        let mut f = FixedSet::new(3);
        assert_eq!(apply_rules_once(&mut s, &mut f), 0);
    }

    #[test]
    fn quadrilateral_rule_on_c4() {
        let g = cycle_graph(4);
        let mut s = CoverState::new(&g);
        let mut f = FixedSet::new(4);
        assert_eq!(apply_quadrilateral_rule_to_fixpoint(&mut s, &mut f), 2);
        assert!(s.is_cover());
        let c = s.cover_vertices();
        assert!(c == vec![0, 2] || c == vec![1, 3], "{c:?}");
    }

    #[test]
    fn quadrilateral_rule_skips_triangle_and_c5() {
        for g in [complete_graph(3), cycle_graph(5)] {
            let mut s = CoverState::new(&g);
            let mut f = FixedSet::new(g.vertex_count());
            assert_eq!(apply_quadrilateral_rule_to_fixpoint(&mut s, &mut f), 0);
        }
    }

    #[test]
    fn degree1_rule_on_star() {
        let g = star_graph(4);
        let mut s = CoverState::new(&g);
        let mut f = FixedSet::new(5);
        assert_eq!(apply_degree1_rule_to_fixpoint(&mut s, &mut f), 1);
        assert_eq!(s.cover_vertices(), vec![0]);
        assert!(s.is_cover());
    }

    #[test]
    fn degree1_rule_on_p4() {
        let g = path_graph(4);
        let mut s = CoverState::new(&g);
        let mut f = FixedSet::new(4);
        assert_eq!(apply_degree1_rule_to_fixpoint(&mut s, &mut f), 2);
        assert_eq!(s.cover_vertices(), vec![1, 2]);
        assert_eq!(f.vertices(), vec![1, 2]);
    }

    #[test]
    fn degree1_rule_needs_gain_one_vertex() {
        let g = cycle_graph(6);
        let mut s = CoverState::new(&g);
        let mut f = FixedSet::new(6);
        assert_eq!(apply_degree1_rule_to_fixpoint(&mut s, &mut f), 0);
    }

    #[test]
    fn additions_after_max_gain_are_not_fixed() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let mut s = CoverState::new(&g);
        let mut f = FixedSet::new(3);
        f.max_gain_used = true;
        assert_eq!(apply_degree1_rule_to_fixpoint(&mut s, &mut f), 1);
        assert_eq!(f.count(), 0);
    }
}
