//! Starting-cover construction.
//!
//! [`init_vc`] interleaves the reduction rules with max-gain picks and
//! certifies optimality when no pick was needed. [`min_gain_construct_vc`]
//! and [`max_gain_construct_vc`] are the two classic greedy heuristics running
//! in O(|V| + |C| + |E|) on the partition array.

use crate::counters::OpCounters;
use crate::cover::CoverState;
use crate::graph::{Graph, VertexId};
use crate::oracle;
use crate::reductions::{FixedSet, RuleQueue};
use crate::{OptInfo, SolverRng, TieBreak};

#[derive(Debug, Clone)]
pub struct CoverResult {
    pub cover: Vec<VertexId>,
    pub opt_info: OptInfo,
    pub fixed: FixedSet,
    pub counters: OpCounters,
    /// Where the descending max-gain cursor stopped, for constructors that use one.
    pub final_gain_cursor: Option<usize>,
}

impl CoverResult {
    fn from_state(state: &CoverState<'_>, fixed: FixedSet, opt_info: OptInfo, cursor: Option<usize>) -> Self {
        CoverResult {
            cover: state.cover_vertices(),
            opt_info,
            fixed,
            counters: *state.counters(),
            final_gain_cursor: cursor,
        }
    }
}

/// Construction state handed over to local search.
#[derive(Debug, Clone)]
pub struct InitOutcome<'g> {
    pub state: CoverState<'g>,
    pub fixed: FixedSet,
    pub opt_info: OptInfo,
}

/// Removes loss-0 cover vertices, lowest slot first, until none is left
/// outside the parked prefix. Parked (fixed) vertices are never removed.
pub fn eliminate_redundant(state: &mut CoverState<'_>) -> usize {
    let mut removed = 0;
    loop {
        state.counters_mut().boundary_tests += 1;
        let region = state.partitions().loss_region(0);
        if region.is_empty() {
            return removed;
        }
        let v = state.partitions().slot(region.start) as usize;
        state.remove(v);
        removed += 1;
    }
}

fn assert_covered(state: &CoverState<'_>) {
    assert_eq!(state.uncovered_count(), 0);
    assert!(
        oracle::uncovered_edges(state.graph(), state.partitions().in_cover_flags()).is_empty(),
        "construction ended with uncovered edges"
    );
}

/// Reduction-driven construction; keeps the state for local search.
pub fn init_vc_state<'g>(graph: &'g Graph, tie: TieBreak, rng: &mut SolverRng) -> InitOutcome<'g> {
    let mut state = CoverState::new(graph);
    let mut fixed = FixedSet::new(graph.vertex_count());
    let mut rules = RuleQueue::new(&state);
    // Gains only fall during construction, so the max-gain cursor never rises.
    let mut cursor = graph.max_degree();
    loop {
        rules.run_to_fixpoint(&mut state, &mut fixed);
        if state.is_cover() {
            break;
        }
        fixed.max_gain_used = true;
        cursor = state
            .partitions_mut()
            .max_gain_partition_below(cursor)
            .expect("uncovered edges imply a positive gain");
        let v = state.partitions().pick(state.partitions().gain_region(cursor), tie, rng);
        rules.add(&mut state, v as usize);
    }
    state.partitions_mut().park(&fixed.fixed);
    eliminate_redundant(&mut state);
    assert_covered(&state);
    let opt_info = if fixed.max_gain_used {
        OptInfo::OptimalNotGuaranteed
    } else {
        OptInfo::OptimalGuaranteed
    };
    InitOutcome { state, fixed, opt_info }
}

pub fn init_vc(graph: &Graph, tie: TieBreak, rng: &mut SolverRng) -> CoverResult {
    let InitOutcome { state, fixed, opt_info } = init_vc_state(graph, tie, rng);
    CoverResult::from_state(&state, fixed, opt_info, None)
}

/// Repeatedly takes a vertex of minimum positive gain and puts all of its
/// outside neighbors into the cover, in adjacency order.
///
/// The ascending scan stops at `k = gain(v)` and then exactly `k` vertices
/// enter the cover, so boundary tests total `|C|`.
pub fn min_gain_construct_vc(graph: &Graph, tie: TieBreak, rng: &mut SolverRng) -> CoverResult {
    let mut state = CoverState::new(graph);
    while state.uncovered_count() > 0 {
        let k = state
            .partitions_mut()
            .min_gain_partition()
            .expect("uncovered edges imply a positive gain");
        let v = state.partitions().pick(state.partitions().gain_region(k), tie, rng) as usize;
        for &n in graph.neighbors(v) {
            state.counters_mut().neighbor_visits += 1;
            if !state.in_cover(n as usize) {
                state.add(n as usize);
            }
        }
    }
    assert_covered(&state);
    CoverResult::from_state(&state, FixedSet::new(graph.vertex_count()), OptInfo::OptimalNotGuaranteed, None)
}

/// Repeatedly puts a vertex of maximum gain into the cover. The cursor starts
/// at `d_max` and only moves down, so boundary tests total
/// `|C| + (d_max - k_final)`.
pub fn max_gain_construct_vc(graph: &Graph, tie: TieBreak, rng: &mut SolverRng) -> CoverResult {
    let mut state = CoverState::new(graph);
    let mut cursor = graph.max_degree();
    while state.uncovered_count() > 0 {
        cursor = state
            .partitions_mut()
            .max_gain_partition_below(cursor)
            .expect("uncovered edges imply a positive gain");
        let v = state.partitions().pick(state.partitions().gain_region(cursor), tie, rng);
        state.add(v as usize);
    }
    assert_covered(&state);
    let tests = state.counters().boundary_tests as usize;
    assert_eq!(
        tests,
        state.cover_size() + (graph.max_degree() - cursor),
        "max-gain boundary tests must equal |C| + (d_max - k_final)"
    );
    CoverResult::from_state(
        &state,
        FixedSet::new(graph.vertex_count()),
        OptInfo::OptimalNotGuaranteed,
        Some(cursor),
    )
}
