//! Exchange local search over the starting cover.
//!
//! Each step removes a minimum-loss non-fixed vertex (ties uniform), then
//! samples a uniformly random uncovered edge and adds its endpoint of greater
//! gain, preferring the endpoint whose membership changed longer ago. Whenever
//! the candidate covers every edge it becomes the new best and one more
//! vertex is removed, so the search then targets a cover one smaller.

use std::time::{Duration, Instant};

use crate::construct::{init_vc_state, InitOutcome};
use crate::counters::OpCounters;
use crate::cover::CoverState;
use crate::graph::{Graph, VertexId};
use crate::reductions::FixedSet;
use crate::{rng_from_seed, Error, OptInfo, Result, SolverRng, TieBreak};

const CLOCK_CHECK_INTERVAL: u64 = 1024;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    /// Wall-clock budget measured from the start of construction.
    pub cutoff: Duration,
    pub max_steps: Option<u64>,
    pub tie_break: TieBreak,
    /// Test mode: audit the whole state every `k` flips and cross-check every
    /// min-loss pick against a linear scan.
    pub audit_every: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 1,
            cutoff: Duration::from_secs(1000),
            max_steps: None,
            tie_break: TieBreak::Random,
            audit_every: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub best_cover: Vec<VertexId>,
    pub best_size: usize,
    pub opt_info: OptInfo,
    pub steps: u64,
    pub elapsed: Duration,
    pub steps_per_ms: f64,
    pub init_size: usize,
    pub init_counters: OpCounters,
    /// Totals over construction and search.
    pub counters: OpCounters,
}

/// What one loop iteration concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Progress {
    Continue,
    /// The candidate consists of fixed vertices plus at most one more, which
    /// makes the recorded best a minimum cover.
    ProvenOptimal,
}

#[derive(Debug, Clone)]
pub struct SearchState<'g> {
    cover: CoverState<'g>,
    fixed: FixedSet,
    age_stamp: Vec<u64>,
    step: u64,
    best: Vec<bool>,
    best_size: usize,
    best_history: Vec<usize>,
    rng: SolverRng,
    tie: TieBreak,
    check_picks: bool,
}

impl<'g> SearchState<'g> {
    pub fn new(init: InitOutcome<'g>, rng: SolverRng, tie: TieBreak) -> Self {
        let InitOutcome { mut state, fixed, .. } = init;
        debug_assert!(state.is_cover());
        state.track_uncovered_edges();
        let n = state.graph().vertex_count();
        let best = state.partitions().in_cover_flags().to_vec();
        let best_size = state.cover_size();
        SearchState {
            cover: state,
            fixed,
            age_stamp: vec![0; n],
            step: 0,
            best,
            best_size,
            best_history: vec![best_size],
            rng,
            tie,
            check_picks: false,
        }
    }

    /// See [`SearchConfig::audit_every`].
    pub fn set_audit_interval(&mut self, every: Option<u64>) {
        self.cover.set_audit_interval(every);
        self.check_picks = every.is_some();
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn cover_state(&self) -> &CoverState<'g> {
        &self.cover
    }

    pub fn fixed(&self) -> &FixedSet {
        &self.fixed
    }

    pub fn age_stamp(&self, v: usize) -> u64 {
        self.age_stamp[v]
    }

    pub fn best_size(&self) -> usize {
        self.best_size
    }

    /// Every best size recorded, in order.
    pub fn best_history(&self) -> &[usize] {
        &self.best_history
    }

    pub fn best_cover(&self) -> Vec<VertexId> {
        (0..self.best.len())
            .filter(|&v| self.best[v])
            .map(|v| v as VertexId)
            .collect()
    }

    fn record_best(&mut self) {
        if self.cover.cover_size() < self.best_size {
            self.best.copy_from_slice(self.cover.partitions().in_cover_flags());
            self.best_size = self.cover.cover_size();
            self.best_history.push(self.best_size);
        }
    }

    /// Removes a random non-fixed cover vertex of minimum loss.
    pub fn remove_min_loss(&mut self) -> Option<usize> {
        let u = self
            .cover
            .partitions_mut()
            .random_min_loss_vertex(self.tie, &mut self.rng)? as usize;
        if self.check_picks {
            let parts = self.cover.partitions();
            let naive = (0..parts.vertex_count())
                .filter(|&v| parts.in_cover(v) && !parts.is_parked(v))
                .map(|v| parts.score(v))
                .min();
            assert_eq!(naive, Some(parts.score(u)), "vertex {u} does not have minimum loss");
            assert!(!self.fixed.fixed[u], "picked fixed vertex {u}");
        }
        self.cover.remove(u);
        self.age_stamp[u] = self.step;
        Some(u)
    }

    /// Adds the better endpoint of a random uncovered edge: greater gain, then
    /// older stamp, then lower id. `None` when every edge is covered.
    pub fn add_from_uncovered(&mut self) -> Option<usize> {
        let e = self.cover.uncovered_edges()?.sample(&mut self.rng)?;
        let (a, b) = self.cover.graph().edge(e);
        let (a, b) = (a as usize, b as usize);
        let key = |v: usize| (std::cmp::Reverse(self.cover.score(v)), self.age_stamp[v], v);
        let v = if key(a) <= key(b) { a } else { b };
        self.cover.add(v);
        self.age_stamp[v] = self.step;
        Some(v)
    }

    /// One removal and at most one addition; advances the step counter.
    pub fn exchange_step(&mut self) -> Result<()> {
        if self.remove_min_loss().is_none() {
            return Err(Error::AllFixed {
                uncovered: self.cover.uncovered_count(),
            });
        }
        self.add_from_uncovered();
        self.step += 1;
        Ok(())
    }

    /// One iteration of the main loop.
    pub fn iterate(&mut self) -> Result<Progress> {
        if self.cover.is_cover() {
            self.record_best();
            if self.remove_min_loss().is_none() {
                return Ok(Progress::ProvenOptimal);
            }
            if self.cover.partitions().removable_count() == 0 {
                return Ok(Progress::ProvenOptimal);
            }
        }
        self.exchange_step()?;
        Ok(Progress::Continue)
    }

    /// Iterates until the budget runs out or optimality is proven.
    pub fn run(&mut self, started: Instant, cutoff: Duration, max_steps: Option<u64>) -> Result<Progress> {
        let mut progress = Progress::Continue;
        loop {
            if max_steps.is_some_and(|m| self.step >= m) {
                break;
            }
            if self.step.is_multiple_of(CLOCK_CHECK_INTERVAL) && started.elapsed() >= cutoff {
                break;
            }
            progress = self.iterate()?;
            if progress == Progress::ProvenOptimal {
                break;
            }
        }
        if self.cover.is_cover() && self.cover.cover_size() < self.best_size {
            self.record_best();
        }
        Ok(progress)
    }
}

/// Construction followed by local search.
pub fn solve(graph: &Graph, config: &SearchConfig) -> Result<SolveOutcome> {
    let started = Instant::now();
    let mut rng = rng_from_seed(config.seed);
    let init = init_vc_state(graph, config.tie_break, &mut rng);
    let init_size = init.state.cover_size();
    let init_counters = *init.state.counters();

    if init.opt_info.is_guaranteed() {
        return Ok(SolveOutcome {
            best_cover: init.state.cover_vertices(),
            best_size: init_size,
            opt_info: OptInfo::OptimalGuaranteed,
            steps: 0,
            elapsed: started.elapsed(),
            steps_per_ms: 0.0,
            init_size,
            init_counters,
            counters: init_counters,
        });
    }

    let mut search = SearchState::new(init, rng, config.tie_break);
    search.set_audit_interval(config.audit_every);
    let search_started = Instant::now();
    let progress = search.run(started, config.cutoff, config.max_steps)?;
    let search_time = search_started.elapsed();

    let steps = search.step();
    let ms = search_time.as_secs_f64() * 1e3;
    Ok(SolveOutcome {
        best_cover: search.best_cover(),
        best_size: search.best_size(),
        opt_info: match progress {
            Progress::ProvenOptimal => OptInfo::OptimalGuaranteed,
            Progress::Continue => OptInfo::OptimalNotGuaranteed,
        },
        steps,
        elapsed: started.elapsed(),
        steps_per_ms: if ms > 0.0 { steps as f64 / ms } else { 0.0 },
        init_size,
        init_counters,
        counters: *search.cover_state().counters(),
    })
}
