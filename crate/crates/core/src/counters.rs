//! Basic-operation counters used as machine-independent cost measures.

use std::collections::BTreeMap;
use std::ops::Sub;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Calls to the six O(1) partition move procedures.
    pub partition_moves: u64,
    /// Slot-array cells written plus boundary pointers shifted by those moves.
    pub cell_writes: u64,
    /// Emptiness tests on a partition region during extremal scans.
    pub boundary_tests: u64,
    /// Adjacency entries inspected.
    pub neighbor_visits: u64,
    /// Work spent laying out the partition array (counting sort).
    pub layout_ops: u64,
    pub triangle_rule: u64,
    pub quadrilateral_rule: u64,
    pub degree1_rule: u64,
}

impl OpCounters {
    /// Sum of the counters that measure algorithmic work.
    pub fn basic_ops(&self) -> u64 {
        self.partition_moves + self.boundary_tests + self.neighbor_visits + self.layout_ops
    }

    pub fn to_map(&self) -> BTreeMap<String, u64> {
        [
            ("partition_moves", self.partition_moves),
            ("cell_writes", self.cell_writes),
            ("boundary_tests", self.boundary_tests),
            ("neighbor_visits", self.neighbor_visits),
            ("layout_ops", self.layout_ops),
            ("triangle_rule", self.triangle_rule),
            ("quadrilateral_rule", self.quadrilateral_rule),
            ("degree1_rule", self.degree1_rule),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }
}

impl Sub for OpCounters {
    type Output = OpCounters;

    fn sub(self, rhs: OpCounters) -> OpCounters {
        OpCounters {
            partition_moves: self.partition_moves - rhs.partition_moves,
            cell_writes: self.cell_writes - rhs.cell_writes,
            boundary_tests: self.boundary_tests - rhs.boundary_tests,
            neighbor_visits: self.neighbor_visits - rhs.neighbor_visits,
            layout_ops: self.layout_ops - rhs.layout_ops,
            triangle_rule: self.triangle_rule - rhs.triangle_rule,
            quadrilateral_rule: self.quadrilateral_rule - rhs.quadrilateral_rule,
            degree1_rule: self.degree1_rule - rhs.degree1_rule,
        }
    }
}
