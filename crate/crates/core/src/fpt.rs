//! Bounded search for layouts with at most `k` crossings on complete
//! binary instances, `O(4^k n^2)`.
//!
//! Left inner nodes are visited level by level. At each level the i-th left
//! subtree in drawn order is paired with the i-th right subtree, and the pair
//! is decided jointly. A decision is charged every table cell between the two
//! nodes and the nodes already decided on the opposite side, so each cell is
//! charged exactly once, when its later node is fixed. A decision with zero
//! charge is taken without branching; otherwise every decision that fits the
//! remaining budget is tried, each costing at least one crossing.

use crate::crossings::{build_tables, CrossingTables};
use crate::error::Result;
use crate::instance::TanglegramInstance;
use crate::layout::Layout;
use crate::total_pairs;
use crate::tree::{NodeId, Tree};

const DECISIONS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

/// Search-tree counters of one [`solve_fpt_with_stats`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FptStats {
    /// Nodes that branched into at least one child within budget. Bounded by `4^k`.
    pub branching_nodes: u64,
    /// Pairs decided without branching because some decision cost nothing.
    pub forced: u64,
}

struct Search<'a> {
    left: &'a Tree,
    right: &'a Tree,
    tables: &'a CrossingTables,
    left_bits: Vec<bool>,
    right_bits: Vec<bool>,
    decided_left: Vec<usize>,
    decided_right: Vec<usize>,
    stats: FptStats,
}

impl Search<'_> {
    fn charges(&self, rv: usize, rw: usize) -> [u64; 4] {
        let mut against_right = [0u64; 2];
        for &w in &self.decided_right {
            let b = self.right_bits[w];
            against_right[0] += self.tables.cost(rv, w, b);
            against_right[1] += self.tables.cost(rv, w, !b);
        }
        let mut against_left = [0u64; 2];
        for &v in &self.decided_left {
            let b = self.left_bits[v];
            against_left[0] += self.tables.cost(v, rw, b);
            against_left[1] += self.tables.cost(v, rw, !b);
        }
        DECISIONS.map(|(sv, sw)| {
            against_right[sv as usize]
                + against_left[sw as usize]
                + self.tables.cost(rv, rw, sv != sw)
        })
    }

    fn decide(&mut self, rv: usize, rw: usize, (sv, sw): (bool, bool)) {
        self.left_bits[rv] = sv;
        self.right_bits[rw] = sw;
        self.decided_left.push(rv);
        self.decided_right.push(rw);
    }

    fn undo(&mut self) {
        self.decided_left.pop();
        self.decided_right.pop();
    }

    fn drawn_children(tree: &Tree, bits: &[bool], id: NodeId) -> (NodeId, NodeId) {
        let c = tree.children(id);
        if bits[tree.inner_rank(id).unwrap()] {
            (c[1], c[0])
        } else {
            (c[0], c[1])
        }
    }

    fn next_level(&self, pairs: &[(NodeId, NodeId)]) -> Vec<(NodeId, NodeId)> {
        let mut next = Vec::with_capacity(pairs.len() * 2);
        for &(v, w) in pairs {
            let (v1, v2) = Self::drawn_children(self.left, &self.left_bits, v);
            let (w1, w2) = Self::drawn_children(self.right, &self.right_bits, w);
            if !self.left.is_leaf(v1) {
                next.push((v1, w1));
                next.push((v2, w2));
            }
        }
        next
    }

    fn run(&mut self, pairs: &[(NodeId, NodeId)], idx: usize, budget: u64) -> bool {
        if idx == pairs.len() {
            let next = self.next_level(pairs);
            return next.is_empty() || self.run(&next, 0, budget);
        }
        let (v, w) = pairs[idx];
        let rv = self.left.inner_rank(v).unwrap();
        let rw = self.right.inner_rank(w).unwrap();
        let at_root = v == self.left.root();
        let options = if at_root { 2 } else { 4 };
        let charges = self.charges(rv, rw);

        if let Some(d) = (0..options).find(|&d| charges[d] == 0) {
            self.stats.forced += 1;
            self.decide(rv, rw, DECISIONS[d]);
            let found = self.run(pairs, idx + 1, budget);
            if !found {
                self.undo();
            }
            return found;
        }

        if (0..options).any(|d| charges[d] <= budget) {
            self.stats.branching_nodes += 1;
        }
        for d in 0..options {
            if charges[d] > budget {
                continue;
            }
            self.decide(rv, rw, DECISIONS[d]);
            if self.run(pairs, idx + 1, budget - charges[d]) {
                return true;
            }
            self.undo();
        }
        false
    }
}

/// A layout with at most `k` crossings, or `None` if none exists.
/// Refuses instances that are not complete: the zero-charge rule is unsound there.
pub fn solve_fpt(instance: &TanglegramInstance, k: u64) -> Result<Option<Layout>> {
    Ok(solve_fpt_with_stats(instance, k)?.0)
}

pub fn solve_fpt_with_stats(
    instance: &TanglegramInstance,
    k: u64,
) -> Result<(Option<Layout>, FptStats)> {
    instance.require_complete()?;
    let tables = build_tables(instance);
    Ok(search(instance, &tables, k))
}

fn search(
    instance: &TanglegramInstance,
    tables: &CrossingTables,
    k: u64,
) -> (Option<Layout>, FptStats) {
    let mut s = Search {
        left: instance.left(),
        right: instance.right(),
        tables,
        left_bits: vec![false; instance.left().inner_count()],
        right_bits: vec![false; instance.right().inner_count()],
        decided_left: Vec::new(),
        decided_right: Vec::new(),
        stats: FptStats::default(),
    };
    if instance.left().inner_count() == 0 {
        return (Some(Layout::identity(instance)), s.stats);
    }
    let root = [(instance.left().root(), instance.right().root())];
    let found = s.run(&root, 0, k);
    let layout = found.then(|| Layout::new(s.left_bits.clone(), s.right_bits.clone()));
    (layout, s.stats)
}

/// Optimum by increasing `k` from 0 until the search succeeds.
pub fn min_crossings_fpt(instance: &TanglegramInstance) -> Result<(Layout, u64)> {
    instance.require_complete()?;
    let tables = build_tables(instance);
    for k in 0..=total_pairs(instance.n()) {
        if let (Some(layout), _) = search(instance, &tables, k) {
            return Ok((layout, k));
        }
    }
    unreachable!("every layout has at most n(n-1)/2 crossings")
}

/// Whether a crossing-free layout exists.
pub fn is_planar(instance: &TanglegramInstance) -> Result<bool> {
    Ok(solve_fpt(instance, 0)?.is_some())
}
