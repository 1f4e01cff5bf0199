//! Recursive split 2-approximation.
//!
//! Each subinstance pairs a left subtree with a right subtree. All four swap
//! decisions at the two roots are tried; the decision determines which
//! children face each other (upper halves together, lower halves together)
//! and both halves are solved recursively. A decision is charged its
//! current-level crossings: the table cells between the deciding node and
//! the already-decided ancestors on the opposite side.
//!
//! On complete trees the result has at most twice the optimal number of
//! crossings. On other binary trees the same recursion is a heuristic; when a
//! leaf faces a larger subtree, every inner node of that subtree is decided
//! against the leaf's ancestor path.

use crate::crossings::{count_crossings, CrossingTables};
use crate::error::{Error, Result};
use crate::instance::TanglegramInstance;
use crate::layout::{Layout, Side};
use crate::tree::{NodeId, Tree};

/// Decided ancestors of the current subtree roots, root first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwapHistory {
    pub left: Vec<(NodeId, bool)>,
    pub right: Vec<(NodeId, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub layout: Layout,
    /// Crossings charged by the recursion; a lower bound on `actual`.
    pub counted: u64,
    /// Exact crossing count of `layout`.
    pub actual: u64,
}

/// Current-level crossings of the subinstance rooted at `v_s` (left) and
/// `v_t` (right) under `decision = (swap v_s, swap v_t)`.
///
/// The `(v_s, v_t)` cell is charged together with the right-side ancestors;
/// left-side ancestors are paired with `v_t` only, so each cell is charged
/// once. Leaves contribute no decision.
pub fn current_level_crossings(
    instance: &TanglegramInstance,
    tables: &CrossingTables,
    v_s: NodeId,
    v_t: NodeId,
    history: &SwapHistory,
    decision: (bool, bool),
) -> Result<u64> {
    let ranked = |tree: &Tree, node: NodeId, hist: &[(NodeId, bool)], side| {
        let anc = tree.ancestors(node);
        if anc.len() != hist.len() || anc.iter().zip(hist).any(|(&a, &(h, _))| a != h) {
            return Err(Error::HistoryMismatch { side, node });
        }
        Ok(hist
            .iter()
            .map(|&(h, b)| (tree.inner_rank(h).unwrap(), b))
            .collect::<Vec<_>>())
    };
    let hs = ranked(instance.left(), v_s, &history.left, Side::Left)?;
    let ht = ranked(instance.right(), v_t, &history.right, Side::Right)?;
    Ok(level_cost(
        tables,
        instance.left().inner_rank(v_s),
        instance.right().inner_rank(v_t),
        &hs,
        &ht,
        decision,
    ))
}

fn level_cost(
    tables: &CrossingTables,
    rs: Option<usize>,
    rt: Option<usize>,
    hs: &[(usize, bool)],
    ht: &[(usize, bool)],
    (swp_s, swp_t): (bool, bool),
) -> u64 {
    let mut cl = 0;
    if let Some(rs) = rs {
        for &(w, b) in ht {
            cl += tables.cost(rs, w, swp_s != b);
        }
        if let Some(rt) = rt {
            cl += tables.cost(rs, rt, swp_s != swp_t);
        }
    }
    if let Some(rt) = rt {
        for &(v, b) in hs {
            cl += tables.cost(v, rt, b != swp_t);
        }
    }
    cl
}

#[derive(Debug, Clone)]
struct Partial {
    tally: u64,
    left: Vec<(usize, bool)>,
    right: Vec<(usize, bool)>,
}

impl Partial {
    fn empty() -> Self {
        Partial {
            tally: 0,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    fn absorb(&mut self, other: Partial) {
        self.tally += other.tally;
        self.left.extend(other.left);
        self.right.extend(other.right);
    }
}

const DECISIONS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

struct Recursion<'a> {
    left: &'a Tree,
    right: &'a Tree,
    tables: &'a CrossingTables,
    hs: Vec<(usize, bool)>,
    ht: Vec<(usize, bool)>,
    evaluated: u64,
}

impl Recursion<'_> {
    fn solve(&mut self, s: NodeId, t: NodeId, at_root: bool) -> Partial {
        let rs = self.left.inner_rank(s);
        let rt = self.right.inner_rank(t);
        match (rs, rt) {
            (None, None) => Partial::empty(),
            (Some(rs), Some(rt)) => {
                let decisions = if at_root {
                    &DECISIONS[..2]
                } else {
                    &DECISIONS[..]
                };
                let (s1, s2) = (self.left.children(s)[0], self.left.children(s)[1]);
                let (t1, t2) = (self.right.children(t)[0], self.right.children(t)[1]);
                let mut best: Option<Partial> = None;
                for &(swp_s, swp_t) in decisions {
                    self.evaluated += 1;
                    let cl = level_cost(
                        self.tables,
                        Some(rs),
                        Some(rt),
                        &self.hs,
                        &self.ht,
                        (swp_s, swp_t),
                    );
                    let (s_up, s_low) = if swp_s { (s2, s1) } else { (s1, s2) };
                    let (t_up, t_low) = if swp_t { (t2, t1) } else { (t1, t2) };
                    self.hs.push((rs, swp_s));
                    self.ht.push((rt, swp_t));
                    let upper = self.solve(s_up, t_up, false);
                    let lower = self.solve(s_low, t_low, false);
                    self.hs.pop();
                    self.ht.pop();
                    let total = cl + upper.tally + lower.tally;
                    if best.as_ref().is_none_or(|b| total < b.tally) {
                        let mut cand = Partial {
                            tally: cl,
                            left: vec![(rs, swp_s)],
                            right: vec![(rt, swp_t)],
                        };
                        cand.absorb(upper);
                        cand.absorb(lower);
                        best = Some(cand);
                    }
                }
                best.unwrap()
            }
            // The children's charges only involve the leaf side's history, so
            // they do not depend on the bit chosen here.
            (None, Some(rt)) => {
                let c0 = level_cost(
                    self.tables,
                    None,
                    Some(rt),
                    &self.hs,
                    &self.ht,
                    (false, false),
                );
                let c1 = level_cost(
                    self.tables,
                    None,
                    Some(rt),
                    &self.hs,
                    &self.ht,
                    (false, true),
                );
                let swp = c1 < c0;
                let mut out = Partial {
                    tally: c0.min(c1),
                    left: Vec::new(),
                    right: vec![(rt, swp)],
                };
                self.ht.push((rt, swp));
                for i in 0..2 {
                    let child = self.right.children(t)[i];
                    let sub = self.solve(s, child, false);
                    out.absorb(sub);
                }
                self.ht.pop();
                out
            }
            (Some(rs), None) => {
                let c0 = level_cost(
                    self.tables,
                    Some(rs),
                    None,
                    &self.hs,
                    &self.ht,
                    (false, false),
                );
                let c1 = level_cost(
                    self.tables,
                    Some(rs),
                    None,
                    &self.hs,
                    &self.ht,
                    (true, false),
                );
                let swp = c1 < c0;
                let mut out = Partial {
                    tally: c0.min(c1),
                    left: vec![(rs, swp)],
                    right: Vec::new(),
                };
                self.hs.push((rs, swp));
                for i in 0..2 {
                    let child = self.left.children(s)[i];
                    let sub = self.solve(child, t, false);
                    out.absorb(sub);
                }
                self.hs.pop();
                out
            }
        }
    }
}

fn run(instance: &TanglegramInstance, tables: &CrossingTables) -> Result<(ApproxResult, u64)> {
    let mut rec = Recursion {
        left: instance.left(),
        right: instance.right(),
        tables,
        hs: Vec::new(),
        ht: Vec::new(),
        evaluated: 0,
    };
    let best = rec.solve(instance.left().root(), instance.right().root(), true);
    let mut layout = Layout::identity(instance);
    for (r, b) in best.left {
        layout.left_swaps[r] = b;
    }
    for (r, b) in best.right {
        layout.right_swaps[r] = b;
    }
    let actual = count_crossings(instance, &layout)?;
    Ok((
        ApproxResult {
            layout,
            counted: best.tally,
            actual,
        },
        rec.evaluated,
    ))
}

/// 2-approximation for complete binary instances, `O(n^3)`.
pub fn rec_split(instance: &TanglegramInstance) -> Result<ApproxResult> {
    instance.require_complete()?;
    let tables = crate::crossings::build_tables(instance);
    Ok(run(instance, &tables)?.0)
}

/// Same recursion on arbitrary binary instances, without a guarantee.
/// Unbalanced trees can make the recursion exponential in the height.
pub fn approx_general(instance: &TanglegramInstance) -> Result<ApproxResult> {
    let tables = crate::crossings::build_tables(instance);
    Ok(run(instance, &tables)?.0)
}
