//! Instance families: the factor-2 tightness family, the MinUncut reduction
//! with weighted meta edges, and seeded random instances.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crossings::edges_cross;
use crate::error::{Error, Result};
use crate::instance::TanglegramInstance;
use crate::layout::{leaf_order_nodes, Layout, Side};
use crate::tree::{NodeId, Subtree, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenShape {
    /// Complete binary trees; `n` must be a power of two.
    Complete,
    /// Independent shapes drawn by seeded recursive splitting.
    RandomBinary,
}

/// Complete binary tree over `labels` in the given order.
pub fn complete_subtree<S: AsRef<str>>(labels: &[S]) -> Subtree {
    assert!(labels.len().is_power_of_two());
    if labels.len() == 1 {
        return Subtree::leaf(labels[0].as_ref());
    }
    let (lo, hi) = labels.split_at(labels.len() / 2);
    Subtree::pair(complete_subtree(lo), complete_subtree(hi))
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn tight_m(m: usize) -> Result<()> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "m must be a positive power of two, got {m}"
        )));
    }
    Ok(())
}

/// Right-hand leaf order of the tightness family for `n = 4m`.
pub fn tight_right_order(m: usize) -> Vec<usize> {
    (1..=m)
        .chain((2 * m + 1..=3 * m).rev())
        .chain(m + 1..=2 * m)
        .chain(3 * m + 1..=4 * m)
        .collect()
}

/// Left tree complete over `1..=4m`; right tree complete over
/// `1..m, 3m..2m+1, m+1..2m, 3m+1..4m`.
pub fn gen_tight(m: usize) -> Result<TanglegramInstance> {
    tight_m(m)?;
    let left = numbered(4 * m);
    let right: Vec<String> = tight_right_order(m).iter().map(|i| i.to_string()).collect();
    TanglegramInstance::new(
        Tree::from_subtree(&complete_subtree(&left))?,
        Tree::from_subtree(&complete_subtree(&right))?,
    )
}

fn inner_ranks_below(tree: &Tree, root: NodeId) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if let Some(r) = tree.inner_rank(id) {
            out.push(r);
            stack.extend(tree.children(id));
        }
    }
    out
}

/// Node covering leaf positions `m..2m` (the second quarter).
fn second_quarter(tree: &Tree) -> NodeId {
    let first_half = tree.children(tree.root())[0];
    tree.children(first_half)[1]
}

/// Layout of the tightness family with exactly `m^2` crossings: the
/// descending right block `3m..2m+1` is put in ascending order.
pub fn tight_optimal_layout(m: usize) -> Result<Layout> {
    let inst = gen_tight(m)?;
    let mut layout = Layout::identity(&inst);
    for r in inner_ranks_below(inst.right(), second_quarter(inst.right())) {
        layout.right_swaps[r] = true;
    }
    Ok(layout)
}

/// Layout with `2m^2 - m` crossings: the left block `m+1..2m` is reversed
/// to follow the descending right block instead of fixing it.
pub fn tight_bad_layout(m: usize) -> Result<Layout> {
    let inst = gen_tight(m)?;
    let mut layout = Layout::identity(&inst);
    for r in inner_ranks_below(inst.left(), second_quarter(inst.left())) {
        layout.left_swaps[r] = true;
    }
    Ok(layout)
}

fn random_shape<S: AsRef<str>>(labels: &[S], rng: &mut ChaCha8Rng) -> Subtree {
    if labels.len() == 1 {
        return Subtree::leaf(labels[0].as_ref());
    }
    let k = rng.gen_range(1..labels.len());
    Subtree::pair(
        random_shape(&labels[..k], rng),
        random_shape(&labels[k..], rng),
    )
}

/// Seeded random instance with labels `1..=n`. The left tree carries the
/// labels in order; the right tree's labels are a uniform permutation.
pub fn gen_random(n: usize, shape: GenShape, seed: u64) -> Result<TanglegramInstance> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if shape == GenShape::Complete && !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "complete shape needs a power of two, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = numbered(n);
    let mut permuted = labels.clone();
    permuted.shuffle(&mut rng);
    let (left, right) = match shape {
        GenShape::Complete => (complete_subtree(&labels), complete_subtree(&permuted)),
        GenShape::RandomBinary => {
            let l = random_shape(&labels, &mut rng);
            (l, random_shape(&permuted, &mut rng))
        }
    };
    TanglegramInstance::new(Tree::from_subtree(&left)?, Tree::from_subtree(&right)?)
}

/// Simple undirected graph on vertices `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinUncutGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl MinUncutGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut seen = HashSet::new();
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) out of range"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self loop at {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge ({a}, {b})"
                )));
            }
        }
        Ok(MinUncutGraph { vertices, edges })
    }

    /// Complete graph on `k` vertices with edges `(i, j)`, `i < j`.
    pub fn complete(k: usize) -> Result<Self> {
        let edges = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        MinUncutGraph::new(k, edges)
    }

    /// Reads one `i j` edge per line with 1-indexed vertices. A line holding a
    /// single integer sets the vertex count (otherwise the largest index).
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| {
                    Error::InvalidParameter(format!("line {}: expected integers", lineno + 1))
                })?;
            match nums[..] {
                [n] => declared = Some(n),
                [a, b] if a >= 1 && b >= 1 => edges.push((a - 1, b - 1)),
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "line {}: expected `i j` with 1-indexed vertices",
                        lineno + 1
                    )))
                }
            }
        }
        let max_index = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        MinUncutGraph::new(declared.unwrap_or(max_index), edges)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges with both endpoints on the same side of `in_first`.
    pub fn uncut(&self, in_first: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| in_first[a] == in_first[b])
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaEdge {
    pub left: String,
    pub right: String,
    pub weight: u64,
}

/// Two trees joined by weighted edges; a leaf may carry several edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaInstance {
    left: Tree,
    right: Tree,
    edges: Vec<MetaEdge>,
    left_leaf: Vec<NodeId>,
    right_leaf: Vec<NodeId>,
}

impl MetaInstance {
    pub fn new(left: Tree, right: Tree, edges: Vec<MetaEdge>) -> Result<Self> {
        left.check_binary()?;
        right.check_binary()?;
        let index = |t: &Tree| -> HashMap<String, NodeId> {
            t.leaves()
                .iter()
                .map(|&l| (t.label(l).unwrap().to_string(), l))
                .collect()
        };
        let (li, ri) = (index(&left), index(&right));
        let mut seen = HashSet::new();
        let mut left_leaf = Vec::with_capacity(edges.len());
        let mut right_leaf = Vec::with_capacity(edges.len());
        for e in &edges {
            if e.weight == 0 {
                return Err(Error::InvalidParameter(
                    "meta edge weights must be positive".into(),
                ));
            }
            let l = *li
                .get(&e.left)
                .ok_or_else(|| Error::LabelMismatch(e.left.clone()))?;
            let r = *ri
                .get(&e.right)
                .ok_or_else(|| Error::LabelMismatch(e.right.clone()))?;
            if !seen.insert((l, r)) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate meta edge {} - {}",
                    e.left, e.right
                )));
            }
            left_leaf.push(l);
            right_leaf.push(r);
        }
        Ok(MetaInstance {
            left,
            right,
            edges,
            left_leaf,
            right_leaf,
        })
    }

    pub fn left(&self) -> &Tree {
        &self.left
    }

    pub fn right(&self) -> &Tree {
        &self.right
    }

    pub fn edges(&self) -> &[MetaEdge] {
        &self.edges
    }

    pub fn identity_layout(&self) -> Layout {
        Layout::new(
            vec![false; self.left.inner_count()],
            vec![false; self.right.inner_count()],
        )
    }

    fn check(&self, layout: &Layout) -> Result<()> {
        for (side, tree) in [(Side::Left, &self.left), (Side::Right, &self.right)] {
            let found = layout.swaps(side).len();
            if found != tree.inner_count() {
                return Err(Error::LayoutDimension {
                    side,
                    expected: tree.inner_count(),
                    found,
                });
            }
        }
        Ok(())
    }
}

fn leaf_label(i: usize, j: usize) -> String {
    format!("l{i}_{j}")
}

/// Central leaf of the MinUncut backbone trees.
pub const CENTRAL_LEAF: &str = "a";

/// MinUncut reduction with `wA` central edges and `wB` edges per vertex pair.
///
/// Both trees are the caterpillar over the backbone `v11, v12, ..., vn2, a`
/// with a leaf `l{i}_{j}` hanging off every `vij`. Stored child orders put
/// `l{i}_1` above the backbone on the left and `l{i}_2` above it on the
/// right, which is the drawing of the partition with every vertex in `V1`.
pub fn gen_minuncut(graph: &MinUncutGraph, w_a: u64, w_b: u64) -> Result<MetaInstance> {
    if w_a == 0 || w_b == 0 {
        return Err(Error::InvalidParameter("weights must be positive".into()));
    }
    let n = graph.vertices();
    let mut left = Subtree::leaf(CENTRAL_LEAF);
    let mut right = Subtree::leaf(CENTRAL_LEAF);
    for i in (1..=n).rev() {
        left = Subtree::pair(left, Subtree::leaf(leaf_label(i, 2)));
        right = Subtree::pair(Subtree::leaf(leaf_label(i, 2)), right);
        left = Subtree::pair(Subtree::leaf(leaf_label(i, 1)), left);
        right = Subtree::pair(right, Subtree::leaf(leaf_label(i, 1)));
    }
    let edge = |l: String, r: String, weight| MetaEdge {
        left: l,
        right: r,
        weight,
    };
    let mut edges = vec![edge(CENTRAL_LEAF.into(), CENTRAL_LEAF.into(), w_a)];
    for i in 1..=n {
        edges.push(edge(leaf_label(i, 1), leaf_label(i, 2), w_b));
        edges.push(edge(leaf_label(i, 2), leaf_label(i, 1), w_b));
    }
    for &(a, b) in graph.edges() {
        edges.push(edge(leaf_label(a + 1, 1), leaf_label(b + 1, 1), 1));
    }
    MetaInstance::new(
        Tree::from_subtree(&left)?,
        Tree::from_subtree(&right)?,
        edges,
    )
}

/// Drawing of a vertex partition on a [`gen_minuncut`] instance: vertices
/// outside the first part have both backbone nodes swapped on both sides.
pub fn minuncut_partition_layout(graph: &MinUncutGraph, in_first: &[bool]) -> Result<Layout> {
    if in_first.len() != graph.vertices() {
        return Err(Error::InvalidParameter(format!(
            "partition has {} entries for {} vertices",
            in_first.len(),
            graph.vertices()
        )));
    }
    // backbone nodes are the inner nodes, in preorder v11, v12, v21, ...
    let bits: Vec<bool> = in_first
        .iter()
        .flat_map(|&first| [!first, !first])
        .collect();
    Ok(Layout::new(bits.clone(), bits))
}

/// Weighted crossings: `w(e) * w(f)` over crossing pairs of meta edges with
/// distinct endpoints on both sides.
pub fn count_meta_crossings(meta: &MetaInstance, layout: &Layout) -> Result<u64> {
    meta.check(layout)?;
    let pos = |tree: &Tree, swaps: &[bool]| {
        let mut p = vec![0; tree.len()];
        for (i, leaf) in leaf_order_nodes(tree, swaps).into_iter().enumerate() {
            p[leaf] = i;
        }
        p
    };
    let lp = pos(&meta.left, &layout.left_swaps);
    let rp = pos(&meta.right, &layout.right_swaps);
    let mut total = 0u64;
    for e in 0..meta.edges.len() {
        for f in e + 1..meta.edges.len() {
            let (a, c) = (meta.left_leaf[e], meta.left_leaf[f]);
            let (b, d) = (meta.right_leaf[e], meta.right_leaf[f]);
            if a == c || b == d {
                continue;
            }
            if edges_cross(lp[a], lp[c], rp[b], rp[d]) {
                total += meta.edges[e].weight * meta.edges[f].weight;
            }
        }
    }
    Ok(total)
}

/// Upper bound on `|expanded - meta|` crossings for layouts carried over by
/// [`Expansion::carry_layout`]: unit edges of distinct meta edges that share
/// a meta leaf.
pub fn expansion_slack(meta: &MetaInstance) -> u64 {
    let mut slack = 0;
    for side in [&meta.left_leaf, &meta.right_leaf] {
        let mut by_leaf: HashMap<NodeId, Vec<u64>> = HashMap::new();
        for (e, &leaf) in side.iter().enumerate() {
            by_leaf.entry(leaf).or_default().push(meta.edges[e].weight);
        }
        for ws in by_leaf.values() {
            let sum: u64 = ws.iter().sum();
            let sq: u64 = ws.iter().map(|w| w * w).sum();
            slack += (sum * sum - sq) / 2;
        }
    }
    slack
}

/// Unit-edge instance built from a meta instance, with the map needed to
/// carry meta layouts over.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub instance: TanglegramInstance,
    left_origin: Vec<Option<usize>>,
    right_origin: Vec<Option<usize>>,
}

impl Expansion {
    /// Expanded layout using the meta bits on surviving meta inner nodes and
    /// the stored order inside every leaf caterpillar.
    pub fn carry_layout(&self, meta_layout: &Layout) -> Layout {
        let carry = |origin: &[Option<usize>], bits: &[bool]| {
            origin.iter().map(|o| o.is_some_and(|r| bits[r])).collect()
        };
        Layout::new(
            carry(&self.left_origin, &meta_layout.left_swaps),
            carry(&self.right_origin, &meta_layout.right_swaps),
        )
    }
}

/// Replaces every meta leaf by a caterpillar with one leaf per unit of
/// incident weight. Units at a leaf are grouped by meta edge and ordered by
/// the opposite endpoint's stored position, so bundles and fans stay
/// crossing-free in the stored layout. Leaves without edges are dropped.
pub fn expand_meta(meta: &MetaInstance) -> Result<TanglegramInstance> {
    Ok(expand_meta_mapped(meta)?.instance)
}

pub fn expand_meta_mapped(meta: &MetaInstance) -> Result<Expansion> {
    let stored_pos = |tree: &Tree| {
        let mut p = vec![0; tree.len()];
        for (i, &leaf) in tree.leaves().iter().enumerate() {
            p[leaf] = i;
        }
        p
    };
    let (lpos, rpos) = (stored_pos(&meta.left), stored_pos(&meta.right));
    let units = |own: &[NodeId], other: &[NodeId], other_pos: &[usize], tree: &Tree| {
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); tree.len()];
        for (e, &leaf) in own.iter().enumerate() {
            at[leaf].push(e);
        }
        at.into_iter()
            .map(|mut es| {
                es.sort_by_key(|&e| other_pos[other[e]]);
                es.into_iter()
                    .flat_map(|e| (0..meta.edges[e].weight).map(move |k| format!("{e}.{k}")))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    let left_units = units(&meta.left_leaf, &meta.right_leaf, &rpos, &meta.left);
    let right_units = units(&meta.right_leaf, &meta.left_leaf, &lpos, &meta.right);
    let (left, left_origin) = expand_tree(&meta.left, &left_units)?;
    let (right, right_origin) = expand_tree(&meta.right, &right_units)?;
    Ok(Expansion {
        instance: TanglegramInstance::new(left, right)?,
        left_origin,
        right_origin,
    })
}

fn expand_tree(tree: &Tree, units: &[Vec<String>]) -> Result<(Tree, Vec<Option<usize>>)> {
    let mut alive = vec![false; tree.len()];
    for id in (0..tree.len()).rev() {
        alive[id] = if tree.is_leaf(id) {
            !units[id].is_empty()
        } else {
            tree.children(id).iter().any(|&c| alive[c])
        };
    }
    if !alive[tree.root()] {
        return Err(Error::InvalidParameter("meta instance has no edges".into()));
    }
    fn build(
        tree: &Tree,
        id: NodeId,
        units: &[Vec<String>],
        alive: &[bool],
        origin: &mut Vec<Option<usize>>,
    ) -> Subtree {
        if tree.is_leaf(id) {
            let us = &units[id];
            for _ in 1..us.len() {
                origin.push(None);
            }
            let mut acc = Subtree::leaf(us.last().unwrap().as_str());
            for u in us[..us.len() - 1].iter().rev() {
                acc = Subtree::pair(Subtree::leaf(u.as_str()), acc);
            }
            return acc;
        }
        let kids: Vec<NodeId> = tree
            .children(id)
            .iter()
            .copied()
            .filter(|&c| alive[c])
            .collect();
        if kids.len() == 1 {
            return build(tree, kids[0], units, alive, origin);
        }
        origin.push(tree.inner_rank(id));
        Subtree::Inner(
            kids.into_iter()
                .map(|c| build(tree, c, units, alive, origin))
                .collect(),
        )
    }
    let mut origin = Vec::new();
    let shape = build(tree, tree.root(), units, &alive, &mut origin);
    let out = Tree::from_subtree(&shape)?;
    debug_assert_eq!(origin.len(), out.inner_count());
    Ok((out, origin))
}
