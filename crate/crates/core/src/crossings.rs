//! Crossing counting for fixed layouts and the per-node-pair crossing tables.

use crate::error::{Error, Result};
use crate::instance::TanglegramInstance;
use crate::layout::{leaf_order_nodes, Layout, Side};
use crate::lca::LcaIndex;

/// Whether edges `ac`-side and `bd`-side cross, given the rank of each
/// endpoint in the left and right leaf orders.
pub fn edges_cross(left_a: usize, left_c: usize, right_b: usize, right_d: usize) -> bool {
    (left_a < left_c) != (right_b < right_d)
}

/// For each left position, the right position of the same label.
pub(crate) fn position_permutation(instance: &TanglegramInstance, layout: &Layout) -> Vec<usize> {
    let right_order = leaf_order_nodes(instance.right(), &layout.right_swaps);
    let mut right_pos = vec![0; instance.right().len()];
    for (i, &leaf) in right_order.iter().enumerate() {
        right_pos[leaf] = i;
    }
    leaf_order_nodes(instance.left(), &layout.left_swaps)
        .into_iter()
        .map(|leaf| right_pos[instance.partner_of_left(leaf)])
        .collect()
}

/// Number of crossing inter-tree edge pairs, i.e. inversions of the
/// left-to-right position permutation. `O(n log n)`.
pub fn count_crossings(instance: &TanglegramInstance, layout: &Layout) -> Result<u64> {
    layout.check(instance)?;
    let mut perm = position_permutation(instance, layout);
    let mut scratch = vec![0; perm.len()];
    Ok(sort_count(&mut perm, &mut scratch))
}

/// Merge sort returning the number of inversions.
fn sort_count(xs: &mut [usize], scratch: &mut [usize]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (lo, hi) = xs.split_at_mut(mid);
        let (slo, shi) = scratch.split_at_mut(mid);
        sort_count(lo, slo) + sort_count(hi, shi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if xs[i] <= xs[j] {
            scratch[k] = xs[i];
            i += 1;
        } else {
            scratch[k] = xs[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&scratch[..n]);
    inv
}

/// Quadratic all-pairs count using [`edges_cross`].
pub fn count_crossings_pairwise(instance: &TanglegramInstance, layout: &Layout) -> Result<u64> {
    layout.check(instance)?;
    let perm = position_permutation(instance, layout);
    let mut total = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if edges_cross(i, j, perm[i], perm[j]) {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// Crossing counts attributed to each (left inner node, right inner node) pair.
///
/// For the edge pairs whose left endpoints meet at `v` and right endpoints
/// meet at `w`, `equal[v][w]` counts those that cross when `v` and `w` carry
/// the same swap bit and `crossed[v][w]` those that cross when the bits
/// differ. Indices are inner ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingTables {
    rows: usize,
    cols: usize,
    equal: Vec<u32>,
    crossed: Vec<u32>,
}

impl CrossingTables {
    /// Left inner-node count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Right inner-node count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn equal(&self, v: usize, w: usize) -> u64 {
        self.equal[v * self.cols + w] as u64
    }

    pub fn crossed(&self, v: usize, w: usize) -> u64 {
        self.crossed[v * self.cols + w] as u64
    }

    /// Crossings contributed by cell `(v, w)` given whether the two swap
    /// bits differ.
    #[inline]
    pub fn cost(&self, v: usize, w: usize, differ: bool) -> u64 {
        let i = v * self.cols + w;
        (if differ {
            self.crossed[i]
        } else {
            self.equal[i]
        }) as u64
    }

    /// Edge pairs attributed to cell `(v, w)`.
    pub fn pairs(&self, v: usize, w: usize) -> u64 {
        self.equal(v, w) + self.crossed(v, w)
    }

    pub fn total_pairs(&self) -> u64 {
        self.equal
            .iter()
            .chain(&self.crossed)
            .map(|&x| x as u64)
            .sum()
    }

    fn check(&self, layout: &Layout) -> Result<()> {
        for (side, len) in [(Side::Left, self.rows), (Side::Right, self.cols)] {
            let found = layout.swaps(side).len();
            if found != len {
                return Err(Error::LayoutDimension {
                    side,
                    expected: len,
                    found,
                });
            }
        }
        Ok(())
    }

    /// Change in crossings caused by flipping the swap bit of one node.
    pub fn flip_delta(&self, layout: &Layout, side: Side, rank: usize) -> i64 {
        let mut delta = 0i64;
        match side {
            Side::Left => {
                let bit = layout.left_swaps[rank];
                for (w, &other) in layout.right_swaps.iter().enumerate() {
                    let differ = bit != other;
                    delta += self.cost(rank, w, !differ) as i64 - self.cost(rank, w, differ) as i64;
                }
            }
            Side::Right => {
                let bit = layout.right_swaps[rank];
                for (v, &other) in layout.left_swaps.iter().enumerate() {
                    let differ = bit != other;
                    delta += self.cost(v, rank, !differ) as i64 - self.cost(v, rank, differ) as i64;
                }
            }
        }
        delta
    }
}

/// Builds the crossing tables in `O(n^2)` using constant-time LCA queries.
pub fn build_tables(instance: &TanglegramInstance) -> CrossingTables {
    let left = instance.left();
    let right = instance.right();
    let rows = left.inner_count();
    let cols = right.inner_count();
    let mut tables = CrossingTables {
        rows,
        cols,
        equal: vec![0; rows * cols],
        crossed: vec![0; rows * cols],
    };
    let left_lca = LcaIndex::new(left);
    let right_lca = LcaIndex::new(right);
    let mut right_pos = vec![0; right.len()];
    for (i, &leaf) in right.leaves().iter().enumerate() {
        right_pos[leaf] = i;
    }
    let leaves = left.leaves();
    let partners: Vec<_> = leaves
        .iter()
        .map(|&l| instance.partner_of_left(l))
        .collect();
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            let v = left.inner_rank(left_lca.lca(leaves[i], leaves[j])).unwrap();
            let w = right
                .inner_rank(right_lca.lca(partners[i], partners[j]))
                .unwrap();
            let idx = v * cols + w;
            // both bits zero in the stored order, i.e. "same decision"
            if edges_cross(i, j, right_pos[partners[i]], right_pos[partners[j]]) {
                tables.equal[idx] += 1;
            } else {
                tables.crossed[idx] += 1;
            }
        }
    }
    tables
}

/// Crossing count of `layout` read off the tables.
pub fn crossings_from_tables(tables: &CrossingTables, layout: &Layout) -> Result<u64> {
    tables.check(layout)?;
    let mut total = 0;
    for (v, &bv) in layout.left_swaps.iter().enumerate() {
        for (w, &bw) in layout.right_swaps.iter().enumerate() {
            total += tables.cost(v, w, bv != bw);
        }
    }
    Ok(total)
}
