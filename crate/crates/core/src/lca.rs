//! Constant-time lowest common ancestors.
//!
//! Euler tour of the tree, then range-minimum over tour depths. The RMQ splits
//! the tour into 64-entry blocks: a sparse table over block minima answers the
//! middle part and a per-position stack bitmask answers the in-block parts, so
//! preprocessing stays linear.

use crate::tree::{NodeId, Tree};

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub struct LcaIndex {
    first: Vec<usize>,
    tour: Vec<NodeId>,
    depth: Vec<u32>,
    masks: Vec<u64>,
    /// `sparse[k][b]`: tour position of the minimum over blocks `b..b + 2^k`.
    sparse: Vec<Vec<usize>>,
}

impl LcaIndex {
    pub fn new(tree: &Tree) -> Self {
        let n = tree.len();
        let mut first = vec![usize::MAX; n];
        let mut tour = Vec::with_capacity(2 * n);
        let mut stack: Vec<(NodeId, usize)> = vec![(tree.root(), 0)];
        while let Some((id, next_child)) = stack.pop() {
            if next_child == 0 {
                first[id] = tour.len();
            }
            tour.push(id);
            if let Some(&child) = tree.children(id).get(next_child) {
                stack.push((id, next_child + 1));
                stack.push((child, 0));
            }
        }
        let depth: Vec<u32> = tour.iter().map(|&id| tree.depth(id) as u32).collect();

        let mut masks = vec![0u64; tour.len()];
        for start in (0..tour.len()).step_by(BLOCK) {
            let end = (start + BLOCK).min(tour.len());
            let mut cur = 0u64;
            for i in start..end {
                while cur != 0 {
                    let top = start + 63 - cur.leading_zeros() as usize;
                    if depth[top] >= depth[i] {
                        cur &= !(1u64 << (top - start));
                    } else {
                        break;
                    }
                }
                cur |= 1u64 << (i - start);
                masks[i] = cur;
            }
        }

        let blocks = tour.len().div_ceil(BLOCK);
        let mut level0 = Vec::with_capacity(blocks);
        for b in 0..blocks {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(tour.len());
            level0.push(in_block(&masks, start, end - 1, start));
        }
        let mut sparse = vec![level0];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = sparse.last().unwrap();
            let next: Vec<usize> = (0..=blocks - 2 * width)
                .map(|b| argmin(&depth, prev[b], prev[b + width]))
                .collect();
            sparse.push(next);
            width *= 2;
        }

        LcaIndex {
            first,
            tour,
            depth,
            masks,
            sparse,
        }
    }

    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let (mut l, mut r) = (self.first[a], self.first[b]);
        if l > r {
            std::mem::swap(&mut l, &mut r);
        }
        let (bl, br) = (l / BLOCK, r / BLOCK);
        let pos = if bl == br {
            in_block(&self.masks, l, r, bl * BLOCK)
        } else {
            let mut best = in_block(&self.masks, l, bl * BLOCK + BLOCK - 1, bl * BLOCK);
            best = argmin(
                &self.depth,
                best,
                in_block(&self.masks, br * BLOCK, r, br * BLOCK),
            );
            if bl + 1 < br {
                let span = br - bl - 1;
                let k = span.ilog2() as usize;
                let row = &self.sparse[k];
                best = argmin(&self.depth, best, row[bl + 1]);
                best = argmin(&self.depth, best, row[br - (1 << k)]);
            }
            best
        };
        self.tour[pos]
    }
}

fn in_block(masks: &[u64], l: usize, r: usize, start: usize) -> usize {
    let m = masks[r] & (u64::MAX << (l - start));
    start + m.trailing_zeros() as usize
}

fn argmin(depth: &[u32], a: usize, b: usize) -> usize {
    if depth[b] < depth[a] {
        b
    } else {
        a
    }
}
