//! Brute-force optimum, the reference oracle for every other solver.

use crate::crossings::{build_tables, crossings_from_tables, edges_cross};
use crate::error::{Error, Result};
use crate::instance::TanglegramInstance;
use crate::layout::{Layout, Side};
use crate::tree::{NodeId, Tree};

/// Default limit on the total inner-node count of both trees.
pub const DEFAULT_EXACT_CAP: usize = 26;

pub fn solve_exact(instance: &TanglegramInstance) -> Result<(Layout, u64)> {
    solve_exact_with_cap(instance, DEFAULT_EXACT_CAP)
}

/// Enumerates every swap assignment with the left root fixed to 0 (the
/// mirror covers the rest) in Gray-code order, updating the table count by
/// one row or column per step. Returns the minimizer whose concatenated bit
/// string (left then right, preorder) is lexicographically smallest.
pub fn solve_exact_with_cap(instance: &TanglegramInstance, cap: usize) -> Result<(Layout, u64)> {
    let rows = instance.left().inner_count();
    let cols = instance.right().inner_count();
    if rows + cols > cap {
        return Err(Error::CapExceeded {
            needed: rows + cols,
            cap,
        });
    }
    let mut layout = Layout::identity(instance);
    if rows + cols == 0 {
        return Ok((layout, 0));
    }
    let tables = build_tables(instance);
    // free variables in bit-string order, left root excluded when present
    let vars: Vec<(bool, usize)> = (0..rows)
        .skip(1)
        .map(|v| (true, v))
        .chain((0..cols).map(|w| (false, w)))
        .collect();
    let m = vars.len();
    let key_of = |j: usize| 1u64 << (m - 1 - j);

    let mut value = crossings_from_tables(&tables, &layout)? as i64;
    let mut key = 0u64;
    let mut best = (value, key);
    for step in 1u64..(1u64 << m) {
        let j = step.trailing_zeros() as usize;
        let (is_left, idx) = vars[j];
        let side = if is_left { Side::Left } else { Side::Right };
        value += tables.flip_delta(&layout, side, idx);
        if is_left {
            layout.left_swaps[idx] ^= true;
        } else {
            layout.right_swaps[idx] ^= true;
        }
        key ^= key_of(j);
        if value < best.0 || (value == best.0 && key < best.1) {
            best = (value, key);
        }
    }

    let mut out = Layout::identity(instance);
    for (j, &(is_left, idx)) in vars.iter().enumerate() {
        let bit = best.1 & key_of(j) != 0;
        if is_left {
            out.left_swaps[idx] = bit;
        } else {
            out.right_swaps[idx] = bit;
        }
    }
    Ok((out, best.0 as u64))
}

/// Every leaf order compatible with `tree` (each subtree an interval).
pub fn compatible_orders(tree: &Tree) -> Vec<Vec<NodeId>> {
    fn rec(tree: &Tree, id: NodeId) -> Vec<Vec<NodeId>> {
        if tree.is_leaf(id) {
            return vec![vec![id]];
        }
        let kids: Vec<Vec<Vec<NodeId>>> = tree.children(id).iter().map(|&c| rec(tree, c)).collect();
        let mut out = Vec::new();
        for reversed in [false, true] {
            let mut acc: Vec<Vec<NodeId>> = vec![Vec::new()];
            let seq: Vec<&Vec<Vec<NodeId>>> = if reversed {
                kids.iter().rev().collect()
            } else {
                kids.iter().collect()
            };
            for child_orders in seq {
                acc = acc
                    .iter()
                    .flat_map(|prefix| {
                        child_orders.iter().map(move |o| {
                            let mut p = prefix.clone();
                            p.extend(o);
                            p
                        })
                    })
                    .collect();
            }
            out.extend(acc);
        }
        out
    }
    rec(tree, tree.root())
}

/// Minimum crossings over all pairs of compatible leaf orders, counted
/// pair by pair. Independent of the table machinery; exponential in `n`.
pub fn exact_by_leaf_orders(instance: &TanglegramInstance) -> (Vec<String>, Vec<String>, u64) {
    let left_orders = compatible_orders(instance.left());
    let right_orders = compatible_orders(instance.right());
    let mut best: Option<(u64, usize, usize)> = None;
    for (li, lo) in left_orders.iter().enumerate() {
        for (ri, ro) in right_orders.iter().enumerate() {
            let mut rpos = vec![0; instance.right().len()];
            for (i, &leaf) in ro.iter().enumerate() {
                rpos[leaf] = i;
            }
            let mut count = 0;
            for i in 0..lo.len() {
                for j in i + 1..lo.len() {
                    let b = rpos[instance.partner_of_left(lo[i])];
                    let d = rpos[instance.partner_of_left(lo[j])];
                    if edges_cross(i, j, b, d) {
                        count += 1;
                    }
                }
            }
            if best.is_none_or(|(c, _, _)| count < c) {
                best = Some((count, li, ri));
            }
        }
    }
    let (count, li, ri) = best.unwrap();
    let names = |tree: &Tree, order: &[NodeId]| {
        order
            .iter()
            .map(|&l| tree.label(l).unwrap().to_string())
            .collect()
    };
    (
        names(instance.left(), &left_orders[li]),
        names(instance.right(), &right_orders[ri]),
        count,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::count_crossings;
    use crate::generators::{gen_random, gen_tight, GenShape};
    use crate::newick::parse_newick;
    use crate::tree::Subtree;

    fn all_layouts(inst: &TanglegramInstance) -> impl Iterator<Item = Layout> + '_ {
        let (r, c) = (inst.left().inner_count(), inst.right().inner_count());
        (0u64..1 << (r + c)).map(move |mask| {
            let bit = |k: usize| mask >> k & 1 == 1;
            Layout::new((0..r).map(bit).collect(), (r..r + c).map(bit).collect())
        })
    }

    #[test]
    fn identical_trees() {
        let t = parse_newick("((a,b),(c,(d,e)));").unwrap();
        let inst = TanglegramInstance::new(t.clone(), t).unwrap();
        assert_eq!(solve_exact(&inst).unwrap().1, 0);
    }

    #[test]
    fn tight_optimum() {
        assert_eq!(solve_exact(&gen_tight(1).unwrap()).unwrap().1, 1);
        assert_eq!(solve_exact(&gen_tight(2).unwrap()).unwrap().1, 4);
    }

    #[test]
    fn minimizer_is_lexicographically_smallest() {
        for seed in 0..30 {
            let inst = gen_random(5 + seed as usize % 3, GenShape::RandomBinary, seed).unwrap();
            let (layout, opt) = solve_exact(&inst).unwrap();
            assert_eq!(count_crossings(&inst, &layout).unwrap(), opt);
            let best = all_layouts(&inst)
                .filter(|l| count_crossings(&inst, l).unwrap() == opt)
                .map(|l| l.bit_string())
                .min()
                .unwrap();
            assert_eq!(layout.bit_string(), best);
        }
    }

    #[test]
    fn agrees_with_full_reevaluation() {
        for seed in 0..30 {
            let inst = gen_random(6, GenShape::RandomBinary, 500 + seed).unwrap();
            let brute = all_layouts(&inst)
                .map(|l| count_crossings(&inst, &l).unwrap())
                .min()
                .unwrap();
            assert_eq!(solve_exact(&inst).unwrap().1, brute);
        }
    }

    #[test]
    fn agrees_with_leaf_order_enumeration() {
        for seed in 0..40 {
            let n = 2 + seed as usize % 5;
            let inst = gen_random(n, GenShape::RandomBinary, seed).unwrap();
            assert_eq!(solve_exact(&inst).unwrap().1, exact_by_leaf_orders(&inst).2);
        }
    }

    #[test]
    fn compatible_order_count() {
        // a binary tree with k inner nodes has 2^k compatible orders
        let t = parse_newick("((a,b),(c,(d,e)));").unwrap();
        let orders = compatible_orders(&t);
        assert_eq!(orders.len(), 16);
        let mut uniq = orders.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 16);
    }

    #[test]
    fn cap() {
        let inst = gen_random(16, GenShape::Complete, 1).unwrap();
        assert!(matches!(
            solve_exact(&inst),
            Err(Error::CapExceeded {
                needed: 30,
                cap: 26
            })
        ));
        assert!(solve_exact_with_cap(&gen_random(4, GenShape::Complete, 1).unwrap(), 6).is_ok());
    }

    #[test]
    fn invariant_under_shuffles_and_relabeling() {
        for seed in 0..20 {
            let inst = gen_random(7, GenShape::RandomBinary, 900 + seed).unwrap();
            let opt = solve_exact(&inst).unwrap().1;
            let swaps: Vec<bool> = (0..inst.left().inner_count())
                .map(|k| (k + seed as usize).is_multiple_of(3))
                .collect();
            let shuffled =
                TanglegramInstance::new(inst.left().reordered(&swaps), inst.right().clone())
                    .unwrap();
            assert_eq!(solve_exact(&shuffled).unwrap().1, opt);
            fn prefixed(sub: &Subtree) -> Subtree {
                match sub {
                    Subtree::Leaf(l) => Subtree::Leaf(format!("x{l}")),
                    Subtree::Inner(k) => Subtree::Inner(k.iter().map(prefixed).collect()),
                }
            }
            let relabel = |t: &Tree| Tree::from_subtree(&prefixed(&t.to_subtree())).unwrap();
            let renamed =
                TanglegramInstance::new(relabel(inst.left()), relabel(inst.right())).unwrap();
            assert_eq!(solve_exact(&renamed).unwrap().1, opt);
        }
    }
}
