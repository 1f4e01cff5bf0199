//! The non-crossing-pairs objective as a max-cut problem with must-separate
//! vertex pairs.
//!
//! Every inner node `u` of either tree contributes two vertices `u` and `u'`,
//! which every admissible cut separates. Relative to an initial layout, a pair
//! of inter-tree edges with lowest common ancestors `v` and `w` adds weight 1 to
//! the edge `v w` if the pair crosses initially and to `v w'` otherwise. A
//! node is swapped relative to the initial layout exactly when `u` lies in `F`,
//! and the weight of a cut then equals the number of non-crossing pairs of
//! the decoded layout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crossings::build_tables;
use crate::error::{Error, Result};
use crate::instance::TanglegramInstance;
use crate::layout::Layout;
use crate::total_pairs;

/// Default limit on the number of constrained pairs for [`exact_cut`].
pub const DEFAULT_CUT_CAP: usize = 25;

/// Weighted graph over `2 (rows + cols)` vertices. Pair `p` owns vertices
/// `2p` (`u`) and `2p + 1` (`u'`); left inner rank `i` is pair `i` and right
/// inner rank `j` is pair `rows + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutGraph {
    rows: usize,
    cols: usize,
    edges: Vec<(usize, usize, u64)>,
    incident: Vec<Vec<usize>>,
}

/// Side assignment per vertex; `true` places the vertex in `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cut {
    pub in_f: Vec<bool>,
}

impl Cut {
    /// The cut with bit `b[p]` meaning pair `p` has `u` in `F` and `u'` in `N`.
    pub fn from_pair_bits(bits: &[bool]) -> Cut {
        Cut {
            in_f: bits.iter().flat_map(|&b| [b, !b]).collect(),
        }
    }

    /// One bit per pair; only meaningful for admissible cuts.
    pub fn pair_bits(&self) -> Vec<bool> {
        self.in_f.chunks(2).map(|p| p[0]).collect()
    }

    pub fn complement(&self) -> Cut {
        Cut {
            in_f: self.in_f.iter().map(|&b| !b).collect(),
        }
    }
}

impl CutGraph {
    fn from_edges(rows: usize, cols: usize, edges: Vec<(usize, usize, u64)>) -> CutGraph {
        let mut incident = vec![Vec::new(); rows + cols];
        for (k, &(a, b, _)) in edges.iter().enumerate() {
            incident[a / 2].push(k);
            incident[b / 2].push(k);
        }
        CutGraph {
            rows,
            cols,
            edges,
            incident,
        }
    }

    pub fn pair_count(&self) -> usize {
        self.rows + self.cols
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.pair_count()
    }

    pub fn left_pair(&self, rank: usize) -> usize {
        rank
    }

    pub fn right_pair(&self, rank: usize) -> usize {
        self.rows + rank
    }

    /// Merged weighted edges `(a, b, weight)` with `a` a left-tree vertex.
    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn check(&self, cut: &Cut) -> Result<()> {
        if cut.in_f.len() != self.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "cut has {} vertices, graph has {}",
                cut.in_f.len(),
                self.vertex_count()
            )));
        }
        match cut.in_f.chunks(2).position(|p| p[0] == p[1]) {
            Some(p) => Err(Error::ConstraintViolation(p)),
            None => Ok(()),
        }
    }

    /// Total weight of edges with endpoints on different sides.
    pub fn weight(&self, cut: &Cut) -> u64 {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| cut.in_f[a] != cut.in_f[b])
            .map(|e| e.2)
            .sum()
    }

    /// Weight change from moving both vertices of pair `p` to the other side.
    pub fn flip_gain(&self, cut: &Cut, p: usize) -> i64 {
        self.incident[p]
            .iter()
            .map(|&k| {
                let (a, b, w) = self.edges[k];
                if cut.in_f[a] != cut.in_f[b] {
                    -(w as i64)
                } else {
                    w as i64
                }
            })
            .sum()
    }

    fn flip(&self, cut: &mut Cut, p: usize) {
        cut.in_f[2 * p] ^= true;
        cut.in_f[2 * p + 1] ^= true;
    }
}

pub fn build_cut_graph(instance: &TanglegramInstance, initial: &Layout) -> Result<CutGraph> {
    initial.check(instance)?;
    let tables = build_tables(instance);
    let (rows, cols) = (tables.rows(), tables.cols());
    let mut edges = Vec::new();
    for v in 0..rows {
        for w in 0..cols {
            let differ = initial.left_swaps[v] != initial.right_swaps[w];
            let crossing = tables.cost(v, w, differ);
            let straight = tables.cost(v, w, !differ);
            let (u, x) = (2 * v, 2 * (rows + w));
            if crossing > 0 {
                edges.push((u, x, crossing));
            }
            if straight > 0 {
                edges.push((u, x + 1, straight));
            }
        }
    }
    Ok(CutGraph::from_edges(rows, cols, edges))
}

/// The cut whose decoding against `initial` is `layout`, with `u'` of every
/// unswapped node in `F`.
pub fn cut_from_layout(graph: &CutGraph, initial: &Layout, layout: &Layout) -> Result<Cut> {
    let dims = |l: &Layout| (l.left_swaps.len(), l.right_swaps.len());
    if dims(initial) != (graph.rows, graph.cols) || dims(layout) != dims(initial) {
        return Err(Error::InvalidParameter(
            "layout does not match the cut graph".into(),
        ));
    }
    let bits: Vec<bool> = initial
        .left_swaps
        .iter()
        .chain(&initial.right_swaps)
        .zip(layout.left_swaps.iter().chain(&layout.right_swaps))
        .map(|(a, b)| a != b)
        .collect();
    Ok(Cut::from_pair_bits(&bits))
}

/// Flips the swap bit of every node whose `u` lies in `F`.
pub fn decode_cut(graph: &CutGraph, cut: &Cut, initial: &Layout) -> Result<Layout> {
    graph.check(cut)?;
    if (initial.left_swaps.len(), initial.right_swaps.len()) != (graph.rows, graph.cols) {
        return Err(Error::InvalidParameter(
            "layout does not match the cut graph".into(),
        ));
    }
    let bits = cut.pair_bits();
    let flip = |own: &[bool], offset: usize| -> Vec<bool> {
        own.iter()
            .enumerate()
            .map(|(i, &b)| b ^ bits[offset + i])
            .collect()
    };
    Ok(Layout::new(
        flip(&initial.left_swaps, 0),
        flip(&initial.right_swaps, graph.rows),
    ))
}

pub fn exact_cut(graph: &CutGraph) -> Result<Cut> {
    exact_cut_with_cap(graph, DEFAULT_CUT_CAP)
}

/// Maximum-weight admissible cut by Gray-code enumeration of the pair bits,
/// first bit fixed to 0. Ties go to the lexicographically smallest bit string.
pub fn exact_cut_with_cap(graph: &CutGraph, cap: usize) -> Result<Cut> {
    let pairs = graph.pair_count();
    if pairs > cap {
        return Err(Error::CapExceeded { needed: pairs, cap });
    }
    let mut cut = Cut::from_pair_bits(&vec![false; pairs]);
    if pairs <= 1 {
        return Ok(cut);
    }
    let m = pairs - 1;
    let key_of = |j: usize| 1u64 << (m - 1 - j);
    let mut value = graph.weight(&cut) as i64;
    let mut key = 0u64;
    let mut best = (value, key);
    for step in 1u64..(1u64 << m) {
        let j = step.trailing_zeros() as usize;
        value += graph.flip_gain(&cut, j + 1);
        graph.flip(&mut cut, j + 1);
        key ^= key_of(j);
        if value > best.0 || (value == best.0 && key < best.1) {
            best = (value, key);
        }
    }
    let bits: Vec<bool> = std::iter::once(false)
        .chain((0..m).map(|j| best.1 & key_of(j) != 0))
        .collect();
    Ok(Cut::from_pair_bits(&bits))
}

/// Applies the best strictly improving paired flip (lowest pair on ties)
/// until none remains.
pub fn local_search_cut(graph: &CutGraph, seed: &Cut) -> Result<Cut> {
    graph.check(seed)?;
    let mut cut = seed.clone();
    loop {
        let best = (0..graph.pair_count())
            .map(|p| (graph.flip_gain(&cut, p), p))
            .filter(|&(g, _)| g > 0)
            .max_by_key(|&(g, p)| (g, std::cmp::Reverse(p)));
        match best {
            Some((_, p)) => graph.flip(&mut cut, p),
            None => return Ok(cut),
        }
    }
}

/// Local search from the all-`N`-for-`u` cut plus `restarts` seeded random
/// starts; returns the heaviest result, earliest on ties.
pub fn local_search_restarts(graph: &CutGraph, restarts: usize, seed: u64) -> Cut {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = graph.pair_count();
    let mut starts = vec![vec![false; pairs]];
    starts.extend((0..restarts).map(|_| (0..pairs).map(|_| rng.gen()).collect()));
    starts
        .iter()
        .map(|bits| local_search_cut(graph, &Cut::from_pair_bits(bits)).expect("admissible start"))
        .fold(None::<(u64, Cut)>, |best, cut| {
            let w = graph.weight(&cut);
            match best {
                Some((bw, _)) if bw >= w => best,
                _ => Some((w, cut)),
            }
        })
        .map(|(_, c)| c)
        .unwrap()
}

/// Cut weight plus decoded crossings; equals `n(n-1)/2` for every admissible cut.
pub fn identity_total(
    instance: &TanglegramInstance,
    graph: &CutGraph,
    cut: &Cut,
    initial: &Layout,
) -> Result<(u64, u64, bool)> {
    let layout = decode_cut(graph, cut, initial)?;
    let weight = graph.weight(cut);
    let crossings = crate::crossings::count_crossings(instance, &layout)?;
    Ok((
        weight,
        crossings,
        weight + crossings == total_pairs(instance.n()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::count_crossings;
    use crate::exact::solve_exact;
    use crate::generators::{gen_random, GenShape};
    use crate::layout::{mirror, Side};
    use crate::newick::parse_newick;

    fn inst(l: &str, r: &str) -> TanglegramInstance {
        TanglegramInstance::new(parse_newick(l).unwrap(), parse_newick(r).unwrap()).unwrap()
    }

    fn random_cut(pairs: usize, rng: &mut ChaCha8Rng) -> Cut {
        Cut::from_pair_bits(&(0..pairs).map(|_| rng.gen()).collect::<Vec<_>>())
    }

    #[test]
    fn aligned_pair_graph() {
        let i = inst("(a,b);", "(a,b);");
        let g = build_cut_graph(&i, &Layout::identity(&i)).unwrap();
        assert_eq!(g.edges(), &[(0, 3, 1)]);
        let c = exact_cut(&g).unwrap();
        assert_eq!(g.weight(&c), 1);
        let l = decode_cut(&g, &c, &Layout::identity(&i)).unwrap();
        assert_eq!(count_crossings(&i, &l).unwrap(), 0);
    }

    #[test]
    fn aligned_pair_local_search() {
        let i = inst("(a,b);", "(a,b);");
        let g = build_cut_graph(&i, &Layout::identity(&i)).unwrap();
        let seed = Cut::from_pair_bits(&[false, true]);
        assert_eq!(g.weight(&seed), 0);
        let c = local_search_cut(&g, &seed).unwrap();
        assert_eq!(g.weight(&c), 1);
    }

    #[test]
    fn total_weight_and_bipartite_edges() {
        for seed in 0..30 {
            let i = gen_random(3 + seed as usize * 2, GenShape::RandomBinary, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let init = Layout::new(
                (0..i.left().inner_count()).map(|_| rng.gen()).collect(),
                (0..i.right().inner_count()).map(|_| rng.gen()).collect(),
            );
            let g = build_cut_graph(&i, &init).unwrap();
            assert_eq!(g.total_weight(), total_pairs(i.n()));
            let rows = i.left().inner_count();
            for &(a, b, _) in g.edges() {
                assert!(a / 2 < rows && b / 2 >= rows);
            }
        }
    }

    #[test]
    fn all_n_cut_decodes_to_initial() {
        let i = gen_random(12, GenShape::RandomBinary, 4).unwrap();
        let init = crate::approx::approx_general(&i).unwrap().layout;
        let g = build_cut_graph(&i, &init).unwrap();
        let none = Cut::from_pair_bits(&vec![false; g.pair_count()]);
        assert_eq!(decode_cut(&g, &none, &init).unwrap(), init);
        let all = none.complement();
        assert_eq!(decode_cut(&g, &all, &init).unwrap(), mirror(&init));
        assert_eq!(g.weight(&none), g.weight(&all));
    }

    #[test]
    fn weight_identity_on_random_cuts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for seed in 0..40 {
            let n = rng.gen_range(2..=64);
            let i = gen_random(n, GenShape::RandomBinary, seed).unwrap();
            let init = Layout::identity(&i);
            let g = build_cut_graph(&i, &init).unwrap();
            let c = random_cut(g.pair_count(), &mut rng);
            assert!(identity_total(&i, &g, &c, &init).unwrap().2);
            let l = decode_cut(&g, &c, &init).unwrap();
            assert_eq!(cut_from_layout(&g, &init, &l).unwrap(), c);
        }
    }

    #[test]
    fn violations_rejected() {
        let i = inst("((a,b),c);", "(a,(b,c));");
        let g = build_cut_graph(&i, &Layout::identity(&i)).unwrap();
        let mut c = Cut::from_pair_bits(&vec![false; g.pair_count()]);
        c.in_f[2] = true;
        assert!(matches!(
            decode_cut(&g, &c, &Layout::identity(&i)),
            Err(Error::ConstraintViolation(1))
        ));
        assert!(local_search_cut(&g, &c).is_err());
    }

    #[test]
    fn exact_cut_matches_primal_optimum() {
        for seed in 0..40 {
            let n = 2 + seed as usize % 7;
            let i = gen_random(n, GenShape::RandomBinary, 70 + seed).unwrap();
            let init = Layout::identity(&i);
            let g = build_cut_graph(&i, &init).unwrap();
            let c = exact_cut(&g).unwrap();
            let (_, opt) = solve_exact(&i).unwrap();
            assert_eq!(g.weight(&c), total_pairs(n) - opt);
            // the mirrored initial layout gives the same optimum
            let gm = build_cut_graph(&i, &mirror(&init)).unwrap();
            assert_eq!(gm.weight(&exact_cut(&gm).unwrap()), g.weight(&c));
            assert_eq!(local_search_cut(&g, &c).unwrap(), c);
        }
    }

    #[test]
    fn exact_cut_tie_break() {
        let i = gen_random(5, GenShape::RandomBinary, 3).unwrap();
        let g = build_cut_graph(&i, &Layout::identity(&i)).unwrap();
        let p = g.pair_count();
        let best = (0u64..1 << (p - 1))
            .map(|mask| {
                let bits: Vec<bool> = (0..p)
                    .map(|k| k > 0 && mask >> (p - 1 - k) & 1 == 1)
                    .collect();
                (
                    std::cmp::Reverse(g.weight(&Cut::from_pair_bits(&bits))),
                    bits,
                )
            })
            .min()
            .unwrap();
        assert_eq!(exact_cut(&g).unwrap().pair_bits(), best.1);
    }

    #[test]
    fn cap() {
        let i = gen_random(16, GenShape::Complete, 0).unwrap();
        let g = build_cut_graph(&i, &Layout::identity(&i)).unwrap();
        assert!(matches!(
            exact_cut(&g),
            Err(Error::CapExceeded {
                needed: 30,
                cap: 25
            })
        ));
    }

    #[test]
    fn local_search_is_swap_optimal() {
        for seed in 0..30 {
            let i = gen_random(24, GenShape::RandomBinary, seed).unwrap();
            let init = Layout::identity(&i);
            let g = build_cut_graph(&i, &init).unwrap();
            let c = local_search_restarts(&g, 2, seed);
            assert_eq!(local_search_cut(&g, &c).unwrap(), c);
            let l = decode_cut(&g, &c, &init).unwrap();
            let tables = build_tables(&i);
            for r in 0..l.left_swaps.len() {
                assert!(tables.flip_delta(&l, Side::Left, r) >= 0);
            }
            for r in 0..l.right_swaps.len() {
                assert!(tables.flip_delta(&l, Side::Right, r) >= 0);
            }
        }
    }
}
