use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tanglegram::dual::{build_cut_graph, cut_from_layout, decode_cut, local_search_cut, Cut};
use tanglegram::generators::{
    count_meta_crossings, gen_minuncut, gen_random, GenShape, MetaEdge, MetaInstance, MinUncutGraph,
};
use tanglegram::{
    approx_general, build_tables, count_crossings, count_crossings_pairwise, crossings_from_tables,
    leaf_order, min_crossings_fpt, mirror, rec_split, solve_exact, solve_fpt, total_pairs, Layout,
    Side, TanglegramInstance, Tree,
};

fn layout_for(inst: &TanglegramInstance, seed: u64) -> Layout {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Layout::new(
        (0..inst.left().inner_count()).map(|_| rng.gen()).collect(),
        (0..inst.right().inner_count()).map(|_| rng.gen()).collect(),
    )
}

fn any_instance(max_n: usize) -> impl Strategy<Value = TanglegramInstance> {
    (2..=max_n, any::<u64>()).prop_map(|(n, s)| gen_random(n, GenShape::RandomBinary, s).unwrap())
}

fn complete_instance(max_log: u32) -> impl Strategy<Value = TanglegramInstance> {
    (1..=max_log, any::<u64>())
        .prop_map(|(l, s)| gen_random(1 << l, GenShape::Complete, s).unwrap())
}

fn intervals_hold(tree: &Tree, order: &[&str]) -> bool {
    let pos = |label: &str| order.iter().position(|&l| l == label).unwrap();
    let mut leaves_under: Vec<Vec<usize>> = vec![Vec::new(); tree.len()];
    for id in (0..tree.len()).rev() {
        if let Some(l) = tree.label(id) {
            leaves_under[id].push(pos(l));
        } else {
            let merged: Vec<usize> = tree
                .children(id)
                .iter()
                .flat_map(|&c| leaves_under[c].clone())
                .collect();
            leaves_under[id] = merged;
        }
    }
    leaves_under.iter().all(|ps| {
        let (lo, hi) = (ps.iter().min().unwrap(), ps.iter().max().unwrap());
        hi - lo + 1 == ps.len()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counters_agree(inst in any_instance(64), seed in any::<u64>()) {
        let l = layout_for(&inst, seed);
        let fast = count_crossings(&inst, &l).unwrap();
        prop_assert_eq!(fast, count_crossings_pairwise(&inst, &l).unwrap());
        prop_assert_eq!(fast, crossings_from_tables(&build_tables(&inst), &l).unwrap());
        prop_assert_eq!(fast, count_crossings(&inst, &mirror(&l)).unwrap());
        prop_assert!(fast <= total_pairs(inst.n()));
    }

    #[test]
    fn leaf_orders_are_compatible_permutations(inst in any_instance(40), seed in any::<u64>()) {
        let l = layout_for(&inst, seed);
        for (side, tree) in [(Side::Left, inst.left()), (Side::Right, inst.right())] {
            let order = leaf_order(&inst, &l, side).unwrap();
            let mut sorted: Vec<&str> = order.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), inst.n());
            prop_assert!(intervals_hold(tree, &order));
        }
    }

    #[test]
    fn rec_split_within_factor_two(inst in complete_instance(3)) {
        let r = rec_split(&inst).unwrap();
        let opt = solve_exact(&inst).unwrap().1;
        prop_assert!(r.counted <= r.actual);
        prop_assert!(r.actual <= 2 * opt);
        prop_assert_eq!(r.actual, count_crossings(&inst, &r.layout).unwrap());
    }

    #[test]
    fn approx_general_sound(inst in any_instance(10)) {
        let r = approx_general(&inst).unwrap();
        let opt = solve_exact(&inst).unwrap().1;
        prop_assert!(r.counted <= r.actual);
        prop_assert!(opt <= r.actual);
    }

    #[test]
    fn fpt_sound_and_complete(inst in complete_instance(3), k in 0u64..12) {
        let opt = solve_exact(&inst).unwrap().1;
        match solve_fpt(&inst, k).unwrap() {
            Some(l) => prop_assert!(count_crossings(&inst, &l).unwrap() <= k),
            None => prop_assert!(opt > k),
        }
        if opt <= k {
            prop_assert!(solve_fpt(&inst, k).unwrap().is_some());
        }
        prop_assert_eq!(min_crossings_fpt(&inst).unwrap().1, opt);
    }

    #[test]
    fn cut_identity_and_bijection(inst in any_instance(48), a in any::<u64>(), b in any::<u64>()) {
        let initial = layout_for(&inst, a);
        let target = layout_for(&inst, b);
        let g = build_cut_graph(&inst, &initial).unwrap();
        prop_assert_eq!(g.total_weight(), total_pairs(inst.n()));
        let cut = cut_from_layout(&g, &initial, &target).unwrap();
        prop_assert_eq!(&decode_cut(&g, &cut, &initial).unwrap(), &target);
        let crossings = count_crossings(&inst, &target).unwrap();
        prop_assert_eq!(g.weight(&cut) + crossings, total_pairs(inst.n()));
        prop_assert_eq!(g.weight(&cut.complement()), g.weight(&cut));
    }

    #[test]
    fn local_search_monotone_and_idempotent(inst in any_instance(32), seed in any::<u64>()) {
        let g = build_cut_graph(&inst, &Layout::identity(&inst)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = Cut::from_pair_bits(&(0..g.pair_count()).map(|_| rng.gen()).collect::<Vec<_>>());
        let out = local_search_cut(&g, &start).unwrap();
        prop_assert!(g.weight(&out) >= g.weight(&start));
        prop_assert_eq!(local_search_cut(&g, &out).unwrap(), out);
    }

    #[test]
    fn unit_meta_count_is_plain_count(inst in any_instance(24), seed in any::<u64>()) {
        let edges = inst
            .left()
            .leaves()
            .iter()
            .map(|&l| {
                let label = inst.left().label(l).unwrap().to_string();
                MetaEdge { left: label.clone(), right: label, weight: 1 }
            })
            .collect();
        let meta = MetaInstance::new(inst.left().clone(), inst.right().clone(), edges).unwrap();
        let l = layout_for(&inst, seed);
        prop_assert_eq!(count_meta_crossings(&meta, &l).unwrap(), count_crossings(&inst, &l).unwrap());
    }
}

fn meta_optimum(meta: &MetaInstance) -> u64 {
    let (r, c) = (meta.left().inner_count(), meta.right().inner_count());
    (0u64..1 << (r + c))
        .map(|mask| {
            let bit = |k: usize| mask >> k & 1 == 1;
            let l = Layout::new((0..r).map(bit).collect(), (r..r + c).map(bit).collect());
            count_meta_crossings(meta, &l).unwrap()
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn minuncut_monotone_in_edges(mask in 0u8..8, extra in 0usize..3) {
        let all = [(0, 1), (1, 2), (0, 2)];
        let edges: Vec<_> = (0..3).filter(|k| mask >> k & 1 == 1).map(|k| all[k]).collect();
        prop_assume!(!edges.contains(&all[extra]));
        let mut more = edges.clone();
        more.push(all[extra]);
        let base = gen_minuncut(&MinUncutGraph::new(3, edges).unwrap(), 400, 20).unwrap();
        let grown = gen_minuncut(&MinUncutGraph::new(3, more).unwrap(), 400, 20).unwrap();
        prop_assert!(meta_optimum(&grown) >= meta_optimum(&base));
    }
}
