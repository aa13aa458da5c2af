use proptest::prelude::*;
use rigpack::oracle;
use rigpack::orientation::{eulerian_orient, hakimi_orient, smooth_orient, HakimiOutcome};
use rigpack::packing::matroid_union_pack;
use rigpack::sparsity::{is_sparse, rank_and_rigid, rigid_components};
use rigpack::{MultiGraph, SetFunc, VertexSet};

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 1..n), 0..=max_m).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().map(|(u, d)| (u, (u + d) % n)).collect();
            MultiGraph::new(n, &edges).unwrap()
        })
    })
}

fn pebble_func() -> impl Strategy<Value = SetFunc> {
    (1i64..=3).prop_flat_map(|k| (0..2 * k).prop_map(move |l| SetFunc::lmn(k, l)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sparsity_matches_the_subset_sweep(g in multigraph(6, 12), f in pebble_func()) {
        prop_assert_eq!(is_sparse(&g, &f).unwrap().is_sparse(), oracle::bf_sparse(&g, &f).unwrap().is_none());
    }

    #[test]
    fn rank_matches_branch_and_bound(g in multigraph(6, 12), f in pebble_func()) {
        let r = rank_and_rigid(&g, &f).unwrap();
        prop_assert_eq!(r.rank, oracle::bf_rank(&g, &f).unwrap());
        prop_assert!(oracle::bf_sparse(&g.edge_subgraph(&r.basis), &f).unwrap().is_none());
    }

    #[test]
    fn components_match_the_sweep(g in multigraph(6, 12), f in pebble_func()) {
        let r = rank_and_rigid(&g, &f).unwrap();
        let basis = g.edge_subgraph(&r.basis);
        prop_assert_eq!(rigid_components(&basis, &f).unwrap(), oracle::bf_rigid_components(&basis, &f).unwrap());
    }

    #[test]
    fn packing_meets_the_union_bound(g in multigraph(5, 8), fs in prop::collection::vec(pebble_func(), 1..=3)) {
        let pk = matroid_union_pack(&g, &fs, &[]).unwrap();
        pk.verify().unwrap();
        prop_assert_eq!(pk.covered(), oracle::bf_union_bound(&g, &fs).unwrap());
    }

    #[test]
    fn in_degree_feasibility_matches_the_sweep(g in multigraph(6, 12), picks in prop::collection::vec(0usize..6, 12)) {
        let n = g.n();
        let mut targets = vec![0i64; n];
        for (i, _) in g.edges().iter().enumerate() {
            targets[picks[i] % n] += 1;
        }
        let brute = oracle::bf_orientation_violation(&g, &targets).unwrap();
        match hakimi_orient(&g, &targets).unwrap() {
            HakimiOutcome::Oriented { orientation } => {
                prop_assert!(brute.is_none());
                let ins: Vec<i64> = orientation.in_degrees().iter().map(|&d| d as i64).collect();
                prop_assert_eq!(ins, targets);
            }
            HakimiOutcome::Infeasible { set, .. } => {
                prop_assert!(brute.is_some());
                prop_assert!(g.induced_count(set) as i64 > set.iter().map(|v| targets[v]).sum::<i64>());
            }
        }
    }

    #[test]
    fn smooth_orientations_halve_every_cut(g in multigraph(7, 14)) {
        let d = smooth_orient(&g, None).unwrap();
        prop_assert!(d.is_smooth());
        let doubled = MultiGraph::new(g.n(), &[g.edges(), g.edges()].concat()).unwrap();
        let e = eulerian_orient(&doubled).unwrap();
        for mask in 1..(1u64 << g.n()) - 1 {
            let a = VertexSet::from_mask(mask);
            prop_assert_eq!(2 * e.in_degree_of(a), doubled.boundary(a));
        }
    }
}
