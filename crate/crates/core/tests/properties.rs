use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rangekit::oracles;
use rangekit::range_tree::canonical_decomposition;
use rangekit::*;

fn invertible() -> impl Strategy<Value = AggOp> {
    prop_oneof![Just(AggOp::Sum), Just(AggOp::Xor), Just(AggOp::Product)]
}

fn any_op() -> impl Strategy<Value = AggOp> {
    prop_oneof![Just(AggOp::Sum), Just(AggOp::Xor), Just(AggOp::Product), Just(AggOp::Min), Just(AggOp::Max)]
}

fn small() -> impl Strategy<Value = i64> {
    -1000i64..1000
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fold_splits_over_concatenation(op in any_op(), xs in prop::collection::vec(-9i64..9, 0..8), ys in prop::collection::vec(-9i64..9, 0..8)) {
        let all: Vec<i64> = xs.iter().chain(&ys).copied().collect();
        let joined = op.combine(op.fold(xs.clone()).unwrap(), op.fold(ys.clone()).unwrap()).unwrap();
        prop_assert_eq!(op.fold(all).unwrap(), joined);
    }

    #[test]
    fn invert_undoes_combine(op in invertible(), a in small(), b in small().prop_filter("nonzero", |&b| b != 0)) {
        let c = op.combine(a, b).unwrap();
        prop_assert_eq!(op.invert(c, b).unwrap(), a);
    }

    #[test]
    fn combine_is_associative(op in any_op(), a in small(), b in small(), c in small()) {
        let left = op.combine(op.combine(a, b).unwrap(), c).unwrap();
        let right = op.combine(a, op.combine(b, c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn decomposition_covers_exactly(mut keys in prop::collection::vec(-50i64..50, 1..40), lo in -60i64..60, width in 0i64..60) {
        keys.sort_unstable();
        keys.dedup();
        let hi = lo + width;
        let mut covered: Vec<i64> = Vec::new();
        for (l, r) in canonical_decomposition(&keys, lo, hi) {
            covered.extend(keys.iter().filter(|&&k| l <= k && k <= r));
        }
        let want: Vec<i64> = keys.iter().copied().filter(|&k| lo <= k && k <= hi).collect();
        prop_assert_eq!(covered, want);
    }

    #[test]
    fn range_tree_matches_oracle(seed in any::<u64>(), d in 1usize..=3, op in any_op()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = gen::points(&mut rng, 30, d, 12, op);
        let tree = RangeTree::build(&PointSet::new(d, pts.clone()).unwrap(), op, false).unwrap();
        for _ in 0..20 {
            let b = gen::range_box(&mut rng, d, 12);
            prop_assert_eq!(tree.query(&b), oracles::naive_range_agg(&pts, op, &b));
        }
    }

    #[test]
    fn cascade_matches_range_tree(seed in any::<u64>(), op in any_op()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = gen::points(&mut rng, 40, 2, 15, op);
        let ps = PointSet::new(2, pts.clone()).unwrap();
        let fc = CascadeIndex2D::build(&ps, op).unwrap();
        for _ in 0..20 {
            let b = gen::range_box(&mut rng, 2, 15);
            let (w, cost) = fc.query_counted(&b).unwrap();
            prop_assert_eq!(Ok(w), oracles::naive_range_agg(&pts, op, &b));
            prop_assert_eq!(cost.binary_searches, 1);
        }
    }

    #[test]
    fn prefix_arrays_telescope(seed in any::<u64>(), op in invertible()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = gen::points(&mut rng, 24, 2, 10, op);
        let fc = CascadeIndex2D::build(&PointSet::new(2, pts).unwrap(), op).unwrap();
        for q in 0..fc.node_count() {
            let (w, pagg) = (fc.node_weights(q), fc.node_prefix(q));
            for u in 1..=w.len() {
                for v in u..=w.len() {
                    prop_assert_eq!(op.invert(pagg[v], pagg[u - 1]).unwrap(), op.fold(w[u - 1..v].iter().copied()).unwrap());
                }
            }
        }
    }

    #[test]
    fn prefix_builders_agree(seed in any::<u64>(), d in 1usize..=4, op in invertible()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..d).map(|_| rand::Rng::gen_range(&mut rng, 1..=6)).collect();
        let cube = DenseCube::new(dims.clone(), gen::cube_cells(&mut rng, &dims, op), op).unwrap();
        let naive = build_prefix_naive(&cube).unwrap();
        let sweep = build_prefix_sweep(&cube).unwrap();
        prop_assert_eq!(naive.cells(), sweep.cells());
        let np = cube.cells().len() as u64;
        prop_assert!(sweep.build_ops() <= d as u64 * np);
        prop_assert!(naive.build_ops() <= np << d);
    }

    #[test]
    fn stamps_are_linear_under_sum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = [4, 3, 5];
        let a = gen::stamps(&mut rng, &dims, 6, AggOp::Sum);
        let b = gen::stamps(&mut rng, &dims, 6, AggOp::Sum);
        let ab: Vec<RangeStamp> = a.iter().chain(&b).cloned().collect();
        let ra = batched_range_updates(&dims, &a, AggOp::Sum).unwrap();
        let rb = batched_range_updates(&dims, &b, AggOp::Sum).unwrap();
        let rab = batched_range_updates(&dims, &ab, AggOp::Sum).unwrap();
        let summed: Vec<i64> = ra.cube.cells().iter().zip(rb.cube.cells()).map(|(x, y)| x + y).collect();
        prop_assert_eq!(rab.cube.cells(), &summed[..]);
    }

    #[test]
    fn flattening_gives_subtree_intervals(seed in any::<u64>(), n in 1usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (root, edges, w) = gen::tree(&mut rng, n, 4, AggOp::Sum);
        let t = RootedTree::new(root, &edges, w).unwrap();
        let f = dfs_flatten(&t).unwrap();
        let mut nums = f.dfs_num.clone();
        nums.sort_unstable();
        prop_assert_eq!(nums, (1..=n).collect::<Vec<_>>());
        for v in 0..n {
            let mut sub = vec![v];
            let mut at = 0;
            while at < sub.len() {
                sub.extend_from_slice(t.children(sub[at]));
                at += 1;
            }
            prop_assert_eq!(f.dfs_max[v] - f.dfs_num[v] + 1, sub.len());
            prop_assert!(sub.iter().all(|&p| f.dfs_num[v] <= f.dfs_num[p] && f.dfs_num[p] <= f.dfs_max[v]));
            if let Some(p) = t.parent(v) {
                prop_assert_eq!(f.droot[v], f.droot[p] + t.edge_length(v));
            }
        }
    }

    #[test]
    fn subtree_queries_stay_within_cascade_bound(seed in any::<u64>(), n in 1usize..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (root, edges, w) = gen::tree(&mut rng, n, 6, AggOp::Sum);
        let ix = SubtreeIndex::build(&RootedTree::new(root, &edges, w.clone()).unwrap(), AggOp::Sum).unwrap();
        let bound = 8 * (n.next_power_of_two().trailing_zeros() as u64 + 1);
        for _ in 0..10 {
            let i = rand::Rng::gen_range(&mut rng, 0..n);
            let d1 = rand::Rng::gen_range(&mut rng, 0..20);
            let d2 = d1 + rand::Rng::gen_range(&mut rng, 0..30);
            let (got, cost) = ix.query_counted(i, d1, d2).unwrap();
            prop_assert_eq!(Ok(got), oracles::naive_subtree_query(n, &edges, &w, AggOp::Sum, i, d1, d2));
            prop_assert!(cost.visited_nodes <= bound, "{} visits over {}", cost.visited_nodes, bound);
        }
    }

    #[test]
    fn station_efforts_agree(seed in any::<u64>(), n in 1usize..=14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = gen::stations(&mut rng, n);
        let line = StationLine::new(&st).unwrap();
        prop_assert_eq!(line.efforts_segment_tree().unwrap(), line.efforts_difference().unwrap());
        prop_assert_eq!(line.min_collapse_effort().unwrap().0, oracles::exhaustive_min_effort(&st));
    }

    #[test]
    fn cascade_reach_matches_prev(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = gen::stations(&mut rng, n);
        let prev = StationLine::new(&st).unwrap().compute_prev().unwrap();
        for i in 1..=n {
            let mut artificial = vec![false; n];
            artificial[i - 1] = true;
            let down = oracles::cascade_simulate(&st, &artificial);
            for j in i + 1..=n {
                let reached = (i + 1..=j).all(|k| i < prev[k - 1]);
                prop_assert_eq!(down[j - 1], reached, "start {} station {}", i, j);
            }
        }
    }

    #[test]
    fn kth_invariants(seed in any::<u64>(), n in 1usize..=8, early in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seqs = gen::sequences(&mut rng, n, 40, 80);
        let total: usize = seqs.iter().map(Vec::len).sum();
        prop_assume!(total > 0);
        let k = rand::Rng::gen_range(&mut rng, 1..=total);
        let mut src = SequenceOracle::new(seqs.clone()).unwrap();
        let sel = kth_smallest(&mut src, k, KthOptions { early_exit: early }).unwrap();
        prop_assert_eq!(Ok(sel.value), oracles::merge_kth(&seqs, k));
        prop_assert_eq!(src.probe_log().len() as u64, src.probes());
        let maxb = seqs.iter().map(Vec::len).max().unwrap();
        let budget = 1 + n as u64 * (maxb.next_power_of_two().trailing_zeros() as u64 + 1);
        let (mut low, mut high) = (vec![1; n], seqs.iter().map(Vec::len).collect::<Vec<_>>());
        for r in &sel.rounds {
            prop_assert!(r.new_probes <= budget);
            prop_assert!(r.low.iter().zip(&low).all(|(a, b)| a >= b));
            prop_assert!(r.high.iter().zip(&high).all(|(a, b)| a <= b));
            low.clone_from(&r.low);
            high.clone_from(&r.high);
        }
        if let Some(snv) = sel.finish_snv {
            prop_assert!(snv >= k && snv - k < n);
        }
    }

    #[test]
    fn l1_median_is_optimal(xs in prop::collection::vec(-100i64..100, 1..30)) {
        let m = l1_median(&xs).unwrap();
        let cost = |p: i64| xs.iter().map(|x| (x - p).abs()).sum::<i64>();
        let best = xs.iter().map(|&p| cost(p)).min().unwrap();
        prop_assert_eq!(cost(m.location), best);
    }

    #[test]
    fn median_cube_matches_scan(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = [5usize, 4];
        let axes: Vec<Vec<i64>> = dims.iter().map(|&m| {
            let mut a: Vec<i64> = (0..m).map(|_| rand::Rng::gen_range(&mut rng, -20..20)).collect();
            a.sort_unstable();
            a
        }).collect();
        let weights: Vec<i64> = (0..20).map(|_| rand::Rng::gen_range(&mut rng, 0..6)).collect();
        let mut mc = MedianCube::new(axes.clone(), weights).unwrap();
        for _ in 0..10 {
            let cell: Vec<usize> = dims.iter().map(|&m| rand::Rng::gen_range(&mut rng, 1..=m)).collect();
            let before = mc.structure_updates();
            mc.point_update(&cell, rand::Rng::gen_range(&mut rng, 0..4)).unwrap();
            prop_assert!(mc.structure_updates() - before <= dims.len() as u64 + 1);
            let r = gen::cell_box(&mut rng, &dims);
            let before = mc.structure_updates();
            mc.range_update(&r, rand::Rng::gen_range(&mut rng, 0..2)).unwrap();
            let widths: usize = (0..dims.len()).map(|j| r.hi[j] - r.lo[j] + 1).sum();
            prop_assert!(mc.structure_updates() - before <= 1 + widths as u64);
            let b = gen::cell_box(&mut rng, &dims);
            let got = mc.query(&b).map(|m| (m.point, m.cost));
            prop_assert_eq!(got, oracles::naive_median_cube(&axes, mc.weights(), &b));
        }
        prop_assert!(mc.audit().unwrap());
    }

    #[test]
    fn editor_matches_flat_model(seed in any::<u64>(), n0 in 0usize..20, m in 0usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (init, ops) = gen::seq_script(&mut rng, n0, m);
        let (reads, last) = oracles::naive_seq_sim(&init, &ops).unwrap();
        let mut ed = IntervalList::new(init.clone());
        for op in &ops {
            ed.apply(op).unwrap();
            let total: usize = ed.entries().iter().map(|e| e.len()).sum();
            prop_assert_eq!(total, ed.len());
            prop_assert!(ed.entries().iter().all(|e| e.a <= e.b));
        }
        prop_assert_eq!(ed.materialize(), last.clone());
        let run = run_script(&init, &ops).unwrap();
        prop_assert_eq!(&run.answers, &reads);
        let z = GroupedEditor::default_group(n0, m);
        let grouped = grouped_run(&init, &ops, z).unwrap();
        prop_assert_eq!((grouped.answers, grouped.last), (reads, last));
    }

    #[test]
    fn entry_growth_is_bounded(seed in any::<u64>(), n0 in 0usize..30, m in 0usize..60, z in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (init, ops) = gen::seq_script(&mut rng, n0, m);
        let mut ed = IntervalList::new(init.clone());
        for op in &ops {
            let before = ed.entries().len();
            ed.apply(op).unwrap();
            let grown = ed.entries().len().saturating_sub(before);
            let cap = match op {
                SeqOp::Reverse(..) => 4,
                SeqOp::CutPaste(..) => 6,
                SeqOp::Insert(..) => 3,
                SeqOp::Query(_) => 0,
            };
            prop_assert!(grown <= cap, "{:?} grew the list by {}", op, grown);
        }
        let mut grouped = GroupedEditor::new(init, z);
        for op in &ops {
            let flushes = grouped.flushes();
            grouped.apply(op).unwrap();
            if grouped.flushes() > flushes {
                prop_assert!(grouped.list().entries().len() <= 1);
            }
        }
    }

    #[test]
    fn find_keeps_sequence(seed in any::<u64>(), n0 in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (init, ops) = gen::seq_script(&mut rng, n0, 10);
        let mut ed = IntervalList::new(init);
        for op in &ops {
            ed.apply(op).unwrap();
        }
        let before = ed.materialize();
        if !ed.is_empty() {
            let i = rand::Rng::gen_range(&mut rng, 0..=ed.len());
            let h = ed.find(i).unwrap();
            if i > 0 {
                prop_assert_eq!(ed.entries()[h - 1].len(), 1);
            }
        }
        prop_assert_eq!(ed.materialize(), before);
    }

    #[test]
    fn stack_matches_flat_model(seed in any::<u64>(), k in 1usize..=8, pushes in 0usize..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ops = gen::stack_script(&mut rng, pushes);
        let mut st = RotStack::new(k, pushes);
        for op in &ops {
            let before = st.steps();
            st.apply(op).unwrap();
            prop_assert!(st.steps() - before <= 2);
            let (up, down, _) = st.cursors();
            let cap = 2 * pushes.max(1) as i64;
            prop_assert!((0..cap).contains(&down) && (0..cap).contains(&up));
        }
        prop_assert_eq!(st.finish(), oracles::naive_stack(k, &ops));
    }

    #[test]
    fn sweep_matches_sorting(seed in any::<u64>(), n in 1usize..30, explicit in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = gen::planar_points(&mut rng, n, 20);
        let qs = gen::distance_queries(&mut rng, 15, n, 20);
        let opts = SweepOptions { explicit_delete: explicit, audits: Vec::new() };
        let rep = solve_offline_with(&pts, &qs, &opts).unwrap();
        for (j, q) in qs.iter().enumerate() {
            prop_assert_eq!(rep.answers[j].as_ref().map(|a| a.squared).map_err(Clone::clone), oracles::naive_kth_distance(&pts, j, q));
        }
        prop_assert!(rep.swaps <= (n * (n - 1) / 2) as u64);
    }
}
