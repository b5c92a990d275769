//! Golden fixtures plus seeded differential suites against the oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rangekit::oracles;
use rangekit::*;
use std::result::Result;

use crate::corpus;

type Suite = fn(&mut ChaCha8Rng) -> Result<usize, String>;

const SUITES: &[(&str, Suite)] = &[
    ("prefix-cube", prefix_cube),
    ("batch-update", batch_update),
    ("range-tree", range_tree),
    ("cascade", cascade),
    ("subtree", subtree),
    ("stations", stations),
    ("kth-seq", kth_seq),
    ("median", median),
    ("seqedit", seqedit),
    ("rotstack", rotstack),
    ("sweep-kth", sweep_kth),
];

/// Report lines and whether everything passed.
pub fn run(seed: u64) -> (Vec<String>, bool) {
    let mut lines = Vec::new();
    let mut ok = true;
    let cases = corpus::cases();
    for case in &cases {
        match crate::run_fixture(case) {
            Ok(out) if out == case.expected => lines.push(format!("fixture {} ok", case.name)),
            Ok(out) => {
                ok = false;
                lines.push(format!("fixture {} FAILED: expected {:?}, got {:?}", case.name, case.expected, out));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("fixture {} FAILED: {e:#}", case.name));
            }
        }
    }
    let results: Vec<Result<usize, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = SUITES
            .iter()
            .enumerate()
            .map(|(i, &(_, suite))| {
                s.spawn(move || suite(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64))))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panicked".into()))).collect()
    });
    for ((name, _), r) in SUITES.iter().zip(results) {
        match r {
            Ok(n) => lines.push(format!("suite {name} {n} cases ok")),
            Err(e) => {
                ok = false;
                lines.push(format!("suite {name} FAILED: {e}"));
            }
        }
    }
    lines.push(format!(
        "selftest seed {seed}: {} fixtures, {} suites, {}",
        cases.len(),
        SUITES.len(),
        if ok { "all passed" } else { "FAILURES" }
    ));
    (lines, ok)
}

fn check<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn prefix_cube(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let ops = [AggOp::Sum, AggOp::Xor, AggOp::Product];
    for case in 0..60 {
        let op = ops[case % 3];
        let d = rng.gen_range(1..=3);
        let dims: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=4)).collect();
        let cells = gen::cube_cells(rng, &dims, op);
        let cube = DenseCube::new(dims.clone(), cells.clone(), op).map_err(|e| e.to_string())?;
        let naive = build_prefix_naive(&cube).map_err(|e| e.to_string())?;
        let sweep = build_prefix_sweep(&cube).map_err(|e| e.to_string())?;
        check("builders", naive.cells(), sweep.cells())?;
        for _ in 0..10 {
            let b = gen::cell_box(rng, &dims);
            check("box", sweep.query(&b), oracles::naive_box_fold(&dims, &cells, op, &b))?;
        }
    }
    Ok(60)
}

fn batch_update(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for case in 0..40 {
        let op = if case % 2 == 0 { AggOp::Sum } else { AggOp::Xor };
        let dims = [4, 3, 4];
        let count = rng.gen_range(0..8);
        let stamps = gen::stamps(rng, &dims, count, op);
        let got = batched_range_updates(&dims, &stamps, op).map(|b| b.cube.cells().to_vec());
        check("stamps", got, oracles::naive_stamps(&dims, &stamps, op))?;
    }
    Ok(40)
}

fn range_tree(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for case in 0..30 {
        let op = AggOp::ALL[case % 5];
        let d = case % 3 + 1;
        let pts = gen::points(rng, 40, d, 10, op);
        let tree = RangeTree::build(&PointSet::new(d, pts.clone()).unwrap(), op, false).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let b = gen::range_box(rng, d, 10);
            check("query", tree.query(&b), oracles::naive_range_agg(&pts, op, &b))?;
        }
    }
    Ok(30)
}

fn cascade(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for case in 0..30 {
        let op = AggOp::ALL[case % 5];
        let pts = gen::points(rng, 50, 2, 12, op);
        let fc = CascadeIndex2D::build(&PointSet::new(2, pts.clone()).unwrap(), op).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let b = gen::range_box(rng, 2, 12);
            check("query", fc.query(&b), oracles::naive_range_agg(&pts, op, &b))?;
        }
    }
    Ok(30)
}

fn subtree(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let ops = [AggOp::Sum, AggOp::Min, AggOp::Xor];
    for case in 0..30 {
        let op = ops[case % 3];
        let n = rng.gen_range(1..=60);
        let (root, edges, w) = gen::tree(rng, n, 5, op);
        let t = RootedTree::new(root, &edges, w.clone()).map_err(|e| e.to_string())?;
        let ix = SubtreeIndex::build(&t, op).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let i = rng.gen_range(0..n);
            let d1 = rng.gen_range(0..8);
            let d2 = if rng.gen_bool(0.2) { UNBOUNDED } else { d1 + rng.gen_range(0..8) };
            check("query", ix.query(i, d1, d2), oracles::naive_subtree_query(n, &edges, &w, op, i, d1, d2))?;
        }
    }
    Ok(30)
}

fn stations(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for _ in 0..60 {
        let n = rng.gen_range(1..=10);
        let st = gen::stations(rng, n);
        let line = StationLine::new(&st).map_err(|e| e.to_string())?;
        check("efforts", line.efforts_segment_tree(), line.efforts_difference())?;
        check("effort", line.min_collapse_effort().map(|r| r.0), Ok(oracles::exhaustive_min_effort(&st)))?;
    }
    Ok(60)
}

fn kth_seq(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut done = 0;
    while done < 60 {
        let n = rng.gen_range(1..=6);
        let seqs = gen::sequences(rng, n, 30, 60);
        let total: usize = seqs.iter().map(Vec::len).sum();
        if total == 0 {
            continue;
        }
        let k = rng.gen_range(1..=total);
        let mut src = SequenceOracle::new(seqs.clone()).map_err(|e| e.to_string())?;
        let sel = kth_smallest(&mut src, k, KthOptions::default()).map(|s| s.value);
        check("kth", sel, oracles::merge_kth(&seqs, k))?;
        check("duplicate probes", src.probe_log().len() as u64, src.probes())?;
        done += 1;
    }
    Ok(done)
}

fn median(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for _ in 0..20 {
        let dims = [4usize, 4];
        let axes: Vec<Vec<i64>> = dims
            .iter()
            .map(|&m| {
                let mut a: Vec<i64> = (0..m).map(|_| rng.gen_range(-10..10)).collect();
                a.sort_unstable();
                a
            })
            .collect();
        let weights: Vec<Weight> = (0..16).map(|_| rng.gen_range(0..5)).collect();
        let mut mc = MedianCube::new(axes.clone(), weights).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let b = gen::cell_box(rng, &dims);
            mc.range_update(&b, rng.gen_range(0..3)).map_err(|e| e.to_string())?;
            let q = gen::cell_box(rng, &dims);
            let got = mc.query(&q).map(|m| (m.point, m.cost));
            check("median", got, oracles::naive_median_cube(&axes, mc.weights(), &q))?;
        }
    }
    Ok(20)
}

fn seqedit(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for _ in 0..100 {
        let n0 = rng.gen_range(0..=20);
        let m = rng.gen_range(0..=40);
        let (init, ops) = gen::seq_script(rng, n0, m);
        let want = oracles::naive_seq_sim(&init, &ops).map_err(|e| e.to_string())?;
        let plain = run_script(&init, &ops).map(|r| (r.answers, r.last));
        check("ungrouped", plain, Ok(want.clone()))?;
        let z = GroupedEditor::default_group(n0, m);
        check("grouped", grouped_run(&init, &ops, z).map(|r| (r.answers, r.last)), Ok(want))?;
    }
    Ok(100)
}

fn rotstack(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for _ in 0..100 {
        let k = rng.gen_range(1..=8);
        let pushes = rng.gen_range(0..=60);
        let ops = gen::stack_script(rng, pushes);
        check("stack", run_stack(k, pushes, &ops), Ok(oracles::naive_stack(k, &ops)))?;
    }
    Ok(100)
}

fn sweep_kth(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for _ in 0..20 {
        let n = rng.gen_range(1..=30);
        let pts = gen::planar_points(rng, n, 30);
        let qs = gen::distance_queries(rng, 20, n, 30);
        let rep = solve_offline(&pts, &qs).map_err(|e| e.to_string())?;
        for (j, q) in qs.iter().enumerate() {
            let got = rep.answers[j].as_ref().map(|a| a.squared).map_err(Clone::clone);
            check("distance", got, oracles::naive_kth_distance(&pts, j, q))?;
        }
    }
    Ok(20)
}
