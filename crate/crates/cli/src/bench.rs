//! Counter and timing table. Each config line is `case n d param ops`; the
//! counters are deterministic for a given seed, the timings are not.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rangekit::oracles;
use rangekit::*;

pub const HEADER: &str = "case,n,d,param,ops,fast_counter,oracle_counter,fast_ms,oracle_ms";

/// Largest accepted `n` and `ops`.
const MAX_N: usize = 1 << 16;
const MAX_OPS: usize = 1 << 14;
/// `d` is a dimension except for `kth-seq`, where it counts sequences.
const MAX_D: usize = 4;
const MAX_SEQS: usize = 64;

pub const DEFAULT_CONFIG: &str = "\
rtree-query 256 2 - 200
rtree-query 512 2 - 200
rtree-query 1024 2 - 200
rtree-query 2048 2 - 200
fc-query 1024 2 - 200
cube-query 4096 2 - 200
tree-subtree 1000 2 - 200
kth-seq 512 8 - 50
seqedit 1024 1 1 512
seqedit 1024 1 sqrt 512
seqedit 1024 1 m 512
rotstack 10000 1 4 10000
sweep-kth 200 2 - 200
";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub case: String,
    pub n: usize,
    pub d: usize,
    pub param: String,
    pub ops: usize,
    pub fast_counter: u64,
    pub oracle_counter: u64,
    pub fast_ms: f64,
    pub oracle_ms: f64,
}

impl Row {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3},{:.3}",
            self.case, self.n, self.d, self.param, self.ops, self.fast_counter, self.oracle_counter, self.fast_ms, self.oracle_ms
        )
    }
}

pub fn run(config: &str, seed: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (ln, line) in config.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let [case, n, d, param, ops] = f[..] else {
            bail!("config line {}: expected `case n d param ops`", ln + 1);
        };
        let n: usize = n.parse().with_context(|| format!("config line {}: bad n", ln + 1))?;
        let d: usize = d.parse().with_context(|| format!("config line {}: bad d", ln + 1))?;
        let ops: usize = ops.parse().with_context(|| format!("config line {}: bad ops", ln + 1))?;
        let max_d = if case == "kth-seq" { MAX_SEQS } else { MAX_D };
        if n == 0 || n > MAX_N || ops > MAX_OPS || d == 0 || d > max_d {
            bail!("config line {}: size cap exceeded (n <= {MAX_N}, ops <= {MAX_OPS}, 1 <= d <= {max_d})", ln + 1);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (ln as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let (fast_counter, oracle_counter, fast_ms, oracle_ms) = match case {
            "rtree-query" => rtree(&mut rng, n, d, ops)?,
            "fc-query" => fc(&mut rng, n, ops)?,
            "cube-query" => cube(&mut rng, n, d, ops)?,
            "tree-subtree" => subtree(&mut rng, n, ops)?,
            "kth-seq" => kth(&mut rng, n, d, ops)?,
            "seqedit" => seqedit(n, param, ops)?,
            "rotstack" => rotstack(&mut rng, n, param, ops)?,
            "sweep-kth" => sweep(&mut rng, n, ops)?,
            other => bail!("config line {}: unknown case `{other}`", ln + 1),
        };
        rows.push(Row {
            case: case.into(),
            n,
            d,
            param: param.into(),
            ops,
            fast_counter,
            oracle_counter,
            fast_ms,
            oracle_ms,
        });
    }
    Ok(rows)
}

type Measured = (u64, u64, f64, f64);

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, t.elapsed().as_secs_f64() * 1e3))
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Point> {
    let mut seen = std::collections::HashSet::new();
    let span = (n as i64) * 4;
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..span)).collect();
        if seen.insert(c.clone()) {
            pts.push(Point::new(c, rng.gen_range(-100..100)));
        }
    }
    pts
}

/// Visited nodes against points scanned.
fn rtree(rng: &mut ChaCha8Rng, n: usize, d: usize, ops: usize) -> Result<Measured> {
    let pts = distinct_points(rng, n, d);
    let boxes: Vec<RangeBox> = (0..ops).map(|_| gen::range_box(rng, d, n as i64 * 4)).collect();
    let tree = RangeTree::build(&PointSet::new(d, pts.clone())?, AggOp::Sum, false)?;
    let (fast, fms) = timed(|| {
        let mut v = 0;
        for b in &boxes {
            v += tree.query_counted(b)?.1;
        }
        Ok(v)
    })?;
    let (_, oms) = timed(|| boxes.iter().map(|b| Ok(oracles::naive_range_agg(&pts, AggOp::Sum, b)?)).collect::<Result<Vec<_>>>())?;
    Ok((fast, (n * ops) as u64, fms, oms))
}

/// Visited nodes plus binary searches against points scanned.
fn fc(rng: &mut ChaCha8Rng, n: usize, ops: usize) -> Result<Measured> {
    let pts = distinct_points(rng, n, 2);
    let boxes: Vec<RangeBox> = (0..ops).map(|_| gen::range_box(rng, 2, n as i64 * 4)).collect();
    let ix = CascadeIndex2D::build(&PointSet::new(2, pts.clone())?, AggOp::Max)?;
    let (fast, fms) = timed(|| {
        let mut v = 0;
        for b in &boxes {
            let (_, c) = ix.query_counted(b)?;
            v += c.visited_nodes + c.binary_searches;
        }
        Ok(v)
    })?;
    let (_, oms) = timed(|| boxes.iter().map(|b| Ok(oracles::naive_range_agg(&pts, AggOp::Max, b)?)).collect::<Result<Vec<_>>>())?;
    Ok((fast, (n * ops) as u64, fms, oms))
}

/// Corner reads against cells folded; `n` is the cell count, spread evenly.
fn cube(rng: &mut ChaCha8Rng, n: usize, d: usize, ops: usize) -> Result<Measured> {
    let side = ((n as f64).powf(1.0 / d as f64).round() as usize).max(1);
    let dims = vec![side; d];
    let cells = gen::cube_cells(rng, &dims, AggOp::Sum);
    let cube = DenseCube::new(dims.clone(), cells.clone(), AggOp::Sum)?;
    let boxes: Vec<CellBox> = (0..ops).map(|_| gen::cell_box(rng, &dims)).collect();
    let (pc, fms) = timed(|| {
        let pc = build_prefix_sweep(&cube)?;
        for b in &boxes {
            pc.query(b)?;
        }
        Ok(pc)
    })?;
    let volume: u64 = boxes.iter().map(|b| (0..d).map(|j| (b.hi[j] - b.lo[j] + 1) as u64).product::<u64>()).sum();
    let (_, oms) = timed(|| boxes.iter().map(|b| Ok(oracles::naive_box_fold(&dims, &cells, AggOp::Sum, b)?)).collect::<Result<Vec<_>>>())?;
    Ok((pc.build_ops() + ((ops as u64) << d), volume, fms, oms))
}

/// Visited nodes against vertices walked by the naive search.
fn subtree(rng: &mut ChaCha8Rng, n: usize, ops: usize) -> Result<Measured> {
    let (root, edges, w) = gen::tree(rng, n, 10, AggOp::Sum);
    let t = RootedTree::new(root, &edges, w.clone())?;
    let ix = SubtreeIndex::build(&t, AggOp::Sum)?;
    let qs: Vec<(usize, i64, i64)> = (0..ops)
        .map(|_| {
            let d1 = rng.gen_range(0..20);
            (rng.gen_range(0..n), d1, d1 + rng.gen_range(0..40))
        })
        .collect();
    let (fast, fms) = timed(|| {
        let mut v = 0;
        for &(i, d1, d2) in &qs {
            v += ix.query_counted(i, d1, d2)?.1.visited_nodes;
        }
        Ok(v)
    })?;
    let flat = ix.flat();
    let walked: u64 = qs.iter().map(|&(i, _, _)| (flat.dfs_max[i] - flat.dfs_num[i] + 1) as u64).sum();
    let (_, oms) = timed(|| {
        qs.iter()
            .map(|&(i, d1, d2)| Ok(oracles::naive_subtree_query(n, &edges, &w, AggOp::Sum, i, d1, d2)?))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok((fast, walked, fms, oms))
}

/// Probes against elements read by a full merge; `n` is the total length
/// split over `d` sequences.
fn kth(rng: &mut ChaCha8Rng, n: usize, seqs: usize, ops: usize) -> Result<Measured> {
    let per = n / seqs;
    let data = gen::sequences(rng, seqs, per, (n * 4) as i64);
    let total: usize = data.iter().map(Vec::len).sum();
    if total == 0 {
        return Ok((0, 0, 0.0, 0.0));
    }
    let ks: Vec<usize> = (0..ops).map(|_| rng.gen_range(1..=total)).collect();
    let (fast, fms) = timed(|| {
        let mut v = 0;
        for &k in &ks {
            let mut src = SequenceOracle::new(data.clone())?;
            kth_smallest(&mut src, k, KthOptions::default())?;
            v += src.probes();
        }
        Ok(v)
    })?;
    let (_, oms) = timed(|| ks.iter().map(|&k| Ok(oracles::merge_kth(&data, k)?)).collect::<Result<Vec<_>>>())?;
    Ok((fast, (total * ops) as u64, fms, oms))
}

/// Entries touched against elements shifted by the flat editor. Every row for
/// the same `n` and `ops` uses the same script, and answers are checked
/// against the flat editor.
fn seqedit(n: usize, param: &str, ops: usize) -> Result<Measured> {
    let mut script_rng = ChaCha8Rng::seed_from_u64((n as u64) << 20 | ops as u64);
    let (init, script) = gen::seq_script(&mut script_rng, n, ops);
    let z = match param {
        "m" => ops.max(1),
        "sqrt" => GroupedEditor::default_group(n, ops),
        "-" => 0,
        z => z.parse().context("seqedit param must be a group size, `sqrt`, `m` or `-`")?,
    };
    let (run, fms) = timed(|| Ok(if z == 0 { run_script(&init, &script)? } else { grouped_run(&init, &script, z)? }))?;
    let (want, oms) = timed(|| Ok(oracles::naive_seq_sim(&init, &script)?))?;
    if (run.answers.clone(), run.last.clone()) != want {
        bail!("seqedit answers differ from the flat editor");
    }
    let shifted: u64 = {
        let mut len = n as u64;
        script
            .iter()
            .map(|op| match op {
                SeqOp::Reverse(i, j) => (j - i + 1) as u64,
                SeqOp::CutPaste(i, j, p) => {
                    let k = (j - i + 1) as u64;
                    if *p < 0 {
                        len -= k;
                    }
                    len
                }
                SeqOp::Insert(_, vs) => {
                    len += vs.len() as u64;
                    len
                }
                SeqOp::Query(_) => 1,
            })
            .sum()
    };
    Ok((run.touched_per_op.iter().sum(), shifted, fms, oms))
}

/// Stack steps against elements moved by explicit reversal; `param` is the window.
fn rotstack(rng: &mut ChaCha8Rng, n: usize, param: &str, ops: usize) -> Result<Measured> {
    let k: usize = param.parse().context("rotstack param must be the window size")?;
    if k == 0 {
        bail!("rotstack window must be positive");
    }
    let pushes = n.min(ops);
    let script = gen::stack_script(rng, pushes);
    let (steps, fms) = timed(|| {
        let mut st = RotStack::new(k, pushes);
        for op in &script {
            st.apply(op)?;
        }
        let steps = st.steps();
        st.finish();
        Ok(steps)
    })?;
    let mut size = 0usize;
    let moved: u64 = script
        .iter()
        .map(|op| match op {
            StackOp::Push(_) => {
                size += 1;
                1
            }
            StackOp::Rotate => size.min(k) as u64,
        })
        .sum();
    let (_, oms) = timed(|| Ok(oracles::naive_stack(k, &script)))?;
    Ok((steps, moved, fms, oms))
}

/// Swap events against distances sorted by the per-query oracle.
fn sweep(rng: &mut ChaCha8Rng, n: usize, ops: usize) -> Result<Measured> {
    let pts = gen::planar_points(rng, n, 1_000_000);
    let qs = gen::distance_queries(rng, ops, n, 1_000_000);
    let (rep, fms) = timed(|| Ok(solve_offline(&pts, &qs)?))?;
    let (_, oms) = timed(|| {
        Ok(qs.iter().enumerate().map(|(j, q)| oracles::naive_kth_distance(&pts, j, q)).collect::<Vec<_>>())
    })?;
    Ok((rep.inserts + rep.swaps + rep.stale_events, (n * ops) as u64, fms, oms))
}
