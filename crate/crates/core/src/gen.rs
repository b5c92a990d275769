//! Random instance generators shared by the tests, the self-test and the
//! benchmarks. Every generator draws only from the given RNG, so a seeded RNG
//! gives reproducible instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::agg::{AggOp, Weight};
use crate::prefix_cube::{CellBox, RangeStamp};
use crate::range_tree::{Point, RangeBox};
use crate::rotstack::StackOp;
use crate::seqedit::SeqOp;
use crate::sweep::{DistanceQuery, PlanarPoint};

/// Weight suited to `op`: small and nonzero for PRODUCT so folds stay in range.
pub fn weight<R: Rng>(rng: &mut R, op: AggOp) -> Weight {
    match op {
        AggOp::Product => *[-2, -1, -1, 1, 1, 1, 2].choose(rng).unwrap(),
        AggOp::Xor => rng.gen_range(0..1 << 20),
        _ => rng.gen_range(-1000..=1000),
    }
}

pub fn points<R: Rng>(rng: &mut R, n: usize, d: usize, coord_max: i64, op: AggOp) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new((0..d).map(|_| rng.gen_range(0..=coord_max)).collect(), weight(rng, op)))
        .collect()
}

/// Box whose bounds may fall slightly outside the coordinate range.
pub fn range_box<R: Rng>(rng: &mut R, d: usize, coord_max: i64) -> RangeBox {
    let (lo, hi) = (0..d)
        .map(|_| {
            let a = rng.gen_range(-1..=coord_max + 1);
            let b = rng.gen_range(-1..=coord_max + 1);
            (a.min(b), a.max(b))
        })
        .unzip();
    RangeBox::new(lo, hi).expect("ordered bounds")
}

/// Row-major cells. PRODUCT cubes are mostly `±1` with at most six cells of
/// magnitude 2, so every prefix product and every corner fold stays in range.
pub fn cube_cells<R: Rng>(rng: &mut R, dims: &[usize], op: AggOp) -> Vec<Weight> {
    let np: usize = dims.iter().product();
    if op != AggOp::Product {
        return (0..np).map(|_| weight(rng, op)).collect();
    }
    let mut cells: Vec<Weight> = (0..np).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    for _ in 0..rng.gen_range(0..=6) {
        let at = rng.gen_range(0..np);
        cells[at] *= 2;
        if cells[at].abs() > 2 {
            cells[at] /= 2;
        }
    }
    cells
}

pub fn cell_box<R: Rng>(rng: &mut R, dims: &[usize]) -> CellBox {
    let (lo, hi) = dims
        .iter()
        .map(|&m| {
            let a = rng.gen_range(1..=m);
            let b = rng.gen_range(1..=m);
            (a.min(b), a.max(b))
        })
        .unzip();
    CellBox::new(lo, hi)
}

pub fn stamps<R: Rng>(rng: &mut R, dims: &[usize], count: usize, op: AggOp) -> Vec<RangeStamp> {
    (0..count).map(|_| RangeStamp { cells: cell_box(rng, dims), u: weight(rng, op) }).collect()
}

/// A random tree on `n` vertices: root, `(parent, child, length)` edges in
/// shuffled order, and weights.
pub fn tree<R: Rng>(rng: &mut R, n: usize, max_len: i64, op: AggOp) -> (usize, Vec<(usize, usize, i64)>, Vec<Weight>) {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut edges: Vec<(usize, usize, i64)> =
        (1..n).map(|v| (label[rng.gen_range(0..v)], label[v], rng.gen_range(0..=max_len))).collect();
    edges.shuffle(rng);
    (label[0], edges, (0..n).map(|_| weight(rng, op)).collect())
}

/// Stations `(s, r, c)` with `r > s > 0`.
pub fn stations<R: Rng>(rng: &mut R, n: usize) -> Vec<(i64, i64, i64)> {
    (0..n)
        .map(|_| {
            let s = rng.gen_range(1..=10);
            (s, s + rng.gen_range(1..=25), rng.gen_range(0..=30))
        })
        .collect()
}

/// Strictly increasing sequences drawn from a small value range, so values
/// repeat across sequences.
pub fn sequences<R: Rng>(rng: &mut R, n: usize, max_len: usize, value_max: i64) -> Vec<Vec<Weight>> {
    (0..n)
        .map(|_| {
            let b = rng.gen_range(0..=max_len);
            let mut v: Vec<Weight> = rand::seq::index::sample(rng, value_max as usize + 1, b.min(value_max as usize + 1))
                .into_iter()
                .map(|x| x as Weight)
                .collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// A valid editing script over an initial sequence of length `n0`.
pub fn seq_script<R: Rng>(rng: &mut R, n0: usize, m: usize) -> (Vec<Weight>, Vec<SeqOp>) {
    let initial: Vec<Weight> = (0..n0 as Weight).map(|v| v * 10).collect();
    let mut len = n0;
    let mut fresh = 1_000_000;
    let mut ops = Vec::with_capacity(m);
    for _ in 0..m {
        let kind = if len == 0 { 2 } else { rng.gen_range(0..4) };
        let op = match kind {
            0 => {
                let i = rng.gen_range(1..=len);
                SeqOp::Reverse(i, rng.gen_range(i..=len))
            }
            1 => {
                let i = rng.gen_range(1..=len);
                let j = rng.gen_range(i..=len);
                let rest = len - (j - i + 1);
                let p = if rng.gen_bool(0.15) { -1 } else { rng.gen_range(0..=rest as i64) };
                SeqOp::CutPaste(i, j, p)
            }
            2 => {
                let k = rng.gen_range(1..=4);
                let vs: Vec<Weight> = (0..k).map(|t| fresh + t).collect();
                fresh += 10;
                SeqOp::Insert(rng.gen_range(0..=len), vs)
            }
            _ => SeqOp::Query(rng.gen_range(1..=len)),
        };
        len = match &op {
            SeqOp::CutPaste(i, j, -1) => len - (j - i + 1),
            SeqOp::Insert(_, vs) => len + vs.len(),
            _ => len,
        };
        ops.push(op);
    }
    (initial, ops)
}

/// `pushes` pushes interleaved with rotations.
pub fn stack_script<R: Rng>(rng: &mut R, pushes: usize) -> Vec<StackOp> {
    let mut ops = Vec::with_capacity(pushes * 2);
    for x in 0..pushes {
        while rng.gen_bool(0.4) {
            ops.push(StackOp::Rotate);
        }
        ops.push(StackOp::Push(x as Weight));
    }
    if rng.gen_bool(0.5) {
        ops.push(StackOp::Rotate);
    }
    ops
}

pub fn planar_points<R: Rng>(rng: &mut R, n: usize, coord_max: i64) -> Vec<PlanarPoint> {
    (0..n).map(|_| PlanarPoint { x: rng.gen_range(-coord_max..=coord_max), y: rng.gen_range(0..=coord_max) }).collect()
}

/// Queries whose ranks are mostly, but not always, attainable.
pub fn distance_queries<R: Rng>(rng: &mut R, count: usize, n: usize, coord_max: i64) -> Vec<DistanceQuery> {
    (0..count)
        .map(|_| DistanceQuery { xq: rng.gen_range(-coord_max..=coord_max), k: rng.gen_range(1..=n.max(1) * 3 / 4 + 1) })
        .collect()
}
