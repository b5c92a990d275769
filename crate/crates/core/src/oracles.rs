//! Brute-force reference answers.
//!
//! Each function restates its problem directly, shares nothing with the fast
//! structures beyond the input types, and makes no attempt to be quick. Size
//! caps are noted where the cost is exponential.

use crate::agg::{AggOp, Weight};
use crate::error::{Error, Result};
use crate::prefix_cube::{CellBox, RangeStamp};
use crate::range_tree::{Point, RangeBox};
use crate::rotstack::StackOp;
use crate::seqedit::SeqOp;
use crate::sweep::{DistanceQuery, PlanarPoint};

/// Fold of the weights of the points inside `b`.
pub fn naive_range_agg(points: &[Point], op: AggOp, b: &RangeBox) -> Result<Weight> {
    op.fold(points.iter().filter(|p| b.contains(&p.coords)).map(|p| p.weight))
}

fn cells_of(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let np: usize = dims.iter().product();
    (0..np).map(move |mut off| {
        let mut c = vec![0; dims.len()];
        for j in (0..dims.len()).rev() {
            c[j] = off % dims[j] + 1;
            off /= dims[j];
        }
        c
    })
}

/// Fold of the row-major `cells` inside the 1-based box.
pub fn naive_box_fold(dims: &[usize], cells: &[Weight], op: AggOp, b: &CellBox) -> Result<Weight> {
    op.fold(cells_of(dims).zip(cells).filter(|(c, _)| b.contains(c)).map(|(_, &w)| w))
}

/// Applies every stamp to every cell it covers.
pub fn naive_stamps(dims: &[usize], stamps: &[RangeStamp], op: AggOp) -> Result<Vec<Weight>> {
    cells_of(dims)
        .map(|c| op.fold(stamps.iter().filter(|s| s.cells.contains(&c)).map(|s| s.u)))
        .collect()
}

/// Walks down from `i` accumulating distances; `edges` are `(parent, child, length)`.
pub fn naive_subtree_query(
    n: usize,
    edges: &[(usize, usize, i64)],
    weights: &[Weight],
    op: AggOp,
    i: usize,
    d1: i64,
    d2: i64,
) -> Result<Weight> {
    let mut kids = vec![Vec::new(); n];
    for &(p, c, len) in edges {
        kids[p].push((c, len));
    }
    let mut acc = op.neutral();
    let mut todo = vec![(i, 0i64)];
    while let Some((v, dist)) = todo.pop() {
        if d1 <= dist && dist <= d2 {
            acc = op.combine(acc, weights[v])?;
        }
        for &(c, len) in &kids[v] {
            todo.push((c, dist.saturating_add(len)));
        }
    }
    Ok(acc)
}

/// Left-to-right collapse propagation for stations `(s, r, c)`: a station goes
/// down if chosen, or if the run of collapsed stations right before it sends
/// more than `r - s`.
pub fn cascade_simulate(stations: &[(i64, i64, i64)], artificial: &[bool]) -> Vec<bool> {
    let mut down = vec![false; stations.len()];
    let mut inflow = 0i64;
    for (i, &(s, r, _)) in stations.iter().enumerate() {
        down[i] = artificial[i] || inflow > r - s;
        inflow = if down[i] { inflow + s } else { 0 };
    }
    down
}

/// Cheapest set of artificial collapses that takes down the last station,
/// by trying every subset. Capped at 22 stations.
pub fn exhaustive_min_effort(stations: &[(i64, i64, i64)]) -> i64 {
    let n = stations.len();
    assert!(n <= 22, "subset search is exponential");
    let mut best = i64::MAX;
    let mut chosen = vec![false; n];
    for mask in 1u32..1 << n {
        let mut cost = 0;
        for i in 0..n {
            chosen[i] = mask >> i & 1 == 1;
            if chosen[i] {
                cost += stations[i].2;
            }
        }
        if cost < best && cascade_simulate(stations, &chosen)[n - 1] {
            best = cost;
        }
    }
    best
}

/// Sorts everything and indexes.
pub fn merge_kth(seqs: &[Vec<Weight>], k: usize) -> Result<Weight> {
    let mut all: Vec<Weight> = seqs.concat();
    if k < 1 || k > all.len() {
        return Err(Error::RankOutOfRange { k, total: all.len() });
    }
    all.sort_unstable();
    Ok(all[k - 1])
}

/// Tries every grid point in the box; the cheapest wins, ties to the
/// lexicographically smallest coordinates.
pub fn naive_median_cube(axes: &[Vec<i64>], weights: &[Weight], b: &CellBox) -> Result<(Vec<i64>, Weight)> {
    let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
    let mass: Vec<(Vec<usize>, Weight)> =
        cells_of(&dims).zip(weights).filter(|(c, &w)| w > 0 && b.contains(c)).map(|(c, &w)| (c, w)).collect();
    if mass.is_empty() {
        return Err(Error::EmptyRange);
    }
    let mut best: Option<(Weight, Vec<i64>)> = None;
    for cand in cells_of(&dims).filter(|c| b.contains(c)) {
        let p: Vec<i64> = cand.iter().enumerate().map(|(j, &c)| axes[j][c - 1]).collect();
        let cost: Weight = mass
            .iter()
            .map(|(c, w)| w * c.iter().enumerate().map(|(j, &cj)| (axes[j][cj - 1] - p[j]).abs()).sum::<i64>())
            .sum();
        if best.as_ref().is_none_or(|(bc, bp)| (cost, &p) < (*bc, bp)) {
            best = Some((cost, p));
        }
    }
    let (cost, p) = best.unwrap();
    Ok((p, cost))
}

/// Flat-vector editor; returns the reads and the final sequence.
pub fn naive_seq_sim(initial: &[Weight], ops: &[SeqOp]) -> Result<(Vec<Weight>, Vec<Weight>)> {
    let mut s = initial.to_vec();
    let mut reads = Vec::new();
    for op in ops {
        let n = s.len();
        match op {
            SeqOp::Reverse(i, j) => {
                if *i < 1 || i > j || *j > n {
                    return Err(Error::PositionOutOfRange { pos: *i as i64, len: n });
                }
                s[i - 1..*j].reverse();
            }
            SeqOp::CutPaste(i, j, p) => {
                if *i < 1 || i > j || *j > n {
                    return Err(Error::PositionOutOfRange { pos: *i as i64, len: n });
                }
                let block: Vec<Weight> = s.drain(i - 1..*j).collect();
                if *p < -1 || *p > s.len() as i64 {
                    return Err(Error::BadPasteTarget { p: *p, len: s.len() });
                }
                if *p >= 0 {
                    let at = *p as usize;
                    s.splice(at..at, block);
                }
            }
            SeqOp::Insert(p, vs) => {
                if *p > n {
                    return Err(Error::PositionOutOfRange { pos: *p as i64, len: n });
                }
                s.splice(*p..*p, vs.iter().copied());
            }
            SeqOp::Query(i) => {
                if *i < 1 || *i > n {
                    return Err(Error::PositionOutOfRange { pos: *i as i64, len: n });
                }
                reads.push(s[i - 1]);
            }
        }
    }
    Ok((reads, s))
}

/// Plain stack where a rotation reverses the top `min(k, size)` elements.
pub fn naive_stack(k: usize, ops: &[StackOp]) -> Vec<Weight> {
    let mut s: Vec<Weight> = Vec::new();
    for op in ops {
        match op {
            StackOp::Push(x) => s.push(*x),
            StackOp::Rotate => {
                let from = s.len().saturating_sub(k);
                s[from..].reverse();
            }
        }
    }
    s
}

/// Sorts the squared distances of the eligible points and indexes.
pub fn naive_kth_distance(points: &[PlanarPoint], j: usize, q: &DistanceQuery) -> Result<i128> {
    let mut d: Vec<i128> = points
        .iter()
        .filter(|p| p.x <= q.xq)
        .map(|p| {
            let dx = p.x as i128 - q.xq as i128;
            dx * dx + p.y as i128 * p.y as i128
        })
        .collect();
    if q.k == 0 {
        return Err(Error::RankOutOfRange { k: 0, total: d.len() });
    }
    if q.k > d.len() {
        return Err(Error::RankExceedsEligible { query: j, k: q.k, eligible: d.len() });
    }
    d.sort_unstable();
    Ok(d[q.k - 1])
}
