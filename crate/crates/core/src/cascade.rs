//! Static 2D range aggregation with fractional cascading.
//!
//! The outer tree is built over the distinct second coordinates. Each node keeps
//! the array `A(q)` of its points sorted by (first coordinate, id), prefix
//! aggregates for invertible ops, a constant-time range-extremum table for
//! MIN/MAX, and for every position of `A(q)` the matching lower-bound position
//! in each child's array. A query binary-searches the root array once and then
//! follows links downwards.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::agg::{AggOp, Weight};
use crate::error::{Error, Result};
use crate::range_tree::{PointSet, RangeBox};
use crate::rmq::Rmq;
use crate::shape::{slot_range, Shape};

#[derive(Debug)]
struct Node {
    xs: Vec<i64>,
    ids: Vec<u32>,
    weights: Vec<Weight>,
    /// `pagg[i]` folds the first `i` weights; empty for MIN/MAX.
    pagg: Vec<Weight>,
    rmq: Option<Rmq>,
    to_left: Vec<u32>,
    to_right: Vec<u32>,
}

#[derive(Debug)]
pub struct CascadeIndex2D {
    op: AggOp,
    shape: Shape,
    ys: Vec<i64>,
    nodes: Vec<Node>,
    visits: AtomicU64,
    searches: AtomicU64,
}

/// Per-query instrumentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CascadeCost {
    pub visited_nodes: u64,
    pub binary_searches: u64,
}

impl CascadeIndex2D {
    /// Builds the index. Points sharing both coordinates are merged by folding
    /// their weights. PRODUCT needs nonzero weights since answers divide prefixes.
    pub fn build(ps: &PointSet, op: AggOp) -> Result<Self> {
        if ps.dims() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: ps.dims() });
        }
        if ps.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut index: HashMap<(i64, i64), usize> = HashMap::new();
        let mut pts: Vec<(i64, i64, Weight)> = Vec::new();
        for p in ps.points() {
            if op == AggOp::Product && p.weight == 0 {
                return Err(Error::DivisionByZero);
            }
            let key = (p.coords[0], p.coords[1]);
            match index.get(&key) {
                Some(&i) => pts[i].2 = op.combine(pts[i].2, p.weight)?,
                None => {
                    index.insert(key, pts.len());
                    pts.push((key.0, key.1, p.weight));
                }
            }
        }
        let mut ys: Vec<i64> = pts.iter().map(|p| p.1).collect();
        ys.sort_unstable();
        ys.dedup();
        let shape = Shape::new(ys.len());

        let mut order: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
        // leaves first: each leaf holds the points of one y, sorted by (x, id)
        for (id, p) in pts.iter().enumerate() {
            let slot = ys.binary_search(&p.1).unwrap();
            let leaf = *shape.path(slot).last().unwrap();
            order[leaf].push(id as u32);
        }
        let key = |id: u32| (pts[id as usize].0, id);
        let mut to_left: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
        let mut to_right: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
        for node in (0..shape.len()).rev() {
            let s = shape.node(node);
            if s.is_leaf() {
                order[node].sort_unstable_by_key(|&id| key(id));
                continue;
            }
            let (l, r) = (&order[s.left as usize], &order[s.right as usize]);
            let mut merged = Vec::with_capacity(l.len() + r.len());
            let (mut i, mut j) = (0, 0);
            let (mut tl, mut tr) = (Vec::with_capacity(l.len() + r.len() + 1), Vec::with_capacity(l.len() + r.len() + 1));
            while i < l.len() || j < r.len() {
                tl.push(i as u32);
                tr.push(j as u32);
                if j == r.len() || (i < l.len() && key(l[i]) < key(r[j])) {
                    merged.push(l[i]);
                    i += 1;
                } else {
                    merged.push(r[j]);
                    j += 1;
                }
            }
            tl.push(l.len() as u32);
            tr.push(r.len() as u32);
            order[node] = merged;
            to_left[node] = tl;
            to_right[node] = tr;
        }

        let mut nodes = Vec::with_capacity(shape.len());
        for (node, ids) in order.into_iter().enumerate() {
            let xs: Vec<i64> = ids.iter().map(|&id| pts[id as usize].0).collect();
            let weights: Vec<Weight> = ids.iter().map(|&id| pts[id as usize].2).collect();
            let (pagg, rmq) = if op.is_invertible() {
                let mut pagg = Vec::with_capacity(weights.len() + 1);
                pagg.push(op.neutral());
                for &w in &weights {
                    pagg.push(op.combine(*pagg.last().unwrap(), w)?);
                }
                (pagg, None)
            } else {
                (Vec::new(), Some(Rmq::new(weights.clone(), op == AggOp::Max)))
            };
            nodes.push(Node {
                xs,
                ids,
                weights,
                pagg,
                rmq,
                to_left: std::mem::take(&mut to_left[node]),
                to_right: std::mem::take(&mut to_right[node]),
            });
        }
        Ok(CascadeIndex2D { op, shape, ys, nodes, visits: AtomicU64::new(0), searches: AtomicU64::new(0) })
    }

    pub fn op(&self) -> AggOp {
        self.op
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Point ids of `A(q)` in order. Ids number the distinct input points in
    /// order of first appearance.
    pub fn node_ids(&self, q: usize) -> &[u32] {
        &self.nodes[q].ids
    }

    pub fn node_weights(&self, q: usize) -> &[Weight] {
        &self.nodes[q].weights
    }

    /// Prefix aggregates of node `q`, `pagg(q, 0..=|A(q)|)`; empty for MIN/MAX.
    pub fn node_prefix(&self, q: usize) -> &[Weight] {
        &self.nodes[q].pagg
    }

    /// 1-based positions `(u, v)` of the root array covering first coordinates
    /// in `[lo, hi]`; `u = v + 1` when none does.
    pub fn root_window(&self, lo: i64, hi: i64) -> (usize, usize) {
        let xs = &self.nodes[0].xs;
        let a = xs.partition_point(|&x| x < lo);
        let b = xs.partition_point(|&x| x <= hi);
        (a + 1, b.max(a))
    }

    pub fn totals(&self) -> CascadeCost {
        CascadeCost {
            visited_nodes: self.visits.load(Ordering::Relaxed),
            binary_searches: self.searches.load(Ordering::Relaxed),
        }
    }

    pub fn query(&self, b: &RangeBox) -> Result<Weight> {
        self.query_counted(b).map(|(w, _)| w)
    }

    pub fn query_counted(&self, b: &RangeBox) -> Result<(Weight, CascadeCost)> {
        if b.dims() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: b.dims() });
        }
        let mut cost = CascadeCost::default();
        let mut acc = self.op.neutral();
        let root = &self.nodes[0];
        cost.binary_searches += 1;
        let a = root.xs.partition_point(|&x| x < b.lo[0]);
        let z = root.xs.partition_point(|&x| x <= b.hi[0]);
        if let Some((lo, hi)) = slot_range(&self.ys, b.lo[1], b.hi[1]) {
            self.descend(0, lo, hi, a, z, &mut acc, &mut cost)?;
        }
        self.visits.fetch_add(cost.visited_nodes, Ordering::Relaxed);
        self.searches.fetch_add(cost.binary_searches, Ordering::Relaxed);
        Ok((acc, cost))
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        node: usize,
        lo: usize,
        hi: usize,
        a: usize,
        z: usize,
        acc: &mut Weight,
        cost: &mut CascadeCost,
    ) -> Result<()> {
        cost.visited_nodes += 1;
        if a >= z {
            return Ok(());
        }
        let s = self.shape.node(node);
        let q = &self.nodes[node];
        if s.inside(lo, hi) {
            let part = match &q.rmq {
                Some(rmq) => rmq.query(a, z - 1),
                None => self.op.invert(q.pagg[z], q.pagg[a])?,
            };
            *acc = self.op.combine(*acc, part)?;
            return Ok(());
        }
        let (l, r) = (s.left as usize, s.right as usize);
        if self.shape.node(l).meets(lo, hi) {
            self.descend(l, lo, hi, q.to_left[a] as usize, q.to_left[z] as usize, acc, cost)?;
        }
        if self.shape.node(r).meets(lo, hi) {
            self.descend(r, lo, hi, q.to_right[a] as usize, q.to_right[z] as usize, acc, cost)?;
        }
        Ok(())
    }
}
