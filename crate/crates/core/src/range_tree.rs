//! Semi-dynamic d-dimensional range tree.
//!
//! The outermost tree is built over the distinct coordinates of the last
//! dimension; every node owns a (d-1)-dimensional tree over the points whose
//! coordinate falls under it. The innermost level is a segment tree over the
//! points ordered by their first coordinate (ties by point id), carrying an
//! aggregate `qagg` and a pending additive update `uagg` per node.
//!
//! Points are fixed at build time. Weights change through [`RangeTree::point_update`]
//! (assigning the op's neutral element is a logical deletion) and, when enabled,
//! through [`RangeTree::range_update`], which adds `u` to every original point in
//! a box.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::agg::{AggOp, Weight};
use crate::error::{Error, Result};
use crate::shape::{slot_range, Shape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<i64>,
    pub weight: Weight,
}

impl Point {
    pub fn new(coords: Vec<i64>, weight: Weight) -> Self {
        Point { coords, weight }
    }
}

/// Points of a fixed dimension `d >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    d: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(d: usize, points: Vec<Point>) -> Result<Self> {
        if d == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if let Some(p) = points.iter().find(|p| p.coords.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: p.coords.len() });
        }
        Ok(PointSet { d, points })
    }

    pub fn dims(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Closed box `[lo(j), hi(j)]` per dimension, in coordinate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl RangeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if let Some(j) = (0..lo.len()).find(|&j| lo[j] > hi[j]) {
            return Err(Error::InvertedBox(j));
        }
        Ok(RangeBox { lo, hi })
    }

    /// Box covering every representable coordinate.
    pub fn everything(d: usize) -> Self {
        RangeBox { lo: vec![i64::MIN; d], hi: vec![i64::MAX; d] }
    }

    pub fn dims(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, coords: &[i64]) -> bool {
        coords.iter().enumerate().all(|(j, &c)| self.lo[j] <= c && c <= self.hi[j])
    }
}

#[derive(Debug, Clone)]
struct StoredPoint {
    coords: Vec<i64>,
    mult: i64,
}

/// Instrumentation counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub allocated_nodes: u64,
    pub visited_nodes: u64,
}

#[derive(Debug)]
pub struct RangeTree {
    d: usize,
    op: AggOp,
    range_updates: bool,
    points: Vec<StoredPoint>,
    lookup: HashMap<Vec<i64>, u32>,
    root: Level,
    allocated: u64,
    visits: AtomicU64,
}

impl RangeTree {
    /// Builds the tree; points with identical coordinates are merged into one
    /// stored point carrying the fold of their weights and their multiplicity.
    pub fn build(ps: &PointSet, op: AggOp, range_updates: bool) -> Result<Self> {
        if ps.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let d = ps.dims();
        if range_updates {
            check_update_support(op, d)?;
        }
        let mut lookup: HashMap<Vec<i64>, u32> = HashMap::new();
        let mut points: Vec<StoredPoint> = Vec::new();
        let mut weights: Vec<Weight> = Vec::new();
        for p in ps.points() {
            match lookup.get(&p.coords) {
                Some(&id) => {
                    let id = id as usize;
                    weights[id] = op.combine(weights[id], p.weight)?;
                    points[id].mult += 1;
                }
                None => {
                    lookup.insert(p.coords.clone(), points.len() as u32);
                    points.push(StoredPoint { coords: p.coords.clone(), mult: 1 });
                    weights.push(p.weight);
                }
            }
        }
        let ids: Vec<u32> = (0..points.len() as u32).collect();
        let mut allocated = 0;
        let root = Level::build(op, &points, &weights, ids, d, range_updates, &mut allocated)?;
        Ok(RangeTree { d, op, range_updates, points, lookup, root, allocated, visits: AtomicU64::new(0) })
    }

    pub fn dims(&self) -> usize {
        self.d
    }

    pub fn op(&self) -> AggOp {
        self.op
    }

    /// Number of distinct stored points.
    pub fn stored_points(&self) -> usize {
        self.points.len()
    }

    /// How many input points were merged into the stored point at `coords`.
    pub fn multiplicity(&self, coords: &[i64]) -> Option<i64> {
        self.lookup.get(coords).map(|&id| self.points[id as usize].mult)
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats { allocated_nodes: self.allocated, visited_nodes: self.visits.load(Ordering::Relaxed) }
    }

    pub fn reset_visits(&self) {
        self.visits.store(0, Ordering::Relaxed);
    }

    fn check_box(&self, b: &RangeBox) -> Result<()> {
        if b.dims() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: b.dims() });
        }
        Ok(())
    }

    /// Fold of the weights of all stored points inside `b`.
    pub fn query(&self, b: &RangeBox) -> Result<Weight> {
        self.query_counted(b).map(|(w, _)| w)
    }

    /// Like [`RangeTree::query`], also returning the number of nodes visited.
    pub fn query_counted(&self, b: &RangeBox) -> Result<(Weight, u64)> {
        self.check_box(b)?;
        let mut visits = 0;
        let w = self.root.query(self.op, b, self.d, &mut visits)?;
        self.visits.fetch_add(visits, Ordering::Relaxed);
        Ok((w, visits))
    }

    /// Assigns `weight` to the stored point at `coords`.
    pub fn point_update(&mut self, coords: &[i64], weight: Weight) -> Result<()> {
        if coords.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: coords.len() });
        }
        let id = *self.lookup.get(coords).ok_or(Error::UnknownPoint)?;
        let mut visits = 0;
        self.root.set(self.op, &self.points, id, weight, &mut visits)?;
        self.visits.fetch_add(visits, Ordering::Relaxed);
        Ok(())
    }

    /// Logical deletion: the point keeps its slot but stops influencing queries.
    pub fn delete(&mut self, coords: &[i64]) -> Result<()> {
        self.point_update(coords, self.op.neutral())
    }

    /// Adds `u` to the weight of every original point inside `b`.
    pub fn range_update(&mut self, b: &RangeBox, u: Weight) -> Result<u64> {
        if !self.range_updates {
            return Err(Error::RangeUpdatesDisabled);
        }
        check_update_support(self.op, self.d)?;
        self.check_box(b)?;
        let mut visits = 0;
        self.root.range_update(self.op, &self.points, b, self.d, u, &mut visits)?;
        self.visits.fetch_add(visits, Ordering::Relaxed);
        Ok(visits)
    }

    /// Canonical decomposition of `[lo, hi]` in the outermost dimension's tree,
    /// as `(left(q), right(q))` coordinate pairs.
    pub fn canonical_decomposition(&self, lo: i64, hi: i64) -> Vec<(i64, i64)> {
        let (shape, keys) = match &self.root {
            Level::Line(t) => (&t.shape, &t.keys),
            Level::Nest(t) => (&t.shape, &t.keys),
        };
        decompose_keys(shape, keys, lo, hi)
    }
}

fn check_update_support(op: AggOp, d: usize) -> Result<()> {
    match op {
        AggOp::Sum => Ok(()),
        AggOp::Min | AggOp::Max if d == 1 => Ok(()),
        _ => Err(Error::UnsupportedCombination(op.name(), d)),
    }
}

/// Canonical decomposition of `[lo, hi]` over a balanced tree whose leaves are
/// the sorted, distinct `keys`. Each entry is `(left(q), right(q))`.
pub fn canonical_decomposition(keys: &[i64], lo: i64, hi: i64) -> Vec<(i64, i64)> {
    if keys.is_empty() {
        return Vec::new();
    }
    let mut sorted = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    decompose_keys(&Shape::new(sorted.len()), &sorted, lo, hi)
}

fn decompose_keys(shape: &Shape, keys: &[i64], lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let Some((a, b)) = slot_range(keys, lo, hi) else {
        return Vec::new();
    };
    let mut v = 0;
    shape
        .canonical(a, b, &mut v)
        .into_iter()
        .map(|id| {
            let s = shape.node(id);
            (keys[s.lo as usize], keys[s.hi as usize])
        })
        .collect()
}

#[derive(Debug)]
enum Level {
    Line(LineTree),
    Nest(NestTree),
}

impl Level {
    fn build(
        op: AggOp,
        pts: &[StoredPoint],
        weights: &[Weight],
        ids: Vec<u32>,
        dims: usize,
        range_updates: bool,
        allocated: &mut u64,
    ) -> Result<Level> {
        if dims == 1 {
            Ok(Level::Line(LineTree::build(op, pts, weights, ids, allocated)?))
        } else {
            Ok(Level::Nest(NestTree::build(op, pts, weights, ids, dims, range_updates, allocated)?))
        }
    }

    fn query(&self, op: AggOp, b: &RangeBox, dims: usize, visits: &mut u64) -> Result<Weight> {
        match self {
            Level::Line(t) => t.query(op, b.lo[0], b.hi[0], visits),
            Level::Nest(t) => t.query(op, b, dims, visits),
        }
    }

    fn set(&mut self, op: AggOp, pts: &[StoredPoint], id: u32, w: Weight, visits: &mut u64) -> Result<()> {
        match self {
            Level::Line(t) => t.set(op, pts, id, w, visits),
            Level::Nest(t) => t.set(op, pts, id, w, visits),
        }
    }

    fn range_update(
        &mut self,
        op: AggOp,
        pts: &[StoredPoint],
        b: &RangeBox,
        dims: usize,
        u: Weight,
        visits: &mut u64,
    ) -> Result<()> {
        match self {
            Level::Line(t) => match slot_range(&t.keys, b.lo[0], b.hi[0]) {
                Some((a, z)) => t.update(op, 0, a, z, u, visits),
                None => Ok(()),
            },
            Level::Nest(t) => t.range_update(op, pts, b, dims, u, visits),
        }
    }

    fn add_point(&mut self, op: AggOp, pts: &[StoredPoint], id: u32, u: Weight, visits: &mut u64) -> Result<()> {
        match self {
            Level::Line(t) => {
                let slot = t.slot_of(pts, id);
                t.update(op, 0, slot, slot, u, visits)
            }
            Level::Nest(t) => t.add_point(op, pts, id, u, visits),
        }
    }
}

/// Innermost level: one leaf per stored point, ordered by (first coordinate, id).
#[derive(Debug)]
struct LineTree {
    shape: Shape,
    keys: Vec<i64>,
    ids: Vec<u32>,
    qagg: Vec<Weight>,
    uagg: Vec<Weight>,
    count: Vec<i64>,
}

impl LineTree {
    fn build(op: AggOp, pts: &[StoredPoint], weights: &[Weight], mut ids: Vec<u32>, allocated: &mut u64) -> Result<Self> {
        ids.sort_unstable_by_key(|&id| (pts[id as usize].coords[0], id));
        let keys: Vec<i64> = ids.iter().map(|&id| pts[id as usize].coords[0]).collect();
        let shape = Shape::new(ids.len());
        let n = shape.len();
        *allocated += n as u64;
        let mut qagg = vec![op.neutral(); n];
        let mut count = vec![0i64; n];
        for node in (0..n).rev() {
            let s = shape.node(node);
            if s.is_leaf() {
                let id = ids[s.lo as usize] as usize;
                qagg[node] = weights[id];
                count[node] = pts[id].mult;
            } else {
                let (l, r) = (s.left as usize, s.right as usize);
                qagg[node] = op.combine(qagg[l], qagg[r])?;
                count[node] = count[l] + count[r];
            }
        }
        Ok(LineTree { shape, keys, ids, qagg, uagg: vec![0; n], count })
    }

    fn slot_of(&self, pts: &[StoredPoint], id: u32) -> usize {
        let key = (pts[id as usize].coords[0], id);
        self.keys
            .iter()
            .zip(&self.ids)
            .collect::<Vec<_>>()
            .binary_search_by(|&(&k, &i)| (k, i).cmp(&key))
            .expect("point is stored in this level")
    }

    /// Value of `node`'s aggregate once `pending` from ancestors is applied.
    fn apply(&self, op: AggOp, node: usize, value: Weight, pending: Weight) -> Result<Weight> {
        if pending == 0 {
            return Ok(value);
        }
        match op {
            AggOp::Sum => pending
                .checked_mul(self.count[node])
                .and_then(|x| x.checked_add(value))
                .ok_or(Error::Overflow("range update")),
            AggOp::Min | AggOp::Max => op.shift_extreme(value, pending),
            _ => unreachable!("no pending updates for {op}"),
        }
    }

    fn query(&self, op: AggOp, lo: i64, hi: i64, visits: &mut u64) -> Result<Weight> {
        match slot_range(&self.keys, lo, hi) {
            Some((a, b)) => self.query_node(op, 0, a, b, 0, visits),
            None => Ok(op.neutral()),
        }
    }

    fn query_node(&self, op: AggOp, node: usize, a: usize, b: usize, pending: Weight, visits: &mut u64) -> Result<Weight> {
        *visits += 1;
        let s = self.shape.node(node);
        if s.inside(a, b) {
            return self.apply(op, node, self.qagg[node], pending);
        }
        let pending = pending.checked_add(self.uagg[node]).ok_or(Error::Overflow("range update"))?;
        let mut acc = op.neutral();
        for child in [s.left as usize, s.right as usize] {
            if self.shape.node(child).meets(a, b) {
                acc = op.combine(acc, self.query_node(op, child, a, b, pending, visits)?)?;
            }
        }
        Ok(acc)
    }

    fn push(&mut self, op: AggOp, node: usize) -> Result<()> {
        let u = self.uagg[node];
        if u == 0 {
            return Ok(());
        }
        let s = self.shape.node(node);
        for child in [s.left as usize, s.right as usize] {
            self.uagg[child] = self.uagg[child].checked_add(u).ok_or(Error::Overflow("range update"))?;
            self.qagg[child] = self.apply(op, child, self.qagg[child], u)?;
        }
        self.uagg[node] = 0;
        Ok(())
    }

    fn set(&mut self, op: AggOp, pts: &[StoredPoint], id: u32, w: Weight, visits: &mut u64) -> Result<()> {
        let slot = self.slot_of(pts, id);
        let path = self.shape.path(slot);
        *visits += path.len() as u64;
        for &node in &path[..path.len() - 1] {
            self.push(op, node)?;
        }
        let leaf = *path.last().unwrap();
        self.qagg[leaf] = w;
        self.uagg[leaf] = 0;
        for &node in path[..path.len() - 1].iter().rev() {
            let s = self.shape.node(node);
            self.qagg[node] = op.combine(self.qagg[s.left as usize], self.qagg[s.right as usize])?;
        }
        Ok(())
    }

    fn update(&mut self, op: AggOp, node: usize, a: usize, b: usize, u: Weight, visits: &mut u64) -> Result<()> {
        *visits += 1;
        let s = self.shape.node(node);
        if s.inside(a, b) {
            self.uagg[node] = self.uagg[node].checked_add(u).ok_or(Error::Overflow("range update"))?;
            self.qagg[node] = self.apply(op, node, self.qagg[node], u)?;
            return Ok(());
        }
        for child in [s.left as usize, s.right as usize] {
            if self.shape.node(child).meets(a, b) {
                self.update(op, child, a, b, u, visits)?;
            }
        }
        let merged = op.combine(self.qagg[s.left as usize], self.qagg[s.right as usize])?;
        self.qagg[node] = self.apply(op, node, merged, self.uagg[node])?;
        Ok(())
    }
}

/// Level over dimension `dim >= 1`: a tree over its distinct coordinates whose
/// nodes each own a tree over the lower dimensions.
#[derive(Debug)]
struct NestTree {
    dim: usize,
    shape: Shape,
    keys: Vec<i64>,
    inner: Vec<Level>,
    /// Point ids under each node; kept only when range updates are enabled.
    members: Vec<Vec<u32>>,
}

impl NestTree {
    fn build(
        op: AggOp,
        pts: &[StoredPoint],
        weights: &[Weight],
        ids: Vec<u32>,
        dims: usize,
        range_updates: bool,
        allocated: &mut u64,
    ) -> Result<Self> {
        let dim = dims - 1;
        let mut keys: Vec<i64> = ids.iter().map(|&id| pts[id as usize].coords[dim]).collect();
        keys.sort_unstable();
        keys.dedup();
        let shape = Shape::new(keys.len());
        *allocated += shape.len() as u64;
        let mut per_node: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
        per_node[0] = ids;
        // preorder: a parent's list is complete before its children are filled
        for node in 0..shape.len() {
            let s = shape.node(node);
            if !s.is_leaf() {
                let split = keys[shape.node(s.left as usize).hi as usize];
                let (l, r): (Vec<u32>, Vec<u32>) =
                    per_node[node].iter().partition(|&&id| pts[id as usize].coords[dim] <= split);
                per_node[s.left as usize] = l;
                per_node[s.right as usize] = r;
            }
        }
        let inner = per_node
            .iter()
            .map(|ids| Level::build(op, pts, weights, ids.clone(), dims - 1, range_updates, allocated))
            .collect::<Result<Vec<_>>>()?;
        let members = if range_updates { per_node } else { Vec::new() };
        Ok(NestTree { dim, shape, keys, inner, members })
    }

    fn query(&self, op: AggOp, b: &RangeBox, dims: usize, visits: &mut u64) -> Result<Weight> {
        let Some((a, z)) = slot_range(&self.keys, b.lo[self.dim], b.hi[self.dim]) else {
            return Ok(op.neutral());
        };
        let mut acc = op.neutral();
        for node in self.shape.canonical(a, z, visits) {
            acc = op.combine(acc, self.inner[node].query(op, b, dims - 1, visits)?)?;
        }
        Ok(acc)
    }

    fn set(&mut self, op: AggOp, pts: &[StoredPoint], id: u32, w: Weight, visits: &mut u64) -> Result<()> {
        let slot = self.slot_of(pts, id);
        for node in self.shape.path(slot) {
            *visits += 1;
            self.inner[node].set(op, pts, id, w, visits)?;
        }
        Ok(())
    }

    fn add_point(&mut self, op: AggOp, pts: &[StoredPoint], id: u32, u: Weight, visits: &mut u64) -> Result<()> {
        let slot = self.slot_of(pts, id);
        for node in self.shape.path(slot) {
            *visits += 1;
            self.inner[node].add_point(op, pts, id, u, visits)?;
        }
        Ok(())
    }

    fn slot_of(&self, pts: &[StoredPoint], id: u32) -> usize {
        self.keys
            .binary_search(&pts[id as usize].coords[self.dim])
            .expect("point is stored in this level")
    }

    /// Every node meeting the box's range in this dimension is brought up to
    /// date: fully covered nodes forward the lower-dimensional box to their
    /// inner tree, partially covered nodes add `u` point by point.
    fn range_update(
        &mut self,
        op: AggOp,
        pts: &[StoredPoint],
        b: &RangeBox,
        dims: usize,
        u: Weight,
        visits: &mut u64,
    ) -> Result<()> {
        let Some((a, z)) = slot_range(&self.keys, b.lo[self.dim], b.hi[self.dim]) else {
            return Ok(());
        };
        let mut stack = vec![0usize];
        while let Some(node) = stack.pop() {
            *visits += 1;
            let s = self.shape.node(node);
            if s.inside(a, z) {
                self.inner[node].range_update(op, pts, b, dims - 1, u, visits)?;
            } else {
                for i in 0..self.members[node].len() {
                    let id = self.members[node][i];
                    if b.contains(&pts[id as usize].coords[..dims]) {
                        self.inner[node].add_point(op, pts, id, u, visits)?;
                    }
                }
            }
            if !s.is_leaf() {
                for child in [s.left as usize, s.right as usize] {
                    if self.shape.node(child).meets(a, z) {
                        stack.push(child);
                    }
                }
            }
        }
        Ok(())
    }
}
