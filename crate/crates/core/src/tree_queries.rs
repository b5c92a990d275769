//! Subtree and distance-band aggregates on a weighted rooted tree.
//!
//! Every vertex `i` becomes the plane point `(DFSnum(i), droot(i))`. The
//! vertices of `i`'s subtree at distance `d1..=d2` from `i` are then exactly the
//! points in `[DFSnum(i), DFSmax(i)] × [droot(i) + d1, droot(i) + d2]`, which a
//! [`CascadeIndex2D`] answers with one binary search.
//!
//! Vertex ids are 0-based; DFS numbers are 1-based.

use crate::agg::{AggOp, Weight};
use crate::cascade::{CascadeCost, CascadeIndex2D};
use crate::error::{Error, Result};
use crate::range_tree::{Point, PointSet, RangeBox};

/// Upper distance bound meaning "no limit".
pub const UNBOUNDED: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    length: Vec<i64>,
    weights: Vec<Weight>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// `edges` are `(parent, child, length)`; children keep their input order.
    pub fn new(root: usize, edges: &[(usize, usize, i64)], weights: Vec<Weight>) -> Result<Self> {
        let n = weights.len();
        if root >= n {
            return Err(Error::UnknownVertex(root));
        }
        let mut parent = vec![None; n];
        let mut length = vec![0; n];
        let mut children = vec![Vec::new(); n];
        for &(p, c, len) in edges {
            if p >= n {
                return Err(Error::UnknownVertex(p));
            }
            if c >= n {
                return Err(Error::UnknownVertex(c));
            }
            if len < 0 {
                return Err(Error::NegativeLength(c));
            }
            if parent[c].is_some() {
                return Err(Error::DuplicateParent(c));
            }
            parent[c] = Some(p);
            length[c] = len;
            children[p].push(c);
        }
        Ok(RootedTree { root, parent, length, weights, children })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Length of the edge from `v`'s parent to `v` (0 for the root).
    pub fn edge_length(&self, v: usize) -> i64 {
        self.length[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }
}

/// Preorder numbering with subtree intervals and root distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTree {
    pub dfs_num: Vec<usize>,
    pub dfs_max: Vec<usize>,
    pub droot: Vec<i64>,
}

/// Iterative preorder traversal, children in input order.
pub fn dfs_flatten(t: &RootedTree) -> Result<FlatTree> {
    let n = t.len();
    if t.parent[t.root].is_some() {
        return Err(Error::CycleDetected(t.root));
    }
    if let Some(v) = (0..n).find(|&v| v != t.root && t.parent[v].is_none()) {
        return Err(Error::DisconnectedVertex(v));
    }
    let mut dfs_num = vec![0usize; n];
    let mut dfs_max = vec![0usize; n];
    let mut droot = vec![0i64; n];
    let mut counter = 0;
    let mut stack: Vec<(usize, usize)> = vec![(t.root, 0)];
    counter += 1;
    dfs_num[t.root] = counter;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if let Some(&c) = t.children[v].get(*next) {
            *next += 1;
            counter += 1;
            dfs_num[c] = counter;
            droot[c] = droot[v].checked_add(t.length[c]).ok_or(Error::Overflow("root distance"))?;
            stack.push((c, 0));
        } else {
            dfs_max[v] = counter;
            stack.pop();
        }
    }
    if counter < n {
        // every vertex has a parent, so the unreached ones sit on a cycle
        let v = (0..n).find(|&v| dfs_num[v] == 0).unwrap();
        return Err(Error::CycleDetected(v));
    }
    Ok(FlatTree { dfs_num, dfs_max, droot })
}

#[derive(Debug)]
pub struct SubtreeIndex {
    flat: FlatTree,
    index: CascadeIndex2D,
}

impl SubtreeIndex {
    pub fn build(t: &RootedTree, op: AggOp) -> Result<Self> {
        let flat = dfs_flatten(t)?;
        let points = (0..t.len())
            .map(|v| Point::new(vec![flat.dfs_num[v] as i64, flat.droot[v]], t.weights[v]))
            .collect();
        let index = CascadeIndex2D::build(&PointSet::new(2, points)?, op)?;
        Ok(SubtreeIndex { flat, index })
    }

    pub fn flat(&self) -> &FlatTree {
        &self.flat
    }

    pub fn index(&self) -> &CascadeIndex2D {
        &self.index
    }

    /// Fold of the weights of vertices `p` in `i`'s subtree with
    /// `d1 <= dist(i, p) <= d2`. Pass [`UNBOUNDED`] as `d2` for no upper limit.
    pub fn query(&self, i: usize, d1: i64, d2: i64) -> Result<Weight> {
        self.query_counted(i, d1, d2).map(|(w, _)| w)
    }

    pub fn query_counted(&self, i: usize, d1: i64, d2: i64) -> Result<(Weight, CascadeCost)> {
        if i >= self.flat.dfs_num.len() {
            return Err(Error::UnknownVertex(i));
        }
        if d1 < 0 || d1 > d2 {
            return Err(Error::InvertedBox(1));
        }
        let base = self.flat.droot[i];
        let b = RangeBox {
            lo: vec![self.flat.dfs_num[i] as i64, base.saturating_add(d1)],
            hi: vec![self.flat.dfs_max[i] as i64, base.saturating_add(d2)],
        };
        self.index.query_counted(&b)
    }
}
