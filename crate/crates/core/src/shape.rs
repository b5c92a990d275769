//! Balanced binary skeleton over `leaves` ordered slots.
//!
//! Nodes are laid out in preorder; each node covers a contiguous, inclusive
//! range of leaf slots and splits it at the midpoint. Every tree-shaped
//! structure in the crate (range trees, the cascade index, the dense sum tree,
//! the station segment tree) hangs its per-node payload off this layout.

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Span {
    pub lo: u32,
    pub hi: u32,
    pub left: u32,
    pub right: u32,
}

impl Span {
    #[inline]
    pub fn is_leaf(&self) -> bool {
        self.left == NONE
    }

    #[inline]
    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    #[inline]
    pub fn inside(&self, lo: usize, hi: usize) -> bool {
        lo <= self.lo as usize && self.hi as usize <= hi
    }

    #[inline]
    pub fn meets(&self, lo: usize, hi: usize) -> bool {
        self.lo as usize <= hi && lo <= self.hi as usize
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Shape {
    nodes: Vec<Span>,
}

impl Shape {
    pub fn new(leaves: usize) -> Self {
        assert!(leaves >= 1, "shape needs at least one leaf");
        let mut nodes = Vec::with_capacity(2 * leaves - 1);
        build(&mut nodes, 0, leaves as u32 - 1);
        Shape { nodes }
    }

    #[inline]
    pub fn node(&self, id: usize) -> Span {
        self.nodes[id]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaves(&self) -> usize {
        self.nodes[0].len()
    }

    /// Canonical nodes covering leaf slots `lo..=hi`, left to right.
    /// `visits` counts every node touched that intersects the range.
    pub fn canonical(&self, lo: usize, hi: usize, visits: &mut u64) -> Vec<usize> {
        let mut out = Vec::new();
        if lo <= hi && hi < self.leaves() {
            self.collect(0, lo, hi, &mut out, visits);
        }
        out
    }

    fn collect(&self, id: usize, lo: usize, hi: usize, out: &mut Vec<usize>, visits: &mut u64) {
        *visits += 1;
        let s = self.nodes[id];
        if s.inside(lo, hi) {
            out.push(id);
            return;
        }
        for child in [s.left, s.right] {
            if self.nodes[child as usize].meets(lo, hi) {
                self.collect(child as usize, lo, hi, out, visits);
            }
        }
    }

    /// Node ids from the root down to the leaf holding `slot`.
    pub fn path(&self, slot: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut id = 0usize;
        loop {
            out.push(id);
            let s = self.nodes[id];
            if s.is_leaf() {
                return out;
            }
            let l = self.nodes[s.left as usize];
            id = if slot <= l.hi as usize { s.left as usize } else { s.right as usize };
        }
    }
}

fn build(nodes: &mut Vec<Span>, lo: u32, hi: u32) -> u32 {
    let id = nodes.len() as u32;
    nodes.push(Span { lo, hi, left: NONE, right: NONE });
    if lo < hi {
        let mid = lo + (hi - lo) / 2;
        let left = build(nodes, lo, mid);
        let right = build(nodes, mid + 1, hi);
        nodes[id as usize].left = left;
        nodes[id as usize].right = right;
    }
    id
}

/// Leaf-slot range `lo..=hi` of the keys falling inside `[lo_key, hi_key]`,
/// or `None` when no key does. `keys` must be sorted ascending.
pub(crate) fn slot_range(keys: &[i64], lo_key: i64, hi_key: i64) -> Option<(usize, usize)> {
    let a = keys.partition_point(|&k| k < lo_key);
    let b = keys.partition_point(|&k| k <= hi_key);
    (a < b).then(|| (a, b - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_count_and_depth() {
        for n in 1..200 {
            let s = Shape::new(n);
            assert_eq!(s.len(), 2 * n - 1);
            let depth = (0..n).map(|i| s.path(i).len()).max().unwrap();
            let bound = (n as f64).log2().ceil() as usize + 1;
            assert!(depth <= bound, "n={n} depth={depth}");
        }
    }

    #[test]
    fn canonical_is_exact_partition() {
        for n in 1..=40 {
            let s = Shape::new(n);
            for lo in 0..n {
                for hi in lo..n {
                    let mut v = 0;
                    let nodes = s.canonical(lo, hi, &mut v);
                    let mut covered = Vec::new();
                    for id in nodes {
                        let sp = s.node(id);
                        covered.extend(sp.lo as usize..=sp.hi as usize);
                    }
                    assert_eq!(covered, (lo..=hi).collect::<Vec<_>>());
                }
            }
        }
    }
}
