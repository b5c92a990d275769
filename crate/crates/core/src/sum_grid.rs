//! Range-add / range-sum over a dense d-dimensional grid of integers.
//!
//! One segment tree per dimension, nested. Every node of a dimension owns two
//! trees over the remaining dimensions: `add` takes updates that cover the
//! node's whole slab, `sum` takes the slab-summed contribution of updates that
//! only partly cover it. Neither is ever pushed down, so both operations touch
//! `O(log^d)` nodes per dimension path and answers are exact.

use crate::error::{Error, Result};
use crate::shape::Shape;

#[derive(Debug, Clone)]
enum Level {
    Scalar(i64),
    Axis { sum: Vec<Level>, add: Vec<Level> },
}

fn overflow() -> Error {
    Error::Overflow("grid sum")
}

fn mul(a: i64, b: usize) -> Result<i64> {
    a.checked_mul(b as i64).ok_or_else(overflow)
}

impl Level {
    fn new(shapes: &[Shape]) -> Level {
        match shapes.split_first() {
            None => Level::Scalar(0),
            Some((s, rest)) => {
                let inner = Level::new(rest);
                Level::Axis { sum: vec![inner.clone(); s.len()], add: vec![inner; s.len()] }
            }
        }
    }

    fn update(&mut self, shapes: &[Shape], lo: &[usize], hi: &[usize], u: i64) -> Result<()> {
        match self {
            Level::Scalar(v) => {
                *v = v.checked_add(u).ok_or_else(overflow)?;
                Ok(())
            }
            Level::Axis { sum, add } => update_axis(sum, add, shapes, 0, lo, hi, u),
        }
    }

    fn query(&self, shapes: &[Shape], lo: &[usize], hi: &[usize]) -> Result<i64> {
        match self {
            Level::Scalar(v) => Ok(*v),
            Level::Axis { sum, add } => query_axis(sum, add, shapes, 0, lo, hi),
        }
    }
}

fn overlap(s: crate::shape::Span, lo: usize, hi: usize) -> usize {
    (s.hi as usize).min(hi) + 1 - (s.lo as usize).max(lo)
}

fn update_axis(
    sum: &mut [Level],
    add: &mut [Level],
    shapes: &[Shape],
    node: usize,
    lo: &[usize],
    hi: &[usize],
    u: i64,
) -> Result<()> {
    let shape = &shapes[0];
    let s = shape.node(node);
    let rest = &shapes[1..];
    if s.inside(lo[0], hi[0]) {
        return add[node].update(rest, &lo[1..], &hi[1..], u);
    }
    sum[node].update(rest, &lo[1..], &hi[1..], mul(u, overlap(s, lo[0], hi[0]))?)?;
    for child in [s.left as usize, s.right as usize] {
        if shape.node(child).meets(lo[0], hi[0]) {
            update_axis(sum, add, shapes, child, lo, hi, u)?;
        }
    }
    Ok(())
}

fn query_axis(sum: &[Level], add: &[Level], shapes: &[Shape], node: usize, lo: &[usize], hi: &[usize]) -> Result<i64> {
    let shape = &shapes[0];
    let s = shape.node(node);
    let rest = &shapes[1..];
    let pending = add[node].query(rest, &lo[1..], &hi[1..])?;
    if s.inside(lo[0], hi[0]) {
        let own = sum[node].query(rest, &lo[1..], &hi[1..])?;
        return own.checked_add(mul(pending, s.len())?).ok_or_else(overflow);
    }
    let mut acc = mul(pending, overlap(s, lo[0], hi[0]))?;
    for child in [s.left as usize, s.right as usize] {
        if shape.node(child).meets(lo[0], hi[0]) {
            acc = acc.checked_add(query_axis(sum, add, shapes, child, lo, hi)?).ok_or_else(overflow)?;
        }
    }
    Ok(acc)
}

/// Grid of axis sizes `dims`, all cells starting at zero. Boxes are 0-based
/// inclusive index ranges.
#[derive(Debug, Clone)]
pub struct SumGrid {
    dims: Vec<usize>,
    shapes: Vec<Shape>,
    root: Level,
}

impl SumGrid {
    pub fn new(dims: &[usize]) -> Self {
        assert!(!dims.is_empty() && !dims.contains(&0), "grid needs positive axis sizes");
        let shapes: Vec<Shape> = dims.iter().map(|&m| Shape::new(m)).collect();
        let root = Level::new(&shapes);
        SumGrid { dims: dims.to_vec(), shapes, root }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Adds `u` to every cell of the box.
    pub fn add(&mut self, lo: &[usize], hi: &[usize], u: i64) -> Result<()> {
        debug_assert!(lo.iter().zip(hi).zip(&self.dims).all(|((&a, &b), &m)| a <= b && b < m));
        if u == 0 {
            return Ok(());
        }
        self.root.update(&self.shapes, lo, hi, u)
    }

    /// Sum of the cells of the box.
    pub fn sum(&self, lo: &[usize], hi: &[usize]) -> Result<i64> {
        debug_assert!(lo.iter().zip(hi).zip(&self.dims).all(|((&a, &b), &m)| a <= b && b < m));
        self.root.query(&self.shapes, lo, hi)
    }
}
