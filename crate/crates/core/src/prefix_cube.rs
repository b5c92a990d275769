//! Dense-case aggregation over a d-dimensional grid of cells.
//!
//! A [`PrefixCube`] stores at every cell the fold of all cells it dominates, so
//! a box aggregate needs only its `2^d` corners (inclusion-exclusion). Two
//! builders are provided: the per-entry recurrence over the `2^d - 1`
//! predecessors, and the dimension sweep that folds along one axis per pass.
//! [`batched_range_updates`] applies a list of box stamps by writing `2^d`
//! corner cells per stamp and sweeping once.
//!
//! Cells are addressed by 1-based index tuples; storage is row-major with the
//! first dimension outermost.

use crate::agg::{AggOp, Weight};
use crate::error::{Error, Result};

fn check_op(op: AggOp) -> Result<()> {
    if op.is_invertible() {
        Ok(())
    } else {
        Err(Error::NotInvertible(op.name()))
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for j in (0..dims.len().saturating_sub(1)).rev() {
        s[j] = s[j + 1] * dims[j + 1];
    }
    s
}

/// 1-based index tuple of flat offset `off`.
fn unflatten(dims: &[usize], mut off: usize, out: &mut [usize]) {
    for j in (0..dims.len()).rev() {
        out[j] = off % dims[j] + 1;
        off /= dims[j];
    }
}

/// Closed box of 1-based cell indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellBox {
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
}

impl CellBox {
    pub fn new(lo: Vec<usize>, hi: Vec<usize>) -> Self {
        CellBox { lo, hi }
    }

    pub fn whole(dims: &[usize]) -> Self {
        CellBox { lo: vec![1; dims.len()], hi: dims.to_vec() }
    }

    pub fn validate(&self, dims: &[usize]) -> Result<()> {
        if self.lo.len() != dims.len() || self.hi.len() != dims.len() {
            return Err(Error::DimensionMismatch { expected: dims.len(), got: self.lo.len().min(self.hi.len()) });
        }
        match (0..dims.len()).find(|&j| !(1 <= self.lo[j] && self.lo[j] <= self.hi[j] && self.hi[j] <= dims[j])) {
            Some(j) => Err(Error::BadCellBox(j)),
            None => Ok(()),
        }
    }

    pub fn contains(&self, cell: &[usize]) -> bool {
        cell.iter().enumerate().all(|(j, &c)| self.lo[j] <= c && c <= self.hi[j])
    }
}

/// Raw cell values of a grid with axis sizes `dims`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseCube {
    op: AggOp,
    dims: Vec<usize>,
    cells: Vec<Weight>,
}

impl DenseCube {
    pub fn new(dims: Vec<usize>, cells: Vec<Weight>, op: AggOp) -> Result<Self> {
        check_op(op)?;
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::ShapeMismatch { expected: 1, got: 0 });
        }
        let np: usize = dims.iter().product();
        if cells.len() != np {
            return Err(Error::ShapeMismatch { expected: np, got: cells.len() });
        }
        if op == AggOp::Product && cells.contains(&0) {
            return Err(Error::ZeroInProductCube);
        }
        Ok(DenseCube { op, dims, cells })
    }

    /// Grid with every cell at the op's neutral element.
    pub fn neutral(dims: Vec<usize>, op: AggOp) -> Result<Self> {
        let np = dims.iter().product();
        DenseCube::new(dims, vec![op.neutral(); np], op)
    }

    pub fn op(&self) -> AggOp {
        self.op
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cells(&self) -> &[Weight] {
        &self.cells
    }

    pub fn offset(&self, cell: &[usize]) -> usize {
        cell.iter().zip(&self.dims).fold(0, |acc, (&c, &m)| acc * m + (c - 1))
    }

    pub fn get(&self, cell: &[usize]) -> Weight {
        self.cells[self.offset(cell)]
    }
}

/// Prefix aggregates: entry `c` folds every cell `c'` with `c' <= c` componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCube {
    op: AggOp,
    dims: Vec<usize>,
    cells: Vec<Weight>,
    build_ops: u64,
}

impl PrefixCube {
    pub fn op(&self) -> AggOp {
        self.op
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cells(&self) -> &[Weight] {
        &self.cells
    }

    /// combine/invert calls spent by the builder.
    pub fn build_ops(&self) -> u64 {
        self.build_ops
    }

    pub fn get(&self, cell: &[usize]) -> Weight {
        self.cells[cell.iter().zip(&self.dims).fold(0, |acc, (&c, &m)| acc * m + (c - 1))]
    }

    /// Box aggregate from the `2^d` corners `s(j) ∈ {hi(j), lo(j) - 1}`:
    /// corners with an even number of low picks are combined, the rest are
    /// inverted out. Corners on a virtual zero index are neutral and skipped.
    pub fn query(&self, b: &CellBox) -> Result<Weight> {
        b.validate(&self.dims)?;
        let d = self.dims.len();
        let st = strides(&self.dims);
        let (mut pos, mut neg) = (self.op.neutral(), self.op.neutral());
        'corner: for mask in 0u64..1 << d {
            let mut off = 0;
            for j in 0..d {
                let c = if mask >> j & 1 == 1 { b.lo[j] - 1 } else { b.hi[j] };
                if c == 0 {
                    continue 'corner;
                }
                off += (c - 1) * st[j];
            }
            if mask.count_ones() % 2 == 0 {
                pos = self.op.combine(pos, self.cells[off])?;
            } else {
                neg = self.op.combine(neg, self.cells[off])?;
            }
        }
        self.op.invert(pos, neg)
    }
}

/// Lexicographic fill: each entry is its cell combined with the predecessors
/// that differ in an odd number of coordinates, with the even ones inverted out.
pub fn build_prefix_naive(cube: &DenseCube) -> Result<PrefixCube> {
    let op = cube.op;
    let dims = &cube.dims;
    let d = dims.len();
    let st = strides(dims);
    let mut ps = vec![op.neutral(); cube.cells.len()];
    let mut idx = vec![0usize; d];
    let mut ops = 0u64;
    for off in 0..ps.len() {
        unflatten(dims, off, &mut idx);
        let (mut pos, mut neg) = (cube.cells[off], op.neutral());
        'pred: for mask in 1u64..1 << d {
            let mut p = off;
            for j in 0..d {
                if mask >> j & 1 == 1 {
                    if idx[j] == 1 {
                        continue 'pred;
                    }
                    p -= st[j];
                }
            }
            ops += 1;
            if mask.count_ones() % 2 == 1 {
                pos = op.combine(pos, ps[p])?;
            } else {
                neg = op.combine(neg, ps[p])?;
            }
        }
        ops += 1;
        ps[off] = op.invert(pos, neg)?;
    }
    Ok(PrefixCube { op, dims: dims.clone(), cells: ps, build_ops: ops })
}

/// `d` passes, each turning the array into running folds along one axis.
pub fn build_prefix_sweep(cube: &DenseCube) -> Result<PrefixCube> {
    let mut cells = cube.cells.clone();
    let ops = sweep_in_place(cube.op, &cube.dims, &mut cells)?;
    Ok(PrefixCube { op: cube.op, dims: cube.dims.clone(), cells, build_ops: ops })
}

fn sweep_in_place(op: AggOp, dims: &[usize], cells: &mut [Weight]) -> Result<u64> {
    let st = strides(dims);
    let mut ops = 0;
    for j in 0..dims.len() {
        let (stride, m) = (st[j], dims[j]);
        for off in 0..cells.len() {
            // offsets are visited in increasing order, so the predecessor is final
            if (off / stride) % m != 0 {
                cells[off] = op.combine(cells[off - stride], cells[off])?;
                ops += 1;
            }
        }
    }
    Ok(ops)
}

/// A uniform update `u` over a cell box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeStamp {
    pub cells: CellBox,
    pub u: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchOutcome {
    pub cube: DenseCube,
    /// Corner cells written for each stamp, in input order.
    pub corner_writes: Vec<usize>,
}

/// Applies every stamp, so that each cell ends up with the fold of `u` over the
/// stamps whose box contains it.
///
/// Each stamp marks the corners `c(j) ∈ {lo(j), hi(j) + 1}` with `u` (even
/// number of upper picks) or its inverse (odd); corners past the grid are
/// dropped. A prefix sweep then spreads the marks. PRODUCT keeps the direct and
/// inverse marks in two grids and divides at the end, so no fractional inverse
/// is ever formed.
pub fn batched_range_updates(dims: &[usize], stamps: &[RangeStamp], op: AggOp) -> Result<BatchOutcome> {
    check_op(op)?;
    let d = dims.len();
    let np: usize = dims.iter().product();
    let st = strides(dims);
    let mut direct = vec![op.neutral(); np];
    let mut inverse = vec![op.neutral(); np];
    let mut corner_writes = Vec::with_capacity(stamps.len());
    for stamp in stamps {
        stamp.cells.validate(dims)?;
        if op == AggOp::Product && stamp.u == 0 {
            return Err(Error::ZeroUpdateInProductMode);
        }
        let mut written = 0;
        'corner: for mask in 0u64..1 << d {
            let mut off = 0;
            for j in 0..d {
                let c = if mask >> j & 1 == 1 { stamp.cells.hi[j] + 1 } else { stamp.cells.lo[j] };
                if c > dims[j] {
                    continue 'corner;
                }
                off += (c - 1) * st[j];
            }
            written += 1;
            let odd = mask.count_ones() % 2 == 1;
            match (op, odd) {
                (AggOp::Product, true) => inverse[off] = op.combine(inverse[off], stamp.u)?,
                (_, true) => direct[off] = op.combine(direct[off], op.inverse(stamp.u)?)?,
                (_, false) => direct[off] = op.combine(direct[off], stamp.u)?,
            }
        }
        corner_writes.push(written);
    }
    sweep_in_place(op, dims, &mut direct)?;
    if op == AggOp::Product {
        sweep_in_place(op, dims, &mut inverse)?;
        for (c, &den) in direct.iter_mut().zip(&inverse) {
            *c = op.invert(*c, den)?;
        }
    }
    Ok(BatchOutcome { cube: DenseCube { op, dims: dims.to_vec(), cells: direct }, corner_writes })
}
