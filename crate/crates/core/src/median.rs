//! Medians on the line and the dynamic weighted L1 range median on a grid.
//!
//! The L1 cost is separable, so a box median is found one dimension at a time:
//! the weighted lower median of the box's slabs along each axis. [`MedianCube`]
//! keeps a range-add/range-sum grid over the weights and, per dimension `j`,
//! one over `x(j, c(j)) * weight`, from which both the median and its cost are
//! read with slab sums.

use crate::agg::Weight;
use crate::error::{Error, Result};
use crate::prefix_cube::CellBox;
use crate::sum_grid::SumGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct L1Median {
    /// Canonical optimum: the left end of `interval`.
    pub location: i64,
    /// Every point in here minimizes `Σ |x(i) - p|`.
    pub interval: (i64, i64),
}

/// Median by linear-time selection; odd `n` gives a degenerate interval.
pub fn l1_median(xs: &[i64]) -> Result<L1Median> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = xs.len();
    let mut v = xs.to_vec();
    if n % 2 == 1 {
        let (_, &mut m, _) = v.select_nth_unstable((n - 1) / 2);
        return Ok(L1Median { location: m, interval: (m, m) });
    }
    let (left, &mut hi, _) = v.select_nth_unstable(n / 2);
    let lo = *left.iter().max().unwrap();
    Ok(L1Median { location: lo, interval: (lo, hi) })
}

/// Minimizer of `Σ w(i) (x(i) - p)^2`: the weighted mean.
pub fn weighted_lsq_point(xs: &[f64], ws: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if xs.len() != ws.len() {
        return Err(Error::DimensionMismatch { expected: xs.len(), got: ws.len() });
    }
    if ws.iter().any(|&w| w < 0.0) {
        return Err(Error::NegativeWeight);
    }
    let total: f64 = ws.iter().sum();
    if total <= 0.0 {
        return Err(Error::ZeroTotalWeight);
    }
    Ok(xs.iter().zip(ws).map(|(x, w)| x * w).sum::<f64>() / total)
}

fn overflow() -> Error {
    Error::Overflow("median cost")
}

/// Weighted grid with dynamic weights and box median queries. Cells are
/// 1-based index tuples; axis `j` places index `c` at coordinate `axes[j][c-1]`.
#[derive(Debug, Clone)]
pub struct MedianCube {
    dims: Vec<usize>,
    axes: Vec<Vec<i64>>,
    weights: Vec<Weight>,
    cube: SumGrid,
    scaled: Vec<SumGrid>,
    structure_updates: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxMedian {
    pub point: Vec<i64>,
    pub cost: Weight,
}

impl MedianCube {
    /// `weights` are row-major with the first dimension outermost.
    pub fn new(axes: Vec<Vec<i64>>, weights: Vec<Weight>) -> Result<Self> {
        if axes.is_empty() || axes.iter().any(Vec::is_empty) {
            return Err(Error::EmptyInput);
        }
        if let Some(j) = axes.iter().position(|a| a.windows(2).any(|w| w[0] > w[1])) {
            return Err(Error::UnsortedAxis(j));
        }
        let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
        let np: usize = dims.iter().product();
        if weights.len() != np {
            return Err(Error::ShapeMismatch { expected: np, got: weights.len() });
        }
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::NegativeWeight);
        }
        let mut mc = MedianCube {
            cube: SumGrid::new(&dims),
            scaled: vec![SumGrid::new(&dims); dims.len()],
            dims,
            axes,
            weights: vec![0; np],
            structure_updates: 0,
        };
        let mut cell = vec![0usize; mc.dims.len()];
        for (off, &w) in weights.iter().enumerate() {
            if w != 0 {
                mc.unflatten(off, &mut cell);
                mc.point_update(&cell, w)?;
            }
        }
        mc.structure_updates = 0;
        Ok(mc)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn axes(&self) -> &[Vec<i64>] {
        &self.axes
    }

    /// Current cell weights, row-major.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Sum-structure updates performed since construction.
    pub fn structure_updates(&self) -> u64 {
        self.structure_updates
    }

    fn offset(&self, cell: &[usize]) -> usize {
        cell.iter().zip(&self.dims).fold(0, |acc, (&c, &m)| acc * m + (c - 1))
    }

    fn unflatten(&self, mut off: usize, out: &mut [usize]) {
        for j in (0..self.dims.len()).rev() {
            out[j] = off % self.dims[j] + 1;
            off /= self.dims[j];
        }
    }

    fn zero_based(b: &CellBox) -> (Vec<usize>, Vec<usize>) {
        (b.lo.iter().map(|c| c - 1).collect(), b.hi.iter().map(|c| c - 1).collect())
    }

    /// Adds `delta` to one cell.
    pub fn point_update(&mut self, cell: &[usize], delta: Weight) -> Result<()> {
        let b = CellBox::new(cell.to_vec(), cell.to_vec());
        b.validate(&self.dims)?;
        let off = self.offset(cell);
        let next = self.weights[off].checked_add(delta).ok_or_else(overflow)?;
        if next < 0 {
            return Err(Error::NegativeWeight);
        }
        let (lo, hi) = Self::zero_based(&b);
        self.cube.add(&lo, &hi, delta)?;
        for j in 0..self.dims.len() {
            let scaled = self.axes[j][cell[j] - 1].checked_mul(delta).ok_or_else(overflow)?;
            self.scaled[j].add(&lo, &hi, scaled)?;
        }
        self.weights[off] = next;
        self.structure_updates += 1 + self.dims.len() as u64;
        Ok(())
    }

    /// Adds `u` to every cell of the box. The scaled grid of dimension `j`
    /// takes one update per slice `c(j)` of the box, each scaled by that
    /// slice's coordinate.
    pub fn range_update(&mut self, b: &CellBox, u: Weight) -> Result<()> {
        b.validate(&self.dims)?;
        let mut cell = vec![0usize; self.dims.len()];
        let mut changed = Vec::new();
        for off in 0..self.weights.len() {
            self.unflatten(off, &mut cell);
            if b.contains(&cell) {
                let next = self.weights[off].checked_add(u).ok_or_else(overflow)?;
                if next < 0 {
                    return Err(Error::NegativeWeight);
                }
                changed.push((off, next));
            }
        }
        let (lo, hi) = Self::zero_based(b);
        self.cube.add(&lo, &hi, u)?;
        self.structure_updates += 1;
        for j in 0..self.dims.len() {
            for c in lo[j]..=hi[j] {
                let (mut slo, mut shi) = (lo.clone(), hi.clone());
                slo[j] = c;
                shi[j] = c;
                let scaled = self.axes[j][c].checked_mul(u).ok_or_else(overflow)?;
                self.scaled[j].add(&slo, &shi, scaled)?;
                self.structure_updates += 1;
            }
        }
        for (off, w) in changed {
            self.weights[off] = w;
        }
        Ok(())
    }

    /// Per-dimension weighted lower median of the box and the total weighted
    /// L1 distance from it to the box's mass.
    pub fn query(&self, b: &CellBox) -> Result<BoxMedian> {
        b.validate(&self.dims)?;
        let (lo, hi) = Self::zero_based(b);
        let total = self.cube.sum(&lo, &hi)?;
        if total == 0 {
            return Err(Error::EmptyRange);
        }
        let half = total / 2 + total % 2;
        let mut point = Vec::with_capacity(self.dims.len());
        let mut cost: Weight = 0;
        for j in 0..self.dims.len() {
            // smallest slab end c with weight(lo..=c) >= half
            let (mut a, mut z) = (lo[j], hi[j]);
            let mut upto = hi.clone();
            while a < z {
                let mid = (a + z) / 2;
                upto[j] = mid;
                if self.cube.sum(&lo, &upto)? >= half {
                    z = mid;
                } else {
                    a = mid + 1;
                }
            }
            upto[j] = a;
            let p = self.axes[j][a];
            let wl = self.cube.sum(&lo, &upto)?;
            let sl = self.scaled[j].sum(&lo, &upto)?;
            let wr = total - wl;
            let sr = self.scaled[j].sum(&lo, &hi)? - sl;
            let part = (|| {
                p.checked_mul(wl)?
                    .checked_sub(sl)?
                    .checked_add(sr)?
                    .checked_sub(p.checked_mul(wr)?)
            })()
            .ok_or_else(overflow)?;
            cost = cost.checked_add(part).ok_or_else(overflow)?;
            point.push(p);
        }
        Ok(BoxMedian { point, cost })
    }

    /// Checks that the sum grids agree with the weight mirror, cell by cell.
    pub fn audit(&self) -> Result<bool> {
        let mut cell = vec![0usize; self.dims.len()];
        for off in 0..self.weights.len() {
            self.unflatten(off, &mut cell);
            let z: Vec<usize> = cell.iter().map(|c| c - 1).collect();
            let w = self.cube.sum(&z, &z)?;
            if w != self.weights[off] {
                return Ok(false);
            }
            for j in 0..self.dims.len() {
                if self.scaled[j].sum(&z, &z)? != self.axes[j][z[j]] * w {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l1_examples() {
        assert_eq!(l1_median(&[3, 1, 2]).unwrap().location, 2);
        let m = l1_median(&[1, 2, 3, 4]).unwrap();
        assert_eq!((m.interval, m.location), ((2, 3), 2));
        assert_eq!(l1_median(&[]).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn lsq_examples() {
        assert_eq!(weighted_lsq_point(&[0.0, 10.0], &[1.0, 3.0]).unwrap(), 7.5);
        assert_eq!(weighted_lsq_point(&[1.0, 2.0, 6.0], &[2.0, 2.0, 2.0]).unwrap(), 3.0);
        assert_eq!(weighted_lsq_point(&[1.0], &[0.0]).unwrap_err(), Error::ZeroTotalWeight);
    }

    #[test]
    fn cube_examples() {
        let mut mc = MedianCube::new(vec![vec![0, 1, 2]], vec![1, 1, 1]).unwrap();
        let whole = CellBox::whole(&[3]);
        assert_eq!(mc.query(&whole).unwrap(), BoxMedian { point: vec![1], cost: 2 });

        mc.range_update(&whole, 0).unwrap();
        assert_eq!(mc.query(&whole).unwrap(), BoxMedian { point: vec![1], cost: 2 });
        mc.range_update(&whole, 4).unwrap();
        assert_eq!(mc.query(&whole).unwrap().point, vec![1]);
        assert_eq!(mc.structure_updates(), 1 + 3 + 1 + 3);

        let mut mc = MedianCube::new(vec![vec![2, 5, 9], vec![-1, 4]], vec![0; 6]).unwrap();
        assert_eq!(mc.query(&CellBox::whole(&[3, 2])).unwrap_err(), Error::EmptyRange);
        mc.point_update(&[3, 1], 6).unwrap();
        assert_eq!(mc.query(&CellBox::whole(&[3, 2])).unwrap(), BoxMedian { point: vec![9, -1], cost: 0 });
        assert_eq!(mc.structure_updates(), 3);
        assert_eq!(mc.point_update(&[3, 1], -7).unwrap_err(), Error::NegativeWeight);
        mc.point_update(&[3, 1], 5).unwrap();
        mc.point_update(&[3, 1], -5).unwrap();
        assert_eq!(mc.query(&CellBox::whole(&[3, 2])).unwrap().cost, 0);
        assert!(mc.audit().unwrap());
    }

    #[test]
    fn rejects_bad_axes() {
        assert_eq!(MedianCube::new(vec![vec![2, 1]], vec![1, 1]).unwrap_err(), Error::UnsortedAxis(0));
        assert_eq!(MedianCube::new(vec![vec![1, 2]], vec![1, -1]).unwrap_err(), Error::NegativeWeight);
    }
}
