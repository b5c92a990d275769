//! Constant-time range minimum / maximum over a static array.
//!
//! Linear preprocessing: the array is cut into 64-slot blocks. Inside a block,
//! each slot keeps a bitmask of the monotone-stack survivors ending at it, so an
//! in-block query is one mask and a trailing-zeros. Whole blocks in between
//! are answered by a sparse table over block extrema, which has
//! `O((n/64) log n)` entries.

use crate::agg::Weight;

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct Rmq {
    values: Vec<Weight>,
    want_max: bool,
    masks: Vec<u64>,
    table: Vec<Vec<Weight>>,
}

impl Rmq {
    pub fn new(values: Vec<Weight>, want_max: bool) -> Self {
        let n = values.len();
        let better = |a: Weight, b: Weight| if want_max { a > b } else { a < b };
        let mut masks = vec![0u64; n];
        let mut block_best = Vec::with_capacity(n.div_ceil(BLOCK));
        for start in (0..n).step_by(BLOCK) {
            let end = (start + BLOCK).min(n);
            let mut stack: u64 = 0;
            for i in start..end {
                let off = i - start;
                // drop survivors that the new value beats
                while stack != 0 {
                    let top = 63 - stack.leading_zeros() as usize;
                    if better(values[i], values[start + top]) {
                        stack &= !(1u64 << top);
                    } else {
                        break;
                    }
                }
                stack |= 1u64 << off;
                masks[i] = stack;
            }
            let first = stack.trailing_zeros() as usize;
            block_best.push(values[start + first]);
        }
        let mut table = vec![block_best];
        let mut width = 1;
        while 2 * width <= table[0].len() {
            let prev = table.last().unwrap();
            let next: Vec<Weight> = (0..prev.len() - width)
                .map(|i| pick(want_max, prev[i], prev[i + width]))
                .collect();
            table.push(next);
            width *= 2;
        }
        Rmq { values, want_max, masks, table }
    }

    #[inline]
    fn in_block(&self, l: usize, r: usize) -> Weight {
        let start = l - l % BLOCK;
        let mask = self.masks[r] & (!0u64 << (l - start));
        self.values[start + mask.trailing_zeros() as usize]
    }

    /// Extremum of `values[l..=r]`.
    pub fn query(&self, l: usize, r: usize) -> Weight {
        debug_assert!(l <= r && r < self.values.len());
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.in_block(l, r);
        }
        let mut best = pick(
            self.want_max,
            self.in_block(l, (bl + 1) * BLOCK - 1),
            self.in_block(br * BLOCK, r),
        );
        if bl + 1 < br {
            let (a, b) = (bl + 1, br - 1);
            let level = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            let row = &self.table[level];
            best = pick(self.want_max, best, pick(self.want_max, row[a], row[b + 1 - (1 << level)]));
        }
        best
    }
}

#[inline]
fn pick(want_max: bool, a: Weight, b: Weight) -> Weight {
    if want_max {
        a.max(b)
    } else {
        a.min(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn matches_scan() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 63, 64, 65, 130, 500] {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..50)).collect();
            let mn = Rmq::new(v.clone(), false);
            let mx = Rmq::new(v.clone(), true);
            for _ in 0..2000 {
                let l = rng.gen_range(0..n);
                let r = rng.gen_range(l..n);
                assert_eq!(mn.query(l, r), *v[l..=r].iter().min().unwrap());
                assert_eq!(mx.query(l, r), *v[l..=r].iter().max().unwrap());
            }
        }
    }
}
