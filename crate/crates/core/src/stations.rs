//! Minimum effort to bring down the last station of a bus-like line.
//!
//! Station `i` sends at rate `s(i)` and can process up to `r(i)`. When the run
//! of collapsed stations directly before `j` forwards more than `r(j) - s(j)`,
//! `j` collapses too. With stations `i..j-1` collapsed, `j` receives
//! `ps(j-1) - ps(i-1)`, so `j` collapses exactly when `i < prev(j)`, where
//! `prev(j)` is the smallest index with `ps(j) - ps(prev(j)-1) <= r(j)`.
//!
//! Starting the cascade at `i` therefore costs `c(j)` for every `j >= i` with
//! `prev(j) <= i`: `e(i)` collects these by adding `c(j)` over `[prev(j), j]`.
//!
//! Station numbers are 1-based in all results.

use crate::error::{Error, Result};
use crate::shape::Shape;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationLine {
    s: Vec<i64>,
    r: Vec<i64>,
    c: Vec<i64>,
}

impl StationLine {
    /// Stations as `(s, r, c)` triples; requires `r > s > 0` and `c >= 0`.
    pub fn new(stations: &[(i64, i64, i64)]) -> Result<Self> {
        if stations.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut line = StationLine { s: Vec::new(), r: Vec::new(), c: Vec::new() };
        for (i, &(s, r, c)) in stations.iter().enumerate() {
            if !(s > 0 && r > s && c >= 0) {
                return Err(Error::InvalidStation(i + 1));
            }
            line.s.push(s);
            line.r.push(r);
            line.c.push(c);
        }
        Ok(line)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn sending(&self) -> &[i64] {
        &self.s
    }

    pub fn capacity(&self) -> &[i64] {
        &self.r
    }

    pub fn cost(&self) -> &[i64] {
        &self.c
    }

    /// `ps(0..=n)`.
    pub fn prefix_sums(&self) -> Result<Vec<i64>> {
        let mut ps = Vec::with_capacity(self.len() + 1);
        ps.push(0i64);
        for &s in &self.s {
            ps.push(ps.last().unwrap().checked_add(s).ok_or(Error::Overflow("rate prefix sum"))?);
        }
        Ok(ps)
    }

    /// `prev(1..=n)`, found by binary search over the prefix sums.
    pub fn compute_prev(&self) -> Result<Vec<usize>> {
        let ps = self.prefix_sums()?;
        Ok((1..=self.len())
            .map(|i| {
                // smallest p with ps(p-1) >= ps(i) - r(i); p = i always qualifies
                let need = ps[i] - self.r[i - 1];
                ps[..i].partition_point(|&v| v < need) + 1
            })
            .collect())
    }

    /// `e(1..=n)` via range adds on a segment tree and root-to-leaf sums.
    pub fn efforts_segment_tree(&self) -> Result<Vec<i64>> {
        let prev = self.compute_prev()?;
        let n = self.len();
        let shape = Shape::new(n);
        let mut uagg = vec![0i64; shape.len()];
        let mut visits = 0;
        for i in 0..n {
            for node in shape.canonical(prev[i] - 1, i, &mut visits) {
                uagg[node] = uagg[node].checked_add(self.c[i]).ok_or(Error::Overflow("effort"))?;
            }
        }
        (0..n)
            .map(|leaf| {
                shape
                    .path(leaf)
                    .into_iter()
                    .try_fold(0i64, |acc, node| acc.checked_add(uagg[node]).ok_or(Error::Overflow("effort")))
            })
            .collect()
    }

    /// `e(1..=n)` via a difference array, since all adds precede all reads.
    pub fn efforts_difference(&self) -> Result<Vec<i64>> {
        let prev = self.compute_prev()?;
        let n = self.len();
        let mut diff = vec![0i64; n + 1];
        for i in 0..n {
            diff[prev[i] - 1] = diff[prev[i] - 1].checked_add(self.c[i]).ok_or(Error::Overflow("effort"))?;
            diff[i + 1] -= self.c[i];
        }
        let mut e = Vec::with_capacity(n);
        let mut run = 0i64;
        for d in &diff[..n] {
            run = run.checked_add(*d).ok_or(Error::Overflow("effort"))?;
            e.push(run);
        }
        Ok(e)
    }

    /// `(min e(i), i)`, the smallest `i` on ties.
    pub fn min_collapse_effort(&self) -> Result<(i64, usize)> {
        let e = self.efforts_difference()?;
        let (i, &best) = e.iter().enumerate().min_by_key(|&(i, &v)| (v, i)).unwrap();
        Ok((best, i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(s: &[i64], r: &[i64], c: &[i64]) -> StationLine {
        let st: Vec<_> = (0..s.len()).map(|i| (s[i], r[i], c[i])).collect();
        StationLine::new(&st).unwrap()
    }

    #[test]
    fn prev_examples() {
        assert_eq!(line(&[3], &[4], &[7]).compute_prev().unwrap(), vec![1]);
        let l = line(&[1, 1], &[2, 3], &[5, 1]);
        assert_eq!(l.prefix_sums().unwrap(), vec![0, 1, 2]);
        assert_eq!(l.compute_prev().unwrap(), vec![1, 1]);
        assert_eq!(line(&[10, 1], &[11, 5], &[1, 100]).compute_prev().unwrap(), vec![1, 2]);
    }

    #[test]
    fn effort_examples() {
        for (l, e, best) in [
            (line(&[3], &[4], &[7]), vec![7], (7, 1)),
            (line(&[1, 1], &[2, 3], &[5, 1]), vec![6, 1], (1, 2)),
            (line(&[10, 1], &[11, 5], &[1, 100]), vec![1, 100], (1, 1)),
        ] {
            assert_eq!(l.efforts_segment_tree().unwrap(), e);
            assert_eq!(l.efforts_difference().unwrap(), e);
            assert_eq!(l.min_collapse_effort().unwrap(), best);
        }
    }

    #[test]
    fn reach_needs_every_station_in_between() {
        // prev(3) = 2 > 1, yet station 2 holds, so a cascade from 1 stops there
        let st = [(1, 2, 0), (1, 5, 0), (1, 2, 0)];
        assert_eq!(StationLine::new(&st).unwrap().compute_prev().unwrap(), vec![1, 1, 2]);
        let down = crate::oracles::cascade_simulate(&st, &[true, false, false]);
        assert_eq!(down, vec![true, false, false]);
    }

    #[test]
    fn invalid_stations() {
        assert_eq!(StationLine::new(&[(2, 2, 1)]), Err(Error::InvalidStation(1)));
        assert_eq!(StationLine::new(&[(1, 2, 1), (0, 2, 1)]), Err(Error::InvalidStation(2)));
        assert_eq!(StationLine::new(&[(1, 2, -1)]), Err(Error::InvalidStation(1)));
    }
}
