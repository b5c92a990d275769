//! Stack with push and "reverse the topmost K" in constant time per operation.
//!
//! The top `K` elements live in a buffer between two cursors, `down` (the
//! K-th from the top) and `up` (the top), written in direction `dir`. Reversing
//! the window just swaps the cursors and flips `dir`. Elements that fall below
//! the window are settled into the output stack `F` for good.

use crate::agg::Weight;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StackOp {
    Push(Weight),
    Rotate,
}

#[derive(Debug, Clone)]
pub struct RotStack {
    k: usize,
    max_ops: usize,
    buf: Vec<Weight>,
    up: i64,
    down: i64,
    dir: i64,
    settled: Vec<Weight>,
    pushes: usize,
    steps: u64,
}

impl RotStack {
    /// Window size `k >= 1`; at most `max_ops` pushes.
    pub fn new(k: usize, max_ops: usize) -> Self {
        assert!(k >= 1, "window size must be positive");
        let m = max_ops.max(1) as i64;
        RotStack {
            k,
            max_ops,
            buf: vec![0; 2 * m as usize],
            up: m - 1,
            down: m,
            dir: 1,
            settled: Vec::with_capacity(max_ops),
            pushes: 0,
            steps: 0,
        }
    }

    pub fn window(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.pushes
    }

    pub fn is_empty(&self) -> bool {
        self.pushes == 0
    }

    /// Elementary steps spent by push and rotate; each costs a fixed amount.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn cursors(&self) -> (i64, i64, i64) {
        (self.up, self.down, self.dir)
    }

    pub fn settled(&self) -> &[Weight] {
        &self.settled
    }

    pub fn push(&mut self, x: Weight) -> Result<()> {
        if self.pushes == self.max_ops {
            return Err(Error::CapacityExceeded(self.max_ops));
        }
        self.up += self.dir;
        self.buf[self.up as usize] = x;
        self.pushes += 1;
        self.steps += 1;
        if self.pushes > self.k {
            self.settled.push(self.buf[self.down as usize]);
            self.down += self.dir;
            self.steps += 1;
        }
        Ok(())
    }

    pub fn rotate(&mut self) {
        std::mem::swap(&mut self.up, &mut self.down);
        self.dir = -self.dir;
        self.steps += 1;
    }

    pub fn apply(&mut self, op: &StackOp) -> Result<()> {
        match op {
            StackOp::Push(x) => self.push(*x),
            StackOp::Rotate => {
                self.rotate();
                Ok(())
            }
        }
    }

    /// Bottom-to-top contents: the settled elements, then the window from
    /// `down` towards `up`.
    pub fn finish(mut self) -> Vec<Weight> {
        let window = self.pushes.min(self.k);
        let mut at = self.down;
        for _ in 0..window {
            self.settled.push(self.buf[at as usize]);
            at += self.dir;
        }
        self.settled
    }
}

/// Runs a script on a fresh stack sized for it.
pub fn run_stack(k: usize, max_ops: usize, ops: &[StackOp]) -> Result<Vec<Weight>> {
    let mut st = RotStack::new(k, max_ops);
    for op in ops {
        st.apply(op)?;
    }
    Ok(st.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use StackOp::*;

    #[test]
    fn settle_rule() {
        let mut st = RotStack::new(3, 5);
        st.push(1).unwrap();
        assert!(st.settled().is_empty());
        for x in 2..=4 {
            st.push(x).unwrap();
        }
        assert_eq!(st.settled(), &[1]);
        st.push(5).unwrap();
        assert_eq!(st.settled(), &[1, 2]);
        assert_eq!(st.finish(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(run_stack(3, 3, &[Push(1), Push(2), Push(3), Rotate]).unwrap(), vec![3, 2, 1]);
        assert_eq!(run_stack(3, 3, &[Push(1), Push(2), Push(3), Rotate, Rotate]).unwrap(), vec![1, 2, 3]);
        assert_eq!(run_stack(3, 1, &[Rotate, Push(7)]).unwrap(), vec![7]);
        assert_eq!(run_stack(2, 3, &[Push(1), Push(2), Rotate, Push(3)]).unwrap(), vec![2, 1, 3]);
    }

    #[test]
    fn capacity() {
        let mut st = RotStack::new(2, 1);
        st.push(1).unwrap();
        assert_eq!(st.push(2), Err(Error::CapacityExceeded(1)));
    }
}
