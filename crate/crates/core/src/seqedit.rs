//! Sequence editing through an interval list over an append-only base array.
//!
//! The current sequence is a list of entries `([a, b], dir)`: the base values
//! `a..=b` laid out forwards (`dir = +1`) or backwards (`dir = -1`). `find`
//! splits entries so a position becomes its own entry; reversal and
//! cut-and-paste then move whole entries. The list lives in a plain vector, so
//! every operation costs `O(|SI|)`; [`GroupedEditor`] bounds `|SI|` by
//! flattening the sequence every `z` operations.
//!
//! Positions are 1-based throughout.

use crate::agg::Weight;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub a: usize,
    pub b: usize,
    /// `+1` or `-1`.
    pub dir: i8,
}

impl Entry {
    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Base index of the `q`-th element (1-based) of this entry.
    fn base_index(&self, q: usize) -> usize {
        if self.dir > 0 {
            self.a + q - 1
        } else {
            self.b + 1 - q
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqOp {
    /// Reverse positions `i..=j`.
    Reverse(usize, usize),
    /// Cut `i..=j` and paste after position `p` of what remains; `p = -1` deletes.
    CutPaste(usize, usize, i64),
    /// Insert the values after position `p`.
    Insert(usize, Vec<Weight>),
    /// Read position `i`.
    Query(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalList {
    base: Vec<Weight>,
    entries: Vec<Entry>,
    len: usize,
    touched: u64,
}

impl IntervalList {
    pub fn new(values: Vec<Weight>) -> Self {
        let len = values.len();
        let entries = if len == 0 { Vec::new() } else { vec![Entry { a: 1, b: len, dir: 1 }] };
        IntervalList { base: values, entries, len, touched: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn base(&self) -> &[Weight] {
        &self.base
    }

    /// Entries scanned or shifted so far.
    pub fn touched(&self) -> u64 {
        self.touched
    }

    fn out_of_range(&self, pos: usize) -> Error {
        Error::PositionOutOfRange { pos: pos as i64, len: self.len }
    }

    /// `(entry index, offset q)` of position `i`, 0-based entry index.
    fn locate(&mut self, i: usize) -> (usize, usize) {
        let mut k = 0;
        for (u, e) in self.entries.iter().enumerate() {
            k += e.len();
            if k >= i {
                self.touched += u as u64 + 1;
                return (u, i - (k - e.len()));
            }
        }
        unreachable!("position checked against length")
    }

    /// Makes position `i` a singleton entry and returns its 1-based index;
    /// `find(0)` is the front handle 0.
    pub fn find(&mut self, i: usize) -> Result<usize> {
        if i == 0 {
            return Ok(0);
        }
        if i > self.len {
            return Err(self.out_of_range(i));
        }
        let (u, q) = self.locate(i);
        let Entry { a, b, dir } = self.entries[u];
        let (first, single, last) = if dir > 0 {
            ((a, a + q - 1), a + q - 1, (a + q, b + 1))
        } else {
            ((b + 2 - q, b + 1), b + 1 - q, (a, b + 1 - q))
        };
        // half-open (start, end) pairs; empty ones are dropped
        let mut parts = Vec::with_capacity(3);
        if first.0 < first.1 {
            parts.push(Entry { a: first.0, b: first.1 - 1, dir });
        }
        let h = u + parts.len() + 1;
        parts.push(Entry { a: single, b: single, dir });
        if last.0 < last.1 {
            parts.push(Entry { a: last.0, b: last.1 - 1, dir });
        }
        if parts.len() > 1 {
            self.touched += (self.entries.len() - u) as u64;
            self.entries.splice(u..=u, parts);
        }
        Ok(h)
    }

    /// Reverses positions `i..=j`.
    pub fn reverse(&mut self, i: usize, j: usize) -> Result<()> {
        if i < 1 || i > j || j > self.len {
            return Err(self.out_of_range(if i < 1 || i > self.len { i } else { j }));
        }
        let u = self.find(i)?;
        let v = self.find(j)?;
        let span = &mut self.entries[u - 1..v];
        span.reverse();
        for e in span.iter_mut() {
            e.dir = -e.dir;
        }
        self.touched += (v - u + 1) as u64;
        Ok(())
    }

    /// Moves positions `i..=j` after position `p` of the remaining sequence,
    /// or deletes them when `p = -1`.
    pub fn cut_paste(&mut self, i: usize, j: usize, p: i64) -> Result<()> {
        if i < 1 || i > j || j > self.len {
            return Err(self.out_of_range(if i < 1 || i > self.len { i } else { j }));
        }
        let rest = self.len - (j - i + 1);
        if p < -1 || p > rest as i64 {
            return Err(Error::BadPasteTarget { p, len: rest });
        }
        let u = self.find(i)?;
        let v = self.find(j)?;
        let moved: Vec<Entry> = self.entries.drain(u - 1..v).collect();
        self.touched += (self.entries.len() + 1 - u + moved.len()) as u64;
        self.len = rest;
        if p >= 0 {
            let w = self.find(p as usize)?;
            self.touched += (self.entries.len() - w + moved.len()) as u64;
            self.len += moved.iter().map(Entry::len).sum::<usize>();
            self.entries.splice(w..w, moved);
        }
        Ok(())
    }

    /// Appends `values` to the base array and splices them in after position `p`.
    pub fn insert(&mut self, p: usize, values: &[Weight]) -> Result<()> {
        if p > self.len {
            return Err(self.out_of_range(p));
        }
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        self.base.extend_from_slice(values);
        let n = self.base.len();
        let w = self.find(p)?;
        self.entries.insert(w, Entry { a: n - values.len() + 1, b: n, dir: 1 });
        self.touched += (self.entries.len() - w) as u64 + values.len() as u64;
        self.len += values.len();
        Ok(())
    }

    /// Value at position `i`, without splitting anything.
    pub fn get(&mut self, i: usize) -> Result<Weight> {
        if i < 1 || i > self.len {
            return Err(self.out_of_range(i));
        }
        let (u, q) = self.locate(i);
        Ok(self.base[self.entries[u].base_index(q) - 1])
    }

    /// The logical sequence as a flat vector.
    pub fn materialize(&self) -> Vec<Weight> {
        let mut out = Vec::with_capacity(self.len);
        for e in &self.entries {
            if e.dir > 0 {
                out.extend_from_slice(&self.base[e.a - 1..e.b]);
            } else {
                out.extend(self.base[e.a - 1..e.b].iter().rev());
            }
        }
        out
    }

    /// Applies one operation; reads return their value.
    pub fn apply(&mut self, op: &SeqOp) -> Result<Option<Weight>> {
        match op {
            SeqOp::Reverse(i, j) => self.reverse(*i, *j).map(|_| None),
            SeqOp::CutPaste(i, j, p) => self.cut_paste(*i, *j, *p).map(|_| None),
            SeqOp::Insert(p, vs) => self.insert(*p, vs).map(|_| None),
            SeqOp::Query(i) => self.get(*i).map(Some),
        }
    }
}

/// Interval-list editor that flattens the sequence after every `z` operations.
#[derive(Debug, Clone)]
pub struct GroupedEditor {
    z: usize,
    inner: IntervalList,
    pending: usize,
    flushes: u64,
    touched: u64,
}

impl GroupedEditor {
    pub fn new(values: Vec<Weight>, z: usize) -> Self {
        assert!(z >= 1, "group size must be positive");
        GroupedEditor { z, inner: IntervalList::new(values), pending: 0, flushes: 0, touched: 0 }
    }

    /// Group size `⌈√max(n0, m)⌉`.
    pub fn default_group(n0: usize, m: usize) -> usize {
        let t = n0.max(m).max(1);
        let mut z = (t as f64).sqrt() as usize;
        while z * z < t {
            z += 1;
        }
        while z > 1 && (z - 1) * (z - 1) >= t {
            z -= 1;
        }
        z
    }

    pub fn list(&self) -> &IntervalList {
        &self.inner
    }

    pub fn flushes(&self) -> u64 {
        self.flushes
    }

    /// Entries touched, including the flattening passes.
    pub fn touched(&self) -> u64 {
        self.touched + self.inner.touched
    }

    pub fn apply(&mut self, op: &SeqOp) -> Result<Option<Weight>> {
        let out = self.inner.apply(op)?;
        self.pending += 1;
        if self.pending == self.z {
            self.flush();
        }
        Ok(out)
    }

    fn flush(&mut self) {
        let flat = self.inner.materialize();
        self.touched += self.inner.touched + (flat.len() + self.inner.entries.len()) as u64;
        self.inner = IntervalList::new(flat);
        self.pending = 0;
        self.flushes += 1;
    }

    pub fn materialize(&self) -> Vec<Weight> {
        self.inner.materialize()
    }
}

/// Answers of every read, the final sequence, and entries touched per op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptRun {
    pub answers: Vec<Weight>,
    pub last: Vec<Weight>,
    pub touched_per_op: Vec<u64>,
}

/// Runs a script on the plain interval list.
pub fn run_script(initial: &[Weight], ops: &[SeqOp]) -> Result<ScriptRun> {
    let mut ed = IntervalList::new(initial.to_vec());
    let mut run = ScriptRun { answers: Vec::new(), last: Vec::new(), touched_per_op: Vec::new() };
    for op in ops {
        let before = ed.touched();
        if let Some(v) = ed.apply(op)? {
            run.answers.push(v);
        }
        run.touched_per_op.push(ed.touched() - before);
    }
    run.last = ed.materialize();
    Ok(run)
}

/// Runs a script with flattening every `z` operations.
pub fn grouped_run(initial: &[Weight], ops: &[SeqOp], z: usize) -> Result<ScriptRun> {
    let mut ed = GroupedEditor::new(initial.to_vec(), z);
    let mut run = ScriptRun { answers: Vec::new(), last: Vec::new(), touched_per_op: Vec::new() };
    for op in ops {
        let before = ed.touched();
        if let Some(v) = ed.apply(op)? {
            run.answers.push(v);
        }
        run.touched_per_op.push(ed.touched() - before);
    }
    run.last = ed.materialize();
    Ok(run)
}
