//! k-th smallest element of the union of hidden ascending sequences.
//!
//! Values are only reachable through a position probe. The search keeps a
//! window `[low(i), high(i)]` per sequence and a cache of every probed value.
//! Each round picks a pivot in the widest window, counts the values `<=` pivot
//! in every sequence by binary search between the nearest cached positions,
//! and shrinks all windows. Once every window holds at most one position, a
//! max-heap over the window tops peels off the surplus.

use std::collections::{BinaryHeap, HashSet};

use crate::agg::Weight;
use crate::error::{Error, Result};

/// Probe access to `n` strictly increasing sequences; positions are 1-based.
pub trait Probe {
    fn sequences(&self) -> usize;
    fn length(&self, i: usize) -> usize;
    fn probe(&mut self, i: usize, j: usize) -> Weight;
}

/// Sequences held in memory behind a counting, logging probe.
#[derive(Debug, Clone)]
pub struct SequenceOracle {
    seqs: Vec<Vec<Weight>>,
    probes: u64,
    log: HashSet<(usize, usize)>,
}

impl SequenceOracle {
    /// Rejects sequences that are not strictly increasing or that hold the
    /// extreme values reserved for the fictitious end positions.
    pub fn new(seqs: Vec<Vec<Weight>>) -> Result<Self> {
        for (i, s) in seqs.iter().enumerate() {
            let sentinel = s.iter().any(|&v| v == Weight::MIN || v == Weight::MAX);
            if sentinel || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::BadSequence(i));
            }
        }
        Ok(SequenceOracle { seqs, probes: 0, log: HashSet::new() })
    }

    pub fn probes(&self) -> u64 {
        self.probes
    }

    /// Distinct probed positions as `(sequence, position)`.
    pub fn probe_log(&self) -> &HashSet<(usize, usize)> {
        &self.log
    }

    pub fn sequences_ref(&self) -> &[Vec<Weight>] {
        &self.seqs
    }
}

impl Probe for SequenceOracle {
    fn sequences(&self) -> usize {
        self.seqs.len()
    }

    fn length(&self, i: usize) -> usize {
        self.seqs[i].len()
    }

    fn probe(&mut self, i: usize, j: usize) -> Weight {
        self.probes += 1;
        self.log.insert((i, j));
        self.seqs[i][j - 1]
    }
}

/// Exposes positions `a(i)..=b(i)` of each underlying sequence as a whole sequence.
pub struct Subranges<'a, P: Probe> {
    inner: &'a mut P,
    start: Vec<usize>,
    len: Vec<usize>,
}

impl<'a, P: Probe> Subranges<'a, P> {
    pub fn new(inner: &'a mut P, a: &[usize], b: &[usize]) -> Result<Self> {
        let n = inner.sequences();
        if a.len() != n || b.len() != n {
            return Err(Error::BadSubrange(a.len().min(b.len())));
        }
        for i in 0..n {
            if !(1 <= a[i] && a[i] <= b[i] && b[i] <= inner.length(i)) {
                return Err(Error::BadSubrange(i));
            }
        }
        let len = (0..n).map(|i| b[i] - a[i] + 1).collect();
        Ok(Subranges { inner, start: a.to_vec(), len })
    }
}

impl<P: Probe> Probe for Subranges<'_, P> {
    fn sequences(&self) -> usize {
        self.len.len()
    }

    fn length(&self, i: usize) -> usize {
        self.len[i]
    }

    fn probe(&mut self, i: usize, j: usize) -> Weight {
        self.inner.probe(i, j + self.start[i] - 1)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KthOptions {
    /// Leave the narrowing loop as soon as `snv > k` and `snv - k < n`.
    pub early_exit: bool,
}

/// One narrowing round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub pivot_seq: usize,
    pub pivot_pos: usize,
    pub snv: usize,
    pub new_probes: u64,
    /// Windows after the round.
    pub low: Vec<usize>,
    pub high: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub value: Weight,
    pub probes: u64,
    pub rounds: Vec<Round>,
    /// `Σ high(i)` on entering the heap phase, if it was reached.
    pub finish_snv: Option<usize>,
    pub finish_probes: u64,
}

/// Known positions of one sequence, sorted; values increase with position.
struct Cache {
    known: Vec<(usize, Weight)>,
}

impl Cache {
    fn new(len: usize) -> Self {
        Cache { known: vec![(0, Weight::MIN), (len + 1, Weight::MAX)] }
    }

    fn get(&self, j: usize) -> Option<Weight> {
        self.known.binary_search_by_key(&j, |e| e.0).ok().map(|at| self.known[at].1)
    }

    fn insert(&mut self, j: usize, v: Weight) {
        let at = self.known.partition_point(|e| e.0 < j);
        self.known.insert(at, (j, v));
    }

    /// Largest known position with value `<= pivot`, smallest with value `> pivot`.
    fn bracket(&self, pivot: Weight) -> (usize, usize) {
        let at = self.known.partition_point(|e| e.1 <= pivot);
        (self.known[at - 1].0, self.known[at].0)
    }
}

struct Search<'a, P: Probe> {
    src: &'a mut P,
    cache: Vec<Cache>,
    probes: u64,
}

impl<P: Probe> Search<'_, P> {
    fn value(&mut self, i: usize, j: usize) -> Weight {
        if let Some(v) = self.cache[i].get(j) {
            return v;
        }
        let v = self.src.probe(i, j);
        self.probes += 1;
        self.cache[i].insert(j, v);
        v
    }

    fn count_leq(&mut self, i: usize, pivot: Weight) -> usize {
        let (u, v) = self.cache[i].bracket(pivot);
        let (mut lo, mut hi, mut ok) = (u as i64, v as i64 - 1, u);
        while lo <= hi {
            let mid = ((lo + hi) / 2) as usize;
            if self.value(i, mid) <= pivot {
                ok = mid;
                lo = mid as i64 + 1;
            } else {
                hi = mid as i64 - 1;
            }
        }
        ok
    }
}

/// Number of values `<= pivot` in sequence `i`, probing only strictly between
/// the nearest cached positions. Exposed for a single sequence with a fresh cache.
pub fn count_leq<P: Probe>(src: &mut P, i: usize, pivot: Weight) -> usize {
    let cache = (0..src.sequences()).map(|s| Cache::new(src.length(s))).collect();
    Search { src, cache, probes: 0 }.count_leq(i, pivot)
}

pub fn kth_smallest<P: Probe>(src: &mut P, k: usize, opts: KthOptions) -> Result<Selection> {
    let n = src.sequences();
    let b: Vec<usize> = (0..n).map(|i| src.length(i)).collect();
    let total: usize = b.iter().sum();
    if k < 1 || k > total {
        return Err(Error::RankOutOfRange { k, total });
    }
    let cache = b.iter().map(|&len| Cache::new(len)).collect();
    let mut st = Search { src, cache, probes: 0 };
    let mut low = vec![1usize; n];
    let mut high = b.clone();
    let mut rounds = Vec::new();
    let mut nv = vec![0usize; n];

    loop {
        let Some(q) = (0..n).filter(|&i| low[i] < high[i]).max_by_key(|&i| (high[i] - low[i], std::cmp::Reverse(i)))
        else {
            break;
        };
        let before = st.probes;
        let mid = (low[q] + high[q]) / 2;
        let pivot = st.value(q, mid);
        for i in 0..n {
            nv[i] = if i == q { mid } else { st.count_leq(i, pivot) };
        }
        let snv: usize = nv.iter().sum();
        if snv == k {
            return Ok(Selection { value: pivot, probes: st.probes, rounds, finish_snv: None, finish_probes: 0 });
        }
        for i in 0..n {
            if snv < k {
                low[i] = low[i].max(nv[i] + 1);
            } else {
                high[i] = high[i].min(nv[i]);
            }
        }
        rounds.push(Round {
            pivot_seq: q,
            pivot_pos: mid,
            snv,
            new_probes: st.probes - before,
            low: low.clone(),
            high: high.clone(),
        });
        if opts.early_exit && snv > k && snv - k < n {
            break;
        }
    }

    // Every value above the answer sits inside a window of at most one
    // position, so Σ high(i) overshoots k by less than n.
    let before = st.probes;
    let mut snv: usize = high.iter().sum();
    let finish_snv = snv;
    let mut idx = high;
    let mut heap = BinaryHeap::new();
    for i in 0..n {
        if idx[i] > 0 {
            heap.push((st.value(i, idx[i]), i));
        }
    }
    while snv > k {
        let (_, i) = heap.pop().expect("heap holds at least k values");
        idx[i] -= 1;
        if idx[i] > 0 {
            heap.push((st.value(i, idx[i]), i));
        }
        snv -= 1;
    }
    let value = heap.peek().expect("k >= 1").0;
    Ok(Selection { value, probes: st.probes, rounds, finish_snv: Some(finish_snv), finish_probes: st.probes - before })
}

/// k-th smallest among positions `a(i)..=b(i)` of every sequence.
pub fn kth_in_subranges<P: Probe>(src: &mut P, a: &[usize], b: &[usize], k: usize, opts: KthOptions) -> Result<Selection> {
    let mut view = Subranges::new(src, a, b)?;
    kth_smallest(&mut view, k, opts)
}
