//! Offline k-th smallest distance queries by a left-to-right sweep.
//!
//! Query `j` asks for the `k_j`-th smallest distance from a point with
//! `x <= xq_j` to `(xq_j, 0)`. The sweep keeps the inserted points ordered by
//! distance to `(xd, 0)`. That order only changes when two neighbours cross,
//! which for neighbours `a` before `b` with `x(a) < x(b)` happens once, at the
//! root of a linear equation. Insertions, crossings and queries are processed
//! in abscissa order; at equal abscissas insertions go first, then crossings,
//! then queries.
//!
//! All comparisons are exact: coordinates are integers and crossing abscissas
//! are rationals over `i128`.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap};

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Abscissa = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarPoint {
    pub x: i64,
    pub y: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceQuery {
    pub xq: i64,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryAnswer {
    /// Index of the k-th closest point.
    pub point: usize,
    pub squared: i128,
    pub distance: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Remove invalidated crossing events from the queue instead of skipping
    /// them when they surface.
    pub explicit_delete: bool,
    /// Abscissas at which the maintained order is checked against a full sort.
    /// Audits before the first query abscissa are ignored.
    pub audits: Vec<Abscissa>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub answers: Vec<Result<QueryAnswer>>,
    pub inserts: u64,
    pub swaps: u64,
    pub stale_events: u64,
    pub events_enqueued: u64,
    pub audits_run: u64,
    pub audit_failures: Vec<Abscissa>,
}

/// Abscissa where `a` and `b` are equally far from the x-axis point.
pub fn xsod(a: PlanarPoint, b: PlanarPoint) -> Result<Abscissa> {
    if a.x == b.x {
        return Err(Error::NoCrossover);
    }
    let (ax, ay, bx, by) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128);
    Ok(Ratio::new(bx * bx + by * by - ax * ax - ay * ay, 2 * (bx - ax)))
}

/// Squared distance from `p` to `(xq, 0)`.
pub fn squared_distance(p: PlanarPoint, xq: i64) -> i128 {
    let dx = p.x as i128 - xq as i128;
    dx * dx + p.y as i128 * p.y as i128
}

/// Compares the distances of `p` and `q` to `(at, 0)`.
fn distance_cmp(p: PlanarPoint, q: PlanarPoint, at: &Abscissa) -> Ordering {
    let (px, py, qx, qy) = (p.x as i128, p.y as i128, q.x as i128, q.y as i128);
    let norm = px * px + py * py - qx * qx - qy * qy;
    // d_p - d_q = norm - 2 * at * (px - qx), scaled by the positive denominator
    (at.denom() * norm - 2 * at.numer() * (px - qx)).cmp(&0)
}

struct State<'a> {
    pts: &'a [PlanarPoint],
    od: Vec<usize>,
    pos: Vec<usize>,
    xd: Abscissa,
    explicit: bool,
    lazy: BinaryHeap<Reverse<(Abscissa, usize, usize)>>,
    queued: BTreeSet<(Abscissa, usize, usize)>,
    enqueued: u64,
}

const ABSENT: usize = usize::MAX;

impl State<'_> {
    /// Order just before `xd`'s crossings are applied: ties go to the smaller x.
    fn before_cmp(&self, a: usize, b: usize) -> Ordering {
        let (p, q) = (self.pts[a], self.pts[b]);
        distance_cmp(p, q, &self.xd).then(p.x.cmp(&q.x)).then(a.cmp(&b))
    }

    fn schedule(&mut self, a: usize, b: usize) {
        let (p, q) = (self.pts[a], self.pts[b]);
        if p.x >= q.x {
            return;
        }
        let at = xsod(p, q).expect("distinct abscissas");
        if at < self.xd {
            return;
        }
        self.enqueued += 1;
        if self.explicit {
            self.queued.insert((at, a, b));
        } else {
            self.lazy.push(Reverse((at, a, b)));
        }
    }

    fn unschedule(&mut self, a: usize, b: usize) {
        let (p, q) = (self.pts[a], self.pts[b]);
        if p.x < q.x {
            let at = xsod(p, q).expect("distinct abscissas");
            self.queued.remove(&(at, a, b));
        }
    }

    fn next_swap(&self) -> Option<Abscissa> {
        if self.explicit {
            self.queued.first().map(|e| e.0)
        } else {
            self.lazy.peek().map(|e| e.0 .0)
        }
    }

    fn pop_swap(&mut self) -> (Abscissa, usize, usize) {
        if self.explicit {
            self.queued.pop_first().unwrap()
        } else {
            self.lazy.pop().unwrap().0
        }
    }

    fn insert(&mut self, i: usize) {
        let at = self.od.partition_point(|&o| self.before_cmp(o, i) == Ordering::Less);
        let prev = at.checked_sub(1).map(|p| self.od[p]);
        let next = self.od.get(at).copied();
        if self.explicit {
            if let (Some(p), Some(n)) = (prev, next) {
                self.unschedule(p, n);
            }
        }
        self.od.insert(at, i);
        for p in at..self.od.len() {
            self.pos[self.od[p]] = p;
        }
        if let Some(p) = prev {
            self.schedule(p, i);
        }
        if let Some(n) = next {
            self.schedule(i, n);
        }
    }

    /// Swaps adjacent `a`, `b`; returns false for an outdated event.
    fn swap(&mut self, at: Abscissa, a: usize, b: usize) -> bool {
        let (pa, pb) = (self.pos[a], self.pos[b]);
        if pa == ABSENT || pb != pa + 1 {
            return false;
        }
        self.xd = at;
        let prev = pa.checked_sub(1).map(|p| self.od[p]);
        let next = self.od.get(pb + 1).copied();
        if self.explicit {
            if let Some(p) = prev {
                self.unschedule(p, a);
            }
            if let Some(n) = next {
                self.unschedule(b, n);
            }
        }
        self.od.swap(pa, pb);
        self.pos[a] = pb;
        self.pos[b] = pa;
        if let Some(p) = prev {
            self.schedule(p, b);
        }
        if let Some(n) = next {
            self.schedule(a, n);
        }
        true
    }

    /// `od` must equal the full sort at `at`, ties to the larger x.
    fn audit(&self, at: &Abscissa) -> bool {
        let mut sorted = self.od.clone();
        sorted.sort_by(|&a, &b| {
            let (p, q) = (self.pts[a], self.pts[b]);
            distance_cmp(p, q, at).then(q.x.cmp(&p.x)).then(a.cmp(&b))
        });
        sorted == self.od
    }
}

pub fn solve_offline(points: &[PlanarPoint], queries: &[DistanceQuery]) -> Result<SweepReport> {
    solve_offline_with(points, queries, &SweepOptions::default())
}

pub fn solve_offline_with(points: &[PlanarPoint], queries: &[DistanceQuery], opts: &SweepOptions) -> Result<SweepReport> {
    if let Some(i) = points.iter().position(|p| p.y < 0) {
        return Err(Error::NegativeY(i));
    }
    let mut report = SweepReport {
        answers: vec![Err(Error::EmptyInput); queries.len()],
        inserts: 0,
        swaps: 0,
        stale_events: 0,
        events_enqueued: 0,
        audits_run: 0,
        audit_failures: Vec::new(),
    };
    if queries.is_empty() {
        return Ok(report);
    }
    let mut qorder: Vec<usize> = (0..queries.len()).collect();
    qorder.sort_by_key(|&j| (queries[j].xq, j));
    let start = queries[qorder[0]].xq;

    let mut st = State {
        pts: points,
        od: Vec::new(),
        pos: vec![ABSENT; points.len()],
        xd: Ratio::from_integer(start as i128),
        explicit: opts.explicit_delete,
        lazy: BinaryHeap::new(),
        queued: BTreeSet::new(),
        enqueued: 0,
    };
    let mut later: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if p.x <= start {
            st.od.push(i);
        } else {
            later.push(i);
        }
    }
    let mut initial = std::mem::take(&mut st.od);
    initial.sort_by(|&a, &b| st.before_cmp(a, b));
    st.od = initial;
    for (p, &i) in st.od.iter().enumerate() {
        st.pos[i] = p;
    }
    for p in 1..st.od.len() {
        st.schedule(st.od[p - 1], st.od[p]);
    }
    later.sort_by_key(|&i| (points[i].x, i));

    let start_at: Abscissa = Ratio::from_integer(start as i128);
    let mut audits: Vec<Abscissa> = opts.audits.iter().filter(|a| **a >= start_at).cloned().collect();
    audits.sort();

    let (mut ni, mut nq, mut na) = (0, 0, 0);
    loop {
        let ins = later.get(ni).map(|&i| Ratio::from_integer(points[i].x as i128));
        let swp = st.next_swap();
        let aud = audits.get(na).cloned();
        let qry = qorder.get(nq).map(|&j| Ratio::from_integer(queries[j].xq as i128));
        if ins.is_none() && aud.is_none() && qry.is_none() {
            break;
        }
        let now = [&ins, &swp, &aud, &qry].into_iter().flatten().min().cloned().unwrap();
        if ins.as_ref() == Some(&now) {
            st.xd = now;
            st.insert(later[ni]);
            ni += 1;
            report.inserts += 1;
        } else if swp.as_ref() == Some(&now) {
            let (at, a, b) = st.pop_swap();
            if st.swap(at, a, b) {
                report.swaps += 1;
            } else {
                report.stale_events += 1;
            }
        } else if aud.as_ref() == Some(&now) {
            st.xd = now.clone();
            report.audits_run += 1;
            if !st.audit(&now) {
                report.audit_failures.push(now);
            }
            na += 1;
        } else {
            st.xd = now;
            let j = qorder[nq];
            let q = queries[j];
            report.answers[j] = if q.k == 0 {
                Err(Error::RankOutOfRange { k: 0, total: st.od.len() })
            } else if q.k > st.od.len() {
                Err(Error::RankExceedsEligible { query: j, k: q.k, eligible: st.od.len() })
            } else {
                let point = st.od[q.k - 1];
                let squared = squared_distance(points[point], q.xq);
                Ok(QueryAnswer { point, squared, distance: (squared as f64).sqrt() })
            };
            nq += 1;
        }
    }
    report.events_enqueued = st.enqueued;
    Ok(report)
}
