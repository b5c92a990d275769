//! Parsers for the plain-text input formats.
//!
//! Blank lines and lines starting with `#` are ignored everywhere. Line numbers
//! in [`Error::Parse`] are 1-based and refer to the original text.

use std::str::FromStr;

use crate::agg::{AggOp, Weight};
use crate::error::{Error, Result};
use crate::prefix_cube::{CellBox, DenseCube, RangeStamp};
use crate::range_tree::{Point, PointSet, RangeBox};
use crate::rotstack::StackOp;
use crate::seqedit::SeqOp;
use crate::sweep::{DistanceQuery, PlanarPoint};
use crate::tree_queries::{RootedTree, UNBOUNDED};

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| bad(line, format!("bad number `{tok}`")))
}

fn nums<T: FromStr>(line: usize, l: &str) -> Result<Vec<T>> {
    l.split_whitespace().map(|t| num(line, t)).collect()
}

/// All whitespace-separated tokens with the line each came from.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    lines(text).flat_map(|(n, l)| l.split_whitespace().map(move |t| (n, t))).collect()
}

struct Cursor<'a> {
    toks: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { toks: tokens(text), at: 0 }
    }

    fn line(&self) -> usize {
        self.toks.get(self.at).or(self.toks.last()).map_or(1, |t| t.0)
    }

    fn next<T: FromStr>(&mut self, what: &str) -> Result<T> {
        let (n, t) = *self.toks.get(self.at).ok_or_else(|| bad(self.line(), format!("missing {what}")))?;
        self.at += 1;
        num(n, t)
    }

    fn done(&self) -> Result<()> {
        match self.toks.get(self.at) {
            Some(&(n, t)) => Err(bad(n, format!("unexpected trailing `{t}`"))),
            None => Ok(()),
        }
    }
}

/// `x1,...,xd,w` per line; `d` is the column count minus one.
pub fn parse_points_csv(text: &str) -> Result<PointSet> {
    let mut d = None;
    let mut pts = Vec::new();
    for (n, l) in lines(text) {
        let cols: Vec<i64> = l.split(',').map(|t| num(n, t.trim())).collect::<Result<_>>()?;
        if cols.len() < 2 {
            return Err(bad(n, "need at least one coordinate and a weight"));
        }
        let here = cols.len() - 1;
        if *d.get_or_insert(here) != here {
            return Err(bad(n, format!("expected {} columns", d.unwrap() + 1)));
        }
        pts.push(Point::new(cols[..here].to_vec(), cols[here]));
    }
    PointSet::new(d.ok_or(Error::EmptyPointSet)?, pts)
}

/// One line of a range-tree script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeCommand {
    /// `Q lo1 hi1 … lod hid`; the tag may be omitted.
    Query(RangeBox),
    /// `P x1 … xd w`: set the weight of an existing point.
    Set(Vec<i64>, Weight),
    /// `RU lo1 hi1 … lod hid u`
    Add(RangeBox, Weight),
}

fn interleaved_box(line: usize, v: &[i64]) -> Result<RangeBox> {
    let lo = v.iter().step_by(2).copied().collect();
    let hi = v.iter().skip(1).step_by(2).copied().collect();
    RangeBox::new(lo, hi).map_err(|e| bad(line, e.to_string()))
}

pub fn parse_range_script(text: &str, d: usize) -> Result<Vec<RangeCommand>> {
    lines(text)
        .map(|(n, l)| {
            let (tag, rest) = match l.split_once(char::is_whitespace) {
                Some((t, r)) if t.chars().all(char::is_alphabetic) => (t.to_ascii_uppercase(), r),
                _ => ("Q".to_string(), l),
            };
            let v: Vec<i64> = nums(n, rest)?;
            let want = match tag.as_str() {
                "Q" => 2 * d,
                "P" => d + 1,
                "RU" => 2 * d + 1,
                _ => return Err(bad(n, format!("unknown command `{tag}`"))),
            };
            if v.len() != want {
                return Err(bad(n, format!("expected {want} numbers, got {}", v.len())));
            }
            Ok(match tag.as_str() {
                "Q" => RangeCommand::Query(interleaved_box(n, &v)?),
                "P" => RangeCommand::Set(v[..d].to_vec(), v[d]),
                _ => RangeCommand::Add(interleaved_box(n, &v[..2 * d])?, v[2 * d]),
            })
        })
        .collect()
}

fn read_dims(c: &mut Cursor) -> Result<Vec<usize>> {
    let d: usize = c.next("dimension count")?;
    if d == 0 {
        return Err(bad(c.line(), "dimension count must be positive"));
    }
    let dims: Vec<usize> = (0..d).map(|_| c.next("axis length")).collect::<Result<_>>()?;
    if dims.contains(&0) {
        return Err(bad(c.line(), "axis lengths must be positive"));
    }
    Ok(dims)
}

/// `d m1 … md` then the cells in row-major order.
pub fn parse_cube(text: &str, op: AggOp) -> Result<DenseCube> {
    let mut c = Cursor::new(text);
    let dims = read_dims(&mut c)?;
    let np: usize = dims.iter().product();
    let cells = (0..np).map(|_| c.next("cell value")).collect::<Result<Vec<Weight>>>()?;
    c.done()?;
    DenseCube::new(dims, cells, op)
}

fn to_cells(line: usize, v: &[i64]) -> Result<Vec<usize>> {
    v.iter().map(|&x| usize::try_from(x).map_err(|_| bad(line, format!("negative cell index {x}")))).collect()
}

fn interleaved_cells(line: usize, v: &[i64]) -> Result<CellBox> {
    let c = to_cells(line, v)?;
    Ok(CellBox::new(c.iter().step_by(2).copied().collect(), c.iter().skip(1).step_by(2).copied().collect()))
}

/// `lo1 hi1 … lod hid` per line, 1-based.
pub fn parse_cell_boxes(text: &str, d: usize) -> Result<Vec<CellBox>> {
    lines(text)
        .map(|(n, l)| {
            let v: Vec<i64> = nums(n, l)?;
            if v.len() != 2 * d {
                return Err(bad(n, format!("expected {} numbers, got {}", 2 * d, v.len())));
            }
            interleaved_cells(n, &v)
        })
        .collect()
}

/// `xa1 xb1 … xad xbd u` per line.
pub fn parse_stamps(text: &str, d: usize) -> Result<Vec<RangeStamp>> {
    lines(text)
        .map(|(n, l)| {
            let v: Vec<i64> = nums(n, l)?;
            if v.len() != 2 * d + 1 {
                return Err(bad(n, format!("expected {} numbers, got {}", 2 * d + 1, v.len())));
            }
            Ok(RangeStamp { cells: interleaved_cells(n, &v[..2 * d])?, u: v[2 * d] })
        })
        .collect()
}

fn vertex(line: usize, v: i64, n: usize) -> Result<usize> {
    if v < 1 || v as usize > n {
        return Err(bad(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v as usize - 1)
}

/// `n root`, then `n - 1` lines `parent child length`, then the `n` weights.
/// Vertices are numbered from 1 in the file and from 0 in the result.
pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let mut c = Cursor::new(text);
    let n: usize = c.next("vertex count")?;
    if n == 0 {
        return Err(bad(c.line(), "tree needs at least one vertex"));
    }
    let root_line = c.line();
    let root = vertex(root_line, c.next("root")?, n)?;
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let l = c.line();
        let p = vertex(l, c.next("parent")?, n)?;
        let ch = vertex(l, c.next("child")?, n)?;
        edges.push((p, ch, c.next("edge length")?));
    }
    let weights = (0..n).map(|_| c.next("vertex weight")).collect::<Result<Vec<Weight>>>()?;
    c.done()?;
    RootedTree::new(root, &edges, weights)
}

/// `i d1 d2` per line with 1-based `i`; `d2 = -1` means no upper limit.
pub fn parse_subtree_queries(text: &str, n: usize) -> Result<Vec<(usize, i64, i64)>> {
    lines(text)
        .map(|(ln, l)| {
            let v: Vec<i64> = nums(ln, l)?;
            let [i, d1, d2] = v[..] else {
                return Err(bad(ln, "expected `i d1 d2`"));
            };
            Ok((vertex(ln, i, n)?, d1, if d2 == -1 { UNBOUNDED } else { d2 }))
        })
        .collect()
}

/// `n`, then `n` lines `s r c`.
pub fn parse_stations(text: &str) -> Result<Vec<(i64, i64, i64)>> {
    let mut c = Cursor::new(text);
    let n: usize = c.next("station count")?;
    let st = (0..n)
        .map(|_| Ok((c.next("s")?, c.next("r")?, c.next("c")?)))
        .collect::<Result<Vec<_>>>()?;
    c.done()?;
    Ok(st)
}

/// `n`, then per sequence `b v1 … vb`.
pub fn parse_sequences(text: &str) -> Result<Vec<Vec<Weight>>> {
    let mut c = Cursor::new(text);
    let n: usize = c.next("sequence count")?;
    let mut seqs = Vec::with_capacity(n);
    for _ in 0..n {
        let b: usize = c.next("sequence length")?;
        seqs.push((0..b).map(|_| c.next("sequence value")).collect::<Result<Vec<_>>>()?);
    }
    c.done()?;
    Ok(seqs)
}

/// A rank, optionally restricted to per-sequence windows `[a(i), b(i)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankQuery {
    pub k: usize,
    pub windows: Option<(Vec<usize>, Vec<usize>)>,
}

/// `k` or `k a1 b1 … an bn` per line.
pub fn parse_rank_queries(text: &str, n: usize) -> Result<Vec<RankQuery>> {
    lines(text)
        .map(|(ln, l)| {
            let v: Vec<usize> = nums(ln, l)?;
            match v.len() {
                1 => Ok(RankQuery { k: v[0], windows: None }),
                len if len == 1 + 2 * n => Ok(RankQuery {
                    k: v[0],
                    windows: Some((v[1..].iter().step_by(2).copied().collect(), v[2..].iter().step_by(2).copied().collect())),
                }),
                len => Err(bad(ln, format!("expected 1 or {} numbers, got {len}", 1 + 2 * n))),
            }
        })
        .collect()
}

/// `d m1 … md`, one line of coordinates per axis, then the weights row-major.
pub fn parse_median_cube(text: &str) -> Result<(Vec<Vec<i64>>, Vec<Weight>)> {
    let mut c = Cursor::new(text);
    let dims = read_dims(&mut c)?;
    let axes = dims
        .iter()
        .map(|&m| (0..m).map(|_| c.next("axis coordinate")).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let np: usize = dims.iter().product();
    let weights = (0..np).map(|_| c.next("cell weight")).collect::<Result<Vec<_>>>()?;
    c.done()?;
    Ok((axes, weights))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MedianCommand {
    /// `Q lo1 hi1 … lod hid`
    Query(CellBox),
    /// `U c1 … cd delta`
    Point(Vec<usize>, Weight),
    /// `RU lo1 hi1 … lod hid u`
    Range(CellBox, Weight),
}

pub fn parse_median_script(text: &str, d: usize) -> Result<Vec<MedianCommand>> {
    lines(text)
        .map(|(n, l)| {
            let (tag, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            let v: Vec<i64> = nums(n, rest)?;
            let tag = tag.to_ascii_uppercase();
            let want = match tag.as_str() {
                "Q" => 2 * d,
                "U" => d + 1,
                "RU" => 2 * d + 1,
                _ => return Err(bad(n, format!("unknown command `{tag}`"))),
            };
            if v.len() != want {
                return Err(bad(n, format!("expected {want} numbers, got {}", v.len())));
            }
            Ok(match tag.as_str() {
                "Q" => MedianCommand::Query(interleaved_cells(n, &v)?),
                "U" => MedianCommand::Point(to_cells(n, &v[..d])?, v[d]),
                _ => MedianCommand::Range(interleaved_cells(n, &v[..2 * d])?, v[2 * d]),
            })
        })
        .collect()
}

/// Header `n v1 … vn`, then `R i j`, `C i j p`, `I p k v1 … vk` or `Q i`.
pub fn parse_seq_script(text: &str) -> Result<(Vec<Weight>, Vec<SeqOp>)> {
    let mut it = lines(text);
    let (hn, header) = it.next().ok_or_else(|| bad(1, "missing header"))?;
    let h: Vec<i64> = nums(hn, header)?;
    if h.is_empty() || h[0] < 0 || h.len() != h[0] as usize + 1 {
        return Err(bad(hn, "header must be `n v1 … vn`"));
    }
    let initial = h[1..].to_vec();
    let ops = it
        .map(|(n, l)| {
            let mut parts = l.split_whitespace();
            let tag = parts.next().unwrap_or_default().to_ascii_uppercase();
            let rest: Vec<i64> = parts.map(|t| num(n, t)).collect::<Result<_>>()?;
            let pos = |x: i64| usize::try_from(x).map_err(|_| bad(n, format!("negative position {x}")));
            match (tag.as_str(), &rest[..]) {
                ("R", &[i, j]) => Ok(SeqOp::Reverse(pos(i)?, pos(j)?)),
                ("C", &[i, j, p]) => Ok(SeqOp::CutPaste(pos(i)?, pos(j)?, p)),
                ("Q", &[i]) => Ok(SeqOp::Query(pos(i)?)),
                ("I", [p, k, vs @ ..]) if *k >= 0 && vs.len() == *k as usize => Ok(SeqOp::Insert(pos(*p)?, vs.to_vec())),
                _ => Err(bad(n, format!("malformed operation `{l}`"))),
            }
        })
        .collect::<Result<_>>()?;
    Ok((initial, ops))
}

/// Header `K M`, then `P x` or `ROT` per line.
pub fn parse_stack_script(text: &str) -> Result<(usize, usize, Vec<StackOp>)> {
    let mut it = lines(text);
    let (hn, header) = it.next().ok_or_else(|| bad(1, "missing header"))?;
    let [k, m] = nums::<usize>(hn, header)?[..] else {
        return Err(bad(hn, "header must be `K M`"));
    };
    if k == 0 {
        return Err(bad(hn, "K must be positive"));
    }
    let ops = it
        .map(|(n, l)| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            match &parts[..] {
                [p, x] if p.eq_ignore_ascii_case("P") => Ok(StackOp::Push(num(n, x)?)),
                [r] if r.eq_ignore_ascii_case("ROT") => Ok(StackOp::Rotate),
                _ => Err(bad(n, format!("malformed operation `{l}`"))),
            }
        })
        .collect::<Result<_>>()?;
    Ok((k, m, ops))
}

/// `x y` per line.
pub fn parse_planar_points(text: &str) -> Result<Vec<PlanarPoint>> {
    lines(text)
        .map(|(n, l)| match nums::<i64>(n, l)?[..] {
            [x, y] => Ok(PlanarPoint { x, y }),
            _ => Err(bad(n, "expected `x y`")),
        })
        .collect()
}

/// `xq k` per line.
pub fn parse_distance_queries(text: &str) -> Result<Vec<DistanceQuery>> {
    lines(text)
        .map(|(n, l)| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            match parts[..] {
                [xq, k] => Ok(DistanceQuery { xq: num(n, xq)?, k: num(n, k)? }),
                _ => Err(bad(n, "expected `xq k`")),
            }
        })
        .collect()
}
