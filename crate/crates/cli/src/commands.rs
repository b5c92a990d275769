//! One function per file-driven subcommand. Each takes the file contents
//! rather than paths so the self-test can run them on embedded fixtures.

use anyhow::{anyhow, bail, Context, Result};
use rangekit::io::{self, MedianCommand, RangeCommand};
use rangekit::sweep::QueryAnswer;
use rangekit::*;

/// Text of the files named on the command line.
#[derive(Debug, Clone, Copy)]
pub struct Inputs<'a> {
    pub input: Option<&'a str>,
    pub queries: Option<&'a str>,
    pub updates: Option<&'a str>,
    pub agg: AggOp,
    pub z: Option<usize>,
}

impl<'a> Inputs<'a> {
    pub fn new(agg: AggOp) -> Self {
        Inputs { input: None, queries: None, updates: None, agg, z: None }
    }

    fn input(&self) -> Result<&'a str> {
        self.input.ok_or_else(|| anyhow!("--input is required"))
    }

    fn queries(&self) -> Result<&'a str> {
        self.queries.ok_or_else(|| anyhow!("--queries is required"))
    }

    fn updates(&self) -> Result<&'a str> {
        self.updates.ok_or_else(|| anyhow!("--updates is required"))
    }
}

/// Answer lines, plus messages for lines that failed. A failed line still
/// occupies its slot in `answers` as `ERR`.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub answers: Vec<String>,
    pub errors: Vec<String>,
}

impl Outcome {
    fn push(&mut self, item: usize, r: rangekit::Result<String>) {
        match r {
            Ok(s) => self.answers.push(s),
            Err(e) => {
                self.answers.push("ERR".into());
                self.errors.push(format!("item {}: {e}", item + 1));
            }
        }
    }
}

fn file<T>(name: &str, r: rangekit::Result<T>) -> Result<T> {
    r.with_context(|| format!("reading {name}"))
}

pub fn cube_query(inp: &Inputs) -> Result<Outcome> {
    let cube = file("cube", io::parse_cube(inp.input()?, inp.agg))?;
    let boxes = file("queries", io::parse_cell_boxes(inp.queries()?, cube.dims().len()))?;
    let pc = build_prefix_sweep(&cube)?;
    let mut out = Outcome::default();
    for (j, b) in boxes.iter().enumerate() {
        out.push(j, pc.query(b).map(|w| w.to_string()));
    }
    Ok(out)
}

/// Applies the stamps on top of the input cube and prints the result, one
/// line per run of the last dimension.
pub fn cube_batch_update(inp: &Inputs) -> Result<Outcome> {
    let cube = file("cube", io::parse_cube(inp.input()?, inp.agg))?;
    let stamps = file("updates", io::parse_stamps(inp.updates()?, cube.dims().len()))?;
    let batch = batched_range_updates(cube.dims(), &stamps, inp.agg)?;
    let cells = cube
        .cells()
        .iter()
        .zip(batch.cube.cells())
        .map(|(&a, &b)| inp.agg.combine(a, b))
        .collect::<rangekit::Result<Vec<Weight>>>()?;
    let row = *cube.dims().last().unwrap();
    let answers = cells.chunks(row).map(|r| join(r)).collect();
    Ok(Outcome { answers, errors: Vec::new() })
}

pub fn rtree_query(inp: &Inputs) -> Result<Outcome> {
    let ps = file("points", io::parse_points_csv(inp.input()?))?;
    let script = file("queries", io::parse_range_script(inp.queries()?, ps.dims()))?;
    let with_updates = script.iter().any(|c| matches!(c, RangeCommand::Add(..)));
    let mut tree = RangeTree::build(&ps, inp.agg, with_updates)?;
    let mut out = Outcome::default();
    for (j, cmd) in script.iter().enumerate() {
        match cmd {
            RangeCommand::Query(b) => out.push(j, tree.query(b).map(|w| w.to_string())),
            RangeCommand::Set(c, w) => {
                if let Err(e) = tree.point_update(c, *w) {
                    out.errors.push(format!("item {}: {e}", j + 1));
                }
            }
            RangeCommand::Add(b, u) => {
                if let Err(e) = tree.range_update(b, *u) {
                    out.errors.push(format!("item {}: {e}", j + 1));
                }
            }
        }
    }
    Ok(out)
}

pub fn tree_subtree(inp: &Inputs) -> Result<Outcome> {
    let tree = file("tree", io::parse_tree(inp.input()?))?;
    let queries = file("queries", io::parse_subtree_queries(inp.queries()?, tree.len()))?;
    let index = SubtreeIndex::build(&tree, inp.agg)?;
    let mut out = Outcome::default();
    for (j, &(i, d1, d2)) in queries.iter().enumerate() {
        out.push(j, index.query(i, d1, d2).map(|w| w.to_string()));
    }
    Ok(out)
}

pub fn stations(inp: &Inputs) -> Result<Outcome> {
    let line = StationLine::new(&file("stations", io::parse_stations(inp.input()?))?)?;
    let (effort, start) = line.min_collapse_effort()?;
    Ok(Outcome { answers: vec![format!("{effort} {start}")], errors: Vec::new() })
}

/// Each rank runs against a fresh oracle, so the probe count is per query.
pub fn kth_seq(inp: &Inputs) -> Result<Outcome> {
    let seqs = file("sequences", io::parse_sequences(inp.input()?))?;
    let queries = file("queries", io::parse_rank_queries(inp.queries()?, seqs.len()))?;
    let mut out = Outcome::default();
    for (j, q) in queries.iter().enumerate() {
        let mut src = SequenceOracle::new(seqs.clone())?;
        let sel = match &q.windows {
            None => kth_smallest(&mut src, q.k, KthOptions::default()),
            Some((a, b)) => kth_in_subranges(&mut src, a, b, q.k, KthOptions::default()),
        };
        out.push(j, sel.map(|s| format!("{} {}", s.value, src.probes())));
    }
    Ok(out)
}

pub fn median(inp: &Inputs) -> Result<Outcome> {
    let (axes, weights) = file("cube", io::parse_median_cube(inp.input()?))?;
    let d = axes.len();
    let mut cube = MedianCube::new(axes, weights)?;
    let script = file("queries", io::parse_median_script(inp.queries()?, d))?;
    let mut out = Outcome::default();
    for (j, cmd) in script.iter().enumerate() {
        let applied = match cmd {
            MedianCommand::Query(b) => {
                out.push(j, cube.query(b).map(|m| format!("{} {}", join(&m.point), m.cost)));
                continue;
            }
            MedianCommand::Point(c, delta) => cube.point_update(c, *delta),
            MedianCommand::Range(b, u) => cube.range_update(b, *u),
        };
        if let Err(e) = applied {
            out.errors.push(format!("item {}: {e}", j + 1));
        }
    }
    Ok(out)
}

pub fn seqedit(inp: &Inputs) -> Result<Outcome> {
    let (initial, ops) = file("script", io::parse_seq_script(inp.input()?))?;
    let run = match inp.z {
        Some(z) if z >= 1 => grouped_run(&initial, &ops, z)?,
        Some(_) => bail!("--z must be at least 1"),
        None => run_script(&initial, &ops)?,
    };
    Ok(Outcome { answers: run.answers.iter().map(Weight::to_string).collect(), errors: Vec::new() })
}

pub fn rotstack(inp: &Inputs) -> Result<Outcome> {
    let (k, m, ops) = file("script", io::parse_stack_script(inp.input()?))?;
    let order = run_stack(k, m, &ops)?;
    Ok(Outcome { answers: vec![join(&order)], errors: Vec::new() })
}

pub fn sweep_kth(inp: &Inputs) -> Result<Outcome> {
    let points = file("points", io::parse_planar_points(inp.input()?))?;
    let queries = file("queries", io::parse_distance_queries(inp.queries()?))?;
    let report = solve_offline(&points, &queries)?;
    let answers = report
        .answers
        .iter()
        .map(|a: &rangekit::Result<QueryAnswer>| match a {
            Ok(a) => a.distance.to_string(),
            Err(_) => "ERR rank".to_string(),
        })
        .collect();
    Ok(Outcome { answers, errors: Vec::new() })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

