//! Range aggregation over point sets, dense cubes and trees, plus k-th
//! selection and sequence-maintenance structures.
//!
//! Every fast structure has a brute-force counterpart in [`oracles`]; the test
//! suites compare the two on random instances built by [`gen`].

pub mod agg;
pub mod cascade;
pub mod error;
pub mod gen;
pub mod io;
pub mod kth;
pub mod median;
pub mod oracles;
pub mod prefix_cube;
pub mod range_tree;
pub mod rotstack;
pub mod seqedit;
pub mod stations;
pub mod sum_grid;
pub mod sweep;
pub mod tree_queries;

mod rmq;
mod shape;

pub use agg::{AggOp, Weight};
pub use cascade::{CascadeCost, CascadeIndex2D};
pub use error::{Error, Result};
pub use kth::{kth_in_subranges, kth_smallest, KthOptions, Probe, SequenceOracle, Selection};
pub use median::{l1_median, weighted_lsq_point, BoxMedian, L1Median, MedianCube};
pub use prefix_cube::{batched_range_updates, build_prefix_naive, build_prefix_sweep, CellBox, DenseCube, PrefixCube, RangeStamp};
pub use range_tree::{Point, PointSet, RangeBox, RangeTree};
pub use rotstack::{run_stack, RotStack, StackOp};
pub use seqedit::{grouped_run, run_script, GroupedEditor, IntervalList, SeqOp};
pub use stations::StationLine;
pub use sum_grid::SumGrid;
pub use sweep::{solve_offline, solve_offline_with, DistanceQuery, PlanarPoint, QueryAnswer, SweepOptions, SweepReport};
pub use tree_queries::{dfs_flatten, FlatTree, RootedTree, SubtreeIndex, UNBOUNDED};
