//! File-driven front end. `main` only forwards to [`run`].

use std::io::Write;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use rangekit::AggOp;

pub mod bench;
pub mod commands;
pub mod corpus;
pub mod selftest;

use commands::{Inputs, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    CubeQuery,
    CubeBatchUpdate,
    RtreeQuery,
    TreeSubtree,
    Stations,
    KthSeq,
    Median,
    Seqedit,
    Rotstack,
    SweepKth,
    Selftest,
    Bench,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "rangekit", version, about = "Range aggregation, selection and sequence tools")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// SUM, PRODUCT, XOR, MIN or MAX (any case).
    #[arg(long, default_value = "SUM", value_parser = parse_agg)]
    pub agg: AggOp,
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long)]
    pub queries: Option<String>,
    #[arg(long)]
    pub updates: Option<String>,
    /// Group size for `seqedit`; omit to run without flattening.
    #[arg(long)]
    pub z: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn parse_agg(s: &str) -> std::result::Result<AggOp, String> {
    s.parse().map_err(|e: rangekit::Error| e.to_string())
}

/// What a run printed and how it should exit.
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Report { stdout: text, stderr: String::new(), code }
            } else {
                Report { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli) {
        Ok((out, ok)) => Report { stdout: out, stderr: String::new(), code: if ok { 0 } else { 1 } },
        Err(Failure { stdout, messages }) => Report { stdout, stderr: messages, code: 1 },
    }
}

struct Failure {
    stdout: String,
    messages: String,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure { stdout: String::new(), messages: format!("error: {e:#}\n") }
    }
}

fn read(path: &Option<String>) -> Result<Option<String>> {
    path.as_ref().map(|p| std::fs::read_to_string(p).with_context(|| format!("cannot read {p}"))).transpose()
}

fn execute(cli: &Cli) -> std::result::Result<(String, bool), Failure> {
    match cli.command {
        Command::Selftest => {
            let (lines, ok) = selftest::run(cli.seed);
            return Ok((lines.join("\n") + "\n", ok));
        }
        Command::Bench => {
            let config = read(&cli.input)?.unwrap_or_else(|| bench::DEFAULT_CONFIG.to_string());
            let rows = bench::run(&config, cli.seed)?;
            let mut out = String::from(bench::HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.to_csv());
                out.push('\n');
            }
            return Ok((out, true));
        }
        _ => {}
    }
    let (input, queries, updates) = (read(&cli.input)?, read(&cli.queries)?, read(&cli.updates)?);
    let inp = Inputs {
        input: input.as_deref(),
        queries: queries.as_deref(),
        updates: updates.as_deref(),
        agg: cli.agg,
        z: cli.z,
    };
    let outcome = dispatch(cli.command, &inp)?;
    let stdout = render(&outcome.answers, cli.format)?;
    if outcome.errors.is_empty() {
        Ok((stdout, true))
    } else {
        let messages = outcome.errors.iter().map(|e| format!("error: {e}\n")).collect();
        Err(Failure { stdout, messages })
    }
}

fn dispatch(cmd: Command, inp: &Inputs) -> Result<Outcome> {
    match cmd {
        Command::CubeQuery => commands::cube_query(inp),
        Command::CubeBatchUpdate => commands::cube_batch_update(inp),
        Command::RtreeQuery => commands::rtree_query(inp),
        Command::TreeSubtree => commands::tree_subtree(inp),
        Command::Stations => commands::stations(inp),
        Command::KthSeq => commands::kth_seq(inp),
        Command::Median => commands::median(inp),
        Command::Seqedit => commands::seqedit(inp),
        Command::Rotstack => commands::rotstack(inp),
        Command::SweepKth => commands::sweep_kth(inp),
        Command::Selftest | Command::Bench => unreachable!("handled before reading inputs"),
    }
}

/// One answer per line, or a one-column CSV with header `answer`.
pub fn render(answers: &[String], format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(answers.iter().map(|a| format!("{a}\n")).collect()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["answer"])?;
            for a in answers {
                w.write_record([a])?;
            }
            w.flush()?;
            Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?)
        }
    }
}

/// Runs a golden fixture in-process and returns its standard output.
pub fn run_fixture(case: &corpus::Case) -> Result<String> {
    let argv = std::iter::once("rangekit").chain(case.args.split_whitespace());
    let cli = Cli::try_parse_from(argv).with_context(|| format!("bad args line `{}`", case.args.trim()))?;
    let inp = Inputs { input: case.input, queries: case.queries, updates: case.updates, agg: cli.agg, z: cli.z };
    let outcome = dispatch(cli.command, &inp)?;
    if !outcome.errors.is_empty() {
        anyhow::bail!("{}", outcome.errors.join("; "));
    }
    render(&outcome.answers, cli.format)
}

/// Writes a report to the process streams and returns its exit code.
pub fn emit(r: &Report) -> i32 {
    let _ = std::io::stdout().write_all(r.stdout.as_bytes());
    let _ = std::io::stderr().write_all(r.stderr.as_bytes());
    r.code
}
