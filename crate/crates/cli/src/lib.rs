//! The `graphsym` command line.
//!
//! Every command is reachable through [`run`], which takes its I/O streams
//! as arguments so tests can drive the binary in-process.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;

pub use commands::classify::classify_stream;
pub use commands::graphs::{graph_experiment, GraphRow};
pub use commands::trees::{tree_experiment, TreeRow};
pub use commands::verify::{verify_formulas, ClosedForms, FormulaSet, PublishedForms};

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A verification or assertion did not hold.
    Failed,
}

/// Bad flags or bad input; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser, Debug)]
#[command(
    name = "graphsym",
    version,
    about = "Cherry statistics and (quantum) symmetry of graphs and random trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the closed-form cherry counts against exhaustive enumeration.
    VerifyFormulas(VerifyArgs),
    /// Sample uniform random trees and tabulate cherries and symmetry.
    TreeExperiment(TreeArgs),
    /// Sample G(n, 1/2) and tabulate how often the coherent algebra is full.
    GraphExperiment(GraphArgs),
    /// Classify graph6 graphs (one per line) from a file or standard input.
    Classify(ClassifyArgs),
    /// Exact and large-n moments of the cherry count.
    Moments(MomentsArgs),
    /// Write uniform random trees as graph6 lines.
    SampleTrees(SampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

/// `--n 20`, or an inclusive range `--n 4..8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSpec(pub RangeInclusive<usize>);

impl FromStr for NSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad vertex count {x:?}: {e}"))
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?);
                if a > b {
                    return Err(format!("empty range {s}"));
                }
                Ok(Self(a..=b))
            }
            None => {
                let a = parse(s)?;
                Ok(Self(a..=a))
            }
        }
    }
}

fn expand(ns: &[NSpec]) -> Vec<usize> {
    ns.iter().flat_map(|s| s.0.clone()).collect()
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Parallel {
    /// Worker threads (defaults to one per core). Results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Caps {
    /// Largest n for exhaustive automorphism search.
    #[arg(long, default_value_t = graphsym::DEFAULT_BRUTE_FORCE_CAP)]
    pub cap_brute: usize,
    /// Largest n for WL-2 refinement.
    #[arg(long, default_value_t = graphsym::DEFAULT_WL_CAP)]
    pub cap_wl: usize,
}

impl Caps {
    fn options(&self) -> anyhow::Result<graphsym::ClassifyOptions> {
        if self.cap_brute == 0 || self.cap_wl == 0 {
            return Err(usage("caps must be positive"));
        }
        Ok(graphsym::ClassifyOptions {
            brute_force_cap: self.cap_brute,
            wl_cap: self.cap_wl,
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Check every n from 4 up to this value.
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value_t = graphsym::DEFAULT_ENUMERATION_CAP)]
    pub cap_enum: usize,
    /// Which second-moment expression to check.
    #[arg(long, value_enum, default_value = "corrected")]
    pub second_moment: SecondMoment,
    #[command(flatten)]
    pub parallel: Parallel,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SecondMoment {
    /// Disjoint ordered pairs plus the diagonal counted once.
    Corrected,
    /// The published expression, whose diagonal term is doubled.
    Published,
}

#[derive(Args, Debug, Clone)]
pub struct TreeArgs {
    /// Vertex counts; repeat the flag or give a range a..b.
    #[arg(long = "n", required = true, num_args = 1..)]
    pub n: Vec<NSpec>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub caps: Caps,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub parallel: Parallel,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    #[arg(long = "n", required = true, num_args = 1..)]
    pub n: Vec<NSpec>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub caps: Caps,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub parallel: Parallel,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    /// graph6 file; standard input when absent or `-`.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub caps: Caps,
    /// `text` writes one JSON verdict per line.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct MomentsArgs {
    #[arg(long = "n", required = true, num_args = 1..)]
    pub n: Vec<NSpec>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub count: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Standard streams, injectable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

fn open_out<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> anyhow::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(stdout),
    })
}

fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> anyhow::Result<T> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(usage("--workers must be positive")),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build()?;
            Ok(pool.install(f))
        }
    }
}

/// Runs one parsed command.
pub fn execute(cli: Cli, io: &mut Io<'_>) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::VerifyFormulas(a) => {
            let mut out = open_out(&a.out, io.stdout)?;
            let outcome = with_workers(a.parallel.workers, || {
                let mut report = Vec::new();
                let outcome = match a.second_moment {
                    SecondMoment::Corrected => {
                        verify_formulas(a.n_max, a.cap_enum, &ClosedForms, &mut report)
                    }
                    SecondMoment::Published => {
                        verify_formulas(a.n_max, a.cap_enum, &PublishedForms, &mut report)
                    }
                };
                outcome.map(|o| (o, report))
            })??;
            out.write_all(&outcome.1)?;
            out.flush()?;
            Ok(outcome.0)
        }
        Command::TreeExperiment(a) => {
            let ns = expand(&a.n);
            let opts = a.caps.options()?;
            let rows = with_workers(a.parallel.workers, || {
                tree_experiment(&ns, a.trials, a.seed, &opts)
            })??;
            let mut out = open_out(&a.output.out, io.stdout)?;
            commands::trees::write_rows(&rows, a.output.format, &mut out)?;
            out.flush()?;
            Ok(if rows.iter().all(|r| r.certificate_failures == 0) {
                Outcome::Success
            } else {
                Outcome::Failed
            })
        }
        Command::GraphExperiment(a) => {
            let ns = expand(&a.n);
            let opts = a.caps.options()?;
            let rows = with_workers(a.parallel.workers, || {
                graph_experiment(&ns, a.trials, a.seed, &opts)
            })??;
            let mut out = open_out(&a.output.out, io.stdout)?;
            commands::graphs::write_rows(&rows, a.output.format, &mut out)?;
            out.flush()?;
            Ok(if rows.iter().all(|r| r.violations == 0) {
                Outcome::Success
            } else {
                Outcome::Failed
            })
        }
        Command::Classify(a) => {
            let opts = a.caps.options()?;
            let mut out = open_out(&a.out, io.stdout)?;
            let outcome = match &a.input {
                Some(p) if p.as_os_str() != "-" => {
                    let file =
                        File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
                    classify_stream(BufReader::new(file), &opts, a.format, &mut out, io.stderr)?
                }
                _ => classify_stream(&mut *io.stdin, &opts, a.format, &mut out, io.stderr)?,
            };
            out.flush()?;
            Ok(outcome)
        }
        Command::Moments(a) => {
            let mut out = open_out(&a.output.out, io.stdout)?;
            commands::moments::write_moments(&expand(&a.n), a.output.format, &mut out)?;
            out.flush()?;
            Ok(Outcome::Success)
        }
        Command::SampleTrees(a) => {
            let mut out = open_out(&a.out, io.stdout)?;
            commands::sample::write_trees(a.n, a.count, a.seed, &mut out)?;
            out.flush()?;
            Ok(Outcome::Success)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code: 0 success, 1 failed verification,
/// 2 usage or input error.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if e.use_stderr() {
                e.render().to_string()
            } else {
                e.to_string()
            };
            let sink: &mut dyn Write = if e.use_stderr() { io.stderr } else { io.stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(cli, io) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some()
                || e.downcast_ref::<graphsym::Error>().is_some()
            {
                2
            } else {
                1
            }
        }
    }
}

/// [`run`] against the real process streams.
pub fn run_with_std_streams<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    let mut stderr = io::stderr();
    run(
        args,
        &mut Io {
            stdin: &mut stdin,
            stdout: &mut stdout,
            stderr: &mut stderr,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_specs() {
        assert_eq!("7".parse::<NSpec>().unwrap(), NSpec(7..=7));
        assert_eq!("4..8".parse::<NSpec>().unwrap(), NSpec(4..=8));
        assert_eq!("4..=8".parse::<NSpec>().unwrap(), NSpec(4..=8));
        assert!("8..4".parse::<NSpec>().is_err());
        assert!("x".parse::<NSpec>().is_err());
        assert_eq!(expand(&[NSpec(4..=5), NSpec(9..=9)]), vec![4, 5, 9]);
    }
}
