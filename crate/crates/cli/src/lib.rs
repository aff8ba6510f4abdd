//! The `maxdist` command-line tool.
//!
//! Exit statuses: 0 on success, 1 on usage or input errors, 2 when `verify`
//! finds a disagreement with brute force.

pub mod pointfile;
pub mod verify;

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use maxdist_bench::{emit, sweep, Format, SweepConfig};
use maxdist_core::{generate, Algorithm, DiameterResult, Distribution, GenSpec};

use crate::pointfile::{fmt_f64, read_point_file, write_point_file};
use crate::verify::{verify, VerifyOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "maxdist", version, about = "Exact diameter of 2D and 3D point sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded point set and write it as a point file.
    Gen(GenArgs),
    /// Compute the diameter of a point file.
    Diameter(DiameterArgs),
    /// Time algorithms over generated data and write CSV or JSON reports.
    Bench(BenchArgs),
    /// Compare the pruned search with brute force on random inputs.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value = "uniform", value_parser = parse_dist)]
    pub dist: Distribution,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 1.0)]
    pub aspect: f64,
    #[arg(long, default_value_t = 0.1)]
    pub sigma: f64,
    #[arg(long, default_value_t = 5)]
    pub clusters: usize,
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    Circular,
    Linear,
}

#[derive(Debug, Args)]
pub struct DiameterArgs {
    /// brute, hull_bf, hull_calipers, fast, fast_circular or fast_linear.
    #[arg(long, default_value = "fast", value_parser = parse_algo)]
    pub algo: Algorithm,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Pruning predicate for the fast algorithm.
    #[arg(long, value_enum)]
    pub filter: Option<Filter>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "uniform", value_parser = parse_dist)]
    pub dists: Vec<Distribution>,
    #[arg(long, value_delimiter = ',', default_value = "brute,fast", value_parser = parse_algo)]
    pub algos: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 200_000)]
    pub bf_ceiling: usize,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 1.0)]
    pub aspect: f64,
    /// Output directory for the report files.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Write a single JSON report instead of the two CSV files.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 256)]
    pub max_n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed dimension; drawn per trial from {2, 3} when absent.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Directory for point files of failing cases.
    #[arg(long, default_value = ".")]
    pub dump_dir: PathBuf,
}

fn parse_dist(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|e: maxdist_core::Error| e.to_string())
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: maxdist_core::Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            status
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out).map(|()| EXIT_OK),
        Command::Diameter(a) => cmd_diameter(&a, out).map(|()| EXIT_OK),
        Command::Bench(a) => cmd_bench(&a, out).map(|()| EXIT_OK),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let spec = GenSpec {
        dist: a.dist,
        n: a.n,
        dim: a.dim,
        seed: a.seed,
        aspect: a.aspect,
        sigma: a.sigma,
        clusters: a.clusters,
        jitter: a.jitter,
        radius: a.radius,
    };
    let ps = generate(&spec)?;
    let file = File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    write_point_file(BufWriter::new(file), &ps, a.seed, a.dist.name())
        .with_context(|| format!("writing {}", a.out.display()))?;
    writeln!(out, "wrote {} points to {}", ps.len(), a.out.display())?;
    Ok(())
}

fn resolve_algo(algo: Algorithm, filter: Option<Filter>) -> anyhow::Result<Algorithm> {
    match (algo, filter) {
        (_, None) => Ok(algo),
        (Algorithm::FastCircular | Algorithm::FastLinear, Some(Filter::Circular)) => Ok(Algorithm::FastCircular),
        (Algorithm::FastCircular | Algorithm::FastLinear, Some(Filter::Linear)) => Ok(Algorithm::FastLinear),
        (other, Some(_)) => bail!("--filter only applies to the fast algorithm, not {other}"),
    }
}

pub fn cmd_diameter(a: &DiameterArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let algo = resolve_algo(a.algo, a.filter)?;
    let file = File::open(&a.input).with_context(|| format!("opening {}", a.input.display()))?;
    let (_, ps) = read_point_file(BufReader::new(file)).with_context(|| format!("reading {}", a.input.display()))?;
    let res = algo.run(&ps)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&res)?)?;
    } else {
        print_result(algo, &res, out)?;
    }
    Ok(())
}

fn print_result(algo: Algorithm, res: &DiameterResult, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "algo={algo}")?;
    writeln!(out, "diameter={}", fmt_f64(res.dist))?;
    writeln!(out, "dist_sq={}", fmt_f64(res.dist_sq))?;
    writeln!(out, "pair={} {}", res.pair.0, res.pair.1)?;
    writeln!(out, "distance_evals={}", res.stats.distance_evals)?;
    writeln!(out, "hull_size={}", res.stats.hull_size)?;
    writeln!(out, "survivors={}", res.stats.survivors)
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let cfg = SweepConfig {
        sizes: a.sizes.clone(),
        dists: a.dists.clone(),
        algos: a.algos.clone(),
        seeds: a.seeds.clone(),
        reps: a.reps,
        dim: a.dim,
        aspect: a.aspect,
        bf_ceiling: a.bf_ceiling,
    };
    let report = sweep(&cfg)?;
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let format = if a.json { Format::Json } else { Format::Csv };
    for path in emit(&report, format, &a.out)? {
        writeln!(out, "wrote {}", path.display())?;
    }
    for s in &report.skipped {
        writeln!(out, "skipped {} n={} dist={} seed={}: {}", s.algo, s.n, s.dist, s.seed, s.reason)?;
    }
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let opts = VerifyOptions {
        trials: a.trials,
        max_n: a.max_n,
        seed: a.seed,
        dim: a.dim,
        dump_dir: a.dump_dir.clone(),
    };
    Ok(verify(&opts, out)?.exit_status())
}
