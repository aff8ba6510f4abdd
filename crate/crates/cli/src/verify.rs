//! Differential verification of the pruned search against brute force.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use maxdist_core::{
    brute_force_diameter, generate, DiameterResult, Distribution, GenSpec, PointSet, Predicate, PruneConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pointfile::write_point_file;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub max_n: usize,
    pub seed: u64,
    /// Fixed dimension, or `None` to draw 2 or 3 per trial.
    pub dim: Option<usize>,
    /// Where offending point files are written.
    pub dump_dir: PathBuf,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { trials: 1000, max_n: 256, seed: 0, dim: None, dump_dir: PathBuf::from(".") }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub trial: usize,
    pub spec: GenSpec,
    pub predicate: Predicate,
    pub expected_sq: f64,
    /// `None` when the candidate returned an error.
    pub got_sq: Option<f64>,
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyOutcome {
    pub trials: usize,
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyOutcome {
    pub fn exit_status(&self) -> u8 {
        if self.mismatches.is_empty() { 0 } else { 2 }
    }
}

/// Draws one trial's generator settings, including extreme aspects and
/// degenerate distributions.
pub fn random_spec(rng: &mut impl Rng, max_n: usize, dim: Option<usize>) -> GenSpec {
    let dist = Distribution::ALL[rng.random_range(0..Distribution::ALL.len())];
    let n = rng.random_range(2..=max_n.max(2));
    let dim = dim.unwrap_or_else(|| rng.random_range(2..=3));
    let aspect = match rng.random_range(0..4) {
        0 => 1.0,
        1 => rng.random_range(1.0..4.0),
        2 => 10f64.powf(rng.random_range(0.0..4.0)),
        _ => 1e6,
    };
    let jitter = if rng.random_bool(0.5) { 0.0 } else { rng.random_range(0.0..0.1) };
    GenSpec {
        dist,
        n,
        dim,
        seed: rng.random(),
        aspect,
        sigma: 10f64.powf(rng.random_range(-4.0..0.0)),
        clusters: rng.random_range(1..=8),
        jitter,
        radius: 1.0,
    }
}

fn dump(dir: &Path, trial: usize, spec: &GenSpec, ps: &PointSet) -> std::io::Result<PathBuf> {
    let path = dir.join(format!("mismatch-{trial:05}-{}-n{}-d{}.txt", spec.dist, spec.n, spec.dim));
    let mut out = BufWriter::new(File::create(&path)?);
    write_point_file(&mut out, ps, spec.seed, spec.dist.name())?;
    out.flush()?;
    Ok(path)
}

/// Runs `opts.trials` random cases, comparing `candidate` under both
/// predicates with brute force by exact equality of squared distances.
/// Mismatches are reported to `log` and dumped as point files.
pub fn verify_with<F>(opts: &VerifyOptions, candidate: F, log: &mut dyn Write) -> anyhow::Result<VerifyOutcome>
where
    F: Fn(&PointSet, &PruneConfig) -> maxdist_core::Result<DiameterResult>,
{
    anyhow::ensure!(opts.trials >= 1, "--trials must be at least 1");
    anyhow::ensure!(opts.max_n >= 2, "--max-n must be at least 2");
    if let Some(d) = opts.dim {
        anyhow::ensure!(matches!(d, 2 | 3), "--dim must be 2 or 3");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut outcome = VerifyOutcome { trials: opts.trials, ..VerifyOutcome::default() };
    for trial in 0..opts.trials {
        let spec = random_spec(&mut rng, opts.max_n, opts.dim);
        let ps = generate(&spec)?;
        let expected = brute_force_diameter(&ps)?.dist_sq;
        let mut dumped: Option<PathBuf> = None;
        for predicate in [Predicate::Circular, Predicate::LinearChord] {
            outcome.comparisons += 1;
            let got = candidate(&ps, &PruneConfig::with_predicate(predicate)).ok().map(|r| r.dist_sq);
            if got.is_some_and(|g| g.to_bits() == expected.to_bits()) {
                continue;
            }
            if dumped.is_none() {
                match dump(&opts.dump_dir, trial, &spec, &ps) {
                    Ok(p) => dumped = Some(p),
                    Err(e) => writeln!(log, "trial {trial}: could not write point file: {e}")?,
                }
            }
            writeln!(
                log,
                "MISMATCH trial {trial} {predicate:?}: expected dist_sq {expected:?}, got {} for {spec:?}{}",
                got.map_or_else(|| "an error".to_owned(), |g| format!("{g:?}")),
                dumped.as_ref().map(|p| format!(" (replay: {})", p.display())).unwrap_or_default(),
            )?;
            outcome.mismatches.push(Mismatch {
                trial,
                spec: spec.clone(),
                predicate,
                expected_sq: expected,
                got_sq: got,
                file: dumped.clone(),
            });
        }
    }
    writeln!(
        log,
        "verify: {} trials, {} comparisons, {} mismatches",
        outcome.trials,
        outcome.comparisons,
        outcome.mismatches.len()
    )?;
    Ok(outcome)
}

pub fn verify(opts: &VerifyOptions, log: &mut dyn Write) -> anyhow::Result<VerifyOutcome> {
    verify_with(opts, maxdist_core::max_distance, log)
}
