//! Timing harness for the diameter algorithms.
//!
//! Each case runs once untimed, then `reps` times on a monotonic clock; the
//! median is recorded together with the hardware-independent counters.
//! [`sweep`] runs the cartesian product of sizes, distributions, seeds and
//! algorithms and derives speedup ratios per `(n, dist)`.

mod report;

use std::hint::black_box;
use std::time::Instant;

use maxdist_core::{generate, Algorithm, Distribution, GenSpec, PointSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{emit, to_json, write_ratios_csv, write_records_csv, Format};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] maxdist_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("invalid benchmark setup: {0}")]
    Config(String),
    #[error("diameter mismatch on {dist} n={n} seed={seed}: {algo} gave {got}, expected {expected}")]
    DiameterMismatch { algo: Algorithm, dist: String, n: usize, seed: u64, got: f64, expected: f64 },
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;

/// One timed measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algo: Algorithm,
    pub n: usize,
    pub dim: usize,
    pub dist: String,
    pub seed: u64,
    pub aspect: f64,
    pub reps: usize,
    /// Median wall time in nanoseconds.
    pub wall_ns: u64,
    pub diameter: f64,
    pub distance_evals: u64,
    pub hull_size: usize,
    pub survivors: usize,
}

/// Speedup ratios for one `(n, dist)` group; `None` where an algorithm family is missing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: usize,
    pub dist: String,
    pub bf_over_hull: Option<f64>,
    pub bf_over_fast: Option<f64>,
    pub hull_over_fast: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedCase {
    pub algo: Algorithm,
    pub n: usize,
    pub dist: String,
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub ratios: Vec<RatioRow>,
    pub skipped: Vec<SkippedCase>,
}

/// Labels copied into a record; they describe where the point set came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseLabel {
    pub dist: String,
    pub seed: u64,
    pub aspect: f64,
}

impl From<&GenSpec> for CaseLabel {
    fn from(spec: &GenSpec) -> Self {
        Self { dist: spec.dist.name().to_owned(), seed: spec.seed, aspect: spec.aspect }
    }
}

fn median_ns(times: &mut [u128]) -> u64 {
    times.sort_unstable();
    let mid = times.len() / 2;
    let m = if times.len() % 2 == 1 { times[mid] } else { (times[mid - 1] + times[mid]) / 2 };
    u64::try_from(m).unwrap_or(u64::MAX).max(1)
}

/// Warmup run, then `reps` timed runs. Counters come from the last run.
pub fn run_case(algo: Algorithm, ps: &PointSet, label: &CaseLabel, reps: usize) -> Result<BenchRecord> {
    if reps == 0 {
        return Err(BenchError::Config("reps must be at least 1".into()));
    }
    let mut last = black_box(algo.run(black_box(ps))?);
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        last = black_box(algo.run(black_box(ps))?);
        times.push(start.elapsed().as_nanos());
    }
    Ok(BenchRecord {
        algo,
        n: ps.len(),
        dim: ps.dim(),
        dist: label.dist.clone(),
        seed: label.seed,
        aspect: label.aspect,
        reps,
        wall_ns: median_ns(&mut times),
        diameter: last.dist,
        distance_evals: last.stats.distance_evals,
        hull_size: last.stats.hull_size,
        survivors: last.stats.survivors,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub sizes: Vec<usize>,
    pub dists: Vec<Distribution>,
    pub algos: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub reps: usize,
    pub dim: usize,
    pub aspect: f64,
    /// Brute force is skipped above this size.
    pub bf_ceiling: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            sizes: vec![1000],
            dists: vec![Distribution::Uniform],
            algos: vec![Algorithm::Brute, Algorithm::FastCircular],
            seeds: vec![1],
            reps: 3,
            dim: 2,
            aspect: 1.0,
            bf_ceiling: 200_000,
        }
    }
}

pub fn sweep(cfg: &SweepConfig) -> Result<BenchReport> {
    if cfg.sizes.is_empty() || cfg.dists.is_empty() || cfg.algos.is_empty() || cfg.seeds.is_empty() {
        return Err(BenchError::Config("sizes, dists, algos and seeds must be nonempty".into()));
    }
    if let Some(&n) = cfg.sizes.iter().find(|&&n| n < 2) {
        return Err(BenchError::Config(format!("size {n} is below 2")));
    }
    let mut report = BenchReport::default();
    for &n in &cfg.sizes {
        for &dist in &cfg.dists {
            for &seed in &cfg.seeds {
                let spec = GenSpec { aspect: cfg.aspect, ..GenSpec::new(dist, n, cfg.dim, seed) };
                let ps = generate(&spec)?;
                let label = CaseLabel::from(&spec);
                let mut reference: Option<f64> = None;
                for &algo in &cfg.algos {
                    let skip = |reason: &str| SkippedCase {
                        algo,
                        n,
                        dist: label.dist.clone(),
                        seed,
                        reason: reason.to_owned(),
                    };
                    if algo == Algorithm::Brute && n > cfg.bf_ceiling {
                        report.skipped.push(skip("above brute-force ceiling"));
                        continue;
                    }
                    if algo.is_planar_only() && cfg.dim != 2 {
                        report.skipped.push(skip("planar only"));
                        continue;
                    }
                    let rec = run_case(algo, &ps, &label, cfg.reps)?;
                    match reference {
                        None => reference = Some(rec.diameter),
                        Some(expected) if expected.to_bits() != rec.diameter.to_bits() => {
                            return Err(BenchError::DiameterMismatch {
                                algo,
                                dist: label.dist,
                                n,
                                seed,
                                got: rec.diameter,
                                expected,
                            });
                        }
                        Some(_) => {}
                    }
                    report.records.push(rec);
                }
            }
        }
    }
    report.ratios = ratio_rows(&report.records);
    Ok(report)
}

fn family_time(records: &[&BenchRecord], family: &[Algorithm], seed: u64) -> Option<u64> {
    family.iter().find_map(|a| records.iter().find(|r| r.algo == *a && r.seed == seed).map(|r| r.wall_ns))
}

fn ratio(records: &[&BenchRecord], num: &[Algorithm], den: &[Algorithm]) -> Option<f64> {
    let mut seeds: Vec<u64> = records.iter().map(|r| r.seed).collect();
    seeds.sort_unstable();
    seeds.dedup();
    let (mut a, mut b) = (0u128, 0u128);
    for seed in seeds {
        if let (Some(x), Some(y)) = (family_time(records, num, seed), family_time(records, den, seed)) {
            a += x as u128;
            b += y as u128;
        }
    }
    (b > 0).then(|| a as f64 / b as f64)
}

/// Ratios of summed median times over the seeds where both sides ran.
pub fn ratio_rows(records: &[BenchRecord]) -> Vec<RatioRow> {
    const BF: &[Algorithm] = &[Algorithm::Brute];
    const HULL: &[Algorithm] = &[Algorithm::HullBf, Algorithm::HullCalipers];
    const FAST: &[Algorithm] = &[Algorithm::FastCircular, Algorithm::FastLinear];

    let mut groups: Vec<(usize, &str)> = Vec::new();
    for r in records {
        if !groups.contains(&(r.n, r.dist.as_str())) {
            groups.push((r.n, r.dist.as_str()));
        }
    }
    groups
        .into_iter()
        .map(|(n, dist)| {
            let rows: Vec<&BenchRecord> = records.iter().filter(|r| r.n == n && r.dist == dist).collect();
            RatioRow {
                n,
                dist: dist.to_owned(),
                bf_over_hull: ratio(&rows, BF, HULL),
                bf_over_fast: ratio(&rows, BF, FAST),
                hull_over_fast: ratio(&rows, HULL, FAST),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algo: Algorithm, seed: u64, wall_ns: u64) -> BenchRecord {
        BenchRecord {
            algo,
            n: 100,
            dim: 2,
            dist: "uniform".into(),
            seed,
            aspect: 1.0,
            reps: 3,
            wall_ns,
            diameter: 1.0,
            distance_evals: 0,
            hull_size: 0,
            survivors: 0,
        }
    }

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median_ns(&mut [5, 1, 3]), 3);
        assert_eq!(median_ns(&mut [4, 1, 3, 2]), 2);
        assert_eq!(median_ns(&mut [0]), 1);
    }

    #[test]
    fn ratios_are_quotients_of_medians() {
        let recs = vec![
            record(Algorithm::Brute, 1, 9_000),
            record(Algorithm::HullBf, 1, 300),
            record(Algorithm::FastCircular, 1, 7),
        ];
        let rows = ratio_rows(&recs);
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert!((r.bf_over_hull.unwrap() - 30.0).abs() < 1e-9 * 30.0);
        assert!((r.bf_over_fast.unwrap() - 9000.0 / 7.0).abs() < 1e-9 * 9000.0 / 7.0);
        assert!((r.hull_over_fast.unwrap() - 300.0 / 7.0).abs() < 1e-9 * 300.0 / 7.0);
    }

    #[test]
    fn ratios_only_pair_matching_seeds() {
        let recs = vec![
            record(Algorithm::Brute, 1, 1000),
            record(Algorithm::FastCircular, 1, 10),
            record(Algorithm::FastCircular, 2, 500),
        ];
        let r = &ratio_rows(&recs)[0];
        assert_eq!(r.bf_over_fast, Some(100.0));
        assert_eq!(r.bf_over_hull, None);
    }

    #[test]
    fn run_case_counts_brute_pairs() {
        let label = CaseLabel { dist: "uniform".into(), seed: 0, aspect: 1.0 };
        let ps = generate(&GenSpec::new(Distribution::Uniform, 2, 2, 0)).unwrap();
        let rec = run_case(Algorithm::Brute, &ps, &label, 1).unwrap();
        assert_eq!(rec.distance_evals, 1);
        assert!(rec.wall_ns > 0);
        let ps = generate(&GenSpec::new(Distribution::Uniform, 1000, 2, 0)).unwrap();
        let rec = run_case(Algorithm::Brute, &ps, &label, 3).unwrap();
        assert_eq!(rec.distance_evals, 499_500);
        assert!(run_case(Algorithm::Brute, &ps, &label, 0).is_err());
    }
}
