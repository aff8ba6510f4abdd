use serde::{Deserialize, Serialize};

use crate::geom::RegionId;

/// The exact diameter of a point set together with the pair realizing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiameterResult {
    /// Squared diameter, the exact maximum over computed pairwise squared distances.
    pub dist_sq: f64,
    pub dist: f64,
    /// Indices into the input set, smaller first.
    pub pair: (usize, usize),
    pub stats: Stats,
}

impl DiameterResult {
    pub(crate) fn new(dist_sq: f64, pair: (usize, usize), stats: Stats) -> Self {
        let pair = if pair.0 <= pair.1 { pair } else { (pair.1, pair.0) };
        Self { dist_sq, dist: dist_sq.sqrt(), pair, stats }
    }
}

/// Instrumentation counters. All counters are deterministic for a given input.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    /// Pairwise squared-distance evaluations performed by the search.
    pub distance_evals: u64,
    /// Convex hull vertex count, 0 when no hull was built.
    pub hull_size: usize,
    /// Points that entered a quadratic stage (hull vertices for the hull
    /// pipelines, region survivors for the pruning algorithm, 0 for brute force).
    pub survivors: usize,
    pub stages: StageFlags,
    pub stage_evals: StageEvals,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Trace>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFlags {
    /// All points coincide; the search returned immediately.
    pub degenerate: bool,
    pub diagonal: bool,
    pub neighbor_pairs_run: usize,
    pub neighbor_pairs_skipped: usize,
}

/// Distance evaluations split by stage of the pruning algorithm.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageEvals {
    pub seed: u64,
    pub refresh: u64,
    pub diagonal: u64,
    pub neighbor: u64,
}

impl StageEvals {
    pub fn total(&self) -> u64 {
        self.seed + self.refresh + self.diagonal + self.neighbor
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStage {
    Diagonal,
    Neighbor,
}

/// One region pair visited by the cross-region stages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTrace {
    pub stage: PairStage,
    pub a: RegionId,
    pub b: RegionId,
    /// Running squared lower bound when the pair was reached.
    pub d_m_sq: f64,
    /// Squared upper bound on cross-pair distances for this pair of regions.
    pub bound_sq: f64,
    /// `None` if the pair was skipped, otherwise the list sizes after reduction.
    pub scanned: Option<(usize, usize)>,
}

/// Detailed record of a pruning run, collected when counters are enabled.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    /// Region sizes right after the partition pass.
    pub partition_sizes: Vec<usize>,
    /// Points dropped by the partition pass.
    pub discarded: usize,
    /// Running squared lower bound after seeding, refresh, and each visited pair.
    pub d_m_history: Vec<f64>,
    pub pairs: Vec<PairTrace>,
}

/// Running maximum over evaluated pairs. The first pair offered always
/// registers; later pairs must be strictly farther, so ties keep the earliest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairMax {
    pub dist_sq: f64,
    pub pair: Option<(usize, usize)>,
}

impl Default for PairMax {
    fn default() -> Self {
        Self::EMPTY
    }
}

impl PairMax {
    pub const EMPTY: PairMax = PairMax { dist_sq: 0.0, pair: None };

    #[inline(always)]
    pub fn offer(&mut self, dist_sq: f64, i: usize, j: usize) {
        if dist_sq > self.dist_sq || self.pair.is_none() {
            self.dist_sq = dist_sq;
            self.pair = Some((i, j));
        }
    }

    /// Takes `other` if it is strictly farther (or `self` is still empty).
    pub fn absorb(&mut self, other: PairMax) {
        if let Some((i, j)) = other.pair {
            self.offer(other.dist_sq, i, j);
        }
    }
}
