//! Expected-linear exact diameter search by corner-distance pruning.
//!
//! The box around the input is split at its center into `2^K` corner regions.
//! A point's distance to the farthest box corner bounds its distance to every
//! other point, so once a pair at distance `d_M` is known, any point whose
//! farthest-corner distance is below `d_M` cannot be an endpoint of a longer
//! pair and is dropped. The few survivors are compared across regions:
//! diagonally opposite regions first, then the remaining region pairs unless
//! their distance bound already falls below `d_M`.
//!
//! `d_M` is only ever raised by distances of actual point pairs. Corner
//! distances are upper bounds and feed the per-region extremes only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{squared_distance, BoundingBox, Point, RegionId};
use crate::pointset::PointSet;
use crate::result::{DiameterResult, PairMax, PairStage, PairTrace, Stats, Trace};

const MAX_CORNERS: usize = 8;

/// How `reduce` decides whether a region member can still matter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// Keep points whose farthest-corner distance is at least `d_M`.
    #[default]
    Circular,
    /// Keep points on the region-corner side of the hyperplane through the
    /// points where the `d_M` sphere (shrunk by a relative `1e-9`) crosses the
    /// box edges at that corner. Never drops a point the circular test keeps.
    LinearChord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneConfig {
    pub predicate: Predicate,
    /// Scan non-diagonal region pairs whose bound exceeds `d_M`. Turning this
    /// off can return a pair shorter than the diameter.
    pub neighbor_stage: bool,
    /// Collect a [`Trace`] of the run in the result stats.
    pub counters_enabled: bool,
}

impl Default for PruneConfig {
    fn default() -> Self {
        Self { predicate: Predicate::Circular, neighbor_stage: true, counters_enabled: false }
    }
}

impl PruneConfig {
    pub fn with_predicate(predicate: Predicate) -> Self {
        Self { predicate, ..Self::default() }
    }

    pub fn traced(mut self) -> Self {
        self.counters_enabled = true;
        self
    }
}

/// Seed candidates gathered in one pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeSet {
    /// Per axis, `(argmin, argmax)` of that coordinate.
    pub axis_extremes: Vec<(usize, usize)>,
    /// Per corner (bit `j` set = max side of axis `j`), the point farthest from it.
    pub corner_farthest: Vec<usize>,
    /// Per corner, the point nearest to it.
    pub corner_nearest: Vec<usize>,
}

impl ExtremeSet {
    /// Deduplicated candidate pool, ascending.
    pub fn pool(&self) -> Vec<usize> {
        let mut pool: Vec<usize> = self
            .axis_extremes
            .iter()
            .flat_map(|&(lo, hi)| [lo, hi])
            .chain(self.corner_farthest.iter().copied())
            .chain(self.corner_nearest.iter().copied())
            .collect();
        pool.sort_unstable();
        pool.dedup();
        pool
    }
}

/// Single pass collecting axis extremes and the farthest and nearest point
/// for every box corner. Ties go to the lowest index.
pub fn collect_extremes<const K: usize>(
    points: &[Point<K>],
    bbox: &BoundingBox<K>,
) -> Result<ExtremeSet> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let nc = RegionId::count(K);
    let mut axis_lo = [0usize; K];
    let mut axis_hi = [0usize; K];
    let mut far = [0usize; MAX_CORNERS];
    let mut far_d = [f64::NEG_INFINITY; MAX_CORNERS];
    let mut near = [0usize; MAX_CORNERS];
    let mut near_d = [f64::INFINITY; MAX_CORNERS];

    for (i, p) in points.iter().enumerate() {
        let mut lo2 = [0.0; K];
        let mut hi2 = [0.0; K];
        for j in 0..K {
            if p[j] < points[axis_lo[j]][j] {
                axis_lo[j] = i;
            }
            if p[j] > points[axis_hi[j]][j] {
                axis_hi[j] = i;
            }
            let lo = p[j] - bbox.min[j];
            let hi = bbox.max[j] - p[j];
            lo2[j] = lo * lo;
            hi2[j] = hi * hi;
        }
        for c in 0..nc {
            let mut d = 0.0;
            for j in 0..K {
                d += if c >> j & 1 == 1 { hi2[j] } else { lo2[j] };
            }
            if d > far_d[c] {
                far_d[c] = d;
                far[c] = i;
            }
            if d < near_d[c] {
                near_d[c] = d;
                near[c] = i;
            }
        }
    }

    Ok(ExtremeSet {
        axis_extremes: axis_lo.into_iter().zip(axis_hi).collect(),
        corner_farthest: far[..nc].to_vec(),
        corner_nearest: near[..nc].to_vec(),
    })
}

/// All-pairs maximum over the candidate pool.
pub fn initial_estimate<const K: usize>(extremes: &ExtremeSet, points: &[Point<K>]) -> PairMax {
    let pool = extremes.pool();
    let mut best = PairMax::EMPTY;
    for (a, &i) in pool.iter().enumerate() {
        for &j in &pool[a + 1..] {
            best.offer(squared_distance(&points[i], &points[j]), i, j);
        }
    }
    best
}

/// Surviving members of one corner region.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Region {
    pub members: Vec<usize>,
    /// Member with the largest farthest-corner distance.
    pub extreme: Option<usize>,
    pub extreme_dist_sq: f64,
}

impl Region {
    fn refresh_extreme<const K: usize>(&mut self, points: &[Point<K>], bbox: &BoundingBox<K>) {
        self.extreme = None;
        self.extreme_dist_sq = 0.0;
        for &i in &self.members {
            let d = bbox.corner_distance_sq(&points[i]);
            if self.extreme.is_none() || d > self.extreme_dist_sq {
                self.extreme = Some(i);
                self.extreme_dist_sq = d;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionPartition<const K: usize> {
    pub bbox: BoundingBox<K>,
    pub regions: Vec<Region>,
    /// Points that failed the partition threshold.
    pub discarded: usize,
}

impl<const K: usize> RegionPartition<K> {
    pub fn region(&self, r: RegionId) -> &Region {
        &self.regions[r.0 as usize]
    }

    pub fn survivors(&self) -> usize {
        self.regions.iter().map(|r| r.members.len()).sum()
    }

    /// Drops members of region `r` that cannot reach `d_m_sq` under
    /// `predicate`, then recomputes the region's extreme point.
    pub fn reduce(&mut self, r: RegionId, points: &[Point<K>], d_m_sq: f64, predicate: Predicate) {
        let bbox = self.bbox;
        let region = &mut self.regions[r.0 as usize];
        match predicate {
            Predicate::Circular => {
                region.members.retain(|&i| bbox.corner_distance_sq(&points[i]) >= d_m_sq);
            }
            Predicate::LinearChord => match ChordFilter::new(&bbox, d_m_sq) {
                ChordFilter::KeepAll => {}
                ChordFilter::DiscardAll => region.members.clear(),
                ChordFilter::Plane(weights) => {
                    let corner = bbox.own_corner(r);
                    region.members.retain(|&i| {
                        let p = &points[i];
                        let mut s = 0.0;
                        for j in 0..K {
                            s += weights[j] * (p[j] - corner[j]).abs();
                        }
                        s <= 1.0 + CHORD_TOLERANCE
                    });
                }
            },
        }
        region.refresh_extreme(points, &bbox);
    }
}

/// Relative slack on the hyperplane test; covers rounding in the weighted sum.
const CHORD_TOLERANCE: f64 = 1e-12;
/// Relative shrink of the radius before building the hyperplane, so discarded
/// points sit strictly inside the `d_M` sphere.
const CHORD_SHRINK: f64 = 1e-9;

/// The linear separation test shared by all regions of one box and `d_M`.
///
/// In coordinates `y_j = |p_j - C_j|` measured from a region's own corner `C`,
/// the shrunk sphere around the opposite corner meets the edge along axis `j`
/// at `y_j = t_j`. The kept side of the hyperplane is `sum(y_j / t_j) <= 1`.
/// Everything in the box beyond it lies in the convex hull of those edge
/// crossings and the other box corners, all inside the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
enum ChordFilter<const K: usize> {
    KeepAll,
    DiscardAll,
    Plane([f64; K]),
}

impl<const K: usize> ChordFilter<K> {
    fn new(bbox: &BoundingBox<K>, d_m_sq: f64) -> Self {
        // same value the circular test computes for a region's own corner,
        // the largest farthest-corner distance any point can have
        if bbox.diagonal_sq() < d_m_sq {
            return ChordFilter::DiscardAll;
        }
        let sides = bbox.sides();
        let r = d_m_sq.sqrt() * (1.0 - CHORD_SHRINK);
        let r_sq = r * r;
        let mut weights = [0.0; K];
        let mut active = false;
        for j in 0..K {
            if sides[j] <= 0.0 {
                continue;
            }
            active = true;
            let rest: f64 = (0..K).filter(|&i| i != j).map(|i| sides[i] * sides[i]).sum();
            if r_sq < rest {
                return ChordFilter::KeepAll;
            }
            let t = sides[j] - (r_sq - rest).sqrt();
            if !(t > 0.0) {
                return ChordFilter::KeepAll;
            }
            weights[j] = 1.0 / t;
        }
        if active {
            ChordFilter::Plane(weights)
        } else {
            ChordFilter::KeepAll
        }
    }
}

/// Splits points into corner regions, keeping those whose farthest-corner
/// distance is at least `d_m_sq`. `d_m_sq` itself is left alone.
pub fn partition_filter<const K: usize>(
    points: &[Point<K>],
    bbox: &BoundingBox<K>,
    d_m_sq: f64,
) -> RegionPartition<K> {
    let center = bbox.center();
    let mut regions = vec![Region::default(); RegionId::count(K)];
    let mut discarded = 0;
    for (i, p) in points.iter().enumerate() {
        let mut bits = 0usize;
        let mut d = 0.0;
        for j in 0..K {
            if p[j] >= center[j] {
                bits |= 1 << j;
            }
            let lo = p[j] - bbox.min[j];
            let hi = bbox.max[j] - p[j];
            let e = if lo >= hi { lo } else { hi };
            d += e * e;
        }
        if d >= d_m_sq {
            let region = &mut regions[bits];
            region.members.push(i);
            if region.extreme.is_none() || d > region.extreme_dist_sq {
                region.extreme = Some(i);
                region.extreme_dist_sq = d;
            }
        } else {
            discarded += 1;
        }
    }
    RegionPartition { bbox: *bbox, regions, discarded }
}

/// Raises `current` with the best pair among the regions' extreme points.
pub fn refresh_estimate<const K: usize>(
    part: &RegionPartition<K>,
    points: &[Point<K>],
    current: PairMax,
) -> PairMax {
    let extremes: Vec<usize> = part.regions.iter().filter_map(|r| r.extreme).collect();
    let mut best = current;
    for (a, &i) in extremes.iter().enumerate() {
        for &j in &extremes[a + 1..] {
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            best.offer(squared_distance(&points[lo], &points[hi]), lo, hi);
        }
    }
    best
}

/// Maximum squared distance over `a × b`.
pub fn cross_pair_max<const K: usize>(a: &[usize], b: &[usize], points: &[Point<K>]) -> PairMax {
    let mut best = PairMax::EMPTY;
    for &i in a {
        let p = &points[i];
        for &j in b {
            best.offer(squared_distance(p, &points[j]), i, j);
        }
    }
    best
}

#[inline]
fn pair_count(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Exact diameter by corner-distance pruning. The squared distance returned
/// equals the brute-force maximum bit for bit; the reported pair may be a
/// different one of several tying pairs.
pub fn max_distance(ps: &PointSet, cfg: &PruneConfig) -> Result<DiameterResult> {
    ps.require_pairs()?;
    match ps.dim() {
        2 => max_distance_points(ps.as_points::<2>().unwrap(), cfg),
        3 => max_distance_points(ps.as_points::<3>().unwrap(), cfg),
        d => Err(Error::UnsupportedDim(d)),
    }
}

/// [`max_distance`] on a typed slice.
pub fn max_distance_points<const K: usize>(
    points: &[Point<K>],
    cfg: &PruneConfig,
) -> Result<DiameterResult> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if K > 3 {
        return Err(Error::UnsupportedDim(K));
    }
    let bbox = BoundingBox::from_points(points)?;
    let mut stats = Stats::default();
    if bbox.is_point() {
        stats.stages.degenerate = true;
        return Ok(DiameterResult::new(0.0, (0, 1), stats));
    }

    let extremes = collect_extremes(points, &bbox)?;
    let best = initial_estimate(&extremes, points);
    stats.stage_evals.seed = pair_count(extremes.pool().len());

    let part = partition_filter(points, &bbox, best.dist_sq);
    let nonempty = part.regions.iter().filter(|r| r.extreme.is_some()).count();
    let mut trace = cfg.counters_enabled.then(|| Trace {
        partition_sizes: part.regions.iter().map(|r| r.members.len()).collect(),
        discarded: part.discarded,
        d_m_history: vec![best.dist_sq],
        pairs: Vec::new(),
    });

    let best = refresh_estimate(&part, points, best);
    stats.stage_evals.refresh = pair_count(nonempty);
    if let Some(t) = trace.as_mut() {
        t.d_m_history.push(best.dist_sq);
    }

    let mut search = Search {
        points,
        part,
        best,
        cfg,
        reduced_at: vec![f64::NAN; RegionId::count(K)],
        entered: vec![None; RegionId::count(K)],
        stats,
        trace,
    };

    let diagonal_sq = bbox.diagonal_sq();
    for r in RegionId::all(K).take(RegionId::count(K) / 2) {
        search.scan(r, r.complement(K), PairStage::Diagonal, diagonal_sq);
    }
    search.stats.stages.diagonal = true;

    let mut neighbors: Vec<(RegionId, RegionId, f64)> = RegionId::all(K)
        .flat_map(|a| RegionId::all(K).filter(move |&b| a < b && b != a.complement(K)).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, bbox.region_pair_bound_sq(a, b).unwrap()))
        .collect();
    neighbors.sort_by(|x, y| y.2.partial_cmp(&x.2).unwrap());
    for (a, b, bound_sq) in neighbors {
        if search.best.dist_sq > bound_sq {
            search.skip(a, b, bound_sq);
        } else if cfg.neighbor_stage {
            search.scan(a, b, PairStage::Neighbor, bound_sq);
            search.stats.stages.neighbor_pairs_run += 1;
        }
    }

    Ok(search.finish())
}

struct Search<'a, const K: usize> {
    points: &'a [Point<K>],
    part: RegionPartition<K>,
    best: PairMax,
    cfg: &'a PruneConfig,
    /// `d_M` at each region's last reduction (NaN before the first).
    reduced_at: Vec<f64>,
    /// Region size when it first took part in a cross scan.
    entered: Vec<Option<usize>>,
    stats: Stats,
    trace: Option<Trace>,
}

impl<const K: usize> Search<'_, K> {
    fn reduce(&mut self, r: RegionId) {
        let d = self.best.dist_sq;
        let idx = r.0 as usize;
        if self.reduced_at[idx] != d {
            self.part.reduce(r, self.points, d, self.cfg.predicate);
            self.reduced_at[idx] = d;
        }
    }

    fn scan(&mut self, a: RegionId, b: RegionId, stage: PairStage, bound_sq: f64) {
        let d_m_sq = self.best.dist_sq;
        self.reduce(a);
        self.reduce(b);
        let (ra, rb) = (self.part.region(a), self.part.region(b));
        let (la, lb) = (ra.members.len(), rb.members.len());
        if la > 0 && lb > 0 {
            let found = cross_pair_max(&ra.members, &rb.members, self.points);
            if let Some((i, j)) = found.pair {
                let (i, j) = if i < j { (i, j) } else { (j, i) };
                self.best.offer(found.dist_sq, i, j);
            }
            for (r, len) in [(a, la), (b, lb)] {
                self.entered[r.0 as usize].get_or_insert(len);
            }
        }
        let evals = (la * lb) as u64;
        match stage {
            PairStage::Diagonal => self.stats.stage_evals.diagonal += evals,
            PairStage::Neighbor => self.stats.stage_evals.neighbor += evals,
        }
        if let Some(t) = self.trace.as_mut() {
            t.pairs.push(PairTrace { stage, a, b, d_m_sq, bound_sq, scanned: Some((la, lb)) });
            t.d_m_history.push(self.best.dist_sq);
        }
    }

    fn skip(&mut self, a: RegionId, b: RegionId, bound_sq: f64) {
        self.stats.stages.neighbor_pairs_skipped += 1;
        if let Some(t) = self.trace.as_mut() {
            t.pairs.push(PairTrace {
                stage: PairStage::Neighbor,
                a,
                b,
                d_m_sq: self.best.dist_sq,
                bound_sq,
                scanned: None,
            });
        }
    }

    fn finish(mut self) -> DiameterResult {
        self.stats.distance_evals = self.stats.stage_evals.total();
        self.stats.survivors = self.entered.iter().flatten().sum();
        self.stats.trace = self.trace;
        // the seed pool always holds the two extremes of a non-zero side
        let pair = self.best.pair.expect("non-degenerate box yields a seed pair");
        DiameterResult::new(self.best.dist_sq, pair, self.stats)
    }
}
