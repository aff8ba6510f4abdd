//! Baseline diameter algorithms: the all-pairs scan and two planar
//! convex-hull pipelines. They double as correctness oracles.

use crate::error::{Error, Result};
use crate::geom::{squared_distance, Point};
use crate::pointset::PointSet;
use crate::result::{DiameterResult, PairMax, Stats};

/// All-pairs scan. Reports the first maximizing pair in `i < j` scan order.
pub fn brute_force_diameter(ps: &PointSet) -> Result<DiameterResult> {
    ps.require_pairs()?;
    let best = match ps.dim() {
        2 => brute_force(ps.as_points::<2>().unwrap()),
        3 => brute_force(ps.as_points::<3>().unwrap()),
        d => return Err(Error::UnsupportedDim(d)),
    };
    let n = ps.len() as u64;
    let stats = Stats { distance_evals: n * (n - 1) / 2, ..Stats::default() };
    Ok(DiameterResult::new(best.dist_sq, best.pair.unwrap(), stats))
}

pub(crate) fn brute_force<const K: usize>(pts: &[Point<K>]) -> PairMax {
    let mut best = PairMax::EMPTY;
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            best.offer(squared_distance(p, q), i, j);
        }
    }
    best
}

#[inline]
fn cross(o: &Point<2>, a: &Point<2>, b: &Point<2>) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Monotone-chain hull. Returns indices of the strictly convex hull in
/// counter-clockwise order, starting from the lexicographically smallest
/// point. Duplicate coordinates are represented by their lowest index;
/// collinear inputs collapse to their two endpoints.
pub fn convex_hull_2d(ps: &PointSet) -> Result<Vec<usize>> {
    let pts = ps.as_points::<2>().ok_or(Error::PlanarOnly(ps.dim()))?;
    if pts.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(hull_indices(pts))
}

fn hull_indices(pts: &[Point<2>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    // coordinates are finite, so partial_cmp never fails
    order.sort_unstable_by(|&a, &b| {
        pts[a][0]
            .partial_cmp(&pts[b][0])
            .unwrap()
            .then(pts[a][1].partial_cmp(&pts[b][1]).unwrap())
            .then(a.cmp(&b))
    });
    order.dedup_by(|a, b| pts[*a] == pts[*b]);
    if order.len() <= 2 {
        return order;
    }

    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    for &i in &order {
        while hull.len() >= 2
            && cross(&pts[hull[hull.len() - 2]], &pts[hull[hull.len() - 1]], &pts[i]) <= 0.0
        {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(&pts[hull[hull.len() - 2]], &pts[hull[hull.len() - 1]], &pts[i]) <= 0.0
        {
            hull.pop();
        }
        hull.push(i);
    }
    // the first point closes the upper chain
    hull.pop();
    hull
}

fn hull_stats(h: usize, evals: u64) -> Stats {
    Stats { distance_evals: evals, hull_size: h, survivors: h, ..Stats::default() }
}

/// Hull followed by an all-pairs scan over the hull vertices.
pub fn hull_diameter_bf(ps: &PointSet) -> Result<DiameterResult> {
    let hull = convex_hull_2d(ps)?;
    ps.require_pairs()?;
    let pts = ps.as_points::<2>().unwrap();
    let h = hull.len();
    if h == 1 {
        return Ok(DiameterResult::new(0.0, (0, 1), hull_stats(1, 0)));
    }
    let mut best = PairMax::EMPTY;
    for (a, &i) in hull.iter().enumerate() {
        for &j in &hull[a + 1..] {
            best.offer(squared_distance(&pts[i], &pts[j]), i, j);
        }
    }
    let evals = (h * (h - 1) / 2) as u64;
    Ok(DiameterResult::new(best.dist_sq, best.pair.unwrap(), hull_stats(h, evals)))
}

/// Hull followed by a rotating-calipers sweep over antipodal vertex pairs.
pub fn hull_diameter_calipers(ps: &PointSet) -> Result<DiameterResult> {
    let hull = convex_hull_2d(ps)?;
    ps.require_pairs()?;
    let pts = ps.as_points::<2>().unwrap();
    let h = hull.len();
    match h {
        1 => return Ok(DiameterResult::new(0.0, (0, 1), hull_stats(1, 0))),
        2 => {
            let (i, j) = (hull[0], hull[1]);
            let d = squared_distance(&pts[i], &pts[j]);
            return Ok(DiameterResult::new(d, (i, j), hull_stats(2, 1)));
        }
        _ => {}
    }

    let q: Vec<Point<2>> = hull.iter().map(|&i| pts[i]).collect();
    let edge = |a: usize| -> Point<2> {
        let b = (a + 1) % h;
        [q[b][0] - q[a][0], q[b][1] - q[a][1]]
    };
    let mut best = PairMax::EMPTY;
    let mut evals = 0u64;
    let mut j = 1;
    for i in 0..h {
        let ni = (i + 1) % h;
        let e = edge(i);
        // advance j while the next vertex is strictly farther from edge i
        loop {
            let f = edge(j);
            if e[0] * f[1] - e[1] * f[0] > 0.0 {
                j = (j + 1) % h;
            } else {
                break;
            }
        }
        let nj = (j + 1) % h;
        // parallel edges make all four endpoint pairs antipodal
        for (a, b) in [(i, j), (ni, j), (i, nj), (ni, nj)] {
            if a != b {
                best.offer(squared_distance(&q[a], &q[b]), hull[a], hull[b]);
                evals += 1;
            }
        }
    }
    Ok(DiameterResult::new(best.dist_sq, best.pair.unwrap(), hull_stats(h, evals)))
}
