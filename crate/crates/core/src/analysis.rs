//! Closed-form estimates for uniformly distributed inputs: the central area
//! that can never hold a diameter endpoint, the resulting surviving fraction,
//! the worst-case speedup over the all-pairs scan, and the threshold
//! distances for a box.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::BoundingBox;

/// Threshold distances of a box: `d1` below which the segment-area estimate
/// applies, `d2` the box diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub d1: f64,
    pub d2: f64,
}

/// `d1² = max(side)² + ½·min(side)²`, `d2² = Σ side²`.
pub fn table1_bounds<const K: usize>(bbox: &BoundingBox<K>) -> BoundPair {
    let sides = bbox.sides();
    let max = sides.iter().copied().fold(0.0, f64::max);
    let min = sides.iter().copied().fold(f64::INFINITY, f64::min);
    let d2_sq: f64 = sides.iter().map(|s| s * s).sum();
    BoundPair { d1: (max * max + 0.5 * min * min).sqrt(), d2: d2_sq.sqrt() }
}

/// Area of the set of points of an `a × a` square lying within distance `a`
/// of all four corners: `a²(π/3 − √3 + 1)`.
pub fn omega0_area(a: f64) -> f64 {
    a * a * (PI / 3.0 - 3f64.sqrt() + 1.0)
}

/// Fraction of a square's area outside the central set, `√3 − π/3`.
pub fn surviving_fraction_q() -> f64 {
    3f64.sqrt() - PI / 3.0
}

/// Expected speedup of an all-pairs scan restricted to the surviving fraction.
pub fn naive_speedup() -> f64 {
    let q = surviving_fraction_q();
    1.0 / (q * q)
}

fn check_domain(b: f64, d: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::InvalidParam(format!("box height must be positive, got {b}")));
    }
    if d < b {
        return Err(Error::BelowBoxHeight { d, b });
    }
    // ξ/b, distance along the long side from the chord foot to the far edge
    Ok((d * d - b * b).sqrt() / b)
}

/// Area of the corner triangle left uncovered by a circle of radius `d` in a
/// `k·b × b` box: `½[k²b² + d² − b² − 2kb√(d² − b²)]`.
///
/// Evaluated as `½b²(k − s)²` with `s = √(d²/b² − 1)`, which is the same
/// polynomial without the cancellation near the diagonal.
pub fn segment_area(k: f64, b: f64, d: f64) -> Result<f64> {
    let s = check_domain(b, d)?;
    Ok(0.5 * b * b * (k - s).powi(2))
}

/// Predicted speedup, finite or unbounded when the uncovered area vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Speedup {
    Finite(f64),
    Unbounded,
}

impl Speedup {
    pub fn value(self) -> Option<f64> {
        match self {
            Speedup::Finite(v) => Some(v),
            Speedup::Unbounded => None,
        }
    }
}

/// `v = k² / (4[k² − 1 + d²/b² − 2k√(d²/b² − 1)]²)`, equivalently
/// `(ab / 4P)²` with `a = kb` and `P` the [`segment_area`].
pub fn predicted_speedup_v(k: f64, b: f64, d: f64) -> Result<Speedup> {
    let s = check_domain(b, d)?;
    let bracket = (k - s).powi(2);
    if bracket == 0.0 {
        return Ok(Speedup::Unbounded);
    }
    let v = k * k / (4.0 * bracket * bracket);
    Ok(if v.is_finite() { Speedup::Finite(v) } else { Speedup::Unbounded })
}
