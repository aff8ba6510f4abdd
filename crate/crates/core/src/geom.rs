//! Points, axis-aligned boxes and the corner-region bookkeeping used by the
//! pruning algorithm.
//!
//! Regions are the `2^K` orthants of a box split at its center. Region bit `j`
//! is set when the point lies in the upper half along axis `j` (coordinate
//! `>=` center, so ties go up). A corner is addressed by the same bit pattern:
//! bit `j` set selects `max[j]`, clear selects `min[j]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in `K`-dimensional Euclidean space.
pub type Point<const K: usize> = [f64; K];

/// Squared Euclidean distance. Summation runs over axes in order; every
/// distance comparison in the crate relies on that fixed order.
#[inline(always)]
pub fn squared_distance<const K: usize>(p: &Point<K>, q: &Point<K>) -> f64 {
    let mut acc = 0.0;
    for j in 0..K {
        let d = p[j] - q[j];
        acc += d * d;
    }
    acc
}

/// Index of one of the `2^K` corner regions of a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegionId(pub u8);

impl RegionId {
    #[inline]
    pub fn bits(self) -> u8 {
        self.0
    }

    /// Number of regions in `dim` dimensions.
    #[inline]
    pub const fn count(dim: usize) -> usize {
        1 << dim
    }

    /// The diagonally opposite region.
    #[inline]
    pub fn complement(self, dim: usize) -> RegionId {
        RegionId(!self.0 & ((1u8 << dim) - 1))
    }

    #[inline]
    pub fn is_upper(self, axis: usize) -> bool {
        self.0 >> axis & 1 == 1
    }

    pub fn all(dim: usize) -> impl Iterator<Item = RegionId> {
        (0..Self::count(dim) as u8).map(RegionId)
    }

    fn check(self, dim: usize) -> Result<()> {
        if (self.0 as usize) < Self::count(dim) {
            Ok(())
        } else {
            Err(Error::RegionOutOfRange { region: self.0, dim })
        }
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:b}", self.0)
    }
}

/// Axis-aligned bounding box. Degenerate boxes (zero-length sides) are legal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox<const K: usize> {
    pub min: Point<K>,
    pub max: Point<K>,
}

impl<const K: usize> BoundingBox<K> {
    /// Exact componentwise extrema of `points`.
    pub fn from_points(points: &[Point<K>]) -> Result<Self> {
        let (first, rest) = points.split_first().ok_or(Error::EmptyInput)?;
        let mut min = *first;
        let mut max = *first;
        for p in rest {
            for j in 0..K {
                if p[j] < min[j] {
                    min[j] = p[j];
                }
                if p[j] > max[j] {
                    max[j] = p[j];
                }
            }
        }
        Ok(Self { min, max })
    }

    /// Side lengths `a, b (, c)`.
    pub fn sides(&self) -> [f64; K] {
        std::array::from_fn(|j| self.max[j] - self.min[j])
    }

    pub fn center(&self) -> Point<K> {
        std::array::from_fn(|j| 0.5 * (self.min[j] + self.max[j]))
    }

    /// True when every side has zero length, i.e. all points coincide.
    pub fn is_point(&self) -> bool {
        (0..K).all(|j| self.min[j] == self.max[j])
    }

    pub fn contains(&self, p: &Point<K>) -> bool {
        (0..K).all(|j| self.min[j] <= p[j] && p[j] <= self.max[j])
    }

    /// Squared length of the box diagonal.
    pub fn diagonal_sq(&self) -> f64 {
        squared_distance(&self.min, &self.max)
    }

    /// Corner addressed by `bits`: bit `j` set selects `max[j]`.
    pub fn corner(&self, bits: u8) -> Point<K> {
        std::array::from_fn(|j| {
            if bits >> j & 1 == 1 {
                self.max[j]
            } else {
                self.min[j]
            }
        })
    }

    pub fn corners(&self) -> impl Iterator<Item = Point<K>> + '_ {
        (0..RegionId::count(K) as u8).map(|b| self.corner(b))
    }

    pub fn region_of(&self, p: &Point<K>) -> RegionId {
        let c = self.center();
        let mut bits = 0u8;
        for j in 0..K {
            if p[j] >= c[j] {
                bits |= 1 << j;
            }
        }
        RegionId(bits)
    }

    /// The corner a region sits in.
    pub fn own_corner(&self, r: RegionId) -> Point<K> {
        self.corner(r.0)
    }

    /// The corner diagonally across the box from region `r`.
    pub fn opposite_corner(&self, r: RegionId) -> Point<K> {
        self.corner(r.complement(K).0)
    }

    /// Squared distance from `p` to the farthest corner of the box.
    ///
    /// Per axis the larger of `p - min` and `max - p` is taken, which is the
    /// exact maximum over all `2^K` corners in floating point as well (every
    /// step is monotone). It agrees with the distance to
    /// `opposite_corner(region_of(p))` except when `p` sits within rounding of
    /// the center plane, where it picks the farther side.
    #[inline(always)]
    pub fn corner_distance_sq(&self, p: &Point<K>) -> f64 {
        let mut acc = 0.0;
        for j in 0..K {
            let lo = p[j] - self.min[j];
            let hi = self.max[j] - p[j];
            let e = if lo >= hi { lo } else { hi };
            acc += e * e;
        }
        acc
    }

    /// Larger half-extent along `axis`, measured from the computed center.
    fn half_extent(&self, axis: usize) -> f64 {
        let c = 0.5 * (self.min[axis] + self.max[axis]);
        (c - self.min[axis]).max(self.max[axis] - c)
    }

    /// Squared upper bound on the distance between any point of region `ri`
    /// and any point of region `rj`: full side on axes where the regions
    /// differ, half side where they agree.
    ///
    /// The half side is measured from the computed center so the bound holds
    /// for floating-point distances of points classified by [`Self::region_of`].
    pub fn region_pair_bound_sq(&self, ri: RegionId, rj: RegionId) -> Result<f64> {
        ri.check(K)?;
        rj.check(K)?;
        if ri == rj {
            return Err(Error::SameRegion(ri.0));
        }
        let mut acc = 0.0;
        for j in 0..K {
            let e = if ri.is_upper(j) != rj.is_upper(j) {
                self.max[j] - self.min[j]
            } else {
                self.half_extent(j)
            };
            acc += e * e;
        }
        Ok(acc)
    }

    pub fn region_pair_bound(&self, ri: RegionId, rj: RegionId) -> Result<f64> {
        self.region_pair_bound_sq(ri, rj).map(f64::sqrt)
    }
}
