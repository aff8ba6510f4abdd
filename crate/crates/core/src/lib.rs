//! Exact farthest-pair (diameter) computation for point sets in two and
//! three dimensions.
//!
//! [`max_distance`] prunes the input against the corners of its bounding box
//! and only compares the handful of points that can still form the farthest
//! pair. [`brute_force_diameter`] and the planar hull pipelines are kept as
//! baselines and oracles. [`analysis`] holds the closed-form estimates used in
//! benchmark reports and [`datagen`] the seeded test distributions.

pub mod algorithm;
pub mod analysis;
pub mod datagen;
pub mod error;
pub mod fast;
pub mod geom;
pub mod pointset;
pub mod reference;
pub mod result;

pub use algorithm::Algorithm;
pub use datagen::{generate, Distribution, GenSpec};
pub use error::{Error, Result};
pub use fast::{max_distance, Predicate, PruneConfig};
pub use geom::{squared_distance, BoundingBox, Point, RegionId};
pub use pointset::PointSet;
pub use reference::{brute_force_diameter, convex_hull_2d, hull_diameter_bf, hull_diameter_calipers};
pub use result::{DiameterResult, PairMax, Stats};
