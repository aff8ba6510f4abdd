use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fast::{max_distance, Predicate, PruneConfig};
use crate::pointset::PointSet;
use crate::reference::{brute_force_diameter, hull_diameter_bf, hull_diameter_calipers};
use crate::result::DiameterResult;

/// Every diameter algorithm in the crate, addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Brute,
    HullBf,
    HullCalipers,
    FastCircular,
    FastLinear,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Brute,
        Algorithm::HullBf,
        Algorithm::HullCalipers,
        Algorithm::FastCircular,
        Algorithm::FastLinear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::HullBf => "hull_bf",
            Algorithm::HullCalipers => "hull_calipers",
            Algorithm::FastCircular => "fast_circular",
            Algorithm::FastLinear => "fast_linear",
        }
    }

    pub fn is_planar_only(self) -> bool {
        matches!(self, Algorithm::HullBf | Algorithm::HullCalipers)
    }

    pub fn run(self, ps: &PointSet) -> Result<DiameterResult> {
        match self {
            Algorithm::Brute => brute_force_diameter(ps),
            Algorithm::HullBf => hull_diameter_bf(ps),
            Algorithm::HullCalipers => hull_diameter_calipers(ps),
            Algorithm::FastCircular => max_distance(ps, &PruneConfig::with_predicate(Predicate::Circular)),
            Algorithm::FastLinear => max_distance(ps, &PruneConfig::with_predicate(Predicate::LinearChord)),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Accepts the canonical names plus `fast` (circular) and dashed spellings.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('-', "_");
        if s == "fast" {
            return Ok(Algorithm::FastCircular);
        }
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or(Error::UnknownName { kind: "algorithm", name: s })
    }
}
