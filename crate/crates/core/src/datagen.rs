//! Seeded point-set generators. The same [`GenSpec`] always produces the same
//! coordinates (ChaCha8 stream seeded from `seed`).

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    /// i.i.d. uniform in the `aspect × 1 (× 1)` box.
    Uniform,
    /// i.i.d. normal around the box center, not clipped.
    Gaussian,
    /// Normal blobs around `clusters` centers drawn uniformly in the box.
    Clusters,
    /// Evenly spaced on a circle in the `xy` plane, optionally with radial jitter.
    Circle,
    /// Evenly spaced along the box diagonal.
    Collinear,
    /// Uniform points, each present twice.
    Duplicated,
}

impl Distribution {
    pub const ALL: [Distribution; 6] = [
        Distribution::Uniform,
        Distribution::Gaussian,
        Distribution::Clusters,
        Distribution::Circle,
        Distribution::Collinear,
        Distribution::Duplicated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Gaussian => "gaussian",
            Distribution::Clusters => "clusters",
            Distribution::Circle => "circle",
            Distribution::Collinear => "collinear",
            Distribution::Duplicated => "duplicated",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::UnknownName { kind: "distribution", name: s.to_owned() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub dist: Distribution,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    /// Length of the x side; the other sides are 1.
    pub aspect: f64,
    /// Standard deviation for `gaussian` and `clusters`.
    pub sigma: f64,
    pub clusters: usize,
    /// Maximum radial perturbation for `circle`.
    pub jitter: f64,
    pub radius: f64,
}

impl Default for GenSpec {
    fn default() -> Self {
        Self {
            dist: Distribution::Uniform,
            n: 0,
            dim: 2,
            seed: 0,
            aspect: 1.0,
            sigma: 0.1,
            clusters: 5,
            jitter: 0.0,
            radius: 1.0,
        }
    }
}

impl GenSpec {
    pub fn new(dist: Distribution, n: usize, dim: usize, seed: u64) -> Self {
        Self { dist, n, dim, seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.dim) {
            return Err(Error::UnsupportedDim(self.dim));
        }
        let nonneg = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParam(format!("{name} must be finite and non-negative, got {v}")))
            }
        };
        nonneg("sigma", self.sigma)?;
        nonneg("jitter", self.jitter)?;
        nonneg("radius", self.radius)?;
        if !(self.aspect.is_finite() && self.aspect >= 1.0) {
            return Err(Error::InvalidParam(format!("aspect must be >= 1, got {}", self.aspect)));
        }
        if self.dist == Distribution::Clusters && self.clusters == 0 {
            return Err(Error::InvalidParam("clusters must be at least 1".into()));
        }
        Ok(())
    }

    fn extent(&self) -> [f64; 3] {
        [self.aspect, 1.0, 1.0]
    }
}

pub fn generate(spec: &GenSpec) -> Result<PointSet> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let dim = spec.dim;
    let ext = spec.extent();
    let mut coords = Vec::with_capacity(spec.n * dim);

    match spec.dist {
        Distribution::Uniform => {
            for _ in 0..spec.n * dim {
                let j = coords.len() % dim;
                coords.push(rng.random::<f64>() * ext[j]);
            }
        }
        Distribution::Gaussian => {
            let normal = normal(spec.sigma)?;
            for _ in 0..spec.n * dim {
                let j = coords.len() % dim;
                coords.push(0.5 * ext[j] + normal.sample(&mut rng));
            }
        }
        Distribution::Clusters => {
            let normal = normal(spec.sigma)?;
            let centers: Vec<f64> =
                (0..spec.clusters * dim).map(|c| rng.random::<f64>() * ext[c % dim]).collect();
            for _ in 0..spec.n {
                let c = rng.random_range(0..spec.clusters);
                for j in 0..dim {
                    coords.push(centers[c * dim + j] + normal.sample(&mut rng));
                }
            }
        }
        Distribution::Circle => {
            // with no jitter the second half mirrors the first through the
            // center, so even counts hold exact antipodal pairs
            let mirrored = spec.jitter == 0.0 && spec.n.is_multiple_of(2);
            let first = if mirrored { spec.n / 2 } else { spec.n };
            for i in 0..first {
                let r = if spec.jitter > 0.0 {
                    spec.radius + spec.jitter * rng.random_range(-1.0..=1.0)
                } else {
                    spec.radius
                };
                let t = TAU * i as f64 / spec.n as f64;
                coords.extend_from_slice(&[r * t.cos(), r * t.sin(), 0.0][..dim]);
            }
            if mirrored {
                let half = coords.len();
                for c in 0..half {
                    coords.push(-coords[c]);
                }
            }
        }
        Distribution::Collinear => {
            let steps = spec.n.saturating_sub(1).max(1) as f64;
            for i in 0..spec.n {
                let t = i as f64 / steps;
                coords.extend(ext[..dim].iter().map(|e| t * e));
            }
        }
        Distribution::Duplicated => {
            let base = spec.n.div_ceil(2);
            for _ in 0..base * dim {
                let j = coords.len() % dim;
                coords.push(rng.random::<f64>() * ext[j]);
            }
            coords.extend_from_within(..(spec.n - base) * dim);
        }
    }
    PointSet::new(dim, coords)
}

fn normal(sigma: f64) -> Result<Normal<f64>> {
    Normal::new(0.0, sigma).map_err(|e| Error::InvalidParam(format!("sigma: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::brute_force_diameter;

    #[test]
    fn empty_request() {
        let ps = generate(&GenSpec::new(Distribution::Uniform, 0, 2, 1)).unwrap();
        assert!(ps.is_empty());
        assert_eq!(ps.dim(), 2);
    }

    #[test]
    fn deterministic_per_seed() {
        for dist in Distribution::ALL {
            for dim in [2, 3] {
                let spec = GenSpec { jitter: 0.01, ..GenSpec::new(dist, 257, dim, 42) };
                let a = generate(&spec).unwrap();
                let b = generate(&spec).unwrap();
                assert_eq!(a.len(), 257);
                let bits = |ps: &PointSet| ps.coords().iter().map(|c| c.to_bits()).collect::<Vec<_>>();
                assert_eq!(bits(&a), bits(&b), "{dist} dim {dim}");
            }
        }
        let a = generate(&GenSpec::new(Distribution::Uniform, 10, 2, 1)).unwrap();
        let b = generate(&GenSpec::new(Distribution::Uniform, 10, 2, 2)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn uniform_within_box() {
        for seed in 0..5 {
            let spec = GenSpec { aspect: 3.5, ..GenSpec::new(Distribution::Uniform, 2000, 3, seed) };
            let ps = generate(&spec).unwrap();
            for p in ps.iter() {
                assert!((0.0..=3.5).contains(&p[0]));
                assert!((0.0..=1.0).contains(&p[1]) && (0.0..=1.0).contains(&p[2]));
            }
        }
    }

    #[test]
    fn uniform_mean_near_center() {
        let n = 100_000;
        let ps = generate(&GenSpec { aspect: 2.0, ..GenSpec::new(Distribution::Uniform, n, 2, 9) }).unwrap();
        for (j, ext) in [2.0f64, 1.0].into_iter().enumerate() {
            let mean = ps.iter().map(|p| p[j]).sum::<f64>() / n as f64;
            let sd = ext / 12f64.sqrt() / (n as f64).sqrt();
            assert!((mean - ext / 2.0).abs() < 3.0 * sd, "axis {j}: {mean}");
        }
    }

    #[test]
    fn circle_has_antipodal_diameter() {
        for (n, r) in [(1000, 1.0), (64, 2.5), (10, 0.3)] {
            let spec = GenSpec { radius: r, ..GenSpec::new(Distribution::Circle, n, 2, 0) };
            let d = brute_force_diameter(&generate(&spec).unwrap()).unwrap();
            assert!((d.dist - 2.0 * r).abs() < 1e-12 * r, "n={n}: {}", d.dist);
        }
    }

    #[test]
    fn duplicated_repeats_points() {
        let ps = generate(&GenSpec::new(Distribution::Duplicated, 7, 2, 3)).unwrap();
        assert_eq!(ps.len(), 7);
        for i in 0..3 {
            assert_eq!(ps.point(i), ps.point(i + 4));
        }
    }

    #[test]
    fn collinear_spans_diagonal() {
        let ps = generate(&GenSpec { aspect: 4.0, ..GenSpec::new(Distribution::Collinear, 5, 2, 0) }).unwrap();
        assert_eq!(ps.point(0), &[0.0, 0.0]);
        assert_eq!(ps.point(4), &[4.0, 1.0]);
        assert_eq!(ps.point(2), &[2.0, 0.5]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(generate(&GenSpec::new(Distribution::Uniform, 3, 4, 0)).is_err());
        assert!(generate(&GenSpec { aspect: 0.5, ..GenSpec::default() }).is_err());
        assert!(generate(&GenSpec { sigma: -1.0, ..GenSpec::default() }).is_err());
        let spec = GenSpec { clusters: 0, ..GenSpec::new(Distribution::Clusters, 3, 2, 0) };
        assert!(generate(&spec).is_err());
        assert!("spiral".parse::<Distribution>().is_err());
        assert_eq!("clusters".parse::<Distribution>().unwrap(), Distribution::Clusters);
    }
}
