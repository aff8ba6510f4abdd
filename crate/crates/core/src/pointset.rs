use crate::error::{Error, Result};
use crate::geom::Point;

/// An ordered set of points of one dimension (2 or 3), stored as a flat
/// coordinate buffer. Order matters: result pairs index into it.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from `dim`-tuples laid out back to back.
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDim(dim));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::RaggedCoords { len: coords.len(), dim });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index: pos / dim, axis: pos % dim, value: coords[pos] });
        }
        Ok(Self { dim, coords })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn from_points<const K: usize>(points: &[Point<K>]) -> Result<Self> {
        Self::new(K, points.as_flattened().to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    /// Typed view of the points, or `None` if `K` is not this set's dimension.
    pub fn as_points<const K: usize>(&self) -> Option<&[Point<K>]> {
        if K != self.dim {
            return None;
        }
        let (chunks, rest) = self.coords.as_chunks::<K>();
        debug_assert!(rest.is_empty());
        Some(chunks)
    }

    pub(crate) fn require_pairs(&self) -> Result<()> {
        if self.len() < 2 {
            Err(Error::TooFewPoints(self.len()))
        } else {
            Ok(())
        }
    }

    /// Appends a point; used by generators and readers that build sets incrementally.
    pub fn push(&mut self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::InvalidParam(format!(
                "point has {} coordinates, set dimension is {}",
                p.len(),
                self.dim
            )));
        }
        if let Some(axis) = p.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index: self.len(), axis, value: p[axis] });
        }
        self.coords.extend_from_slice(p);
        Ok(())
    }
}
