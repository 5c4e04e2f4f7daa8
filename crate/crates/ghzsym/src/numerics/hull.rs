//! Monotone-chain upper convex hull for sampled boundary curves.

use alloc::vec::Vec;

#[derive(Debug, thiserror::Error)]
pub enum HullError {
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("non-finite coordinate in input point {0}")]
    NonFinite(usize),
    #[error("query {0} outside the polyline range")]
    OutOfRange(f64),
}

/// Piecewise-linear curve with strictly increasing horizontal coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline2D {
    vertices: Vec<(f64, f64)>,
}

impl Polyline2D {
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn h_range(&self) -> (f64, f64) {
        (self.vertices[0].0, self.vertices[self.vertices.len() - 1].0)
    }

    /// Linear interpolation at `h`; errors outside the covered range.
    pub fn value_at(&self, h: f64) -> Result<f64, HullError> {
        let (lo, hi) = self.h_range();
        if h < lo || h > hi {
            return Err(HullError::OutOfRange(h));
        }
        let idx = self
            .vertices
            .partition_point(|&(vh, _)| vh <= h)
            .saturating_sub(1);
        let (h0, v0) = self.vertices[idx];
        if idx + 1 == self.vertices.len() {
            return Ok(v0);
        }
        let (h1, v1) = self.vertices[idx + 1];
        Ok(v0 + (v1 - v0) * (h - h0) / (h1 - h0))
    }
}

/// Upper convex hull of a point set (Andrew's monotone chain, upper half).
///
/// Points sharing a horizontal coordinate are collapsed to the highest one
/// first, so the result is a function of `h`. Every input point lies on or
/// below the returned polyline, and the vertices are a subset of the inputs.
pub fn upper_hull(points: &[(f64, f64)]) -> Result<Polyline2D, HullError> {
    if points.len() < 2 {
        return Err(HullError::TooFewPoints(points.len()));
    }
    for (i, &(h, v)) in points.iter().enumerate() {
        if !h.is_finite() || !v.is_finite() {
            return Err(HullError::NonFinite(i));
        }
    }

    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    sorted.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("finite")
            .then(a.1.partial_cmp(&b.1).expect("finite"))
    });
    // Keep only the highest point at each h.
    let mut dedup: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
    for p in sorted {
        match dedup.last_mut() {
            Some(last) if last.0 == p.0 => last.1 = p.1, // sorted: p.1 >= last.1
            _ => dedup.push(p),
        }
    }
    if dedup.len() < 2 {
        return Err(HullError::TooFewPoints(dedup.len()));
    }

    let mut stack: Vec<(f64, f64)> = Vec::with_capacity(dedup.len());
    for p in dedup {
        while stack.len() >= 2 {
            let a = stack[stack.len() - 2];
            let b = stack[stack.len() - 1];
            // Upper hull keeps strictly clockwise turns.
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0.0 {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(p);
    }
    Ok(Polyline2D { vertices: stack })
}
