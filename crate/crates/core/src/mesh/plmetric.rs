use std::collections::BTreeMap;

use super::complex::{SimplicialComplex, Vertex};
use super::MeshError;

/// Piecewise-flat metric given by one length per edge.
///
/// A single global edge map means the flat metrics of two simplices always
/// agree on their common face.
#[derive(Debug, Clone, PartialEq)]
pub struct PlMetric {
    lengths: BTreeMap<(Vertex, Vertex), f64>,
    allow_degenerate: bool,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl PlMetric {
    /// Collects edge lengths, rejecting non-positive values and contradictory
    /// duplicates.
    pub fn new<I>(lengths: I) -> Result<Self, MeshError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let mut map = BTreeMap::new();
        for (u, v, len) in lengths {
            if u == v {
                return Err(MeshError::MalformedSimplex { simplex: vec![u, v], reason: "loop edge" });
            }
            if !(len.is_finite() && len > 0.0) {
                return Err(MeshError::NonPositiveLength { u, v, length: len });
            }
            let k = key(u, v);
            if let Some(&prev) = map.get(&k) {
                if prev != len {
                    return Err(MeshError::ConflictingLength { u: k.0, v: k.1, first: prev, second: len });
                }
            }
            map.insert(k, len);
        }
        Ok(PlMetric { lengths: map, allow_degenerate: false })
    }

    /// Like [`PlMetric::new`], then checks that the edges are exactly those of `complex`.
    pub fn for_complex<I>(complex: &SimplicialComplex, lengths: I) -> Result<Self, MeshError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let metric = Self::new(lengths)?;
        metric.check_edges(complex)?;
        Ok(metric)
    }

    pub fn check_edges(&self, complex: &SimplicialComplex) -> Result<(), MeshError> {
        for (u, v) in complex.edges() {
            if !self.lengths.contains_key(&(u, v)) {
                return Err(MeshError::MissingEdgeLength { u, v });
            }
        }
        for &(u, v) in self.lengths.keys() {
            if !complex.contains(&[u, v]) {
                return Err(MeshError::UnknownEdge { u, v });
            }
        }
        Ok(())
    }

    pub fn with_degenerate(mut self, allow: bool) -> Self {
        self.allow_degenerate = allow;
        self
    }

    pub fn allows_degenerate(&self) -> bool {
        self.allow_degenerate
    }

    pub fn length(&self, u: Vertex, v: Vertex) -> Result<f64, MeshError> {
        if u == v {
            return Ok(0.0);
        }
        self.lengths.get(&key(u, v)).copied().ok_or(MeshError::MissingEdgeLength { u: u.min(v), v: u.max(v) })
    }

    /// Every length multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Result<Self, MeshError> {
        let m = Self::new(self.iter().map(|(u, v, l)| (u, v, l * lambda)))?;
        Ok(m.with_degenerate(self.allow_degenerate))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex, f64)> + '_ {
        self.lengths.iter().map(|(&(u, v), &l)| (u, v, l))
    }

    pub fn max_length(&self) -> f64 {
        self.lengths.values().copied().fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_are_symmetric() {
        let m = PlMetric::new([(2, 1, 3.0)]).unwrap();
        assert_eq!(m.length(1, 2).unwrap(), 3.0);
        assert_eq!(m.length(2, 1).unwrap(), 3.0);
        assert_eq!(m.length(4, 4).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(matches!(PlMetric::new([(0, 1, 0.0)]), Err(MeshError::NonPositiveLength { .. })));
        assert!(matches!(PlMetric::new([(0, 1, f64::NAN)]), Err(MeshError::NonPositiveLength { .. })));
        assert!(matches!(
            PlMetric::new([(0, 1, 1.0), (1, 0, 2.0)]),
            Err(MeshError::ConflictingLength { .. })
        ));
        assert!(PlMetric::new([(0, 1, 1.0), (1, 0, 1.0)]).is_ok());
    }

    #[test]
    fn edges_must_match_complex() {
        let k = SimplicialComplex::from_simplices([[0, 1, 2]]).unwrap();
        let short = PlMetric::for_complex(&k, [(0, 1, 1.0), (1, 2, 1.0)]);
        assert_eq!(short.unwrap_err(), MeshError::MissingEdgeLength { u: 0, v: 2 });
        let extra = PlMetric::for_complex(&k, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (2, 3, 1.0)]);
        assert_eq!(extra.unwrap_err(), MeshError::UnknownEdge { u: 2, v: 3 });
    }
}
