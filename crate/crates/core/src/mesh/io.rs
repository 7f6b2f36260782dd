use serde::{Deserialize, Serialize};

use super::complex::{SimplicialComplex, Vertex};
use super::plmetric::PlMetric;
use super::pseudomanifold::{validate_pseudomanifold, Pseudomanifold};
use super::MeshError;

/// On-disk mesh: `{"dim": n, "simplices": [[v, ...], ...], "edge_lengths": [[u, v, len], ...]}`.
///
/// `simplices` may list only the top simplices; faces are generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshDocument {
    pub dim: usize,
    pub simplices: Vec<Vec<Vertex>>,
    pub edge_lengths: Vec<(Vertex, Vertex, f64)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_degenerate: bool,
}

impl MeshDocument {
    pub fn from_parts(v: &Pseudomanifold, g: &PlMetric) -> Self {
        MeshDocument {
            dim: v.dim(),
            simplices: v.top_simplices().cloned().collect(),
            edge_lengths: g.iter().collect(),
            allow_degenerate: g.allows_degenerate(),
        }
    }

    /// Validates the axioms and the metric.
    pub fn build(&self) -> Result<(Pseudomanifold, PlMetric), MeshError> {
        let complex = SimplicialComplex::from_simplices(&self.simplices)?;
        let metric = PlMetric::for_complex(&complex, self.edge_lengths.iter().copied())?
            .with_degenerate(self.allow_degenerate);
        let v = validate_pseudomanifold(complex, self.dim)?;
        super::volume::total_volume(&v, &metric)?;
        Ok((v, metric))
    }
}
