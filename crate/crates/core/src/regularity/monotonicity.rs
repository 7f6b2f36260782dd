use serde::Serialize;

use crate::homotopy::{relative_systole, EdgeHomomorphism, SystoleOptions, SystoleResult};
use crate::mesh::{PlMetric, Pseudomanifold};
use crate::metric::GeodesicGraph;

use super::RegularityError;

/// A geometric cycle `(V, g, φ)` by reference.
#[derive(Debug, Clone, Copy)]
pub struct CycleData<'a> {
    pub v: &'a Pseudomanifold,
    pub g: &'a PlMetric,
    pub phi: &'a EdgeHomomorphism,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub base: SystoleResult,
    pub derived: SystoleResult,
    pub tolerance: f64,
    /// `sys(derived) >= sys(base) - tolerance`
    pub pass: bool,
}

/// Computes both relative systoles at the given subdivision and compares them.
pub fn systole_monotonicity_check(
    base: CycleData<'_>,
    derived: CycleData<'_>,
    subdivision: usize,
    opts: &SystoleOptions,
) -> Result<MonotonicityReport, RegularityError> {
    let sys = |c: CycleData<'_>| -> Result<SystoleResult, RegularityError> {
        let graph = GeodesicGraph::new(c.v, c.g, subdivision)?;
        Ok(relative_systole(&graph, c.phi, opts)?)
    };
    let base = sys(base)?;
    let derived = sys(derived)?;
    let tolerance = 1e-9 * base.value.max(1.0);
    let pass = derived.value >= base.value - tolerance;
    Ok(MonotonicityReport { base, derived, tolerance, pass })
}
