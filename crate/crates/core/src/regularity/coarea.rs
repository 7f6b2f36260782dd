use serde::Serialize;

use crate::metric::{ball_volume_profile, GeodesicGraph};

use super::growth::trapezoid_with_error;
use super::RegularityError;

/// Ball volumes of a distance function and sphere volumes estimated from them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoareaSample {
    pub radii: Vec<f64>,
    /// Central differences of the ball volumes, one-sided at the ends.
    pub sphere_volumes: Vec<f64>,
    pub ball_volumes: Vec<f64>,
    /// Trapezoid integral of the sphere volumes from 0.
    pub integrals: Vec<f64>,
    /// Error bounds of the ball volumes themselves.
    pub ball_errors: Vec<f64>,
    /// Three times the Richardson estimate of the quadrature error, plus the
    /// ball-volume error bound.
    pub tolerances: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoareaReport {
    pub center: usize,
    pub sample: CoareaSample,
    pub holds: Vec<bool>,
    /// Radii where the inequality fails but both neighbours pass; treated as
    /// non-generic radii.
    pub warnings: Vec<f64>,
    pub pass: bool,
}

/// Sphere volumes by finite differences of `volumes` on `radii`.
pub fn sphere_volumes(radii: &[f64], volumes: &[f64]) -> Vec<f64> {
    let m = radii.len();
    (0..m)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(m - 1));
            ((volumes[b] - volumes[a]) / (radii[b] - radii[a])).max(0.0)
        })
        .collect()
}

/// Checks `vol({f <= r}) >= ∫_0^r vol({f = t}) dt` from ball volumes sampled on `radii`.
pub fn coarea_from_profile(
    center: usize,
    radii: &[f64],
    volumes: &[f64],
    ball_errors: &[f64],
) -> Result<CoareaReport, RegularityError> {
    if radii.len() < 3 {
        return Err(RegularityError::GridTooCoarse { points: radii.len(), required: 3 });
    }
    if radii[0] != 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) || volumes.len() != radii.len()
        || ball_errors.len() != radii.len()
    {
        return Err(RegularityError::DomainError { reason: "radii must increase from 0".into() });
    }
    let spheres = sphere_volumes(radii, volumes);
    let (integrals, err) = trapezoid_with_error(radii, &spheres);
    let scale = volumes.last().copied().unwrap_or(0.0).max(1.0);
    let tolerances: Vec<f64> = err.iter().zip(ball_errors).map(|(e, b)| 3.0 * e + b + 1e-12 * scale).collect();
    let holds: Vec<bool> = (0..radii.len()).map(|i| volumes[i] >= integrals[i] - tolerances[i]).collect();
    let m = holds.len();
    let mut warnings = Vec::new();
    let mut pass = true;
    for i in (0..m).filter(|&i| !holds[i]) {
        let left = i == 0 || holds[i - 1];
        let right = i + 1 == m || holds[i + 1];
        if left && right {
            warnings.push(radii[i]);
        } else {
            pass = false;
        }
    }
    Ok(CoareaReport {
        center,
        sample: CoareaSample {
            radii: radii.to_vec(),
            sphere_volumes: spheres,
            ball_volumes: volumes.to_vec(),
            integrals,
            ball_errors: ball_errors.to_vec(),
            tolerances,
        },
        holds,
        warnings,
        pass,
    })
}

/// Coarea check for `f = dist(center, ·)` on the chord graph.
pub fn coarea_check(graph: &GeodesicGraph, center: usize, radii: &[f64]) -> Result<CoareaReport, RegularityError> {
    let profile = ball_volume_profile(graph, center, radii)?;
    coarea_from_profile(center, radii, &profile.volumes, &profile.error_bounds)
}
