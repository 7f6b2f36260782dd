use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::scalar::smin;

use super::cell::{CubeCell, CubeComplex};
use super::distance::CubeGraph;
use super::embedding::embed;
use super::retraction::{minimal_face, ExtensionParams};
use super::CubicalError;

/// The universal cover of a circle of rational perimeter, with the lifted net
/// `{w + jP}` and the embedding built from line distances, restricted to a window.
///
/// Lifted net points farther than `δ` from the window contribute a constant
/// coordinate 1 and are dropped.
#[derive(Debug, Clone)]
pub struct PeriodicLineModel {
    pub period: Rational64,
    pub net: Vec<Rational64>,
    pub params: ExtensionParams<Rational64>,
    pub window: (Rational64, Rational64),
    lifted: Vec<Rational64>,
}

impl PeriodicLineModel {
    pub fn new(
        period: Rational64,
        net: Vec<Rational64>,
        params: ExtensionParams<Rational64>,
        window: (Rational64, Rational64),
    ) -> Result<Self, CubicalError> {
        if !period.is_positive() || net.is_empty() || window.0 >= window.1 {
            return Err(CubicalError::InvalidParameter { name: "periodic model", value: period.to_f64().unwrap_or(0.0) });
        }
        let (lo, hi) = (window.0 - params.delta, window.1 + params.delta);
        let mut lifted = Vec::new();
        for &w in &net {
            let mut j = ((lo - w) / period).floor();
            loop {
                let x = w + j * period;
                if x >= hi {
                    break;
                }
                if x > lo {
                    lifted.push(x);
                }
                j += Rational64::from_integer(1);
            }
        }
        lifted.sort();
        lifted.dedup();
        Ok(PeriodicLineModel { period, net, params, window, lifted })
    }

    pub fn lifted_net(&self) -> &[Rational64] {
        &self.lifted
    }

    pub fn embed(&self, t: Rational64) -> Result<Vec<Rational64>, CubicalError> {
        let d: Vec<Rational64> = self.lifted.iter().map(|&w| smin((t - w).abs(), self.params.delta)).collect();
        embed(&d, &self.params)
    }

    pub fn face(&self, t: Rational64) -> Result<CubeCell, CubicalError> {
        let face = minimal_face(&self.embed(t)?, Rational64::zero());
        if !face.coords().contains(&super::cell::Coord::Zero) {
            return Err(CubicalError::NetTooSparse { sample: 0 });
        }
        Ok(face)
    }

    /// Samples `window.0, window.0 + step, ...` up to `window.1`.
    pub fn samples(&self, step: Rational64) -> Vec<Rational64> {
        let mut out = Vec::new();
        let mut t = self.window.0;
        while t <= self.window.1 {
            out.push(t);
            t += step;
        }
        out
    }

    /// The lifted extension `K(Ṽ)` over the window.
    pub fn complex(&self, step: Rational64) -> Result<CubeComplex, CubicalError> {
        let faces = self.samples(step).into_iter().map(|t| self.face(t)).collect::<Result<Vec<_>, _>>()?;
        CubeComplex::from_cells(self.lifted.len(), faces)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationReport {
    pub m: u32,
    pub pairs_checked: usize,
    pub min_separation: Option<f64>,
    /// `(t, t', dist(K_1, K_2))` for pairs with separation below `m - tol`.
    pub violations: Vec<(f64, f64, f64)>,
    pub tolerance: f64,
}

/// For sampled lifts `t, t'` in `inner` with `|t - t'| >= m`, checks that the
/// minimal faces of their images are at least `m` apart in `K(Ṽ)`.
pub fn face_separation_check(
    model: &PeriodicLineModel,
    m: u32,
    step: Rational64,
    inner: (Rational64, Rational64),
    subdivision: u32,
    tol: f64,
) -> Result<SeparationReport, CubicalError> {
    let complex = model.complex(step)?;
    let graph = CubeGraph::new(&complex, subdivision)?;
    let samples: Vec<Rational64> = model.samples(step).into_iter().filter(|t| *t >= inner.0 && *t <= inner.1).collect();
    let faces = samples.iter().map(|&t| model.face(t)).collect::<Result<Vec<_>, _>>()?;
    let mut cache: HashMap<(CubeCell, CubeCell), f64> = HashMap::new();
    let mut report = SeparationReport { m, pairs_checked: 0, min_separation: None, violations: Vec::new(), tolerance: tol };
    let threshold = Rational64::from_integer(i64::from(m));
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            if (samples[j] - samples[i]).abs() < threshold {
                continue;
            }
            let key = (faces[i].clone(), faces[j].clone());
            let sep = match cache.get(&key) {
                Some(&s) => s,
                None => {
                    let s = graph.cell_distance(&key.0, &key.1)?;
                    cache.insert(key, s);
                    s
                }
            };
            report.pairs_checked += 1;
            report.min_separation = Some(report.min_separation.map_or(sep, |x| x.min(sep)));
            if sep < f64::from(m) - tol {
                let f = |r: Rational64| r.to_f64().unwrap_or(f64::NAN);
                report.violations.push((f(samples[i]), f(samples[j]), sep));
            }
        }
    }
    Ok(report)
}
