use std::collections::BTreeMap;

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cubical::{CubeCell, CubeComplex};

use super::chain::{boundary, chain_volume, linf_cell_volume, CubicalChain};
use super::ChainError;

/// Grid spacing `1/TUBE_GRID` used when sampling filler cells for the tube radius.
const TUBE_GRID: u32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct FillingResult {
    pub filler: CubicalChain,
    pub volume: f64,
    /// Largest ℓ∞ distance from a grid point of the filler support to the cycle support.
    pub tube_radius: f64,
    /// `max |∂c - z|` over cells.
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FillingSummary {
    pub volume: f64,
    pub tube_radius: f64,
    pub residual: f64,
    pub filler: super::ChainDocument,
}

impl FillingResult {
    pub fn summary(&self) -> FillingSummary {
        FillingSummary {
            volume: self.volume,
            tube_radius: self.tube_radius,
            residual: self.residual,
            filler: self.filler.to_document(),
        }
    }
}

fn residual(filler: &CubicalChain, z: &CubicalChain) -> f64 {
    boundary(filler).sub(z).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
}

/// Largest distance from `filler`'s support to `z`'s support, sampled on a grid.
pub fn tube_radius(filler: &CubicalChain, z: &CubicalChain) -> f64 {
    if z.is_zero() {
        return 0.0;
    }
    let s = f64::from(TUBE_GRID);
    let mut worst: f64 = 0.0;
    for cell in filler.support() {
        for g in cell.grid_points(TUBE_GRID) {
            let p: Vec<f64> = g.iter().map(|&x| f64::from(x) / s).collect();
            let d = z.support().map(|c| c.linf_distance(&p)).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
    }
    worst
}

/// Minimum-volume real filling of the cycle `z` by `(k+1)`-cells of `complex`,
/// solved as an LP over `c = c⁺ - c⁻` with `c± ≥ 0`.
///
/// Coefficients within `lp_tol` of an integer are snapped when that keeps
/// `∂c = z` exact.
pub fn filling_lp(z: &CubicalChain, complex: &CubeComplex, lp_tol: f64) -> Result<FillingResult, ChainError> {
    if !(lp_tol > 0.0) {
        return Err(ChainError::NonpositiveInput { name: "lp_tol", value: lp_tol });
    }
    z.check_in(complex)?;
    let k = z.degree();
    if k >= 1 {
        let b = boundary(z);
        if !b.is_zero() {
            return Err(ChainError::NotACycle { residual: b.max_abs() });
        }
    }
    let empty = CubicalChain::zero(z.ambient_dim(), k + 1);
    if z.is_zero() {
        return Ok(FillingResult { filler: empty, volume: 0.0, tube_radius: 0.0, residual: 0.0 });
    }
    let tops: Vec<&CubeCell> = complex.cells_of_dim(k + 1).collect();
    if tops.is_empty() {
        return Err(ChainError::Infeasible { reason: format!("complex has no {}-cells", k + 1) });
    }

    let mut rows: BTreeMap<CubeCell, Vec<(usize, f64)>> = BTreeMap::new();
    for (j, cell) in tops.iter().enumerate() {
        let unit = CubicalChain::from_terms(z.ambient_dim(), k + 1, [((*cell).clone(), 1.0)])?;
        for (face, &sign) in boundary(&unit).coefficients() {
            rows.entry(face.clone()).or_default().push((j, sign));
        }
    }
    if let Some(c) = z.support().find(|c| !rows.contains_key(*c)) {
        return Err(ChainError::Infeasible { reason: format!("cell {} has no coface", c.spec()) });
    }

    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = tops
        .iter()
        .map(|c| {
            let w = linf_cell_volume(c);
            (lp.add_var(w, (0.0, f64::INFINITY)), lp.add_var(w, (0.0, f64::INFINITY)))
        })
        .collect();
    for (face, entries) in &rows {
        let mut e = LinearExpr::empty();
        for &(j, sign) in entries {
            e.add(vars[j].0, sign);
            e.add(vars[j].1, -sign);
        }
        lp.add_constraint(e, ComparisonOp::Eq, z.coefficient(face));
    }
    let solution = match lp.solve() {
        Ok(s) => s,
        Err(minilp::Error::Infeasible) => {
            return Err(ChainError::Infeasible { reason: "cycle is not a boundary in the complex".into() })
        }
        Err(e) => return Err(ChainError::Solver { message: e.to_string() }),
    };

    let raw: Vec<f64> = vars.iter().map(|&(p, m)| solution[p] - solution[m]).collect();
    let build = |values: &[f64]| {
        CubicalChain::from_terms(
            z.ambient_dim(),
            k + 1,
            tops.iter().zip(values).filter(|(_, v)| v.abs() > lp_tol).map(|(c, &v)| ((*c).clone(), v)),
        )
    };
    let mut filler = build(&raw)?;
    let snapped: Vec<f64> = raw.iter().map(|v| if (v - v.round()).abs() <= lp_tol { v.round() } else { *v }).collect();
    let snapped = build(&snapped)?;
    if residual(&snapped, z) == 0.0 {
        filler = snapped;
    }
    let res = residual(&filler, z);
    let scale = 1.0 + z.max_abs();
    if res > lp_tol * scale * (tops.len() as f64) {
        return Err(ChainError::Solver { message: format!("filler residual {res} exceeds tolerance") });
    }
    Ok(FillingResult {
        volume: chain_volume(&filler),
        tube_radius: tube_radius(&filler, z),
        residual: res,
        filler,
    })
}

/// Exact test of whether `z` is a boundary in `complex`: compares the rank of
/// the boundary matrix `∂_{k+1}` with the rank of `[∂_{k+1} | z]` over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank_boundary: usize,
    pub rank_augmented: usize,
    pub is_boundary: bool,
}

fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..cols {
                let d = &f * &m[rank][c];
                m[r][c] -= d;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_certificate(z: &CubicalChain, complex: &CubeComplex) -> Result<RankCertificate, ChainError> {
    z.check_in(complex)?;
    let k = z.degree();
    let faces: Vec<&CubeCell> = complex.cells_of_dim(k).collect();
    let index: BTreeMap<&CubeCell, usize> = faces.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let tops: Vec<&CubeCell> = complex.cells_of_dim(k + 1).collect();
    let zero = BigRational::zero();
    let mut m = vec![vec![zero; tops.len() + 1]; faces.len()];
    for (j, cell) in tops.iter().enumerate() {
        let unit = CubicalChain::from_terms(z.ambient_dim(), k + 1, [((*cell).clone(), 1.0)])?;
        for (face, &sign) in boundary(&unit).coefficients() {
            m[index[face]][j] = BigRational::from_integer((sign as i64).into());
        }
    }
    for (cell, &v) in z.coefficients() {
        let q = BigRational::from_float(v).ok_or(ChainError::NonpositiveInput { name: "coefficient", value: v })?;
        m[index[cell]][tops.len()] = q;
    }
    let augmented = rational_rank(m.clone());
    let plain = rational_rank(m.into_iter().map(|mut r| {
        r.pop();
        r
    }).collect());
    debug_assert!(augmented >= plain);
    Ok(RankCertificate { rank_boundary: plain, rank_augmented: augmented, is_boundary: augmented == plain })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(s: &str) -> CubeCell {
        CubeCell::parse(s).unwrap()
    }

    fn hexagon() -> (CubeComplex, CubicalChain) {
        let k = CubeComplex::from_cells(
            3,
            ["0,*,1", "*,0,1", "1,0,*", "1,*,0", "*,1,0", "0,1,*"].iter().map(|s| cell(s)),
        )
        .unwrap();
        // Oriented around the loop 011 -> 001 -> 101 -> 100 -> 110 -> 010 -> 011.
        let z = CubicalChain::from_terms(
            3,
            1,
            [("0,*,1", -1.0), ("*,0,1", 1.0), ("1,0,*", -1.0), ("1,*,0", 1.0), ("*,1,0", -1.0), ("0,1,*", 1.0)]
                .iter()
                .map(|(s, k)| (cell(s), *k)),
        )
        .unwrap();
        (k, z)
    }

    #[test]
    fn hexagon_is_a_cycle_but_not_a_boundary() {
        let (k, z) = hexagon();
        assert!(boundary(&z).is_zero());
        assert_eq!(chain_volume(&z), 6.0);
        assert!(matches!(filling_lp(&z, &k, 1e-9), Err(ChainError::Infeasible { .. })));
        let cert = rank_certificate(&z, &k).unwrap();
        assert!(!cert.is_boundary);
    }

    #[test]
    fn square_fills_its_boundary() {
        let k = CubeComplex::full_cube(2);
        let sq = CubicalChain::from_terms(2, 2, [(cell("*,*"), 1.0)]).unwrap();
        let z = boundary(&sq);
        let r = filling_lp(&z, &k, 1e-9).unwrap();
        assert_eq!(r.volume, 1.0);
        assert_eq!(r.filler, sq);
        assert_eq!(r.residual, 0.0);
        assert!((r.tube_radius - 0.5).abs() < 1e-12);
        assert!(rank_certificate(&z, &k).unwrap().is_boundary);
    }

    #[test]
    fn zero_cycle_and_errors() {
        let k = CubeComplex::full_cube(2);
        let r = filling_lp(&CubicalChain::zero(2, 1), &k, 1e-9).unwrap();
        assert_eq!(r.volume, 0.0);
        assert!(r.filler.is_zero());
        let open = CubicalChain::from_terms(2, 1, [(cell("*,0"), 1.0)]).unwrap();
        assert!(matches!(filling_lp(&open, &k, 1e-9), Err(ChainError::NotACycle { .. })));
        let edge = CubeComplex::from_cells(2, [cell("*,0")]).unwrap();
        let z = boundary(&CubicalChain::from_terms(2, 2, [(cell("*,*"), 1.0)]).unwrap());
        assert!(matches!(filling_lp(&z, &edge, 1e-9), Err(ChainError::CellNotInComplex { .. })));
    }

    #[test]
    fn cube_surface_minimal_filling() {
        // Boundary of two stacked squares in the 3-cube surface: the cheaper side wins.
        let k = CubeComplex::full_cube(3);
        let top = CubicalChain::from_terms(3, 2, [(cell("*,*,1"), 1.0)]).unwrap();
        let z = boundary(&top);
        let r = filling_lp(&z, &k, 1e-9).unwrap();
        assert_eq!(r.volume, 1.0);
    }
}
