use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cubical::{CubeCell, CubeComplex};

use super::ChainError;

/// Real chain of axis cells of a fixed degree in `[0,1]^N`.
///
/// Zero coefficients are never stored, so two chains are equal exactly when
/// their coefficient maps agree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CubicalChain {
    ambient_dim: usize,
    degree: usize,
    coefficients: BTreeMap<CubeCell, f64>,
}

/// `{"degree": k, "coefficients": [["cell-spec", value], ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainDocument {
    pub degree: usize,
    pub coefficients: Vec<(String, f64)>,
}

impl CubicalChain {
    pub fn zero(ambient_dim: usize, degree: usize) -> Self {
        CubicalChain { ambient_dim, degree, coefficients: BTreeMap::new() }
    }

    /// Sums the given terms; every cell must have dimension `degree`.
    pub fn from_terms<I>(ambient_dim: usize, degree: usize, terms: I) -> Result<Self, ChainError>
    where
        I: IntoIterator<Item = (CubeCell, f64)>,
    {
        let mut c = Self::zero(ambient_dim, degree);
        for (cell, k) in terms {
            if cell.ambient_dim() != ambient_dim {
                return Err(ChainError::DegreeMismatch { expected: ambient_dim, found: cell.ambient_dim() });
            }
            if cell.dim() != degree {
                return Err(ChainError::DegreeMismatch { expected: degree, found: cell.dim() });
            }
            c.add_term(cell, k);
        }
        Ok(c)
    }

    fn add_term(&mut self, cell: CubeCell, k: f64) {
        if k == 0.0 {
            return;
        }
        match self.coefficients.entry(cell) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(k);
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<CubeCell, f64> {
        &self.coefficients
    }

    pub fn coefficient(&self, cell: &CubeCell) -> f64 {
        self.coefficients.get(cell).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &CubeCell> {
        self.coefficients.keys()
    }

    /// Largest absolute coefficient, 0 for the zero chain.
    pub fn max_abs(&self) -> f64 {
        self.coefficients.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let mut c = Self::zero(self.ambient_dim, self.degree);
        for (cell, k) in &self.coefficients {
            c.add_term(cell.clone(), lambda * k);
        }
        c
    }

    /// `self + other`; degrees must agree.
    pub fn add(&self, other: &CubicalChain) -> Result<Self, ChainError> {
        if other.degree != self.degree {
            return Err(ChainError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut c = self.clone();
        for (cell, k) in &other.coefficients {
            c.add_term(cell.clone(), *k);
        }
        Ok(c)
    }

    pub fn sub(&self, other: &CubicalChain) -> Result<Self, ChainError> {
        self.add(&other.scaled(-1.0))
    }

    /// Fails with `CellNotInComplex` unless every cell of the support lies in `complex`.
    pub fn check_in(&self, complex: &CubeComplex) -> Result<(), ChainError> {
        if complex.ambient_dim() != self.ambient_dim {
            return Err(ChainError::DegreeMismatch { expected: complex.ambient_dim(), found: self.ambient_dim });
        }
        match self.support().find(|c| !complex.contains(c)) {
            Some(c) => Err(ChainError::CellNotInComplex { spec: c.spec() }),
            None => Ok(()),
        }
    }

    pub fn to_document(&self) -> ChainDocument {
        ChainDocument {
            degree: self.degree,
            coefficients: self.coefficients.iter().map(|(c, k)| (c.spec(), *k)).collect(),
        }
    }

    pub fn from_document(doc: &ChainDocument, ambient_dim: usize) -> Result<Self, ChainError> {
        let terms = doc
            .coefficients
            .iter()
            .map(|(s, k)| Ok((CubeCell::parse(s)?, *k)))
            .collect::<Result<Vec<_>, ChainError>>()?;
        Self::from_terms(ambient_dim, doc.degree, terms)
    }
}

/// Cubical boundary `∂σ = Σ_i (-1)^i (σ|_{a_i=1} - σ|_{a_i=0})` over the free
/// axes `a_0 < a_1 < ...` of `σ`, extended linearly. The boundary of a 0-chain
/// is the zero chain of degree 0.
pub fn boundary(c: &CubicalChain) -> CubicalChain {
    if c.degree == 0 {
        return CubicalChain::zero(c.ambient_dim, 0);
    }
    let mut out = CubicalChain::zero(c.ambient_dim, c.degree - 1);
    for (cell, &k) in &c.coefficients {
        for (i, axis) in cell.free_axes().into_iter().enumerate() {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term(cell.restrict(axis, crate::cubical::Coord::One), sign * k);
            out.add_term(cell.restrict(axis, crate::cubical::Coord::Zero), -sign * k);
        }
    }
    out
}

/// ℓ∞ (inscribed Riemannian) volume of an axis cell: 1 in every dimension,
/// with counting measure on 0-cells.
pub fn linf_cell_volume(_cell: &CubeCell) -> f64 {
    1.0
}

/// `Σ |k_i| vol(σ_i)`.
pub fn chain_volume(c: &CubicalChain) -> f64 {
    c.coefficients.iter().map(|(cell, k)| k.abs() * linf_cell_volume(cell)).sum()
}
