use std::collections::BTreeSet;

use super::MeshError;

pub type Vertex = usize;

/// A simplex as a strictly increasing list of vertices.
pub type Simplex = Vec<Vertex>;

/// Finite abstract simplicial complex, stored by dimension.
///
/// Every face of a listed simplex is listed and vertex lists are canonical
/// (strictly sorted), so two complexes with the same simplices compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<BTreeSet<Simplex>>,
}

fn canonical(simplex: &[Vertex]) -> Result<Simplex, MeshError> {
    if simplex.is_empty() {
        return Err(MeshError::MalformedSimplex { simplex: vec![], reason: "empty vertex list" });
    }
    let mut s = simplex.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(MeshError::MalformedSimplex {
            simplex: simplex.to_vec(),
            reason: "repeated vertex",
        });
    }
    Ok(s)
}

/// Codimension-one faces of a simplex; face `i` omits vertex `i`.
pub(crate) fn facets(simplex: &[Vertex]) -> impl Iterator<Item = (usize, Simplex)> + '_ {
    (0..simplex.len()).filter(move |_| simplex.len() > 1).map(move |i| {
        let mut f = simplex.to_vec();
        f.remove(i);
        (i, f)
    })
}

impl SimplicialComplex {
    /// Builds the complex generated by `simplices`: vertex lists are sorted,
    /// duplicates dropped and all faces added.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self, MeshError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[Vertex]>,
    {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        let mut pending = Vec::new();
        for s in simplices {
            pending.push(canonical(s.as_ref())?);
        }
        while let Some(s) = pending.pop() {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            if by_dim[d].insert(s.clone()) {
                pending.extend(facets(&s).map(|(_, f)| f));
            }
        }
        Ok(SimplicialComplex { by_dim })
    }

    /// Accepts `simplices` only if they already form a closed, canonical complex.
    pub fn from_closed<I, S>(simplices: I) -> Result<Self, MeshError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[Vertex]>,
    {
        let listed: Vec<Simplex> = simplices.into_iter().map(|s| s.as_ref().to_vec()).collect();
        for s in &listed {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(MeshError::MalformedSimplex {
                    simplex: s.clone(),
                    reason: "vertex list not strictly sorted",
                });
            }
        }
        let set: BTreeSet<&Simplex> = listed.iter().collect();
        if set.len() != listed.len() {
            let mut seen = BTreeSet::new();
            let dup = listed.iter().find(|s| !seen.insert(*s)).cloned().unwrap_or_default();
            return Err(MeshError::MalformedSimplex { simplex: dup, reason: "duplicate simplex" });
        }
        for s in &listed {
            for (_, f) in facets(s) {
                if !set.contains(&f) {
                    return Err(MeshError::MissingFace { face: f });
                }
            }
        }
        Self::from_simplices(&listed)
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.by_dim.get(k).into_iter().flat_map(|s| s.iter())
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, BTreeSet::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(BTreeSet::len).collect()
    }

    pub fn contains(&self, simplex: &[Vertex]) -> bool {
        simplex
            .len()
            .checked_sub(1)
            .and_then(|d| self.by_dim.get(d))
            .is_some_and(|s| s.contains(simplex))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices(0).map(|s| s[0])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.simplices(1).map(|s| (s[0], s[1]))
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flat_map(|s| s.iter())
    }
}
