use std::collections::{BTreeMap, VecDeque};

use super::complex::{facets, Simplex, SimplicialComplex};
use super::MeshError;

/// A validated `n`-dimensional pseudomanifold.
///
/// When orientable, `fundamental_cycle` assigns a sign to every top simplex so
/// that the signed sum has zero boundary over the integers.
#[derive(Debug, Clone, PartialEq)]
pub struct Pseudomanifold {
    complex: SimplicialComplex,
    dim: usize,
    orientable: bool,
    fundamental_cycle: Vec<(Simplex, i32)>,
}

impl Pseudomanifold {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    /// Signed top simplices; empty for non-orientable inputs.
    pub fn fundamental_cycle(&self) -> &[(Simplex, i32)] {
        &self.fundamental_cycle
    }

    pub fn top_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.complex.simplices(self.dim)
    }

    /// Errors with `NonOrientable` unless the pseudomanifold can carry a cycle.
    pub fn require_orientable(&self) -> Result<(), MeshError> {
        if self.orientable {
            Ok(())
        } else {
            Err(MeshError::NonOrientable)
        }
    }

    /// Integer boundary of the fundamental cycle, as a map face -> coefficient
    /// with zero entries removed.
    pub fn fundamental_cycle_boundary(&self) -> BTreeMap<Simplex, i64> {
        let mut acc: BTreeMap<Simplex, i64> = BTreeMap::new();
        for (s, sign) in &self.fundamental_cycle {
            for (i, f) in facets(s) {
                let c = if i % 2 == 0 { 1 } else { -1 };
                *acc.entry(f).or_default() += c * i64::from(*sign);
            }
        }
        acc.retain(|_, c| *c != 0);
        acc
    }
}

/// Checks homogeneity, non-branching and strong connectivity for dimension
/// `n`, then tries to orient the top simplices coherently.
///
/// Link conditions are not examined; singular loci are allowed.
pub fn validate_pseudomanifold(complex: SimplicialComplex, n: usize) -> Result<Pseudomanifold, MeshError> {
    let found = complex.dim().unwrap_or(0);
    if n == 0 || found != n {
        return Err(MeshError::DimensionMismatch { expected: n, found });
    }
    let tops: Vec<&Simplex> = complex.simplices(n).collect();

    // Homogeneity: every simplex lies under some top simplex.
    let generated = SimplicialComplex::from_simplices(tops.iter().map(|s| s.as_slice()))?;
    if let Some(bad) = complex.all_simplices().find(|s| !generated.contains(s)) {
        return Err(MeshError::HomogeneityViolation { simplex: bad.clone() });
    }

    // Non-branching: (n-1)-faces have exactly two cofaces.
    let mut cofaces: BTreeMap<Simplex, Vec<(usize, usize)>> = BTreeMap::new();
    for (t, s) in tops.iter().enumerate() {
        for (pos, f) in facets(s) {
            cofaces.entry(f).or_default().push((t, pos));
        }
    }
    if let Some((face, cs)) = cofaces.iter().find(|(_, cs)| cs.len() != 2) {
        return Err(MeshError::BranchingViolation { face: face.clone(), cofaces: cs.len() });
    }

    // Strong connectivity by BFS on the dual graph, propagating orientation signs.
    let mut adjacency: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); tops.len()];
    for cs in cofaces.values() {
        let (a, pa) = cs[0];
        let (b, pb) = cs[1];
        adjacency[a].push((b, pa, pb));
        adjacency[b].push((a, pb, pa));
    }
    let mut sign = vec![0i32; tops.len()];
    let mut orientable = true;
    let mut components = 0;
    let mut first_unreached = None;
    for root in 0..tops.len() {
        if sign[root] != 0 {
            continue;
        }
        components += 1;
        if components == 2 {
            first_unreached = Some(root);
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            for &(u, pos_t, pos_u) in &adjacency[t] {
                // Induced coefficients on the shared face must cancel.
                let parity = if (pos_t + pos_u) % 2 == 0 { 1 } else { -1 };
                let wanted = -sign[t] * parity;
                if sign[u] == 0 {
                    sign[u] = wanted;
                    queue.push_back(u);
                } else if sign[u] != wanted {
                    orientable = false;
                }
            }
        }
    }
    if let Some(t) = first_unreached {
        return Err(MeshError::NotStronglyConnected { simplex: tops[t].clone(), components });
    }

    let fundamental_cycle = if orientable {
        tops.iter().zip(&sign).map(|(s, &e)| ((*s).clone(), e)).collect()
    } else {
        Vec::new()
    };
    Ok(Pseudomanifold { complex, dim: n, orientable, fundamental_cycle })
}
