use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::mesh::{SimplicialComplex, Vertex};

use super::group::{exponent_sums, GroupPresentation, OracleKind};
use super::words::{concat, inverse, Word};
use super::HomotopyError;

/// Whether the edge words are known to generate the whole group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normality {
    Verified,
    Failed,
    Assumed,
}

/// A homomorphism `π_1(V) → π` given by words on the edges of the 1-skeleton,
/// with the edges of a spanning tree sent to the identity.
#[derive(Debug, Clone)]
pub struct EdgeHomomorphism {
    presentation: GroupPresentation,
    tree: BTreeSet<(Vertex, Vertex)>,
    /// Normal forms of the words along `u -> v` for `u < v`; identity entries omitted.
    words: BTreeMap<(Vertex, Vertex), Word>,
    normality: Normality,
}

/// `{"tree_edges": [[u, v], ...], "edge_words": {"u-v": "a b^-1", ...}}`, with an
/// optional embedded presentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomomorphismDocument {
    #[serde(default)]
    pub tree_edges: Vec<(Vertex, Vertex)>,
    pub edge_words: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<super::group::PresentationDocument>,
}

fn parse_edge_key(key: &str) -> Result<(Vertex, Vertex), HomotopyError> {
    let bad = || HomotopyError::MalformedWord { word: key.to_string(), reason: "edge key must read `u-v`".into() };
    let (u, v) = key.split_once('-').ok_or_else(bad)?;
    Ok((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
}

/// Row reduction over the integers; true when the rows span `Z^rank`.
fn generates_lattice(mut rows: Vec<Vec<i128>>, rank: usize) -> bool {
    let mut pivot_row = 0;
    for col in 0..rank {
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            let Some(&best) = nonzero.iter().min_by_key(|&&i| rows[i][col].abs()) else {
                return false;
            };
            rows.swap(pivot_row, best);
            if nonzero.len() == 1 {
                break;
            }
            let p = rows[pivot_row][col];
            for i in pivot_row + 1..rows.len() {
                let q = rows[i][col] / p;
                if q != 0 {
                    for c in 0..rank {
                        rows[i][c] -= q * rows[pivot_row][c];
                    }
                }
            }
        }
        if rows[pivot_row][col].abs() != 1 {
            return false;
        }
        pivot_row += 1;
    }
    true
}

impl EdgeHomomorphism {
    /// Builds the homomorphism from tree-gauged words. `edge_words` maps oriented
    /// edges `(u, v)` to the word read along `u -> v`; unlisted edges carry the
    /// identity. Checks that the tree spans, that tree edges carry the identity and
    /// that every triangle bounds.
    pub fn new(
        presentation: GroupPresentation,
        complex: &SimplicialComplex,
        tree_edges: &[(Vertex, Vertex)],
        edge_words: &BTreeMap<(Vertex, Vertex), Word>,
    ) -> Result<Self, HomotopyError> {
        let oracle = presentation.oracle()?;
        let mut tree = BTreeSet::new();
        for &(u, v) in tree_edges {
            let e = (u.min(v), u.max(v));
            if !complex.contains(&[e.0, e.1]) {
                return Err(HomotopyError::UnknownEdge { u, v });
            }
            tree.insert(e);
        }
        check_spanning_tree(complex, &tree)?;

        let mut words = BTreeMap::new();
        for (&(u, v), w) in edge_words {
            if u == v || !complex.contains(&[u.min(v), u.max(v)]) {
                return Err(HomotopyError::UnknownEdge { u, v });
            }
            let oriented = if u < v { w.clone() } else { inverse(w) };
            let nf = oracle.normal_form(&oriented);
            let e = (u.min(v), u.max(v));
            if tree.contains(&e) && !nf.is_empty() {
                return Err(HomotopyError::TreeEdgeWord { u: e.0, v: e.1 });
            }
            if let Some(prev) = words.get(&e) {
                if *prev != nf {
                    return Err(HomotopyError::ConflictingEdgeWord { u: e.0, v: e.1 });
                }
            }
            if !nf.is_empty() {
                words.insert(e, nf);
            }
        }
        let mut phi = EdgeHomomorphism { presentation, tree, words, normality: Normality::Assumed };
        for s in complex.simplices(2) {
            let loop_word = concat(&concat(&phi.word(s[0], s[1]), &phi.word(s[1], s[2])), &phi.word(s[2], s[0]));
            if !phi.presentation.oracle()?.normal_form(&loop_word).is_empty() {
                return Err(HomotopyError::CocycleViolation {
                    simplex: s.clone(),
                    word: phi.presentation.format(&loop_word),
                });
            }
        }
        phi.normality = phi.check_normality();
        Ok(phi)
    }

    /// Accepts words on every edge, picks the breadth-first spanning tree from
    /// the lowest vertex and conjugates the cochain into tree gauge. The kernel,
    /// and hence every systole, is unchanged.
    pub fn from_cochain(
        presentation: GroupPresentation,
        complex: &SimplicialComplex,
        edge_words: &BTreeMap<(Vertex, Vertex), Word>,
    ) -> Result<Self, HomotopyError> {
        let oracle = presentation.oracle()?;
        let mut oriented: BTreeMap<(Vertex, Vertex), Word> = BTreeMap::new();
        for (&(u, v), w) in edge_words {
            if u == v || !complex.contains(&[u.min(v), u.max(v)]) {
                return Err(HomotopyError::UnknownEdge { u, v });
            }
            let w = if u < v { w.clone() } else { inverse(w) };
            oriented.insert((u.min(v), u.max(v)), w);
        }
        let word = |u: Vertex, v: Vertex| -> Word {
            match oriented.get(&(u.min(v), u.max(v))) {
                Some(w) if u < v => w.clone(),
                Some(w) => inverse(w),
                None => Vec::new(),
            }
        };
        let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> = complex.vertices().map(|v| (v, Vec::new())).collect();
        for (u, v) in complex.edges() {
            adjacency.entry(u).or_default().push(v);
            adjacency.entry(v).or_default().push(u);
        }
        let mut potential: BTreeMap<Vertex, Word> = BTreeMap::new();
        let mut tree = Vec::new();
        if let Some(&root) = adjacency.keys().next() {
            potential.insert(root, Vec::new());
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in &adjacency[&u] {
                    if !potential.contains_key(&v) {
                        let p = oracle.normal_form(&concat(&potential[&u], &word(u, v)));
                        potential.insert(v, p);
                        tree.push((u, v));
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut gauged = BTreeMap::new();
        for (u, v) in complex.edges() {
            let (Some(pu), Some(pv)) = (potential.get(&u), potential.get(&v)) else {
                continue;
            };
            let w = oracle.normal_form(&concat(&concat(pu, &word(u, v)), &inverse(pv)));
            if !w.is_empty() {
                gauged.insert((u, v), w);
            }
        }
        Self::new(presentation, complex, &tree, &gauged)
    }

    pub fn from_document(
        doc: &HomomorphismDocument,
        presentation: GroupPresentation,
        complex: &SimplicialComplex,
    ) -> Result<Self, HomotopyError> {
        let mut words = BTreeMap::new();
        for (key, text) in &doc.edge_words {
            words.insert(parse_edge_key(key)?, presentation.parse(text)?);
        }
        if doc.tree_edges.is_empty() {
            Self::from_cochain(presentation, complex, &words)
        } else {
            Self::new(presentation, complex, &doc.tree_edges, &words)
        }
    }

    pub fn to_document(&self) -> HomomorphismDocument {
        HomomorphismDocument {
            tree_edges: self.tree.iter().copied().collect(),
            edge_words: self.words.iter().map(|(&(u, v), w)| (format!("{u}-{v}"), self.presentation.format(w))).collect(),
            presentation: Some(self.presentation.to_document()),
        }
    }

    fn check_normality(&self) -> Normality {
        if self.presentation.kind() != OracleKind::FreeAbelian {
            return Normality::Assumed;
        }
        let rank = self.presentation.rank();
        let rows = self
            .words
            .values()
            .map(|w| {
                let exps = exponent_sums(w);
                (0..rank).map(|g| i128::from(exps.get(&g).copied().unwrap_or(0))).collect()
            })
            .collect();
        if generates_lattice(rows, rank) {
            Normality::Verified
        } else {
            Normality::Failed
        }
    }

    /// Normal form of the word along `u -> v`.
    pub fn word(&self, u: Vertex, v: Vertex) -> Word {
        if u == v {
            return Vec::new();
        }
        match self.words.get(&(u.min(v), u.max(v))) {
            Some(w) if u < v => w.clone(),
            Some(w) => inverse(w),
            None => Vec::new(),
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.tree.iter().copied()
    }

    pub fn normality(&self) -> Normality {
        self.normality
    }

    /// True when every edge word is the identity, so the image is trivial.
    pub fn is_trivial(&self) -> bool {
        self.words.is_empty()
    }
}

fn check_spanning_tree(complex: &SimplicialComplex, tree: &BTreeSet<(Vertex, Vertex)>) -> Result<(), HomotopyError> {
    let vertices: Vec<Vertex> = complex.vertices().collect();
    if tree.len() + 1 != vertices.len() {
        return Err(HomotopyError::NotSpanningTree {
            reason: format!("{} edges for {} vertices", tree.len(), vertices.len()),
        });
    }
    let mut parent: BTreeMap<Vertex, Vertex> = vertices.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let p = parent[&v];
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    for &(u, v) in tree {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err(HomotopyError::NotSpanningTree { reason: format!("edge ({u}, {v}) closes a cycle") });
        }
        parent.insert(ru, rv);
    }
    Ok(())
}
