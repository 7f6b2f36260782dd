use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::{Arc, OnceLock};

use crate::mesh::{simplex_volume, PlMetric, Pseudomanifold, Simplex, Vertex};

use super::space::FiniteMetric;
use super::MetricError;

/// A point of the mesh on the subdivision lattice.
///
/// `support` is the smallest simplex containing the point and `weights` its
/// barycentric numerators over the common denominator of the graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphNode {
    pub support: Simplex,
    pub weights: Vec<u64>,
}

/// One top simplex together with the graph nodes lying in it.
#[derive(Debug, Clone)]
pub struct TopCell {
    pub vertices: Simplex,
    pub volume: f64,
    /// Node ids with their barycentric coordinates relative to `vertices`.
    pub nodes: Vec<(usize, Vec<f64>)>,
    sq_lengths: Vec<Vec<f64>>,
}

impl TopCell {
    /// Flat distance between two points given in barycentric coordinates.
    pub fn flat_distance(&self, x: &[f64], y: &[f64]) -> f64 {
        let m = self.vertices.len();
        let mut acc = 0.0;
        for i in 0..m {
            let wi = x[i] - y[i];
            if wi == 0.0 {
                continue;
            }
            for j in (i + 1)..m {
                acc -= wi * (x[j] - y[j]) * self.sq_lengths[i][j];
            }
        }
        acc.max(0.0).sqrt()
    }
}

/// Chord graph approximating the length metric of a piecewise-flat pseudomanifold.
///
/// At level `k` the nodes are every point whose barycentric coordinates in some
/// top simplex have a common denominator `d <= k`, so the node set at level `k`
/// contains the one at level `k - 1`. Any two nodes of a common top simplex
/// are joined by a straight chord of their flat length.
pub struct GeodesicGraph {
    level: usize,
    denominator: u64,
    dim: usize,
    nodes: Vec<GraphNode>,
    anchors: Vec<Vertex>,
    adjacency: Vec<Vec<(usize, f64)>>,
    tops: Vec<TopCell>,
    vertex_nodes: BTreeMap<Vertex, usize>,
    index: BTreeMap<GraphNode, usize>,
    rows: Vec<OnceLock<Arc<[f64]>>>,
}

impl std::fmt::Debug for GeodesicGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeodesicGraph")
            .field("level", &self.level)
            .field("nodes", &self.nodes.len())
            .field("tops", &self.tops.len())
            .finish()
    }
}

fn lcm_up_to(k: usize) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=k as u64).fold(1, |l, d| l / gcd(l, d) * d)
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: u64, parts: usize, out: &mut Vec<Vec<u64>>) {
    fn rec(rest: u64, slot: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slot + 1 == cur.len() {
            cur[slot] = rest;
            out.push(cur.clone());
            return;
        }
        for c in (0..=rest).rev() {
            cur[slot] = c;
            rec(rest - c, slot + 1, cur, out);
        }
    }
    let mut cur = vec![0; parts];
    rec(total, 0, &mut cur, out);
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GeodesicGraph {
    pub fn new(v: &Pseudomanifold, g: &PlMetric, level: usize) -> Result<Self, MetricError> {
        if level == 0 {
            return Err(MetricError::InvalidParameter { name: "subdivision", value: 0.0 });
        }
        let dim = v.dim();
        let denominator = lcm_up_to(level);

        let mut lattice = Vec::new();
        for d in 1..=level as u64 {
            compositions(d, dim + 1, &mut lattice);
        }
        let mut patterns: Vec<Vec<u64>> = lattice
            .into_iter()
            .map(|c| {
                let d: u64 = c.iter().sum();
                c.into_iter().map(|x| x * (denominator / d)).collect()
            })
            .collect();
        patterns.sort();
        patterns.dedup();

        let node_of = |top: &[Vertex], p: &[u64]| GraphNode {
            support: top.iter().zip(p).filter(|(_, &w)| w > 0).map(|(&u, _)| u).collect(),
            weights: p.iter().copied().filter(|&w| w > 0).collect(),
        };

        let vertices: Vec<Vertex> = v.complex().vertices().collect();
        let mut index: BTreeMap<GraphNode, usize> = BTreeMap::new();
        for top in v.top_simplices() {
            for p in &patterns {
                index.insert(node_of(top, p), usize::MAX);
            }
        }
        // Original vertices first, in vertex order; the rest in key order.
        let mut nodes: Vec<GraphNode> = vertices
            .iter()
            .map(|&u| GraphNode { support: vec![u], weights: vec![denominator] })
            .collect();
        for (i, n) in nodes.iter().enumerate() {
            index.insert(n.clone(), i);
        }
        for (key, id) in index.iter_mut() {
            if *id == usize::MAX {
                *id = nodes.len();
                nodes.push(key.clone());
            }
        }
        let vertex_nodes = vertices.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let anchors = nodes
            .iter()
            .map(|n| {
                let best = n.weights.iter().copied().max().unwrap_or(0);
                n.support[n.weights.iter().position(|&w| w == best).unwrap_or(0)]
            })
            .collect();

        let mut tops = Vec::new();
        let mut arcs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for top in v.top_simplices() {
            let m = top.len();
            let mut sq_lengths = vec![vec![0.0; m]; m];
            for i in 0..m {
                for j in (i + 1)..m {
                    let l = g.length(top[i], top[j])?;
                    sq_lengths[i][j] = l * l;
                    sq_lengths[j][i] = l * l;
                }
            }
            let volume = simplex_volume(top, g)?;
            let cell_nodes: Vec<(usize, Vec<f64>)> = patterns
                .iter()
                .map(|p| {
                    let id = index[&node_of(top, p)];
                    (id, p.iter().map(|&w| w as f64 / denominator as f64).collect())
                })
                .collect();
            let cell = TopCell { vertices: top.clone(), volume, nodes: cell_nodes, sq_lengths };
            for (a, (ia, xa)) in cell.nodes.iter().enumerate() {
                for (ib, xb) in &cell.nodes[a + 1..] {
                    let key = (*ia.min(ib), *ia.max(ib));
                    arcs.entry(key).or_insert_with(|| cell.flat_distance(xa, xb));
                }
            }
            tops.push(cell);
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (&(a, b), &len) in &arcs {
            adjacency[a].push((b, len));
            adjacency[b].push((a, len));
        }
        for adj in &mut adjacency {
            adj.sort_by_key(|a| a.0);
        }
        let rows = (0..nodes.len()).map(|_| OnceLock::new()).collect();
        Ok(GeodesicGraph { level, denominator, dim, nodes, anchors, adjacency, tops, vertex_nodes, index, rows })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn node(&self, id: usize) -> &GraphNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    /// Node id of an original mesh vertex.
    pub fn vertex_node(&self, v: Vertex) -> Option<usize> {
        self.vertex_nodes.get(&v).copied()
    }

    /// Mesh vertex of largest barycentric weight; ties go to the lowest vertex.
    pub fn anchor(&self, id: usize) -> Vertex {
        self.anchors[id]
    }

    pub fn neighbors(&self, id: usize) -> &[(usize, f64)] {
        &self.adjacency[id]
    }

    pub fn tops(&self) -> &[TopCell] {
        &self.tops
    }

    pub fn total_volume(&self) -> f64 {
        self.tops.iter().map(|t| t.volume).sum()
    }

    /// Looks up the node at the given barycentric numerators over `denominator()`.
    pub fn find_node(&self, support: &[Vertex], weights: &[u64]) -> Option<usize> {
        let key = GraphNode { support: support.to_vec(), weights: weights.to_vec() };
        self.index.get(&key).copied()
    }

    /// Single-source shortest paths.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        self.distances_from_set(&[source])
    }

    /// Shortest distance to the nearest of `sources`.
    pub fn distances_from_set(&self, sources: &[usize]) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.nodes.len()];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            dist[s] = 0.0;
            heap.push(HeapItem(0.0, s));
        }
        while let Some(HeapItem(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(w, len) in &self.adjacency[u] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(HeapItem(nd, w));
                }
            }
        }
        dist
    }

    pub fn distance(&self, v: usize, w: usize) -> Result<f64, MetricError> {
        let d = self.row(v)[w];
        if d.is_finite() {
            Ok(d)
        } else {
            Err(MetricError::DisconnectedPair { u: v, v: w })
        }
    }

    /// Distance field extended to a point of top cell `top` with barycentric
    /// coordinates `bary`: the best of entering the cell at one of its nodes
    /// and walking straight to the point.
    pub fn point_distance(&self, field: &[f64], top: usize, bary: &[f64]) -> f64 {
        let cell = &self.tops[top];
        cell.nodes
            .iter()
            .map(|(id, x)| field[*id] + cell.flat_distance(x, bary))
            .fold(f64::INFINITY, f64::min)
    }
}

impl FiniteMetric for GeodesicGraph {
    fn len(&self) -> usize {
        self.nodes.len()
    }

    fn row(&self, i: usize) -> Arc<[f64]> {
        self.rows[i].get_or_init(|| self.distances_from(i).into()).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use approx::assert_relative_eq;

    #[test]
    fn lattice_sizes() {
        assert_eq!(lcm_up_to(4), 12);
        let mut out = Vec::new();
        compositions(2, 3, &mut out);
        assert_eq!(out.len(), 6);
    }

    #[test]
    fn circle_half_way_round() {
        let (v, g) = models::circle(1.0, 3).unwrap();
        let graph = GeodesicGraph::new(&v, &g, 4).unwrap();
        // 3 edges, each with interior points at 1/4, 1/3, 1/2, 2/3, 3/4.
        assert_eq!(graph.node_count(), 3 + 3 * 5);
        let half = graph.find_node(&[1, 2], &[6, 6]).unwrap();
        let d = graph.distance(0, half).unwrap();
        assert_relative_eq!(d, 0.5, epsilon = 1e-12);
        assert_eq!(graph.distance(5, 5).unwrap(), 0.0);
    }

    #[test]
    fn vertices_come_first() {
        let (v, g) = models::flat_torus(1.0, 1.0, 3, 3).unwrap();
        let graph = GeodesicGraph::new(&v, &g, 2).unwrap();
        for u in 0..9 {
            assert_eq!(graph.vertex_node(u), Some(u));
            assert_eq!(graph.anchor(u), u);
        }
    }

    #[test]
    fn torus_corner_to_corner() {
        let (v, g) = models::flat_torus(3.0, 3.0, 3, 3).unwrap();
        let graph = GeodesicGraph::new(&v, &g, 3).unwrap();
        // Opposite corners of the unit cell spanned by vertices 0 and 4.
        let d = graph.distance(0, 4).unwrap();
        assert!((1.0..=2f64.sqrt() + 1e-12).contains(&d), "{d}");
        let fine = GeodesicGraph::new(&v, &g, 6).unwrap();
        assert!(fine.distance(0, 4).unwrap() <= d + 1e-12);
    }
}
