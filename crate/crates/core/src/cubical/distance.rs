use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use super::cell::{CubeCell, CubeComplex};
use super::retraction::minimal_face;
use super::CubicalError;

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grid approximation of the ℓ∞ length metric of a cube complex: points at
/// spacing `1/s` in each cell, any two points of a common maximal cell joined
/// by their ℓ∞ distance.
#[derive(Debug, Clone)]
pub struct CubeGraph {
    subdivision: u32,
    points: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    adjacency: Vec<Vec<(usize, f64)>>,
    maximal: Vec<CubeCell>,
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

impl CubeGraph {
    pub fn new(complex: &CubeComplex, subdivision: u32) -> Result<Self, CubicalError> {
        if subdivision == 0 {
            return Err(CubicalError::InvalidParameter { name: "subdivision", value: 0.0 });
        }
        let s = subdivision;
        let maximal: Vec<CubeCell> = complex.maximal_cells().into_iter().cloned().collect();
        let mut points = Vec::new();
        let mut index = HashMap::new();
        let mut arcs: HashMap<(usize, usize), f64> = HashMap::new();
        for cell in &maximal {
            let ids: Vec<usize> = cell
                .grid_points(s)
                .into_iter()
                .map(|p| {
                    *index.entry(p.clone()).or_insert_with(|| {
                        points.push(p);
                        points.len() - 1
                    })
                })
                .collect();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let d = points[a].iter().zip(&points[b]).map(|(x, y)| x.abs_diff(*y)).max().unwrap_or(0);
                    arcs.insert((a.min(b), a.max(b)), f64::from(d) / f64::from(s));
                }
            }
        }
        let mut adjacency = vec![Vec::new(); points.len()];
        let mut sorted: Vec<_> = arcs.into_iter().collect();
        sorted.sort_by_key(|&((a, b), _)| (a, b));
        for ((a, b), d) in sorted {
            adjacency[a].push((b, d));
            adjacency[b].push((a, d));
        }
        Ok(CubeGraph { subdivision, points, index, adjacency, maximal })
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    fn coords(&self, id: usize) -> Vec<f64> {
        self.points[id].iter().map(|&x| f64::from(x) / f64::from(self.subdivision)).collect()
    }

    /// Grid nodes of the given cell.
    pub fn cell_nodes(&self, cell: &CubeCell) -> Vec<usize> {
        cell.grid_points(self.subdivision).into_iter().filter_map(|p| self.index.get(&p).copied()).collect()
    }

    fn dijkstra(&self, sources: &[(usize, f64)]) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.points.len()];
        let mut heap = BinaryHeap::new();
        for &(s, d0) in sources {
            if d0 < dist[s] {
                dist[s] = d0;
                heap.push(Item(d0, s));
            }
        }
        while let Some(Item(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(w, len) in &self.adjacency[u] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Item(nd, w));
                }
            }
        }
        dist
    }

    /// Maximal cells containing `p`, with the grid nodes of each.
    fn attach(&self, complex: &CubeComplex, p: &[f64], tol: f64) -> Result<Vec<(usize, f64)>, CubicalError> {
        let face = minimal_face(p, tol);
        if !complex.contains(&face) {
            return Err(CubicalError::PointNotInComplex);
        }
        let mut out = Vec::new();
        for cell in self.maximal.iter().filter(|c| c.has_face(&face)) {
            for id in self.cell_nodes(cell) {
                out.push((id, linf(p, &self.coords(id))));
            }
        }
        Ok(out)
    }

    /// Length-metric distance between two points of `complex`.
    pub fn distance(&self, complex: &CubeComplex, p: &[f64], q: &[f64], tol: f64) -> Result<f64, CubicalError> {
        let from_p = self.attach(complex, p, tol)?;
        let into_q = self.attach(complex, q, tol)?;
        let fp = minimal_face(p, tol);
        let fq = minimal_face(q, tol);
        let mut best = f64::INFINITY;
        if self.maximal.iter().any(|c| c.has_face(&fp) && c.has_face(&fq)) {
            best = linf(p, q);
        }
        let dist = self.dijkstra(&from_p);
        for (id, d) in into_q {
            best = best.min(dist[id] + d);
        }
        Ok(best)
    }

    /// `dist(K_1, K_2)` between two cells, over their grid points.
    pub fn cell_distance(&self, a: &CubeCell, b: &CubeCell) -> Result<f64, CubicalError> {
        let sa = self.cell_nodes(a);
        let sb = self.cell_nodes(b);
        if sa.is_empty() || sb.is_empty() {
            return Err(CubicalError::CellNotInComplex { spec: if sa.is_empty() { a.spec() } else { b.spec() } });
        }
        let sources: Vec<(usize, f64)> = sa.into_iter().map(|i| (i, 0.0)).collect();
        let dist = self.dijkstra(&sources);
        Ok(sb.into_iter().map(|i| dist[i]).fold(f64::INFINITY, f64::min))
    }
}

/// Length-metric distance in `complex` between `p` and `q`, on the grid of
/// spacing `1/subdivision`. Never below `|p - q|_inf`.
pub fn cube_distance(complex: &CubeComplex, p: &[f64], q: &[f64], subdivision: u32) -> Result<f64, CubicalError> {
    CubeGraph::new(complex, subdivision)?.distance(complex, p, q, 1e-12)
}
