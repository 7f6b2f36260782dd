//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use systolekit::cubical::{Coord, CubeCell};
use systolekit::metric::GeodesicGraph;

pub fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Arc distance on a circle of perimeter `p`.
pub fn circle_dist(p: Rational64, a: Rational64, b: Rational64) -> Rational64 {
    let mut d = (a - b) % p;
    if d < q(0, 1) {
        d = -d;
    }
    if d > p - d {
        p - d
    } else {
        d
    }
}

pub fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Boundary of a single cube cell as signed facets, computed from the
/// alternating-sign rule on free axes.
pub fn cell_boundary(cell: &CubeCell) -> Vec<(CubeCell, i64)> {
    let mut out = Vec::new();
    let coords = cell.coords();
    let free: Vec<usize> = (0..coords.len()).filter(|&i| coords[i] == Coord::Free).collect();
    for (k, &axis) in free.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut hi = coords.to_vec();
        hi[axis] = Coord::One;
        let mut lo = coords.to_vec();
        lo[axis] = Coord::Zero;
        out.push((CubeCell::new(hi), sign));
        out.push((CubeCell::new(lo), -sign));
    }
    out
}

pub fn integer_boundary(chain: &BTreeMap<CubeCell, i64>) -> BTreeMap<CubeCell, i64> {
    let mut out: BTreeMap<CubeCell, i64> = BTreeMap::new();
    for (c, &k) in chain {
        for (f, s) in cell_boundary(c) {
            *out.entry(f).or_default() += s * k;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Exhaustive minimum of `Σ|c_σ|` over integer chains on `cells` with
/// `|c_σ| <= bound` and `∂c = z`. Branch and bound: an edge is closed once
/// its last incident cell is assigned, and one unit of coefficient moves the
/// residual mass by at most the number of facets.
pub fn min_integer_filling(cells: &[CubeCell], z: &BTreeMap<CubeCell, i64>, bound: i64) -> Option<i64> {
    let mut faces: BTreeSet<CubeCell> = z.keys().cloned().collect();
    let bnd: Vec<Vec<(CubeCell, i64)>> = cells.iter().map(cell_boundary).collect();
    for b in &bnd {
        faces.extend(b.iter().map(|(f, _)| f.clone()));
    }
    let index: BTreeMap<CubeCell, usize> = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let cols: Vec<Vec<(usize, i64)>> = bnd.iter().map(|b| b.iter().map(|(f, s)| (index[f], *s)).collect()).collect();
    let mut residual = vec![0i64; faces.len()];
    for (f, &v) in z {
        residual[index[f]] = v;
    }
    // Faces closed after assigning cell i.
    let mut last = vec![None; faces.len()];
    for (i, col) in cols.iter().enumerate() {
        for &(f, _) in col {
            last[f] = Some(i);
        }
    }
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for (f, l) in last.iter().enumerate() {
        match l {
            Some(i) => closes[*i].push(f),
            None if residual[f] != 0 => return None,
            None => {}
        }
    }
    let width = cols.iter().map(Vec::len).max().unwrap_or(1).max(1) as i64;
    let mut best: Option<i64> = None;
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        used: i64,
        residual: &mut Vec<i64>,
        cols: &[Vec<(usize, i64)>],
        closes: &[Vec<usize>],
        bound: i64,
        width: i64,
        best: &mut Option<i64>,
    ) {
        let mass: i64 = residual.iter().map(|r| r.abs()).sum();
        let lower = used + (mass + width - 1) / width;
        if best.is_some_and(|b| lower >= b) {
            return;
        }
        if i == cols.len() {
            if mass == 0 {
                *best = Some(used);
            }
            return;
        }
        let mut order: Vec<i64> = (-bound..=bound).collect();
        order.sort_by_key(|k| k.abs());
        for k in order {
            for &(f, s) in &cols[i] {
                residual[f] -= s * k;
            }
            if closes[i].iter().all(|&f| residual[f] == 0) {
                go(i + 1, used + k.abs(), residual, cols, closes, bound, width, best);
            }
            for &(f, s) in &cols[i] {
                residual[f] += s * k;
            }
        }
    }
    go(0, 0, &mut residual, &cols, &closes, bound, width, &mut best);
    best
}

/// Position of a node of a flat `mx × my` grid torus of size `a × b`, built
/// as in `models::flat_torus`, with vertices unwrapped around the first one.
pub fn torus_node_position(graph: &GeodesicGraph, node: usize, a: f64, b: f64, mx: usize, my: usize) -> [f64; 2] {
    let n = graph.node(node);
    let vpos = |v: usize| [(v % mx) as f64 * a / mx as f64, (v / mx) as f64 * b / my as f64];
    let base = vpos(n.support[0]);
    let total: u64 = n.weights.iter().sum();
    let mut p = [0.0; 2];
    for (&v, &w) in n.support.iter().zip(&n.weights) {
        let mut x = vpos(v);
        for (k, period) in [(0, a), (1, b)] {
            while x[k] - base[k] > period / 2.0 {
                x[k] -= period;
            }
            while base[k] - x[k] > period / 2.0 {
                x[k] += period;
            }
        }
        p[0] += x[0] * w as f64 / total as f64;
        p[1] += x[1] * w as f64 / total as f64;
    }
    p
}

pub fn torus_distance(p: [f64; 2], r: [f64; 2], a: f64, b: f64) -> f64 {
    let wrap = |d: f64, period: f64| {
        let d = d.rem_euclid(period);
        d.min(period - d)
    };
    wrap(p[0] - r[0], a).hypot(wrap(p[1] - r[1], b))
}
