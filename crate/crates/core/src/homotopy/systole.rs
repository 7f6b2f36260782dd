use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use crate::metric::GeodesicGraph;
use crate::par::Execution;

use super::group::WordOracle;
use super::phi::EdgeHomomorphism;
use super::words::{concat, inverse, Word};
use super::HomotopyError;

/// Limits for the covering-space search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystoleOptions {
    /// Lifted states settled per base node before giving up.
    pub max_states: usize,
    /// Exploration radius as a multiple of the first loop found.
    pub cutoff_factor: f64,
    pub exec: Execution,
}

impl Default for SystoleOptions {
    fn default() -> Self {
        SystoleOptions { max_states: 2_000_000, cutoff_factor: 3.0, exec: Execution::default() }
    }
}

/// A shortest loop found by the search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopWitness {
    pub base: usize,
    pub length: f64,
    /// Normal form of the loop's image in `π`.
    pub holonomy: Word,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystoleResult {
    /// `f64::INFINITY` when no loop has nontrivial image.
    pub value: f64,
    pub witness: Option<LoopWitness>,
    pub subdivision: usize,
    pub bases: usize,
    pub states: usize,
}

/// Interned group elements and cached products.
struct Elements<'a> {
    oracle: &'a dyn WordOracle,
    ids: HashMap<Word, u32>,
    words: Vec<Word>,
    products: HashMap<(u32, u32), u32>,
}

impl<'a> Elements<'a> {
    fn new(oracle: &'a dyn WordOracle) -> Self {
        let mut e = Elements { oracle, ids: HashMap::new(), words: Vec::new(), products: HashMap::new() };
        e.intern(Vec::new());
        e
    }

    fn intern(&mut self, w: Word) -> u32 {
        if let Some(&id) = self.ids.get(&w) {
            return id;
        }
        let id = self.words.len() as u32;
        self.ids.insert(w.clone(), id);
        self.words.push(w);
        id
    }

    fn normalize(&mut self, w: &[i32]) -> u32 {
        let nf = self.oracle.normal_form(w);
        self.intern(nf)
    }

    fn mul(&mut self, a: u32, b: u32) -> u32 {
        if b == 0 {
            return a;
        }
        if let Some(&c) = self.products.get(&(a, b)) {
            return c;
        }
        let w = concat(&self.words[a as usize], &self.words[b as usize]);
        let c = self.normalize(&w);
        self.products.insert((a, b), c);
        c
    }
}

#[derive(PartialEq)]
struct State(f64, usize, u32);

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1)).then_with(|| other.2.cmp(&self.2))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element carried by each arc: the word between the anchor vertices of its ends.
fn arc_elements(graph: &GeodesicGraph, phi: &EdgeHomomorphism, elems: &mut Elements) -> Vec<Vec<u32>> {
    let mut cache: HashMap<(usize, usize), u32> = HashMap::new();
    (0..graph.node_count())
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .map(|&(u, _)| {
                    let key = (graph.anchor(v), graph.anchor(u));
                    *cache.entry(key).or_insert_with(|| elems.normalize(&phi.word(key.0, key.1)))
                })
                .collect()
        })
        .collect()
}

enum Search {
    Found(LoopWitness, usize),
    NoneBelow(usize),
}

/// Lifted Dijkstra from `(base, 1)`. Whenever a popped state `(v, g)` has an arc
/// to `u` whose lift `(u, g·w)` differs from an already settled `(u, h)`, the two
/// paths close up into a loop with holonomy `g·w·h⁻¹ ≠ 1`. Every loop shorter
/// than `2d` is found by the time states at distance `d` are popped.
fn search(
    graph: &GeodesicGraph,
    phi: &EdgeHomomorphism,
    base: usize,
    bound: f64,
    opts: &SystoleOptions,
) -> Result<Search, HomotopyError> {
    let oracle = phi.presentation().oracle()?;
    let mut elems = Elements::new(oracle);
    let arcs = arc_elements(graph, phi, &mut elems);
    let mut best = bound;
    let mut found: Option<(f64, u32)> = None;
    let mut first: Option<f64> = None;
    let mut tentative: HashMap<(usize, u32), f64> = HashMap::new();
    let mut settled: Vec<Vec<(u32, f64)>> = vec![Vec::new(); graph.node_count()];
    let mut heap = BinaryHeap::from([State(0.0, base, 0)]);
    tentative.insert((base, 0), 0.0);
    let mut states = 0;
    while let Some(State(d, v, g)) = heap.pop() {
        if tentative.get(&(v, g)).is_some_and(|&t| d > t) || settled[v].iter().any(|&(h, _)| h == g) {
            continue;
        }
        if 2.0 * d >= best || first.is_some_and(|f| d > opts.cutoff_factor * f) {
            break;
        }
        states += 1;
        if states > opts.max_states {
            return Err(HomotopyError::SearchCutoffExceeded { lower_bound: (2.0 * d).min(best), states });
        }
        settled[v].push((g, d));
        for (i, &(u, len)) in graph.neighbors(v).iter().enumerate() {
            let h = elems.mul(g, arcs[v][i]);
            for k in 0..settled[u].len() {
                let (h2, d2) = settled[u][k];
                if h2 != h {
                    let cand = d + len + d2;
                    first.get_or_insert(cand);
                    if cand < best {
                        best = cand;
                        let inv = elems.normalize(&inverse(&elems.words[h2 as usize].clone()));
                        found = Some((cand, elems.mul(h, inv)));
                    }
                }
            }
            if settled[u].iter().any(|&(h2, _)| h2 == h) {
                continue;
            }
            let nd = d + len;
            let slot = tentative.entry((u, h)).or_insert(f64::INFINITY);
            if nd < *slot {
                *slot = nd;
                heap.push(State(nd, u, h));
            }
        }
    }
    Ok(match found {
        Some((length, hol)) => {
            Search::Found(LoopWitness { base, length, holonomy: elems.words[hol as usize].clone() }, states)
        }
        None => Search::NoneBelow(states),
    })
}

/// Shortest loop based at node `base` whose image under `phi` is nontrivial;
/// `f64::INFINITY` if there is none.
pub fn pointwise_systole(
    graph: &GeodesicGraph,
    phi: &EdgeHomomorphism,
    base: usize,
    opts: &SystoleOptions,
) -> Result<SystoleResult, HomotopyError> {
    if base >= graph.node_count() {
        return Err(HomotopyError::UnknownNode { node: base });
    }
    let (value, witness, states) = match search(graph, phi, base, f64::INFINITY, opts)? {
        Search::Found(w, s) => (w.length, Some(w), s),
        Search::NoneBelow(s) => (f64::INFINITY, None, s),
    };
    Ok(SystoleResult { value, witness, subdivision: graph.level(), bases: 1, states })
}

/// Bases are processed in fixed-size blocks; the best value of earlier blocks
/// prunes later searches, so the result does not depend on the worker count.
const BLOCK: usize = 64;

/// `sys(V, f, g)` on the chord graph: the minimum of the pointwise systoles
/// over all nodes. Ties go to the lowest base node.
pub fn relative_systole(
    graph: &GeodesicGraph,
    phi: &EdgeHomomorphism,
    opts: &SystoleOptions,
) -> Result<SystoleResult, HomotopyError> {
    phi.presentation().oracle()?;
    let n = graph.node_count();
    let mut best: Option<LoopWitness> = None;
    let mut states = 0;
    if phi.is_trivial() {
        return Ok(SystoleResult { value: f64::INFINITY, witness: None, subdivision: graph.level(), bases: n, states });
    }
    let mut start = 0;
    while start < n {
        let end = (start + BLOCK).min(n);
        let bound = best.as_ref().map_or(f64::INFINITY, |w| w.length);
        let bases: Vec<usize> = (start..end).collect();
        let results = opts.exec.map(&bases, |&b| search(graph, phi, b, bound, opts));
        for r in results {
            match r? {
                Search::Found(w, s) => {
                    states += s;
                    if best.as_ref().is_none_or(|b| w.length < b.length) {
                        best = Some(w);
                    }
                }
                Search::NoneBelow(s) => states += s,
            }
        }
        start = end;
    }
    let value = best.as_ref().map_or(f64::INFINITY, |w| w.length);
    Ok(SystoleResult { value, witness: best, subdivision: graph.level(), bases: n, states })
}

/// `σ = vol / sys^n`.
pub fn systolic_ratio(volume: f64, systole: f64, n: usize) -> Result<f64, HomotopyError> {
    if !systole.is_finite() {
        return Err(HomotopyError::InfiniteSystole);
    }
    Ok(volume / systole.powi(n as i32))
}

/// Lifted nodes reached from `(base, start)` within `radius`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringBall {
    pub base_node: usize,
    pub radius: f64,
    /// `(node, group element, distance)` sorted by node then element.
    pub lifted_nodes: Vec<(usize, Word, f64)>,
    /// Elements `γ ≠ start` with `(base, γ)` inside the ball.
    pub deck_translates: Vec<Word>,
}

pub fn covering_ball(
    graph: &GeodesicGraph,
    phi: &EdgeHomomorphism,
    base: usize,
    start: &[i32],
    radius: f64,
) -> Result<CoveringBall, HomotopyError> {
    if base >= graph.node_count() {
        return Err(HomotopyError::UnknownNode { node: base });
    }
    let oracle = phi.presentation().oracle()?;
    let mut elems = Elements::new(oracle);
    let arcs = arc_elements(graph, phi, &mut elems);
    let s = elems.normalize(start);
    let mut dist: HashMap<(usize, u32), f64> = HashMap::from([((base, s), 0.0)]);
    let mut done: HashMap<(usize, u32), f64> = HashMap::new();
    let mut heap = BinaryHeap::from([State(0.0, base, s)]);
    while let Some(State(d, v, g)) = heap.pop() {
        if d > radius {
            break;
        }
        if done.contains_key(&(v, g)) {
            continue;
        }
        done.insert((v, g), d);
        for (i, &(u, len)) in graph.neighbors(v).iter().enumerate() {
            let h = elems.mul(g, arcs[v][i]);
            let nd = d + len;
            let slot = dist.entry((u, h)).or_insert(f64::INFINITY);
            if nd < *slot && nd <= radius {
                *slot = nd;
                heap.push(State(nd, u, h));
            }
        }
    }
    let mut lifted_nodes: Vec<(usize, Word, f64)> =
        done.into_iter().map(|((v, g), d)| (v, elems.words[g as usize].clone(), d)).collect();
    lifted_nodes.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let start_nf = elems.words[s as usize].clone();
    let deck_translates =
        lifted_nodes.iter().filter(|(v, g, _)| *v == base && *g != start_nf).map(|(_, g, _)| g.clone()).collect();
    Ok(CoveringBall { base_node: base, radius, lifted_nodes, deck_translates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::GroupPresentation;
    use crate::models;
    use approx::assert_relative_eq;

    #[test]
    fn circle_systole_is_the_perimeter() {
        let (v, g, phi) = models::circle_with_identity(2.0, 3).unwrap();
        let graph = GeodesicGraph::new(&v, &g, 4).unwrap();
        let r = relative_systole(&graph, &phi, &SystoleOptions::default()).unwrap();
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-12);
        assert_eq!(r.witness.unwrap().holonomy.len(), 1);
        for b in [0, 5] {
            let p = pointwise_systole(&graph, &phi, b, &SystoleOptions::default()).unwrap();
            assert_relative_eq!(p.value, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn trivial_image_gives_infinity() {
        let (v, g) = models::circle(2.0, 3).unwrap();
        let phi = EdgeHomomorphism::new(
            GroupPresentation::free(&["a"]),
            v.complex(),
            &[(0, 1), (1, 2)],
            &Default::default(),
        )
        .unwrap();
        let graph = GeodesicGraph::new(&v, &g, 2).unwrap();
        let r = relative_systole(&graph, &phi, &SystoleOptions::default()).unwrap();
        assert!(r.value.is_infinite());
        let p = pointwise_systole(&graph, &phi, 1, &SystoleOptions::default()).unwrap();
        assert!(p.value.is_infinite());
        assert!(matches!(systolic_ratio(2.0, r.value, 1), Err(HomotopyError::InfiniteSystole)));
    }

    #[test]
    fn state_cap_reports_a_lower_bound() {
        let (v, g, phi) = models::circle_with_identity(2.0, 3).unwrap();
        let graph = GeodesicGraph::new(&v, &g, 4).unwrap();
        let opts = SystoleOptions { max_states: 3, ..Default::default() };
        match pointwise_systole(&graph, &phi, 0, &opts) {
            Err(HomotopyError::SearchCutoffExceeded { lower_bound, .. }) => assert!(lower_bound <= 2.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cyclic_cover_of_the_circle() {
        // Z/2 image: the loop around once is still nontrivial.
        use crate::homotopy::CyclicOracle;
        use std::sync::Arc;
        let (v, g) = models::circle(2.0, 3).unwrap();
        let z2 = GroupPresentation::custom(&["a"], vec![vec![1, 1]], Some(Arc::new(CyclicOracle { order: 2 }))).unwrap();
        let words = std::collections::BTreeMap::from([((2, 0), vec![1])]);
        let phi = EdgeHomomorphism::new(z2, v.complex(), &[(0, 1), (1, 2)], &words).unwrap();
        let graph = GeodesicGraph::new(&v, &g, 2).unwrap();
        let r = relative_systole(&graph, &phi, &SystoleOptions::default()).unwrap();
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-12);
    }
}
