use serde::Serialize;

use crate::par::Execution;

use super::graph::GeodesicGraph;
use super::MetricError;

/// Kuhn subdivision of the standard `n`-simplex into `k^n` sub-simplices of equal
/// volume, each given by its `n + 1` corners in barycentric coordinates.
pub fn kuhn_subdivision(n: usize, k: usize) -> Vec<Vec<Vec<f64>>> {
    // Staircase coordinates k >= y_1 >= ... >= y_n >= 0, cut into unit-cube simplices.
    let to_bary = |y: &[usize]| -> Vec<f64> {
        let mut b = Vec::with_capacity(n + 1);
        b.push(1.0 - y[0] as f64 / k as f64);
        for i in 0..n {
            let next = if i + 1 < n { y[i + 1] } else { 0 };
            b.push((y[i] - next) as f64 / k as f64);
        }
        b
    };
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
    let mut out = Vec::new();
    let mut base = vec![0usize; n];
    loop {
        for perm in &perms {
            let mut corner = base.clone();
            let mut corners = vec![corner.clone()];
            for &axis in perm {
                corner[axis] += 1;
                corners.push(corner.clone());
            }
            let inside = corners.iter().all(|c| c[0] <= k && c.windows(2).all(|w| w[0] >= w[1]));
            if inside {
                out.push(corners.iter().map(|c| to_bary(c)).collect());
            }
        }
        let mut i = 0;
        while i < n {
            base[i] += 1;
            if base[i] < k {
                break;
            }
            base[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

fn permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    center: f64,
    lo: f64,
    hi: f64,
    volume: f64,
}

/// Distance from one center evaluated on every Kuhn sub-simplex of the mesh.
#[derive(Debug, Clone)]
pub struct BallField {
    center: usize,
    pieces: Vec<Piece>,
    max_piece: f64,
    total: f64,
}

impl BallField {
    pub fn new(graph: &GeodesicGraph, center: usize) -> Result<Self, MetricError> {
        if center >= graph.node_count() {
            return Err(MetricError::UnknownNode { node: center });
        }
        let field = graph.distances_from(center);
        let k = graph.level();
        let n = graph.dim();
        let subs = kuhn_subdivision(n, k);
        let mut pieces = Vec::with_capacity(subs.len() * graph.tops().len());
        let mut max_piece: f64 = 0.0;
        for (t, top) in graph.tops().iter().enumerate() {
            let volume = top.volume / subs.len() as f64;
            max_piece = max_piece.max(volume);
            for corners in &subs {
                let bary: Vec<f64> =
                    (0..=n).map(|i| corners.iter().map(|c| c[i]).sum::<f64>() / (n + 1) as f64).collect();
                let center = graph.point_distance(&field, t, &bary);
                let mut lo = center;
                let mut hi = center;
                for c in corners {
                    let d = graph.point_distance(&field, t, c);
                    lo = lo.min(d);
                    hi = hi.max(d);
                }
                pieces.push(Piece { center, lo, hi, volume });
            }
        }
        let total = pieces.iter().map(|p| p.volume).sum();
        Ok(BallField { center, pieces, max_piece, total })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Closed-ball volume estimate and its error bound at radius `r`.
    pub fn volume(&self, r: f64) -> (f64, f64) {
        let mut vol = 0.0;
        let mut straddling = 0usize;
        for p in &self.pieces {
            if p.center <= r {
                vol += p.volume;
            }
            if p.lo <= r && r < p.hi {
                straddling += 1;
            }
        }
        (vol, straddling as f64 * self.max_piece)
    }

    /// Largest evaluated distance; the ball is everything from here on.
    pub fn eccentricity(&self) -> f64 {
        self.pieces.iter().map(|p| p.hi).fold(0.0, f64::max)
    }

    pub fn total_volume(&self) -> f64 {
        self.total
    }
}

/// `vol(B(center, R))` for a list of radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallGrowthProfile {
    pub center: usize,
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
    pub error_bounds: Vec<f64>,
    pub total_volume: f64,
    pub subdivision: usize,
}

fn check_radii(radii: &[f64]) -> Result<(), MetricError> {
    if let Some(bad) = radii.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
        return Err(MetricError::InvalidParameter { name: "radius", value: *bad });
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MetricError::InvalidParameter { name: "radii must increase", value: f64::NAN });
    }
    Ok(())
}

pub fn ball_volume_profile(
    graph: &GeodesicGraph,
    center: usize,
    radii: &[f64],
) -> Result<BallGrowthProfile, MetricError> {
    check_radii(radii)?;
    let field = BallField::new(graph, center)?;
    Ok(profile_of(&field, radii, graph.level()))
}

fn profile_of(field: &BallField, radii: &[f64], subdivision: usize) -> BallGrowthProfile {
    let (volumes, error_bounds) = radii.iter().map(|&r| field.volume(r)).unzip();
    BallGrowthProfile {
        center: field.center(),
        radii: radii.to_vec(),
        volumes,
        error_bounds,
        total_volume: field.total_volume(),
        subdivision,
    }
}

/// Profiles for several centers, evaluated concurrently under `exec` and
/// returned in the order of `centers`.
pub fn ball_volume_profiles(
    graph: &GeodesicGraph,
    centers: &[usize],
    radii: &[f64],
    exec: Execution,
) -> Result<Vec<BallGrowthProfile>, MetricError> {
    check_radii(radii)?;
    exec.map(centers, |&c| BallField::new(graph, c).map(|f| profile_of(&f, radii, graph.level())))
        .into_iter()
        .collect()
}

/// Writes `radius,volume,lower_bound,verdict` rows, with `lower_bound = a_n * R^n`.
pub fn write_profile_csv<W: std::io::Write>(
    out: W,
    profile: &BallGrowthProfile,
    a_n: f64,
    n: usize,
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["radius", "volume", "lower_bound", "verdict"])?;
    for (&r, &v) in profile.radii.iter().zip(&profile.volumes) {
        let bound = a_n * r.powi(n as i32);
        let verdict = if v >= bound { "pass" } else { "fail" };
        w.write_record([format!("{r}"), format!("{v}"), format!("{bound}"), verdict.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
