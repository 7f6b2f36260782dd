use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CubicalError;

/// State of one coordinate of an axis cell. The order matches the ASCII order
/// of `*`, `0`, `1`, so sorted cells read in lexicographic spec order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Free,
    Zero,
    One,
}

impl Coord {
    fn symbol(self) -> char {
        match self {
            Coord::Free => '*',
            Coord::Zero => '0',
            Coord::One => '1',
        }
    }
}

/// Face of `[0,1]^N` given by fixing some coordinates to 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeCell {
    coords: Vec<Coord>,
}

impl CubeCell {
    pub fn new(coords: Vec<Coord>) -> Self {
        CubeCell { coords }
    }

    /// The vertex with the given 0/1 coordinates.
    pub fn vertex(bits: &[bool]) -> Self {
        CubeCell { coords: bits.iter().map(|&b| if b { Coord::One } else { Coord::Zero }).collect() }
    }

    /// Parses `"0,*,1"`.
    pub fn parse(spec: &str) -> Result<Self, CubicalError> {
        let coords = spec
            .split(',')
            .map(|t| match t.trim() {
                "*" => Ok(Coord::Free),
                "0" => Ok(Coord::Zero),
                "1" => Ok(Coord::One),
                _ => Err(CubicalError::MalformedSpec { spec: spec.to_string() }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CubeCell { coords })
    }

    pub fn spec(&self) -> String {
        let mut s = String::with_capacity(2 * self.coords.len());
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push(c.symbol());
        }
        s
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dim(&self) -> usize {
        self.coords.iter().filter(|&&c| c == Coord::Free).count()
    }

    /// Positions of the free coordinates, increasing.
    pub fn free_axes(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| self.coords[i] == Coord::Free).collect()
    }

    /// `self` with free coordinate `axis` fixed to `value`.
    pub fn restrict(&self, axis: usize, value: Coord) -> Self {
        debug_assert_eq!(self.coords[axis], Coord::Free);
        let mut c = self.coords.clone();
        c[axis] = value;
        CubeCell { coords: c }
    }

    /// Codimension-one faces.
    pub fn facets(&self) -> Vec<CubeCell> {
        self.free_axes()
            .into_iter()
            .flat_map(|a| [self.restrict(a, Coord::Zero), self.restrict(a, Coord::One)])
            .collect()
    }

    /// True when `other` is a face of `self` (or equal).
    pub fn has_face(&self, other: &CubeCell) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| *a == Coord::Free || a == b)
    }

    /// ℓ∞ distance from `p` to the cell.
    pub fn linf_distance(&self, p: &[f64]) -> f64 {
        self.coords
            .iter()
            .zip(p)
            .map(|(c, &x)| match c {
                Coord::Free => (-x).max(x - 1.0).max(0.0),
                Coord::Zero => x.abs(),
                Coord::One => (x - 1.0).abs(),
            })
            .fold(0.0, f64::max)
    }

    /// Grid points of the cell at spacing `1/s`, as numerators over `s`.
    pub fn grid_points(&self, s: u32) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::with_capacity(self.coords.len())];
        for c in &self.coords {
            let values: Vec<u32> = match c {
                Coord::Zero => vec![0],
                Coord::One => vec![s],
                Coord::Free => (0..=s).collect(),
            };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for CubeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// A set of axis cells of `[0,1]^N` closed under taking faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeComplex {
    ambient_dim: usize,
    cells: BTreeSet<CubeCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellEntry {
    pub spec: String,
}

/// `{"ambient_dim": N, "cells": [{"spec": "0,*,1"}, ...]}`, cells in lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub ambient_dim: usize,
    pub cells: Vec<CellEntry>,
}

impl CubeComplex {
    pub fn new(ambient_dim: usize) -> Self {
        CubeComplex { ambient_dim, cells: BTreeSet::new() }
    }

    /// Complex generated by `cells`.
    pub fn from_cells<I: IntoIterator<Item = CubeCell>>(ambient_dim: usize, cells: I) -> Result<Self, CubicalError> {
        let mut k = CubeComplex::new(ambient_dim);
        for c in cells {
            k.insert(c)?;
        }
        Ok(k)
    }

    /// The full cube `[0,1]^N` with all its faces.
    pub fn full_cube(ambient_dim: usize) -> Self {
        let mut k = CubeComplex::new(ambient_dim);
        k.insert(CubeCell::new(vec![Coord::Free; ambient_dim])).expect("dimension matches");
        k
    }

    /// Adds `cell` and all of its faces.
    pub fn insert(&mut self, cell: CubeCell) -> Result<(), CubicalError> {
        if cell.ambient_dim() != self.ambient_dim {
            return Err(CubicalError::DimensionMismatch { expected: self.ambient_dim, found: cell.ambient_dim() });
        }
        let mut stack = vec![cell];
        while let Some(c) = stack.pop() {
            if !self.cells.contains(&c) {
                stack.extend(c.facets());
                self.cells.insert(c);
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contains(&self, cell: &CubeCell) -> bool {
        self.cells.contains(cell)
    }

    pub fn cells(&self) -> impl Iterator<Item = &CubeCell> {
        self.cells.iter()
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &CubeCell> {
        self.cells.iter().filter(move |c| c.dim() == k)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(CubeCell::dim).max()
    }

    /// Number of cells of each dimension.
    pub fn census(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            counts[c.dim()] += 1;
        }
        counts
    }

    /// Cells that are not a proper face of another cell.
    pub fn maximal_cells(&self) -> Vec<&CubeCell> {
        self.cells
            .iter()
            .filter(|c| {
                c.free_axes().len() == self.ambient_dim
                    || !(0..self.ambient_dim).filter(|&i| c.coords[i] != Coord::Free).any(|i| {
                        let mut up = c.coords.clone();
                        up[i] = Coord::Free;
                        self.cells.contains(&CubeCell::new(up))
                    })
            })
            .collect()
    }

    /// Cells containing the point whose minimal face is `face`.
    pub fn cofaces<'a>(&'a self, face: &'a CubeCell) -> impl Iterator<Item = &'a CubeCell> + 'a {
        self.cells.iter().filter(move |c| c.has_face(face))
    }

    /// True when every cell has a coordinate fixed at 0.
    pub fn in_coordinate_faces(&self) -> bool {
        self.cells.iter().all(|c| c.coords.contains(&Coord::Zero))
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            ambient_dim: self.ambient_dim,
            cells: self.cells.iter().map(|c| CellEntry { spec: c.spec() }).collect(),
        }
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self, CubicalError> {
        let cells = doc.cells.iter().map(|e| CubeCell::parse(&e.spec)).collect::<Result<Vec<_>, _>>()?;
        Self::from_cells(doc.ambient_dim, cells)
    }
}
