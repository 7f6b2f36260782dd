use std::sync::Arc;

/// A finite metric space on points `0..len()`, queried one row at a time.
pub trait FiniteMetric: Sync {
    fn len(&self) -> usize;

    /// Distances from point `i` to every point.
    fn row(&self, i: usize) -> Arc<[f64]>;

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.row(i)[j]
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Explicit distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixMetric {
    rows: Vec<Arc<[f64]>>,
}

impl MatrixMetric {
    pub fn new(rows: Vec<Vec<f64>>) -> Self {
        MatrixMetric { rows: rows.into_iter().map(Arc::from).collect() }
    }

    /// Metric induced by `d` on `points`.
    pub fn from_points<T>(points: &[T], d: impl Fn(&T, &T) -> f64) -> Self {
        Self::new(points.iter().map(|p| points.iter().map(|q| d(p, q)).collect()).collect())
    }
}

impl FiniteMetric for MatrixMetric {
    fn len(&self) -> usize {
        self.rows.len()
    }

    fn row(&self, i: usize) -> Arc<[f64]> {
        self.rows[i].clone()
    }
}

/// Points on the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineMetric {
    pub points: Vec<f64>,
}

impl FiniteMetric for LineMetric {
    fn len(&self) -> usize {
        self.points.len()
    }

    fn row(&self, i: usize) -> Arc<[f64]> {
        let x = self.points[i];
        self.points.iter().map(|y| (x - y).abs()).collect()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        (self.points[i] - self.points[j]).abs()
    }
}
