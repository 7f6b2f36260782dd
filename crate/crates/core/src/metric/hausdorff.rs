use super::space::FiniteMetric;
use super::MetricError;

/// Hausdorff distance between two finite sets under `d`.
///
/// Tubes are closed, so the value is attained: `A ⊂ tube(B, r)` and
/// `B ⊂ tube(A, r)` for the returned `r`.
pub fn hausdorff_by<T>(a: &[T], b: &[T], d: impl Fn(&T, &T) -> f64) -> Result<f64, MetricError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptySet);
    }
    let directed = |x: &[T], y: &[T]| {
        x.iter()
            .map(|p| y.iter().map(|q| d(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Hausdorff distance between two node sets of a finite metric space.
pub fn hausdorff_distance<M: FiniteMetric + ?Sized>(
    metric: &M,
    a: &[usize],
    b: &[usize],
) -> Result<f64, MetricError> {
    for &p in a.iter().chain(b) {
        if p >= metric.len() {
            return Err(MetricError::UnknownNode { node: p });
        }
    }
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptySet);
    }
    let directed = |x: &[usize], y: &[usize]| {
        x.iter()
            .map(|&p| {
                let row = metric.row(p);
                y.iter().map(|&q| row[q]).fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::LineMetric;

    fn line(a: &[f64], b: &[f64]) -> f64 {
        hausdorff_by(a, b, |x, y| (x - y).abs()).unwrap()
    }

    #[test]
    fn line_examples() {
        assert_eq!(line(&[0.0], &[1.0]), 1.0);
        assert_eq!(line(&[0.0, 1.0], &[0.0, 0.5, 1.0]), 0.5);
        assert_eq!(line(&[0.0, 1.0], &[1.0, 0.0]), 0.0);
    }

    #[test]
    fn node_sets_on_a_line_metric() {
        let m = LineMetric { points: vec![0.0, 0.5, 1.0] };
        assert_eq!(hausdorff_distance(&m, &[0, 2], &[0, 1, 2]).unwrap(), 0.5);
        assert!(matches!(hausdorff_distance(&m, &[], &[0]), Err(MetricError::EmptySet)));
        assert!(matches!(hausdorff_distance(&m, &[7], &[0]), Err(MetricError::UnknownNode { node: 7 })));
    }
}
