use crate::error::{Error, Result};
use crate::model::Interval;

/// Uniform grid over `interval` closest to the requested step.
///
/// Returns `(h_actual, count)` with `count = round(length / h_requested)`
/// and `h_actual = length / count`, so the grid lands on both ends.
pub fn make_uniform_grid(interval: Interval, h_requested: f64) -> Result<(f64, usize)> {
    grid_for_length(interval.length(), h_requested)
}

pub(crate) fn grid_for_length(length: f64, h_requested: f64) -> Result<(f64, usize)> {
    if !(h_requested > 0.0 && h_requested.is_finite()) || length.is_nan() || length <= 0.0 {
        return Err(Error::InvalidStep { h: h_requested, length });
    }
    // Allow a requested step that exceeds the length by rounding noise only.
    if h_requested > length * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::InvalidStep { h: h_requested, length });
    }
    let count = ((length / h_requested).round() as usize).max(1);
    Ok((length / count as f64, count))
}

/// The `count + 1` grid abscissae from `from` to `to`, endpoints exact.
pub(crate) fn grid_points(from: f64, to: f64, count: usize) -> Vec<f64> {
    let h = (to - from).abs() / count as f64;
    let sign = if to >= from { 1.0 } else { -1.0 };
    let mut xs: Vec<f64> = (0..=count).map(|i| from + sign * (i as f64) * h).collect();
    xs[count] = to;
    xs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn exact_division() {
        assert_eq!(make_uniform_grid(unit(), 0.1).unwrap(), (0.1, 10));
    }

    #[test]
    fn rounds_to_nearest_count() {
        // 1 / 0.3 = 3.33 rounds to 3 steps of 1/3.
        let (h, n) = make_uniform_grid(unit(), 0.3).unwrap();
        assert_eq!(n, 3);
        assert_eq!(h, 1.0 / 3.0);
    }

    #[test]
    fn single_step() {
        assert_eq!(make_uniform_grid(Interval::new(0.0, 0.5).unwrap(), 0.5).unwrap(), (0.5, 1));
    }

    #[test]
    fn rejects_bad_steps() {
        for h in [0.0, -0.1, 1.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(make_uniform_grid(unit(), h), Err(Error::InvalidStep { .. })), "h={h}");
        }
    }

    #[test]
    fn idempotent() {
        for (lo, hi) in [(0.0, 1.0), (-2.5, 7.0), (0.1, 0.35), (100.0, 101.7)] {
            let iv = Interval::new(lo, hi).unwrap();
            for h in [0.013, 0.07, 0.1, 0.3, 0.2499] {
                if h > iv.length() {
                    continue;
                }
                let first = make_uniform_grid(iv, h).unwrap();
                assert_eq!(make_uniform_grid(iv, first.0).unwrap(), first);
            }
        }
    }

    #[test]
    fn points_hit_both_ends() {
        let xs = grid_points(1.0, 0.0, 10);
        assert_eq!(xs.len(), 11);
        assert_eq!(xs[0], 1.0);
        assert_eq!(xs[10], 0.0);
        assert!(xs.windows(2).all(|w| w[1] < w[0]));
    }
}
