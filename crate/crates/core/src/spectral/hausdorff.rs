use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A compact subset of the real line: a finite union of closed intervals
/// (points are degenerate intervals). Stored sorted and merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactSet {
    intervals: Vec<(f64, f64)>,
}

impl CompactSet {
    pub fn from_intervals(intervals: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut iv: Vec<(f64, f64)> = intervals.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        iv.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(iv.len());
        for (a, b) in iv {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        CompactSet { intervals: merged }
    }

    pub fn from_points(points: &[f64]) -> Self {
        Self::from_intervals(points.iter().map(|&x| (x, x)))
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        Self::from_intervals([(lo, hi)])
    }

    pub fn union(&self, other: &CompactSet) -> Self {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn distance_to(&self, x: f64) -> f64 {
        self.intervals
            .iter()
            .map(|&(a, b)| {
                if x < a {
                    a - x
                } else if x > b {
                    x - b
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `sup_{a in self} dist(a, other)`. The distance function to `other`
    /// is piecewise linear, so the sup over an interval is attained at its
    /// endpoints or at a gap midpoint of `other` lying inside it.
    fn directed(&self, other: &CompactSet) -> f64 {
        let mut worst: f64 = 0.0;
        for &(a, b) in &self.intervals {
            worst = worst.max(other.distance_to(a)).max(other.distance_to(b));
            for gap in other.intervals.windows(2) {
                let mid = 0.5 * (gap[0].1 + gap[1].0);
                if a <= mid && mid <= b {
                    worst = worst.max(other.distance_to(mid));
                }
            }
        }
        worst
    }
}

/// Two-sided Hausdorff distance.
pub fn hausdorff_distance(a: &CompactSet, b: &CompactSet) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("Hausdorff distance of an empty set"));
    }
    Ok(a.directed(b).max(b.directed(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_distances() {
        let a = CompactSet::from_points(&[0.0]);
        let b = CompactSet::from_points(&[1.0]);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 1.0);
        let wide = CompactSet::interval(-1.0, 1.0);
        let narrow = CompactSet::interval(-0.9, 0.9);
        assert!((hausdorff_distance(&wide, &narrow).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn gap_midpoint_counts() {
        let full = CompactSet::interval(0.0, 1.0);
        let ends = CompactSet::from_points(&[0.0, 1.0]);
        assert_eq!(hausdorff_distance(&full, &ends).unwrap(), 0.5);
    }

    #[test]
    fn empty_rejected() {
        let e = CompactSet::from_points(&[]);
        assert!(hausdorff_distance(&e, &CompactSet::interval(0.0, 1.0)).is_err());
    }
}
