use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::lanczos::{lanczos, LanczosConfig, Selection};
use super::operator::MarkovOperator;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::voltage::LiftSample;

/// Largest graph handed to the dense eigensolver.
pub const DENSE_VERTEX_CAP: usize = 4000;
pub const DENSE_TOLERANCE: f64 = 1e-9;
pub const ITERATIVE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Full,
    Extremes,
    Interval,
}

/// Sorted real eigenvalue multiset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMultiset {
    pub values: Vec<f64>,
    pub tolerance: f64,
    pub kind: SpectrumKind,
}

impl SpectrumMultiset {
    pub fn new(mut values: Vec<f64>, tolerance: f64, kind: SpectrumKind) -> Self {
        values.sort_by(f64::total_cmp);
        SpectrumMultiset { values, tolerance, kind }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Multiset sum.
    pub fn union(&self, other: &SpectrumMultiset) -> SpectrumMultiset {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        SpectrumMultiset::new(values, self.tolerance.max(other.tolerance), self.kind)
    }

    /// Largest pairwise gap between two sorted multisets of equal size.
    pub fn max_pairwise_gap(&self, other: &SpectrumMultiset) -> Option<f64> {
        (self.len() == other.len())
            .then(|| self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    /// True if every value of `sub` can be matched to a distinct value of
    /// `self` within `tol`. Greedy matching on sorted sequences.
    pub fn contains_submultiset(&self, sub: &SpectrumMultiset, tol: f64) -> bool {
        let mut i = 0;
        for &x in &sub.values {
            while i < self.values.len() && self.values[i] < x - tol {
                i += 1;
            }
            if i == self.values.len() || (self.values[i] - x).abs() > tol {
                return false;
            }
            i += 1;
        }
        true
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum JSON serialization")
    }
}

fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
}

/// Full spectrum of the Markov operator of a connected graph.
pub fn markov_spectrum_dense(g: &MultiGraph) -> Result<SpectrumMultiset> {
    g.require_connected()?;
    full_spectrum(g)
}

/// Full spectrum without the connectivity requirement (lifts may split).
pub fn full_spectrum(g: &MultiGraph) -> Result<SpectrumMultiset> {
    if g.vertex_count() > DENSE_VERTEX_CAP {
        return Err(Error::SizeCap { what: "dense eigensolver", size: g.vertex_count(), cap: DENSE_VERTEX_CAP });
    }
    let op = MarkovOperator::new(g)?;
    Ok(SpectrumMultiset::new(symmetric_eigenvalues(op.to_dense()), DENSE_TOLERANCE, SpectrumKind::Full))
}

/// `(p* f)(u, i) = f(u)`.
pub fn pullback(base_fn: &[f64], sample: &LiftSample) -> Vec<f64> {
    sample.covering.iter().map(|&u| base_fn[u]).collect()
}

/// Fiber indicators `D^{1/2} 1_{p^{-1}(u)}`, normalized: an orthonormal
/// basis of the pulled-back subspace in symmetrized coordinates.
pub fn fiber_basis(sample: &LiftSample) -> Vec<Vec<f64>> {
    let n = sample.n;
    let total = sample.lift.vertex_count();
    (0..sample.base.vertex_count())
        .map(|u| {
            let mut v = vec![0.0; total];
            let c = 1.0 / (n as f64).sqrt();
            for i in 0..n {
                v[sample.lift_vertex(u, i)] = c;
            }
            v
        })
        .collect()
}

/// How to compute new eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NewSpectrumMode {
    /// All `|V(H)| (n - 1)` new eigenvalues by a dense solve.
    Dense,
    /// Extremes by Lanczos with deflation against the fiber basis.
    Extremes { selection: Selection, config: LanczosConfig },
}

/// Spectrum of the lift operator on the orthogonal complement of the
/// pulled-back subspace.
pub fn new_spectrum(sample: &LiftSample, mode: NewSpectrumMode) -> Result<SpectrumMultiset> {
    match mode {
        NewSpectrumMode::Dense => new_spectrum_dense(sample),
        NewSpectrumMode::Extremes { selection, config } => {
            let op = MarkovOperator::new(&sample.lift)?;
            let out = lanczos(&op, &fiber_basis(sample), selection, &config)?;
            Ok(SpectrumMultiset::new(out.values, config.tolerance, SpectrumKind::Extremes))
        }
    }
}

fn new_spectrum_dense(sample: &LiftSample) -> Result<SpectrumMultiset> {
    let total = sample.lift.vertex_count();
    if total > DENSE_VERTEX_CAP {
        return Err(Error::SizeCap { what: "dense eigensolver", size: total, cap: DENSE_VERTEX_CAP });
    }
    let n = sample.n;
    let mut s = MarkovOperator::new(&sample.lift)?.to_dense();
    if n == 1 {
        return Ok(SpectrumMultiset::new(Vec::new(), DENSE_TOLERANCE, SpectrumKind::Full));
    }
    // Within each fiber (a contiguous block of n sheets, all of one degree)
    // the pulled-back direction is the normalized all-ones vector u. The
    // Householder reflector Q = I - 2 v v^T / (v^T v), v = u - e_0, swaps u
    // and e_0, so after Q S Q the complement is everything but each fiber's
    // first coordinate.
    let c = 1.0 / (n as f64).sqrt();
    let mut v = vec![c; n];
    v[0] -= 1.0;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    for u in 0..sample.base.vertex_count() {
        let start = u * n;
        for col in 0..total {
            let t: f64 = (0..n).map(|i| v[i] * s[(start + i, col)]).sum::<f64>() * 2.0 / vv;
            for i in 0..n {
                s[(start + i, col)] -= t * v[i];
            }
        }
        for row in 0..total {
            let t: f64 = (0..n).map(|i| v[i] * s[(row, start + i)]).sum::<f64>() * 2.0 / vv;
            for i in 0..n {
                s[(row, start + i)] -= t * v[i];
            }
        }
    }
    let keep: Vec<usize> = (0..total).filter(|x| x % n != 0).collect();
    let restricted =
        DMatrix::from_fn(keep.len(), keep.len(), |i, j| 0.5 * (s[(keep[i], keep[j])] + s[(keep[j], keep[i])]));
    Ok(SpectrumMultiset::new(symmetric_eigenvalues(restricted), DENSE_TOLERANCE, SpectrumKind::Full))
}

/// Spectral radius of the `d`-regular tree, `2 sqrt(d - 1) / d`.
pub fn tree_rho(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::invalid(format!("tree degree {d} < 2")));
    }
    Ok(2.0 * ((d - 1) as f64).sqrt() / d as f64)
}
