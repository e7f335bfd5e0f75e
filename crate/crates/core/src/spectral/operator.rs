use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// The symmetrized Markov operator `D^{-1/2} A D^{-1/2}` of a multigraph in
/// sparse row form. A loop at `u` contributes 2 to `A(u, u)` and parallel
/// edges add up. It has the spectrum of the random-walk operator `D^{-1} A`,
/// which is self-adjoint for the degree-weighted inner product.
#[derive(Debug, Clone)]
pub struct MarkovOperator {
    n: usize,
    offsets: Vec<usize>,
    columns: Vec<usize>,
    values: Vec<f64>,
    sqrt_degree: Vec<f64>,
}

impl MarkovOperator {
    pub fn new(g: &MultiGraph) -> Result<Self> {
        let n = g.vertex_count();
        if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
            return Err(Error::ZeroDegree(v));
        }
        let sqrt_degree: Vec<f64> = (0..n).map(|v| (g.degree(v) as f64).sqrt()).collect();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut columns = Vec::with_capacity(g.half_edge_count());
        let mut values = Vec::with_capacity(g.half_edge_count());
        offsets.push(0);
        for v in 0..n {
            for &h in g.out_half_edges(v) {
                let w = g.head(h);
                columns.push(w);
                values.push(1.0 / (sqrt_degree[v] * sqrt_degree[w]));
            }
            offsets.push(columns.len());
        }
        Ok(MarkovOperator { n, offsets, columns, values, sqrt_degree })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn sqrt_degree(&self) -> &[f64] {
        &self.sqrt_degree
    }

    /// `y = S x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (v, out) in y.iter_mut().enumerate() {
            let range = self.offsets[v]..self.offsets[v + 1];
            *out = self.columns[range.clone()].iter().zip(&self.values[range]).map(|(&w, &a)| a * x[w]).sum();
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            for k in self.offsets[v]..self.offsets[v + 1] {
                m[(v, self.columns[k])] += self.values[k];
            }
        }
        m
    }

    /// Unit vector spanning the top eigenspace of a connected graph,
    /// `D^{1/2} 1` normalized.
    pub fn stationary_direction(&self) -> Vec<f64> {
        let norm = self.sqrt_degree.iter().map(|s| s * s).sum::<f64>().sqrt();
        self.sqrt_degree.iter().map(|s| s / norm).collect()
    }
}

/// The random-walk operator `(M f)(u) = (1 / deg u) Σ_{u→w} f(w)`.
pub fn markov_apply(g: &MultiGraph, f: &[f64]) -> Vec<f64> {
    (0..g.vertex_count())
        .map(|u| {
            let d = g.degree(u);
            if d == 0 {
                0.0
            } else {
                g.neighbors(u).map(|w| f[w]).sum::<f64>() / d as f64
            }
        })
        .collect()
}

/// `Σ deg(v) f(v) g(v)`.
pub fn degree_inner(g: &MultiGraph, f: &[f64], h: &[f64]) -> f64 {
    (0..g.vertex_count()).map(|v| g.degree(v) as f64 * f[v] * h[v]).sum()
}
