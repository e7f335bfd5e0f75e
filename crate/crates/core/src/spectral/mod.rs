//! Spectra of degree-biased Markov operators: dense and Lanczos solvers,
//! new eigenvalues of lifts, Hausdorff distances, tree spectral radii.

mod hausdorff;
mod lanczos;
mod operator;
mod spectrum;
mod tridiag;

pub use hausdorff::{hausdorff_distance, CompactSet};
pub use lanczos::{
    extreme_eigenvalues, lanczos, nontrivial_radius, orthonormalize, LanczosConfig, LanczosOutcome, Selection,
};
pub use operator::{degree_inner, markov_apply, MarkovOperator};
pub use spectrum::{
    fiber_basis, full_spectrum, markov_spectrum_dense, new_spectrum, pullback, tree_rho, NewSpectrumMode, SpectrumKind,
    SpectrumMultiset, DENSE_TOLERANCE, DENSE_VERTEX_CAP, ITERATIVE_TOLERANCE,
};
