//! Half-edge multigraphs, rooted balls, canonical codes and exact Cheeger
//! constants.

mod ball;
pub mod canon;
mod cheeger;
pub mod io;
mod multigraph;

pub use ball::{ball, rooted_isomorphic, RootedBall};
pub use cheeger::{
    cheeger_constant, cheeger_constant_with, CheegerNormalization, CheegerResult, Cut, CHEEGER_BRUTE_FORCE_CAP,
};
pub use multigraph::{HalfEdge, MultiGraph, DEFAULT_DEGREE_BOUND};
