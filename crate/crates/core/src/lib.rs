//! Spectral experiments on random lifts and infinite covers of finite
//! graphs: Markov-operator spectra, new eigenvalues of lifts, random-walk
//! return probabilities, skeleton chains of rooted types, and seeded
//! experiment drivers.

pub mod error;
pub mod experiments;
pub mod graph;
pub mod random;
pub mod skeleton;
pub mod spectral;
pub mod voltage;
pub mod walks;

pub use error::{Error, ErrorKind, Result};
