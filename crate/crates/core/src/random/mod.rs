//! Seeded random generators: random lifts, pairing-model graphs,
//! unimodular Galton-Watson balls and pendant-path decorations.

mod decorate;
mod models;

pub use decorate::{decorate_with_paths, decorated_cheeger, Decoration, DecorationLabeling, DEFAULT_LABEL_RANGE};
pub use models::{
    configuration_model, configuration_model_with, phi_random_lift, phi_random_lift_with, random_connected_graph,
    random_permutation, random_regular, random_regular_with, ugw_ball, ugw_ball_with, DegreeDistribution,
    PairingOptions,
};
