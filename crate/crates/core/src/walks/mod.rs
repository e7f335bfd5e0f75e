//! Return probabilities of simple random walks: exact dynamic programs on
//! finite graphs and rooted balls, quenched and annealed growth estimates.

mod estimate;
mod exact;

pub use estimate::{
    annealed_rho_estimate, mc_walk, quenched_rho_estimate, supermultiplicativity_check, AnnealedEstimate, McReturn,
    QuenchedEstimate, SupermultiplicativityReport,
};
pub use exact::{return_probabilities_ball, return_probabilities_graph, ReturnSeries, WalkOptions};
