//! Free-group words, voltage assignments, derived lifts and balls of the
//! infinite covers they determine.

mod assignment;
mod cover;
mod lift;
mod perm;
mod word;

pub use assignment::{spanning_tree_voltage, EdgeVoltage, VoltageAssignment, VoltageJson};
pub use cover::{
    cover_ball, cover_ball_capped, universal_cover_ball, universal_cover_ball_capped, CoverBall,
    DEFAULT_COVER_VERTEX_CAP,
};
pub use lift::{derived_lift, derived_lift_n, LiftSample, LiftSampleJson};
pub use perm::{evaluate_word, Permutation};
pub use word::{is_reduced, Word};
