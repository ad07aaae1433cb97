//! Euclidean side: the triangular grid with its midpoint embedding, the
//! simplex check, a stress-minimization probe and the triangular-grid model
//! inside a square grid.

mod grid;
mod model;
mod stress;

pub use grid::{simplex_check, tri_grid_embedding, verify_l2, L2Embedding, L2Verdict, SimplexReport, TriGridL2};
pub use model::tri_in_square_model;
pub use stress::{rigidity_probe, RigidityProbe};

/// Default tolerance for floating comparisons.
pub const L2_TOLERANCE: f64 = 1e-9;
