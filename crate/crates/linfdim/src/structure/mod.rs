//! Block and SPQR decompositions, reductions, glued edges and the explicit
//! bound functions.

pub mod blocks;
pub mod bounds;
pub mod glued;
pub mod reductions;
pub mod spqr;

pub use blocks::{blocks, BlockDecomposition};
pub use bounds::{bound_functions, main_bound, BoundTable, Magnitude};
pub use glued::{glumpkin_search, verify_glumpkin, GluedGraph, GlumpkinModel, GLUMPKIN_MAX_VERTICES};
pub use reductions::{fan_reduction, h_reduction, has_reducible_fan, reducible_fans, twin_classes, FanReduction};
pub use spqr::{contract_spqr, spqr, spqr_diameter_check, spqr_recompose, NodeKind, SpqrNode, SpqrTree, TreeEdge};
