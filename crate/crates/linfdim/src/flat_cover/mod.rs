//! Flat arc sets, flattenability, incompatibility, frames and the
//! embedding assembled from a flat covering.

pub mod embedding;
pub mod flat;
pub mod frames;
pub mod incompat;
pub mod signed;

pub use embedding::{assemble_embedding, linf_gap, verify_linf, CoveringDefect, FlatCovering, LinfEmbedding, LinfVerdict};
pub use flat::{find_potential, is_flat, is_flattenable, potential_is_tight, FlatVerdict, FlattenConfig};
pub use frames::{
    check_frame, check_star_property, merge_frame_sets, merge_frames_2sum, outer_cycle,
    three_frames_outerplanar, Frame, FrameCheck, LambdaPlan, OuterplanarFrames,
};
pub use incompat::{incompatibility_graph, incompatible_exact, incompatible_sufficient, IncompatMode};
pub use signed::{Arc, ArcSet, NegativeCycle, Potential};
