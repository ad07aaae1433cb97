//! Exact ℓ∞-dimension of small metric graphs, its certified bounds, wheel
//! coverings and the colouring gadget.

pub mod bounds;
pub mod exact;
pub mod gadget;
pub mod probe;
pub mod wheel;

pub use bounds::{lower_bound_incompat, upper_bound_tau, VertexCover};
pub use exact::{exact_dim, Budget, DimOutcome, DimResult, MAX_EDGES};
pub use gadget::{chromatic_oracle, coloring_gadget};
pub use probe::{dim_blocks, recognize_family, sup_dim_probe, ProbeReport};
pub use wheel::{wheel_cover, wheel_hub};
