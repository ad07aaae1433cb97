//! Max-norm dimension of weighted graphs: flat sets, exact dimension
//! search, structural decompositions and the Euclidean grid constructions.
//!
//! The metric side is generic over [`Scalar`]; the aliases below fix the
//! exact rational instantiation used throughout the binaries and tests.

pub mod dimension_solver;
pub mod error;
pub mod euclid;
pub mod flat_cover;
pub mod graph_core;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use graph_core::{EdgeId, Graph, MetricGraph, VertexId};
pub use scalar::{Rational, Scalar};

pub type ExactMetricGraph = MetricGraph<Rational>;
pub type ExactEmbedding = flat_cover::LinfEmbedding<Rational>;
pub type ExactCovering = flat_cover::FlatCovering;
