//! Graphs, metric graphs, family generators, random instances, clique sums
//! and minor models.

pub mod generators;
pub mod graph;
pub mod metric;
pub mod minor;
pub mod multigraph;
pub mod random;
pub mod sums;

pub use generators::{certificate, family_graph, gen_family, Certificate, Family, Generated};
pub use graph::{EdgeId, Graph, VertexId};
pub use metric::{metric_closure, random_metric, validate_metric, MetricGraph, MetricVerdict};
pub use minor::{find_isomorphism, find_minor_model, verify_model, MinorModel, MinorSearch, MinorSearchConfig};
pub use multigraph::{EdgeTag, MultiEdge, MultiGraph};
pub use sums::{graph_sum, suppress_degree2, SumKind};
