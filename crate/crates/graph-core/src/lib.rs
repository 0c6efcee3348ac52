//! Directed multigraphs with exact rational costs, the instance file format and
//! the structural analyses used by the connection-game solvers.

pub mod cost;
pub mod dominators;
pub mod format;
pub mod graph;
pub mod structure;

pub use num_rational::BigRational;
pub use cost::{Cost, CostError, CostScale};
pub use dominators::{must_visit_sets, must_visit_sets_from, MustVisitSets};
pub use format::{export_dot, parse_instance, serialize, serialize_with_header, ParseError, ParseErrorKind};
pub use graph::{Edge, EdgeIdx, Graph, GraphBuilder, GraphError, RuleSet, VertexIdx};
pub use structure::{
    attachment_vertex, blocks, cactus_cycles, is_bipartite, is_cactus, is_dag, player_a_dag,
    player_dag, reachable_from, topological_order, undirected_distances, Block, Cycle, EdgeSet,
    StructureError,
};
