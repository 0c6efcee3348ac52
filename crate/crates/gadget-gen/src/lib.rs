//! Reduction gadgets, the small worked examples and seeded random instance
//! families, all emitted as ordinary instances.

mod examples;
mod partition;
mod qbf;
mod qsat;
mod random;
mod vc;

use graph_core::{serialize_with_header, Graph, GraphError};
use thiserror::Error;

pub use examples::gen_example;
pub use partition::{gen_3partition_cactus, partition_constants, PartitionConstants, PartitionOptions};
pub use qbf::{qsat_normalize, Formula, Literal, Quantifier};
pub use qsat::{gen_qsat_bipartite, qsat_epsilon};
pub use random::{gen_random_cactus, gen_random_dag, gen_random_tree, gen_scaling_cactus, MAX_RESAMPLES};
pub use vc::{gen_vertex_cover_dag, gen_vertex_cover_dag_with, parse_edge_list, SourceGraph, VcOptions};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("formula syntax: {0}")]
    FormulaSyntax(String),
    #[error("quantifiers must alternate, starting with an existential")]
    NotAlternating,
    #[error("clause with two universal literals")]
    TwoUniversals,
    #[error("clause with {0} literals (at most three allowed)")]
    ClauseTooLong(usize),
    #[error("formula not normalized")]
    NotNormalized,
    #[error("k < 3")]
    KTooSmall,
    #[error("invalid source graph: {0}")]
    InvalidSource(String),
    #[error("item count not multiple of 3")]
    ItemCount,
    #[error("sum not divisible by n")]
    SumNotDivisible,
    #[error("non-integral cycle length")]
    NonIntegralCycle,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resampling budget exceeded")]
    ResamplingBudget,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Qsat,
    QsatSimple,
    VertexCover,
    VcBipartite,
    ThreePartition,
    RandomCactus,
    RandomTree,
    RandomDag,
    ScalingCactus,
    Example(u8),
}

impl GadgetKind {
    pub fn name(&self) -> String {
        match self {
            GadgetKind::Qsat => "qsat".into(),
            GadgetKind::QsatSimple => "qsat-simple".into(),
            GadgetKind::VertexCover => "vertex-cover".into(),
            GadgetKind::VcBipartite => "vc-bipartite".into(),
            GadgetKind::ThreePartition => "three-partition".into(),
            GadgetKind::RandomCactus => "random-cactus".into(),
            GadgetKind::RandomTree => "random-tree".into(),
            GadgetKind::RandomDag => "random-dag".into(),
            GadgetKind::ScalingCactus => "scaling-cactus".into(),
            GadgetKind::Example(w) => format!("example-{w}"),
        }
    }
}

/// What was generated and from which parameters, plus the derived constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub parameters: Vec<(String, String)>,
    pub derived: Vec<(String, String)>,
}

impl GadgetSpec {
    fn new(kind: GadgetKind) -> Self {
        GadgetSpec { kind, parameters: Vec::new(), derived: Vec::new() }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    fn derive(mut self, key: &str, value: impl ToString) -> Self {
        self.derived.push((key.to_string(), value.to_string()));
        self
    }

    pub fn derived_value(&self, key: &str) -> Option<&str> {
        self.derived.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Comment lines for the instance file: kind, parameters, derived constants.
    pub fn header(&self) -> Vec<String> {
        let join = |kv: &[(String, String)]| {
            kv.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
        };
        let mut out = vec![format!("generator {}", self.kind.name())];
        if !self.parameters.is_empty() {
            out.push(join(&self.parameters));
        }
        if !self.derived.is_empty() {
            out.push(join(&self.derived));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub spec: GadgetSpec,
    pub graph: Graph,
}

impl Gadget {
    /// The instance file, parameters echoed as `#` comments.
    pub fn to_text(&self) -> String {
        serialize_with_header(&self.graph, &self.spec.header())
    }
}
