use std::collections::HashMap;

use thiserror::Error;

use crate::cost::Cost;

pub type VertexIdx = usize;
pub type EdgeIdx = usize;

/// Active movement restrictions. Edge-once (R2) is always on; `simple_paths` adds vertex-once (R3).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RuleSet {
    pub simple_paths: bool,
}

impl RuleSet {
    pub const R2: RuleSet = RuleSet { simple_paths: false };
    pub const R3: RuleSet = RuleSet { simple_paths: true };

    pub fn name(&self) -> &'static str {
        if self.simple_paths {
            "r3"
        } else {
            "r2"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeIdx,
    pub tail: VertexIdx,
    pub head: VertexIdx,
    pub cost: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("missing start directive")]
    MissingStart,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid vertex token `{0}`")]
    InvalidToken(String),
}

/// Directed multigraph with exact costs and homebases `s` (player A) and `t` (player B).
///
/// Vertices are numbered by sorted token and edges by `(tail, head, cost)`, so the
/// numbering does not depend on the order in which edges were declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    tokens: Vec<String>,
    index: HashMap<String, VertexIdx>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeIdx>>,
    in_edges: Vec<Vec<EdgeIdx>>,
    s: VertexIdx,
    t: VertexIdx,
    rules: RuleSet,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.tokens.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn s(&self) -> VertexIdx {
        self.s
    }

    pub fn t(&self) -> VertexIdx {
        self.t
    }

    /// Rules declared by the instance (`rules` directive), R2 by default.
    pub fn rules(&self) -> RuleSet {
        self.rules
    }

    pub fn with_rules(mut self, rules: RuleSet) -> Graph {
        self.rules = rules;
        self
    }

    pub fn token(&self, v: VertexIdx) -> &str {
        &self.tokens[v]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn index_of(&self, token: &str) -> Option<VertexIdx> {
        self.index.get(token).copied()
    }

    pub fn vertex(&self, token: &str) -> Result<VertexIdx, GraphError> {
        self.index_of(token)
            .ok_or_else(|| GraphError::UnknownVertex(token.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e]
    }

    /// Outgoing edge ids of `v`, ascending.
    pub fn out_edges(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.out_edges[v]
    }

    /// Incoming edge ids of `v`, ascending.
    pub fn in_edges(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.in_edges[v]
    }

    /// Smallest-id edge from `u` to `v`.
    pub fn find_edge(&self, u: VertexIdx, v: VertexIdx) -> Option<EdgeIdx> {
        self.out_edges[u]
            .iter()
            .copied()
            .find(|&e| self.edges[e].head == v)
    }

    /// Same graph with every cost replaced by `f(cost)`.
    pub fn map_costs(&self, mut f: impl FnMut(&Cost) -> Cost) -> Graph {
        let mut b = GraphBuilder::from_graph(self);
        for e in &mut b.edges {
            e.2 = f(&e.2);
        }
        b.build().expect("mapping costs keeps a valid graph")
    }

    /// Renders vertex indices as tokens.
    pub fn path_tokens(&self, path: &[VertexIdx]) -> Vec<String> {
        path.iter().map(|&v| self.tokens[v].clone()).collect()
    }
}

/// Incremental construction; vertices are interned on first use.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    tokens: Vec<String>,
    index: HashMap<String, VertexIdx>,
    edges: Vec<(VertexIdx, VertexIdx, Cost)>,
    start: Option<(VertexIdx, VertexIdx)>,
    rules: RuleSet,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut b = GraphBuilder::new();
        for tok in &g.tokens {
            b.intern(tok);
        }
        b.edges = g
            .edges
            .iter()
            .map(|e| (e.tail, e.head, e.cost.clone()))
            .collect();
        b.start = Some((g.s, g.t));
        b.rules = g.rules;
        b
    }

    fn intern(&mut self, token: &str) -> VertexIdx {
        if let Some(&v) = self.index.get(token) {
            return v;
        }
        let v = self.tokens.len();
        self.tokens.push(token.to_string());
        self.index.insert(token.to_string(), v);
        v
    }

    fn checked(&mut self, token: &str) -> Result<VertexIdx, GraphError> {
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(GraphError::InvalidToken(token.to_string()));
        }
        Ok(self.intern(token))
    }

    pub fn edge(&mut self, tail: &str, head: &str, cost: Cost) -> Result<&mut Self, GraphError> {
        if tail == head {
            return Err(GraphError::SelfLoop(tail.to_string()));
        }
        let u = self.checked(tail)?;
        let v = self.checked(head)?;
        self.edges.push((u, v, cost));
        Ok(self)
    }

    pub fn start(&mut self, s: &str, t: &str) -> Result<&mut Self, GraphError> {
        let s = self.checked(s)?;
        let t = self.checked(t)?;
        self.start = Some((s, t));
        Ok(self)
    }

    pub fn has_start(&self) -> bool {
        self.start.is_some()
    }

    pub fn rules(&mut self, rules: RuleSet) -> &mut Self {
        self.rules = rules;
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        let (s0, t0) = self.start.ok_or(GraphError::MissingStart)?;
        let mut order: Vec<VertexIdx> = (0..self.tokens.len()).collect();
        order.sort_by(|&a, &b| self.tokens[a].cmp(&self.tokens[b]));
        let mut rank = vec![0; self.tokens.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let tokens: Vec<String> = order.iter().map(|&v| self.tokens[v].clone()).collect();
        let index = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut raw: Vec<(VertexIdx, VertexIdx, Cost)> = self
            .edges
            .iter()
            .map(|(u, v, c)| (rank[*u], rank[*v], c.clone()))
            .collect();
        raw.sort();
        let n = tokens.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        let edges = raw
            .into_iter()
            .enumerate()
            .map(|(id, (tail, head, cost))| {
                out_edges[tail].push(id);
                in_edges[head].push(id);
                Edge { id, tail, head, cost }
            })
            .collect();
        Ok(Graph {
            tokens,
            index,
            edges,
            out_edges,
            in_edges,
            s: rank[s0],
            t: rank[t0],
            rules: self.rules,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Cost {
        Cost::from_int(v)
    }

    #[test]
    fn numbering_is_canonical() {
        let mut b1 = GraphBuilder::new();
        b1.start("s", "t").unwrap();
        b1.edge("t", "x", c(1)).unwrap().edge("s", "x", c(2)).unwrap();
        let mut b2 = GraphBuilder::new();
        b2.edge("s", "x", c(2)).unwrap().edge("t", "x", c(1)).unwrap();
        b2.start("s", "t").unwrap();
        let (g1, g2) = (b1.build().unwrap(), b2.build().unwrap());
        assert_eq!(g1, g2);
        assert_eq!(g1.token(g1.edge(0).tail), "s");
        assert_eq!(g1.out_edges(g1.t()), &[1]);
    }

    #[test]
    fn rejects_self_loop_and_missing_start() {
        let mut b = GraphBuilder::new();
        assert_eq!(b.edge("a", "a", c(1)).unwrap_err(), GraphError::SelfLoop("a".into()));
        b.edge("a", "b", c(1)).unwrap();
        assert_eq!(b.build().unwrap_err(), GraphError::MissingStart);
    }
}
