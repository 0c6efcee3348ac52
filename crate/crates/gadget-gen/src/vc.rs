//! Acyclic instance encoding a vertex cover question.

use graph_core::{Cost, Graph, GraphBuilder};

use crate::{Gadget, GadgetError, GadgetKind, GadgetSpec};

/// Undirected simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SourceGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GadgetError> {
        let mut seen = std::collections::HashSet::new();
        for &(i, j) in &edges {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(GadgetError::InvalidSource(format!("bad edge {i}-{j}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(GadgetError::InvalidSource(format!("duplicate edge {i}-{j}")));
            }
        }
        if edges.is_empty() {
            return Err(GadgetError::InvalidSource("no edges".into()));
        }
        Ok(SourceGraph { n, edges })
    }

    /// Brute-force minimum vertex cover size, for labelling small test inputs.
    pub fn min_cover(&self) -> usize {
        assert!(self.n <= 24, "exhaustive search only");
        (0u32..1 << self.n)
            .filter(|mask| self.edges.iter().all(|&(i, j)| mask >> (i - 1) & 1 == 1 || mask >> (j - 1) & 1 == 1))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// Renumbers vertices so that `{1, 2}` is an edge (swapping labels of the
    /// first edge's endpoints into place).
    fn with_first_edge_12(&self) -> SourceGraph {
        if self.edges.iter().any(|&(i, j)| (i.min(j), i.max(j)) == (1, 2)) {
            return self.clone();
        }
        let (a, b) = self.edges[0];
        let mut perm: Vec<usize> = (0..=self.n).collect();
        perm.swap(1, a);
        let b2 = if b == 1 { a } else { b };
        perm.swap(2, b2);
        // perm[new] = old; invert for relabelling
        let mut inv = vec![0; self.n + 1];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        SourceGraph { n: self.n, edges: self.edges.iter().map(|&(i, j)| (inv[i], inv[j])).collect() }
    }
}

/// Parses `1-2,1-3,2-3`.
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>, GadgetError> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (i, j) = p.trim().split_once('-').ok_or_else(|| GadgetError::InvalidSource(format!("`{p}`")))?;
            let num = |s: &str| s.trim().parse::<usize>().map_err(|_| GadgetError::InvalidSource(format!("`{p}`")));
            Ok((num(i)?, num(j)?))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct VcOptions {
    /// Replace every edge by two half-cost edges through a fresh midpoint.
    pub bipartite_split: bool,
    /// Cost of the two dead-end edges `gamma->eta` and `lambda->mu` of every edge gadget.
    pub dead_end_cost: Cost,
}

impl Default for VcOptions {
    fn default() -> Self {
        VcOptions { bipartite_split: false, dead_end_cost: Cost::from_int(3) }
    }
}

pub fn gen_vertex_cover_dag(h: &SourceGraph, k: usize, bipartite_split: bool) -> Result<Gadget, GadgetError> {
    gen_vertex_cover_dag_with(h, k, &VcOptions { bipartite_split, ..VcOptions::default() })
}

/// A walks `s s_i1 .. s_ik g` to pick k cover vertices while B walks the
/// chain `t u1 .. u(k+1)`; every source edge `{i,j}` then offers B a branch
/// that ends at `s_i` or `s_j` and A a matching branch of equal length.
pub fn gen_vertex_cover_dag_with(h: &SourceGraph, k: usize, opts: &VcOptions) -> Result<Gadget, GadgetError> {
    if k < 3 {
        return Err(GadgetError::KTooSmall);
    }
    let h = SourceGraph::new(h.n, h.edges.clone())?.with_first_edge_12();
    let (n, m) = (h.n, h.edges.len());
    let edge_count = 5 + k + 2 * n + n * (n - 1) / 2 + 21 * m;
    let eps = Cost::new(1, edge_count as i64).expect("positive");
    let mut list: Vec<(String, String, Cost)> = Vec::with_capacity(edge_count);
    let mut e = |u: &str, w: &str, c: &Cost| list.push((u.to_string(), w.to_string(), c.clone()));
    let (one, two) = (Cost::from_int(1), Cost::from_int(2));
    e("d", "d'", &eps);
    e("g", "d", &Cost::from_int(3));
    e("g", "f", &eps);
    e("t", "u1", &eps);
    e(&format!("u{}", k + 1), "d", &eps);
    for x in 1..=k {
        e(&format!("u{x}"), &format!("u{}", x + 1), &eps);
    }
    for i in 1..=n {
        e("s", &format!("s{i}"), &eps);
        e(&format!("s{i}"), "g", &eps);
        for j in i + 1..=n {
            e(&format!("s{i}"), &format!("s{j}"), &eps);
        }
    }
    for &(i, j) in &h.edges {
        let (i, j) = (i.min(j), i.max(j));
        let x = |name: &str| format!("{name}{i}_{j}");
        e(&format!("u{}", k + 1), &x("t"), &eps);
        e(&x("t"), &x("b"), &eps);
        e(&x("b"), &x("l"), &eps);
        e(&x("b"), &x("h"), &eps);
        e(&x("l"), &x("v"), &one);
        e(&x("l"), &x("w"), &eps);
        e(&x("h"), &x("y"), &one);
        e(&x("h"), &x("z"), &eps);
        e(&x("v"), &format!("s{i}"), &eps);
        e(&x("y"), &format!("s{j}"), &eps);
        e("f", &x("s"), &eps);
        e(&x("s"), &x("alpha"), &eps);
        e(&x("alpha"), &x("beta"), &eps);
        e(&x("beta"), &x("gamma"), &eps);
        e(&x("gamma"), &x("eta"), &opts.dead_end_cost);
        e(&x("s"), &x("delta"), &eps);
        e(&x("delta"), &x("kappa"), &eps);
        e(&x("kappa"), &x("lambda"), &eps);
        e(&x("lambda"), &x("mu"), &opts.dead_end_cost);
        e(&x("alpha"), &x("z"), &two);
        e(&x("delta"), &x("w"), &two);
    }
    debug_assert_eq!(list.len(), edge_count);
    let mut b = GraphBuilder::new();
    for (u, w, c) in &list {
        if opts.bipartite_split {
            let mid = format!("{u}~{w}");
            b.edge(u, &mid, c.halve())?;
            b.edge(&mid, w, c.halve())?;
        } else {
            b.edge(u, w, c.clone())?;
        }
    }
    b.start("s", "t")?;
    let graph: Graph = b.build()?;
    let kind = if opts.bipartite_split { GadgetKind::VcBipartite } else { GadgetKind::VertexCover };
    let edges = h.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect::<Vec<_>>().join(",");
    let spec = GadgetSpec::new(kind)
        .param("n", n)
        .param("edges", edges)
        .param("k", k)
        .param("dead-end-cost", &opts.dead_end_cost)
        .derive("eps", eps)
        .derive("V", 6 + (k + 1) + n + 17 * m)
        .derive("E", edge_count);
    Ok(Gadget { spec, graph })
}
