//! Structural recognition (cactus, DAG, bipartite) and the acyclic per-player edge sets.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeIdx, Graph, VertexIdx};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("not a cactus")]
    NotACactus,
    #[error("unreachable vertex `{0}`")]
    UnreachableVertex(String),
    #[error("edge subset contains a directed cycle")]
    Cyclic,
}

/// A subset of the edges of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    member: Vec<bool>,
}

impl EdgeSet {
    pub fn empty(m: usize) -> Self {
        EdgeSet { member: vec![false; m] }
    }

    pub fn all(g: &Graph) -> Self {
        EdgeSet { member: vec![true; g.m()] }
    }

    pub fn from_ids(m: usize, ids: impl IntoIterator<Item = EdgeIdx>) -> Self {
        let mut s = Self::empty(m);
        for e in ids {
            s.member[e] = true;
        }
        s
    }

    pub fn contains(&self, e: EdgeIdx) -> bool {
        self.member[e]
    }

    pub fn insert(&mut self, e: EdgeIdx) {
        self.member[e] = true;
    }

    pub fn remove(&mut self, e: EdgeIdx) {
        self.member[e] = false;
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ids(&self) -> Vec<EdgeIdx> {
        (0..self.member.len()).filter(|&e| self.member[e]).collect()
    }
}

/// Biconnected component of the undirected multigraph underlying `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<VertexIdx>,
    pub edges: Vec<EdgeIdx>,
}

/// Simple cycle of a cactus: `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexIdx>,
    pub edges: Vec<EdgeIdx>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True when every edge points the same way around the cycle.
    pub fn is_directed(&self, g: &Graph) -> bool {
        let k = self.len();
        let fwd = |i: usize| g.edge(self.edges[i]).tail == self.vertices[i];
        let first = fwd(0);
        (1..k).all(|i| fwd(i) == first)
    }
}

fn undirected_adjacency(g: &Graph) -> Vec<Vec<(VertexIdx, EdgeIdx)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e.tail].push((e.head, e.id));
        adj[e.head].push((e.tail, e.id));
    }
    adj
}

/// Biconnected components (edge partition) by an iterative Tarjan search.
pub fn blocks(g: &Graph) -> Vec<Block> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let adj = undirected_adjacency(g);
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeIdx> = Vec::new();
    let mut out = Vec::new();
    // (vertex, edge used to enter it, next adjacency position)
    let mut stack: Vec<(VertexIdx, Option<EdgeIdx>, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, None, 0));
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, parent_edge, pos) = stack[top];
            if pos < adj[v].len() {
                stack[top].2 += 1;
                let (w, e) = adj[v][pos];
                if Some(e) == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let (Some(&(p, _, _)), Some(pe)) = (stack.last(), parent_edge) {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    let mut vertices: Vec<VertexIdx> = edges
                        .iter()
                        .flat_map(|&e| [g.edge(e).tail, g.edge(e).head])
                        .collect();
                    vertices.sort_unstable();
                    vertices.dedup();
                    out.push(Block { vertices, edges });
                }
            }
        }
    }
    out
}

/// Every biconnected component is a single edge or a simple cycle.
pub fn is_cactus(g: &Graph) -> bool {
    blocks(g)
        .iter()
        .all(|b| b.edges.len() == 1 || b.edges.len() == b.vertices.len())
}

/// The cycles of a cactus in walk order, each starting at its smallest vertex.
pub fn cactus_cycles(g: &Graph) -> Result<Vec<Cycle>, StructureError> {
    let mut cycles = Vec::new();
    for b in blocks(g) {
        if b.edges.len() == 1 {
            continue;
        }
        if b.edges.len() != b.vertices.len() {
            return Err(StructureError::NotACactus);
        }
        let k = b.edges.len();
        let mut start = b.vertices[0];
        let mut vertices = Vec::with_capacity(k);
        let mut edges = Vec::with_capacity(k);
        let mut prev: Option<EdgeIdx> = None;
        for _ in 0..k {
            let e = *b
                .edges
                .iter()
                .find(|&&e| {
                    Some(e) != prev && {
                        let ed = g.edge(e);
                        ed.tail == start || ed.head == start
                    }
                })
                .expect("cycle blocks are 2-regular");
            vertices.push(start);
            edges.push(e);
            let ed = g.edge(e);
            start = if ed.tail == start { ed.head } else { ed.tail };
            prev = Some(e);
        }
        cycles.push(Cycle { vertices, edges });
    }
    Ok(cycles)
}

/// Kahn order over the vertices touched by `edges`; `None` if a directed cycle exists.
pub fn topological_order(g: &Graph, edges: &EdgeSet) -> Option<Vec<VertexIdx>> {
    let mut indeg = vec![0usize; g.n()];
    for e in g.edges() {
        if edges.contains(e.id) {
            indeg[e.head] += 1;
        }
    }
    let mut queue: VecDeque<VertexIdx> = (0..g.n()).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &e in g.out_edges(v) {
            if edges.contains(e) {
                let h = g.edge(e).head;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
    }
    (order.len() == g.n()).then_some(order)
}

pub fn is_dag(g: &Graph) -> bool {
    topological_order(g, &EdgeSet::all(g)).is_some()
}

/// Two-colorability of the underlying undirected graph.
pub fn is_bipartite(g: &Graph) -> bool {
    let adj = undirected_adjacency(g);
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for root in 0..g.n() {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for &(w, _) in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Vertices reachable from `root` along directed edges of `edges`.
pub fn reachable_from(g: &Graph, root: VertexIdx, edges: &EdgeSet) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &e in g.out_edges(v) {
            let h = g.edge(e).head;
            if edges.contains(e) && !seen[h] {
                seen[h] = true;
                queue.push_back(h);
            }
        }
    }
    seen
}

/// Hop distances from `root` in the underlying undirected graph.
pub fn undirected_distances(g: &Graph, root: VertexIdx) -> Vec<Option<usize>> {
    let adj = undirected_adjacency(g);
    let mut dist = vec![None; g.n()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &(w, _) in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The vertex of `cycle` nearest to `root` in the undirected sense; in a cactus
/// every path from `root` enters the cycle there.
pub fn attachment_vertex(cycle: &Cycle, dist: &[Option<usize>]) -> Option<VertexIdx> {
    cycle
        .vertices
        .iter()
        .copied()
        .filter(|&v| dist[v].is_some())
        .min_by_key(|&v| dist[v])
}

/// Acyclic edge set of the player starting at `root` on a cactus: edges with a
/// reachable tail, minus the edge closing each directed cycle at its entry vertex.
pub fn player_dag(g: &Graph, root: VertexIdx) -> Result<EdgeSet, StructureError> {
    let cycles = cactus_cycles(g)?;
    let reach = reachable_from(g, root, &EdgeSet::all(g));
    let dist = undirected_distances(g, root);
    let mut set = EdgeSet::empty(g.m());
    for e in g.edges() {
        if reach[e.tail] {
            set.insert(e.id);
        }
    }
    for c in &cycles {
        if !c.is_directed(g) || !c.vertices.iter().any(|&v| reach[v]) {
            continue;
        }
        let entry = attachment_vertex(c, &dist).expect("reachable cycle has a distance");
        for &e in &c.edges {
            if g.edge(e).head == entry {
                set.remove(e);
            }
        }
    }
    Ok(set)
}

/// [`player_dag`] for player A (rooted at `s`).
pub fn player_a_dag(g: &Graph) -> Result<EdgeSet, StructureError> {
    player_dag(g, g.s())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_instance;

    fn g(text: &str) -> Graph {
        parse_instance(text).unwrap()
    }

    fn ids(g: &Graph, set: &EdgeSet) -> Vec<(String, String)> {
        set.ids()
            .into_iter()
            .map(|e| {
                let ed = g.edge(e);
                (g.token(ed.tail).to_string(), g.token(ed.head).to_string())
            })
            .collect()
    }

    #[test]
    fn cactus_shapes() {
        let tree = g("start a b\nedge a b 1\nedge b c 1\nedge d b 1");
        assert!(is_cactus(&tree));
        let bowtie = g("start a b\nedge a b 1\nedge b c 1\nedge c a 1\nedge a d 1\nedge d e 1\nedge e a 1");
        assert!(is_cactus(&bowtie));
        assert_eq!(cactus_cycles(&bowtie).unwrap().len(), 2);
        let theta = g("start a b\nedge a b 1\nedge b c 1\nedge c a 1\nedge a c 1");
        assert!(!is_cactus(&theta));
        let two_cycle = g("start a b\nedge a b 1\nedge b a 1");
        assert!(is_cactus(&two_cycle));
        let c = &cactus_cycles(&two_cycle).unwrap()[0];
        assert!(c.is_directed(&two_cycle));
        let parallel = g("start a b\nedge a b 1\nedge a b 2");
        assert!(!cactus_cycles(&parallel).unwrap()[0].is_directed(&parallel));
        let triple = g("start a b\nedge a b 1\nedge a b 2\nedge b a 1");
        assert!(!is_cactus(&triple));
    }

    #[test]
    fn dag_and_bipartite() {
        let tri = g("start a b\nedge a b 1\nedge b c 1\nedge a c 1");
        assert!(is_dag(&tri));
        assert!(!is_bipartite(&tri));
        let sq = g("start a b\nedge a b 1\nedge b c 1\nedge c d 1\nedge d a 1");
        assert!(!is_dag(&sq));
        assert!(is_bipartite(&sq));
    }

    #[test]
    fn player_dag_drops_closing_edge() {
        let gr = g("start s t\nedge s x 1\nedge x y 1\nedge y z 1\nedge z x 1\nedge t s 1");
        let set = player_a_dag(&gr).unwrap();
        let mut got = ids(&gr, &set);
        got.sort();
        let want: Vec<(String, String)> = [("s", "x"), ("x", "y"), ("y", "z")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(got, want);
        assert!(topological_order(&gr, &set).is_some());
    }

    #[test]
    fn player_dag_reachability_filter() {
        let gr = g("start s t\nedge s a 1\nedge p q 1\nedge q a 1\nedge t p 1");
        let set = player_a_dag(&gr).unwrap();
        assert_eq!(ids(&gr, &set), vec![("s".to_string(), "a".to_string())]);
    }

    #[test]
    fn cycle_containing_root_enters_at_root() {
        let gr = g("start s t\nedge s a 1\nedge a b 1\nedge b s 1\nedge t a 1");
        let set = player_a_dag(&gr).unwrap();
        let got = ids(&gr, &set);
        assert!(!got.contains(&("b".to_string(), "s".to_string())));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn not_a_cactus_error() {
        let theta = g("start a b\nedge a b 1\nedge b c 1\nedge c a 1\nedge a c 1");
        assert_eq!(player_a_dag(&theta), Err(StructureError::NotACactus));
    }
}
