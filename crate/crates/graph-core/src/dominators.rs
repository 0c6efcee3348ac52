//! Must-visit sets: dominators over an acyclic edge subset.

use crate::graph::{Graph, VertexIdx};
use crate::structure::{reachable_from, topological_order, EdgeSet, StructureError};

/// `M(a)`: the vertices lying on every path from the root to `a`, `a` included.
///
/// Stored as a dominator tree with Euler-tour intervals, so membership is O(1).
#[derive(Clone, Debug)]
pub struct MustVisitSets {
    root: VertexIdx,
    idom: Vec<Option<VertexIdx>>,
    reachable: Vec<bool>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    tokens: Vec<String>,
}

/// Must-visit sets of player A (rooted at `s`).
pub fn must_visit_sets(g: &Graph, eprime: &EdgeSet) -> Result<MustVisitSets, StructureError> {
    must_visit_sets_from(g, eprime, g.s())
}

pub fn must_visit_sets_from(
    g: &Graph,
    edges: &EdgeSet,
    root: VertexIdx,
) -> Result<MustVisitSets, StructureError> {
    let order = topological_order(g, edges).ok_or(StructureError::Cyclic)?;
    let reachable = reachable_from(g, root, edges);
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut idom: Vec<Option<VertexIdx>> = vec![None; g.n()];
    for &v in &order {
        if v == root || !reachable[v] {
            continue;
        }
        let mut acc: Option<VertexIdx> = None;
        for &e in g.in_edges(v) {
            let p = g.edge(e).tail;
            if !edges.contains(e) || !reachable[p] {
                continue;
            }
            acc = Some(match acc {
                None => p,
                Some(mut x) => {
                    let mut y = p;
                    while x != y {
                        if pos[x] > pos[y] {
                            x = idom[x].expect("non-root reachable vertex has an idom");
                        } else {
                            y = idom[y].expect("non-root reachable vertex has an idom");
                        }
                    }
                    x
                }
            });
        }
        idom[v] = acc;
    }
    let mut children = vec![Vec::new(); g.n()];
    for v in 0..g.n() {
        if let Some(p) = idom[v] {
            children[p].push(v);
        }
    }
    let mut tin = vec![0; g.n()];
    let mut tout = vec![0; g.n()];
    let mut clock = 0;
    let mut stack = vec![(root, 0usize)];
    tin[root] = clock;
    clock += 1;
    while let Some(top) = stack.len().checked_sub(1) {
        let (v, i) = stack[top];
        if i < children[v].len() {
            stack[top].1 += 1;
            let c = children[v][i];
            tin[c] = clock;
            clock += 1;
            stack.push((c, 0));
        } else {
            tout[v] = clock;
            stack.pop();
        }
    }
    Ok(MustVisitSets {
        root,
        idom,
        reachable,
        tin,
        tout,
        tokens: g.tokens().to_vec(),
    })
}

impl MustVisitSets {
    pub fn root(&self) -> VertexIdx {
        self.root
    }

    pub fn is_reachable(&self, a: VertexIdx) -> bool {
        self.reachable[a]
    }

    pub fn idom(&self, a: VertexIdx) -> Option<VertexIdx> {
        self.idom[a]
    }

    /// `v ∈ M(a)`; false whenever `a` is unreachable.
    pub fn contains(&self, a: VertexIdx, v: VertexIdx) -> bool {
        self.reachable[a]
            && self.reachable[v]
            && self.tin[v] <= self.tin[a]
            && self.tin[a] < self.tout[v]
    }

    /// `M(a)` in ascending vertex order.
    pub fn set(&self, a: VertexIdx) -> Result<Vec<VertexIdx>, StructureError> {
        if !self.reachable[a] {
            return Err(StructureError::UnreachableVertex(self.tokens[a].clone()));
        }
        let mut out = vec![a];
        let mut v = a;
        while let Some(p) = self.idom[v] {
            out.push(p);
            v = p;
        }
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_instance;
    use crate::structure::player_a_dag;

    fn names(g: &Graph, vs: &[VertexIdx]) -> Vec<String> {
        vs.iter().map(|&v| g.token(v).to_string()).collect()
    }

    #[test]
    fn chain_and_diamond() {
        let g = parse_instance("start s t\nedge s x 1\nedge x y 1\nedge t y 1").unwrap();
        let m = must_visit_sets(&g, &player_a_dag(&g).unwrap()).unwrap();
        assert_eq!(names(&g, &m.set(g.vertex("y").unwrap()).unwrap()), ["s", "x", "y"]);
        assert_eq!(names(&g, &m.set(g.s()).unwrap()), ["s"]);
        assert!(m.set(g.t()).is_err());

        let g = parse_instance("start s t\nedge s p 1\nedge s q 1\nedge p c 1\nedge q c 1").unwrap();
        let m = must_visit_sets(&g, &EdgeSet::all(&g)).unwrap();
        assert_eq!(names(&g, &m.set(g.vertex("c").unwrap()).unwrap()), ["c", "s"]);
        assert!(m.contains(g.vertex("c").unwrap(), g.s()));
        assert!(!m.contains(g.vertex("c").unwrap(), g.vertex("p").unwrap()));
    }

    #[test]
    fn cyclic_subset_rejected() {
        let g = parse_instance("start s t\nedge s x 1\nedge x s 1").unwrap();
        assert_eq!(
            must_visit_sets(&g, &EdgeSet::all(&g)).unwrap_err(),
            StructureError::Cyclic
        );
    }
}
