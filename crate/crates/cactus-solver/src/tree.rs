//! Linear-time solver for graphs whose underlying undirected graph is a tree.
//!
//! The meeting vertex is forced: the undirected s-t path must read as edges
//! pointing from both ends toward one vertex `m`. Whoever reaches `m` first
//! keeps moving until the other arrives, along the cheapest directed walk of
//! the required length leaving `m`.

use std::collections::VecDeque;

use graph_core::{Cost, EdgeIdx, Graph, VertexIdx};
use spe_solver::Equilibrium;

use crate::dp::assemble;
use crate::CactusError;

pub fn is_tree(g: &Graph) -> bool {
    if g.m() + 1 != g.n() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &e in g.out_edges(v).iter().chain(g.in_edges(v)) {
            let ed = g.edge(e);
            let w = if ed.tail == v { ed.head } else { ed.tail };
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == g.n()
}

/// Undirected s-t path as edge ids, in order from `s`.
fn st_path(g: &Graph) -> Vec<EdgeIdx> {
    let mut parent: Vec<Option<(VertexIdx, EdgeIdx)>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[g.s()] = true;
    let mut queue = VecDeque::from([g.s()]);
    while let Some(v) = queue.pop_front() {
        for &e in g.out_edges(v).iter().chain(g.in_edges(v)) {
            let ed = g.edge(e);
            let w = if ed.tail == v { ed.head } else { ed.tail };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = g.t();
    while let Some((p, e)) = parent[v] {
        path.push(e);
        v = p;
    }
    path.reverse();
    path
}

/// Cheapest directed walk of exactly `len` edges from `root`, smallest edge ids on ties.
fn overshoot(g: &Graph, root: VertexIdx, len: usize) -> Option<Vec<EdgeIdx>> {
    if len == 0 {
        return Some(Vec::new());
    }
    // Each vertex below `root` is reached by one directed path, so its depth
    // fixes the remaining length: best[v] is the cheapest completion from v.
    let mut order = vec![(root, 0usize)];
    let mut i = 0;
    while i < order.len() {
        let (v, d) = order[i];
        i += 1;
        if d < len {
            for &e in g.out_edges(v) {
                order.push((g.edge(e).head, d + 1));
            }
        }
    }
    let mut best: Vec<Option<(Cost, Option<EdgeIdx>)>> = vec![None; g.n()];
    for &(v, d) in order.iter().rev() {
        if d == len {
            best[v] = Some((Cost::zero(), None));
            continue;
        }
        let mut pick: Option<(Cost, Option<EdgeIdx>)> = None;
        for &e in g.out_edges(v) {
            let Some((rest, _)) = &best[g.edge(e).head] else { continue };
            let c = &g.edge(e).cost + rest;
            if pick.as_ref().is_none_or(|(bc, _)| c < *bc) {
                pick = Some((c, Some(e)));
            }
        }
        best[v] = pick;
    }
    let mut walk = Vec::with_capacity(len);
    let mut v = root;
    while let Some((_, Some(e))) = &best[v] {
        walk.push(*e);
        v = g.edge(*e).head;
    }
    (walk.len() == len).then_some(walk)
}

/// Equilibrium on an oriented tree; rule set irrelevant since every walk is a simple path.
pub fn solve_tree(g: &Graph) -> Result<Equilibrium, CactusError> {
    if !is_tree(g) {
        return Err(CactusError::NotATree);
    }
    if g.s() == g.t() {
        return Ok(assemble(g, Vec::new(), Vec::new(), g.s()));
    }
    let path = st_path(g);
    // vertices along the path and the orientation of each path edge
    let mut verts = vec![g.s()];
    let mut forward = Vec::with_capacity(path.len());
    for &e in &path {
        let ed = g.edge(e);
        let v = *verts.last().unwrap();
        forward.push(ed.tail == v);
        verts.push(if ed.tail == v { ed.head } else { ed.tail });
    }
    let d_a = forward.iter().take_while(|&&f| f).count();
    if forward[d_a..].iter().any(|&f| f) {
        return Err(CactusError::NoFeasiblePlay);
    }
    let d_b = path.len() - d_a;
    let m = verts[d_a];
    let mut edges_a = path[..d_a].to_vec();
    let mut edges_b: Vec<EdgeIdx> = path[d_a..].iter().rev().copied().collect();
    if d_a <= d_b {
        edges_a.extend(overshoot(g, m, d_b - d_a).ok_or(CactusError::NoFeasiblePlay)?);
    } else {
        edges_b.extend(overshoot(g, m, d_a - 1 - d_b).ok_or(CactusError::NoFeasiblePlay)?);
    }
    Ok(assemble(g, edges_a, edges_b, m))
}
