//! Quadratic dynamic program over (A position, B position) for cacti under R3.
//!
//! A moves inside its acyclic edge set `E'_A`, B inside `E'_B`; on a cactus these
//! are exactly the simple paths available to them. The stored rows hold the
//! value with B to move right after A arrived at the row vertex; values with A
//! to move are derived from the rows of A's successors on the fly. Rows are
//! filled in reverse topological order of `E'_A`, each exactly once.

use graph_core::{
    must_visit_sets_from, player_dag, reachable_from, topological_order, Cost, CostScale, EdgeIdx,
    EdgeSet, Graph, MustVisitSets, VertexIdx,
};
use spe_solver::Equilibrium;

use crate::config::{Exceptional, Side};
use crate::CactusError;

const NONE: u32 = u32::MAX;

pub(crate) trait Value: Copy {
    const INF: Self;
    /// Value of a state in which the game is already over.
    const TERMINAL: Self;
    fn finite(self) -> bool;
    /// The mover pays `c` and the game ends on its arrival.
    fn arrival(c: u64, mover: Side) -> Self;
    fn extend(self, c: u64, mover: Side) -> Self;
    /// Strictly preferred by `mover`.
    fn better(self, than: Self, mover: Side) -> bool;
    /// No candidate can beat this one.
    fn saturated(self) -> bool {
        false
    }
}

/// Remaining costs in scaled integer units; `u64::MAX` marks infeasibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pair {
    pub a: u64,
    pub b: u64,
}

impl Value for Pair {
    const INF: Pair = Pair { a: u64::MAX, b: u64::MAX };
    const TERMINAL: Pair = Pair { a: 0, b: 0 };

    fn finite(self) -> bool {
        self.a != u64::MAX
    }

    fn arrival(c: u64, mover: Side) -> Pair {
        match mover {
            Side::A => Pair { a: c, b: 0 },
            Side::B => Pair { a: 0, b: c },
        }
    }

    fn extend(self, c: u64, mover: Side) -> Pair {
        match mover {
            Side::A => Pair { a: self.a + c, b: self.b },
            Side::B => Pair { a: self.a, b: self.b + c },
        }
    }

    fn better(self, than: Pair, mover: Side) -> bool {
        match mover {
            Side::A => (self.a, self.b) < (than.a, than.b),
            Side::B => (self.b, self.a) < (than.b, than.a),
        }
    }
}

impl Value for bool {
    const INF: bool = false;
    const TERMINAL: bool = true;

    fn finite(self) -> bool {
        self
    }

    fn arrival(_: u64, _: Side) -> bool {
        true
    }

    fn extend(self, _: u64, _: Side) -> bool {
        self
    }

    fn better(self, than: bool, _: Side) -> bool {
        self && !than
    }

    fn saturated(self) -> bool {
        self
    }
}

/// Outgoing DAG edges as (edge, head, cost units), ascending edge id.
type Adjacency = Vec<Vec<(EdgeIdx, VertexIdx, u64)>>;

pub(crate) struct Dp<'g> {
    g: &'g Graph,
    must_a: MustVisitSets,
    must_b: MustVisitSets,
    adj_a: Adjacency,
    adj_b: Adjacency,
    order_a: Vec<VertexIdx>,
    idx_a: Vec<u32>,
    idx_b: Vec<u32>,
    verts_a: Vec<VertexIdx>,
    verts_b: Vec<VertexIdx>,
    /// Opponent attachment vertex on each player's two-arc cycle, with its flag bit.
    special_a: Option<(VertexIdx, usize)>,
    special_b: Option<(VertexIdx, usize)>,
    layers: usize,
    scale: CostScale,
}

pub(crate) struct Table<V> {
    data: Vec<V>,
    done: Vec<bool>,
    layers: usize,
    nb: usize,
}

impl<V: Value> Table<V> {
    fn at(&self, ia: u32, f: usize, ib: u32) -> V {
        self.data[(ia as usize * self.layers + f) * self.nb + ib as usize]
    }
}

fn adjacency(g: &Graph, dag: &EdgeSet, units: &[u64]) -> Adjacency {
    (0..g.n())
        .map(|v| {
            g.out_edges(v)
                .iter()
                .filter(|&&e| dag.contains(e))
                .map(|&e| (e, g.edge(e).head, units[e]))
                .collect()
        })
        .collect()
}

fn compact(reach: &[bool]) -> (Vec<u32>, Vec<VertexIdx>) {
    let mut idx = vec![NONE; reach.len()];
    let mut verts = Vec::new();
    for (v, &r) in reach.iter().enumerate() {
        if r {
            idx[v] = verts.len() as u32;
            verts.push(v);
        }
    }
    (idx, verts)
}

impl<'g> Dp<'g> {
    pub(crate) fn new(g: &'g Graph, exc: &[Exceptional]) -> Result<Dp<'g>, CactusError> {
        let dag_a = player_dag(g, g.s())?;
        let dag_b = player_dag(g, g.t())?;
        let must_a = must_visit_sets_from(g, &dag_a, g.s())?;
        let must_b = must_visit_sets_from(g, &dag_b, g.t())?;
        let scale = CostScale::for_costs(g.edges().iter().map(|e| &e.cost));
        let units = g
            .edges()
            .iter()
            .map(|e| scale.units(&e.cost))
            .collect::<Option<Vec<u64>>>()
            .ok_or(CactusError::CostOverflow)?;
        let total = units
            .iter()
            .try_fold(0u64, |acc, &u| acc.checked_add(u))
            .filter(|&t| t < u64::MAX)
            .ok_or(CactusError::CostOverflow)?;
        debug_assert!(total < u64::MAX);
        let reach_a = reachable_from(g, g.s(), &dag_a);
        let reach_b = reachable_from(g, g.t(), &dag_b);
        let (idx_a, verts_a) = compact(&reach_a);
        let (idx_b, verts_b) = compact(&reach_b);
        let order_a = topological_order(g, &dag_a)
            .ok_or(CactusError::NotACactus)?
            .into_iter()
            .filter(|&v| reach_a[v])
            .collect();
        let mut bit = 1;
        let mut special = |side: Side| {
            exc.iter().find(|x| x.side == side).map(|x| {
                let b = bit;
                bit <<= 1;
                (x.y, b)
            })
        };
        let (special_a, special_b) = (special(Side::A), special(Side::B));
        Ok(Dp {
            g,
            adj_a: adjacency(g, &dag_a, &units),
            adj_b: adjacency(g, &dag_b, &units),
            must_a,
            must_b,
            order_a,
            idx_a,
            idx_b,
            verts_a,
            verts_b,
            special_a,
            special_b,
            layers: bit,
            scale,
        })
    }

    fn special(&self, side: Side) -> Option<(VertexIdx, usize)> {
        match side {
            Side::A => self.special_a,
            Side::B => self.special_b,
        }
    }

    /// `v` visited by A, positioned at `a` with flags `f`, as far as B can tell.
    fn vis_a(&self, a: VertexIdx, f: usize, v: VertexIdx) -> bool {
        self.must_a.contains(a, v) || self.special_a.is_some_and(|(y, bit)| f & bit != 0 && y == v)
    }

    fn vis_b(&self, b: VertexIdx, f: usize, v: VertexIdx) -> bool {
        self.must_b.contains(b, v) || self.special_b.is_some_and(|(y, bit)| f & bit != 0 && y == v)
    }

    fn flag_after(&self, side: Side, f: usize, v: VertexIdx) -> usize {
        match self.special(side) {
            Some((y, bit)) if y == v => f | bit,
            _ => f,
        }
    }

    /// A to move at (a, f, b).
    fn t_value<V: Value>(&self, tab: &Table<V>, a: VertexIdx, f: usize, b: VertexIdx) -> (V, Option<EdgeIdx>) {
        let mut best = V::INF;
        let mut arg = None;
        for &(e, a2, c) in &self.adj_a[a] {
            let cand = if self.vis_b(b, f, a2) {
                V::arrival(c, Side::A)
            } else {
                let r = tab.at(self.idx_a[a2], self.flag_after(Side::A, f, a2), self.idx_b[b]);
                if !r.finite() {
                    continue;
                }
                r.extend(c, Side::A)
            };
            if arg.is_none() || cand.better(best, Side::A) {
                best = cand;
                arg = Some(e);
                if best.saturated() {
                    break;
                }
            }
        }
        (best, arg)
    }

    /// B to move at (a2, f, b), A having just arrived at `a2`.
    fn r_value<V: Value>(&self, tab: &Table<V>, a2: VertexIdx, f: usize, b: VertexIdx) -> (V, Option<EdgeIdx>) {
        if self.vis_a(a2, f, b) || self.vis_b(b, f, a2) {
            return (V::TERMINAL, None);
        }
        let mut best = V::INF;
        let mut arg = None;
        for &(e, b2, c) in &self.adj_b[b] {
            let cand = if self.vis_a(a2, f, b2) {
                V::arrival(c, Side::B)
            } else {
                let t = self.t_value(tab, a2, self.flag_after(Side::B, f, b2), b2).0;
                if !t.finite() {
                    continue;
                }
                t.extend(c, Side::B)
            };
            if arg.is_none() || cand.better(best, Side::B) {
                best = cand;
                arg = Some(e);
                if best.saturated() {
                    break;
                }
            }
        }
        (best, arg)
    }

    pub(crate) fn sweep<V: Value>(&self) -> Table<V> {
        let nb = self.verts_b.len();
        let mut tab = Table {
            data: vec![V::INF; self.verts_a.len() * self.layers * nb],
            done: vec![false; self.verts_a.len()],
            layers: self.layers,
            nb,
        };
        let mut row = Vec::with_capacity(self.layers * nb);
        for &a2 in self.order_a.iter().rev() {
            let ia = self.idx_a[a2] as usize;
            assert!(!tab.done[ia], "row written twice");
            assert!(
                self.adj_a[a2].iter().all(|&(_, w, _)| tab.done[self.idx_a[w] as usize]),
                "row computed before a successor row"
            );
            row.clear();
            for f in 0..self.layers {
                for &b in &self.verts_b {
                    row.push(self.r_value(&tab, a2, f, b).0);
                }
            }
            let start = ia * self.layers * nb;
            tab.data[start..start + row.len()].copy_from_slice(&row);
            tab.done[ia] = true;
        }
        tab
    }

    pub(crate) fn feasible(&self) -> bool {
        let tab = self.sweep::<bool>();
        self.t_value(&tab, self.g.s(), 0, self.g.t()).0
    }

    /// Replays the recorded argmins from the initial state.
    pub(crate) fn equilibrium(&self, tab: &Table<Pair>) -> Result<Equilibrium, CactusError> {
        let g = self.g;
        let (mut a, mut b, mut f) = (g.s(), g.t(), 0);
        let root = self.t_value(tab, a, f, b).0;
        if !root.finite() {
            return Err(CactusError::NoFeasiblePlay);
        }
        let (mut edges_a, mut edges_b) = (Vec::new(), Vec::new());
        let meeting = loop {
            let ea = self.t_value(tab, a, f, b).1.expect("finite value has an argmin");
            let a2 = g.edge(ea).head;
            edges_a.push(ea);
            if self.vis_b(b, f, a2) {
                break a2;
            }
            let f2 = self.flag_after(Side::A, f, a2);
            let eb = self.r_value(tab, a2, f2, b).1.expect("finite value has an argmin");
            let b2 = g.edge(eb).head;
            edges_b.push(eb);
            if self.vis_a(a2, f2, b2) {
                break b2;
            }
            (a, b, f) = (a2, b2, self.flag_after(Side::B, f2, b2));
        };
        let eq = assemble(g, edges_a, edges_b, meeting);
        debug_assert_eq!(
            (self.scale.cost(root.a), self.scale.cost(root.b)),
            (eq.cost_a.clone(), eq.cost_b.clone())
        );
        Ok(eq)
    }

    pub(crate) fn tables(&self, tab: Table<Pair>) -> CostTables {
        CostTables {
            tokens: self.g.tokens().to_vec(),
            verts_a: self.verts_a.clone(),
            verts_b: self.verts_b.clone(),
            idx_a: self.idx_a.clone(),
            idx_b: self.idx_b.clone(),
            layers: self.layers,
            data: tab.data,
            scale: self.scale.clone(),
            swapped: false,
        }
    }
}

pub(crate) fn assemble(g: &Graph, edges_a: Vec<EdgeIdx>, edges_b: Vec<EdgeIdx>, meeting: VertexIdx) -> Equilibrium {
    let path = |start: VertexIdx, es: &[EdgeIdx]| {
        std::iter::once(start)
            .chain(es.iter().map(|&e| g.edge(e).head))
            .collect::<Vec<_>>()
    };
    let cost = |es: &[EdgeIdx]| es.iter().map(|&e| &g.edge(e).cost).sum::<Cost>();
    Equilibrium {
        cost_a: cost(&edges_a),
        cost_b: cost(&edges_b),
        path_a: path(g.s(), &edges_a),
        path_b: path(g.t(), &edges_b),
        edges_a,
        edges_b,
        meeting,
    }
}

/// DP rows: remaining costs with B to move right after A arrived at the row vertex.
///
/// Each exceptional cycle doubles the layers: one flag bit per player records
/// whether it has passed the opponent's attachment vertex on that cycle.
#[derive(Clone, Debug)]
pub struct CostTables {
    tokens: Vec<String>,
    verts_a: Vec<VertexIdx>,
    verts_b: Vec<VertexIdx>,
    idx_a: Vec<u32>,
    idx_b: Vec<u32>,
    layers: usize,
    data: Vec<Pair>,
    scale: CostScale,
    swapped: bool,
}

impl CostTables {
    pub(crate) fn mark_swapped(mut self) -> Self {
        self.swapped = true;
        self
    }

    /// Whether the rows belong to the role-swapped instance (row player is B).
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    /// `None` if either vertex is outside the table; `Some(None)` for infinity.
    pub fn get(&self, a: VertexIdx, b: VertexIdx, layer: usize) -> Option<Option<(Cost, Cost)>> {
        let (ia, ib) = (*self.idx_a.get(a)?, *self.idx_b.get(b)?);
        if ia == NONE || ib == NONE || layer >= self.layers {
            return None;
        }
        let p = self.data[(ia as usize * self.layers + layer) * self.verts_b.len() + ib as usize];
        Some(p.finite().then(|| (self.scale.cost(p.a), self.scale.cost(p.b))))
    }

    /// One `cost <a> <b> <costA|inf> <costB|inf>` line per entry; rows of a
    /// flagged layer carry a trailing `flags=<bits>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if self.swapped {
            out.push_str("# roles swapped: rows are indexed by the second player\n");
        }
        let show = |u: u64| {
            if u == u64::MAX {
                "inf".to_string()
            } else {
                self.scale.cost(u).to_string()
            }
        };
        for &a in &self.verts_a {
            for f in 0..self.layers {
                for &b in &self.verts_b {
                    let ia = self.idx_a[a] as usize;
                    let p = self.data[(ia * self.layers + f) * self.verts_b.len() + self.idx_b[b] as usize];
                    out.push_str(&format!(
                        "cost {} {} {} {}{}\n",
                        self.tokens[a],
                        self.tokens[b],
                        show(p.a),
                        show(p.b),
                        if f > 0 { format!(" flags={f}") } else { String::new() }
                    ));
                }
            }
        }
        out
    }
}
