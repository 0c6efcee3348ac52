//! State mechanics of the shortest connection game.
//!
//! Player A starts at `s`, player B at `t`, A moves first and moves alternate.
//! The game ends when the mover arrives at a vertex the opponent has visited
//! (homebases count as visited). Every edge may be used once (R2); with
//! [`RuleSet::simple_paths`] no player may revisit a vertex (R3); and a move is
//! legal only if a meeting remains reachable with both players able to move in
//! every round (R1).

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
pub use graph_core::RuleSet;
use graph_core::{Cost, EdgeIdx, Graph, VertexIdx};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Player::A => "A",
            Player::B => "B",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("terminal state")]
    TerminalState,
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("disconnected walk")]
    DisconnectedWalk,
}

/// A move along one edge leaving the mover's position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub edge: EdgeIdx,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    turn: Player,
    path_a: Vec<VertexIdx>,
    path_b: Vec<VertexIdx>,
    edges_a: Vec<EdgeIdx>,
    edges_b: Vec<EdgeIdx>,
    used_edges: FixedBitSet,
    visited_a: FixedBitSet,
    visited_b: FixedBitSet,
    terminal: Option<VertexIdx>,
}

/// Initial position: A on `s`, B on `t`, A to move; terminal at once when `s = t`.
pub fn initial_state(g: &Graph) -> GameState {
    let mut visited_a = FixedBitSet::with_capacity(g.n());
    let mut visited_b = FixedBitSet::with_capacity(g.n());
    visited_a.insert(g.s());
    visited_b.insert(g.t());
    GameState {
        turn: Player::A,
        path_a: vec![g.s()],
        path_b: vec![g.t()],
        edges_a: Vec::new(),
        edges_b: Vec::new(),
        used_edges: FixedBitSet::with_capacity(g.m()),
        visited_a,
        visited_b,
        terminal: (g.s() == g.t()).then_some(g.s()),
    }
}

impl GameState {
    pub fn turn(&self) -> Player {
        self.turn
    }

    pub fn pos(&self, p: Player) -> VertexIdx {
        *self.path(p).last().expect("paths start at a homebase")
    }

    pub fn pos_a(&self) -> VertexIdx {
        self.pos(Player::A)
    }

    pub fn pos_b(&self) -> VertexIdx {
        self.pos(Player::B)
    }

    pub fn path(&self, p: Player) -> &[VertexIdx] {
        match p {
            Player::A => &self.path_a,
            Player::B => &self.path_b,
        }
    }

    /// Edges traversed by `p`, in order.
    pub fn edges(&self, p: Player) -> &[EdgeIdx] {
        match p {
            Player::A => &self.edges_a,
            Player::B => &self.edges_b,
        }
    }

    pub fn visited(&self, p: Player, v: VertexIdx) -> bool {
        match p {
            Player::A => self.visited_a.contains(v),
            Player::B => self.visited_b.contains(v),
        }
    }

    pub fn used(&self, e: EdgeIdx) -> bool {
        self.used_edges.contains(e)
    }

    /// Meeting vertex once the game is over.
    pub fn terminal(&self) -> Option<VertexIdx> {
        self.terminal
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal.is_some()
    }

    /// Cost paid so far by `p`.
    pub fn cost(&self, g: &Graph, p: Player) -> Cost {
        self.edges(p).iter().map(|&e| &g.edge(e).cost).sum()
    }

    /// Number of moves made so far.
    pub fn moves_made(&self) -> usize {
        self.edges_a.len() + self.edges_b.len()
    }

    /// Moves in play order (A first, alternating).
    pub fn transcript_moves(&self) -> Vec<(Player, EdgeIdx)> {
        let mut out = Vec::with_capacity(self.moves_made());
        for i in 0..self.edges_a.len().max(self.edges_b.len()) {
            if let Some(&e) = self.edges_a.get(i) {
                out.push((Player::A, e));
            }
            if let Some(&e) = self.edges_b.get(i) {
                out.push((Player::B, e));
            }
        }
        out
    }

    /// Whether `e` is a rule-conforming (R2/R3) move for the player to move.
    pub fn permits(&self, g: &Graph, rules: RuleSet, e: EdgeIdx) -> bool {
        let ed = g.edge(e);
        self.terminal.is_none()
            && ed.tail == self.pos(self.turn)
            && !self.used_edges.contains(e)
            && !(rules.simple_paths && self.visited(self.turn, ed.head))
    }

    /// Successor after the mover traverses `e`; the caller guarantees [`GameState::permits`].
    pub fn advance(&self, g: &Graph, e: EdgeIdx) -> GameState {
        let head = g.edge(e).head;
        let mut next = self.clone();
        next.used_edges.insert(e);
        match self.turn {
            Player::A => {
                next.path_a.push(head);
                next.edges_a.push(e);
                next.visited_a.insert(head);
                if self.visited_b.contains(head) {
                    next.terminal = Some(head);
                }
            }
            Player::B => {
                next.path_b.push(head);
                next.edges_b.push(e);
                next.visited_b.insert(head);
                if self.visited_a.contains(head) {
                    next.terminal = Some(head);
                }
            }
        }
        next.turn = self.turn.other();
        next
    }

    /// Canonical memo key: positions, turn and consumed resources.
    ///
    /// Under R2 the used-edge set determines both visited sets of a nonterminal
    /// state (each player's edges form the component of its homebase), so it is
    /// the resource component; under R3 the two visited sets are.
    pub fn key(&self, rules: RuleSet) -> StateKey {
        let (pos_a, pos_b, turn) = (self.pos_a(), self.pos_b(), self.turn);
        if rules.simple_paths {
            StateKey::Visited {
                pos_a,
                pos_b,
                turn,
                visited_a: self.visited_a.clone(),
                visited_b: self.visited_b.clone(),
            }
        } else {
            StateKey::Edges {
                pos_a,
                pos_b,
                turn,
                used: self.used_edges.clone(),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateKey {
    Edges {
        pos_a: VertexIdx,
        pos_b: VertexIdx,
        turn: Player,
        used: FixedBitSet,
    },
    Visited {
        pos_a: VertexIdx,
        pos_b: VertexIdx,
        turn: Player,
        visited_a: FixedBitSet,
        visited_b: FixedBitSet,
    },
}

/// Outgoing edges of the mover allowed by R2 (and R3), ascending id.
pub fn raw_moves(state: &GameState, g: &Graph, rules: RuleSet) -> Result<Vec<Move>, EngineError> {
    if state.is_terminal() {
        return Err(EngineError::TerminalState);
    }
    Ok(g.out_edges(state.pos(state.turn))
        .iter()
        .copied()
        .filter(|&e| state.permits(g, rules, e))
        .map(|edge| Move { edge })
        .collect())
}

/// Cooperative reachability of a meeting, memoized per state key.
///
/// One oracle may be reused across many queries on the same graph and rules.
pub struct Feasibility<'g> {
    g: &'g Graph,
    rules: RuleSet,
    cache: HashMap<StateKey, bool>,
}

impl<'g> Feasibility<'g> {
    pub fn new(g: &'g Graph, rules: RuleSet) -> Self {
        Feasibility { g, rules, cache: HashMap::new() }
    }

    pub fn feasible(&mut self, state: &GameState) -> bool {
        if state.is_terminal() {
            return true;
        }
        let key = state.key(self.rules);
        if let Some(&v) = self.cache.get(&key) {
            return v;
        }
        let mover = state.pos(state.turn);
        let mut ok = false;
        for &e in self.g.out_edges(mover) {
            if state.permits(self.g, self.rules, e) && self.feasible(&state.advance(self.g, e)) {
                ok = true;
                break;
            }
        }
        self.cache.insert(key, ok);
        ok
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }
}

/// True iff some alternating completion of `state` reaches a meeting.
pub fn feasible(state: &GameState, g: &Graph, rules: RuleSet) -> bool {
    Feasibility::new(g, rules).feasible(state)
}

/// True iff the game on `g` admits at least one complete feasible play.
pub fn feasibility_precheck(g: &Graph, rules: RuleSet) -> bool {
    feasible(&initial_state(g), g, rules)
}

/// Raw moves whose successor is feasible (R1), order preserved.
pub fn legal_moves(state: &GameState, g: &Graph, rules: RuleSet) -> Result<Vec<Move>, EngineError> {
    let mut oracle = Feasibility::new(g, rules);
    Ok(raw_moves(state, g, rules)?
        .into_iter()
        .filter(|mv| oracle.feasible(&state.advance(g, mv.edge)))
        .collect())
}

/// Applies a legal move (R1, R2 and R3 are all checked).
pub fn apply_move(
    state: &GameState,
    g: &Graph,
    rules: RuleSet,
    mv: Move,
) -> Result<GameState, EngineError> {
    let next = apply_raw(state, g, rules, mv)?;
    if !feasible(&next, g, rules) {
        return Err(EngineError::IllegalMove(format!(
            "edge {} leaves no feasible completion",
            mv.edge
        )));
    }
    Ok(next)
}

/// Applies a move checking only R2/R3 and the tail position.
pub fn apply_raw(
    state: &GameState,
    g: &Graph,
    rules: RuleSet,
    mv: Move,
) -> Result<GameState, EngineError> {
    if state.is_terminal() {
        return Err(EngineError::TerminalState);
    }
    if mv.edge >= g.m() || !state.permits(g, rules, mv.edge) {
        return Err(EngineError::IllegalMove(format!(
            "edge {} not available to {}",
            mv.edge,
            state.turn.label()
        )));
    }
    Ok(state.advance(g, mv.edge))
}

/// Exact cost of a connected edge walk.
pub fn play_cost(walk: &[EdgeIdx], g: &Graph) -> Result<Cost, EngineError> {
    for w in walk.windows(2) {
        if g.edge(w[0]).head != g.edge(w[1]).tail {
            return Err(EngineError::DisconnectedWalk);
        }
    }
    Ok(walk.iter().map(|&e| &g.edge(e).cost).sum())
}

/// Replays per-player edge sequences in alternating order (A first) under R2/R3.
///
/// Fails unless the game ends exactly with the last listed move.
pub fn replay(
    g: &Graph,
    rules: RuleSet,
    edges_a: &[EdgeIdx],
    edges_b: &[EdgeIdx],
) -> Result<GameState, EngineError> {
    let mut state = initial_state(g);
    let total = edges_a.len() + edges_b.len();
    let (mut ia, mut ib) = (0, 0);
    for _ in 0..total {
        let e = match state.turn {
            Player::A => edges_a.get(ia).inspect(|_| ia += 1),
            Player::B => edges_b.get(ib).inspect(|_| ib += 1),
        }
        .copied()
        .ok_or_else(|| EngineError::IllegalMove("sequences do not alternate".into()))?;
        state = apply_raw(&state, g, rules, Move { edge: e })?;
    }
    if !state.is_terminal() {
        return Err(EngineError::IllegalMove("replay does not end the game".into()));
    }
    Ok(state)
}

/// Transcript lines `<player> <tail> <head> <edge-id> <cost>` plus a final `meet` line.
pub fn transcript(g: &Graph, state: &GameState) -> String {
    let mut out = String::new();
    for (p, e) in state.transcript_moves() {
        let ed = g.edge(e);
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            p.label(),
            g.token(ed.tail),
            g.token(ed.head),
            e,
            ed.cost
        );
    }
    if let Some(m) = state.terminal() {
        let _ = writeln!(
            out,
            "meet {} {} {}",
            g.token(m),
            state.cost(g, Player::A),
            state.cost(g, Player::B)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::parse_instance;

    fn mv(g: &Graph, u: &str, v: &str) -> Move {
        Move {
            edge: g.find_edge(g.vertex(u).unwrap(), g.vertex(v).unwrap()).unwrap(),
        }
    }

    #[test]
    fn homebases_count_as_visited() {
        let g = parse_instance("start s t\nedge s x 1\nedge x t 1\nedge t y 1\nedge y z 1").unwrap();
        let st = initial_state(&g);
        assert_eq!((st.path(Player::A).len(), st.path(Player::B).len()), (1, 1));
        let st = apply_raw(&st, &g, RuleSet::R2, mv(&g, "s", "x")).unwrap();
        let st = apply_raw(&st, &g, RuleSet::R2, mv(&g, "t", "y")).unwrap();
        let st = apply_raw(&st, &g, RuleSet::R2, mv(&g, "x", "t")).unwrap();
        assert_eq!(st.terminal(), Some(g.vertex("t").unwrap()));
        assert_eq!(raw_moves(&st, &g, RuleSet::R2), Err(EngineError::TerminalState));
    }

    #[test]
    fn same_homebase_is_terminal() {
        let g = parse_instance("start s s\nedge s x 1").unwrap();
        assert_eq!(initial_state(&g).terminal(), Some(g.s()));
        assert!(feasibility_precheck(&g, RuleSet::R2));
    }

    #[test]
    fn edge_once_on_two_cycle() {
        let g = parse_instance("start x t\nedge x y 1\nedge y x 1\nedge t w 1\nedge w t 1").unwrap();
        let mut st = initial_state(&g);
        st = apply_raw(&st, &g, RuleSet::R2, mv(&g, "x", "y")).unwrap();
        st = apply_raw(&st, &g, RuleSet::R2, mv(&g, "t", "w")).unwrap();
        let moves: Vec<_> = raw_moves(&st, &g, RuleSet::R2).unwrap();
        assert_eq!(moves, vec![mv(&g, "y", "x")]);
        assert!(raw_moves(&st, &g, RuleSet::R3).unwrap().is_empty());
        st = apply_raw(&st, &g, RuleSet::R2, mv(&g, "y", "x")).unwrap();
        st = apply_raw(&st, &g, RuleSet::R2, mv(&g, "w", "t")).unwrap();
        assert!(raw_moves(&st, &g, RuleSet::R2).unwrap().is_empty());
        assert!(apply_raw(&st, &g, RuleSet::R2, mv(&g, "x", "y")).is_err());
    }

    #[test]
    fn dead_end_for_b_is_infeasible() {
        let g = parse_instance("start s t\nedge s x 1").unwrap();
        assert!(!feasibility_precheck(&g, RuleSet::R2));
    }

    #[test]
    fn walk_cost() {
        let g = parse_instance("start s t\nedge s a 1/2\nedge a b 2.5\nedge t b 1").unwrap();
        let w = [mv(&g, "s", "a").edge, mv(&g, "a", "b").edge];
        assert_eq!(play_cost(&w, &g).unwrap(), Cost::from_int(3));
        assert_eq!(play_cost(&[], &g).unwrap(), Cost::zero());
        let bad = [mv(&g, "s", "a").edge, mv(&g, "t", "b").edge];
        assert_eq!(play_cost(&bad, &g), Err(EngineError::DisconnectedWalk));
    }
}
