//! Exact subgame perfect equilibrium of the shortest connection game by
//! memoized backward induction, plus the cooperative optimum and the price of
//! anarchy.
//!
//! The mover minimizes its own remaining cost; on a tie it prefers the option
//! cheaper for the opponent, and on a full tie the smaller edge id.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use game_engine::{initial_state, Feasibility, GameState, Move, Player, RuleSet, StateKey};
use graph_core::{BigRational, Cost, EdgeIdx, Graph, VertexIdx};
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no feasible play")]
    NoFeasiblePlay,
    #[error("budget exceeded after {0} state expansions")]
    BudgetExceeded(u64),
    #[error("price of anarchy undefined: cooperative total is 0 but equilibrium total is positive")]
    UnboundedPriceOfAnarchy,
}

/// Remaining costs under equilibrium play, or the infeasible marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateValue {
    Finite { cost_a: Cost, cost_b: Cost },
    Infeasible,
}

impl StateValue {
    pub fn zero() -> Self {
        StateValue::Finite { cost_a: Cost::zero(), cost_b: Cost::zero() }
    }

    pub fn finite(cost_a: Cost, cost_b: Cost) -> Self {
        StateValue::Finite { cost_a, cost_b }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, StateValue::Infeasible)
    }

    pub fn cost(&self, p: Player) -> Option<&Cost> {
        match (self, p) {
            (StateValue::Finite { cost_a, .. }, Player::A) => Some(cost_a),
            (StateValue::Finite { cost_b, .. }, Player::B) => Some(cost_b),
            (StateValue::Infeasible, _) => None,
        }
    }
}

impl fmt::Display for StateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateValue::Finite { cost_a, cost_b } => write!(f, "({cost_a}|{cost_b})"),
            StateValue::Infeasible => write!(f, "(inf|inf)"),
        }
    }
}

/// Outcome of a complete play: costs, paths and the meeting vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equilibrium {
    pub cost_a: Cost,
    pub cost_b: Cost,
    pub path_a: Vec<VertexIdx>,
    pub path_b: Vec<VertexIdx>,
    pub edges_a: Vec<EdgeIdx>,
    pub edges_b: Vec<EdgeIdx>,
    pub meeting: VertexIdx,
}

impl Equilibrium {
    /// Reads the outcome off a terminal state.
    pub fn from_terminal(g: &Graph, state: &GameState) -> Option<Equilibrium> {
        Some(Equilibrium {
            cost_a: state.cost(g, Player::A),
            cost_b: state.cost(g, Player::B),
            path_a: state.path(Player::A).to_vec(),
            path_b: state.path(Player::B).to_vec(),
            edges_a: state.edges(Player::A).to_vec(),
            edges_b: state.edges(Player::B).to_vec(),
            meeting: state.terminal()?,
        })
    }

    pub fn total(&self) -> Cost {
        &self.cost_a + &self.cost_b
    }

    /// Human-readable three-line summary.
    pub fn render(&self, g: &Graph) -> String {
        format!(
            "A: {} ({})\nB: {} ({})\nmeet {}\n",
            g.path_tokens(&self.path_a).join(" "),
            self.cost_a,
            g.path_tokens(&self.path_b).join(" "),
            self.cost_b,
            g.token(self.meeting)
        )
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Maximum number of distinct state expansions.
    pub budget: u64,
    /// Assert that a child is infeasible exactly when its value is infinite.
    pub cross_check: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, cross_check: cfg!(debug_assertions) }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes_expanded: u64,
}

struct Entry {
    value: StateValue,
    best: Option<EdgeIdx>,
}

/// Backward induction over the game tree with a transposition table.
pub struct ExactSolver<'g> {
    g: &'g Graph,
    rules: RuleSet,
    opts: SolveOptions,
    memo: HashMap<StateKey, Entry>,
    expanded: u64,
    oracle: Option<Feasibility<'g>>,
}

/// Own cost first, then the opponent's (optimistic rule); callers scan edges in
/// ascending id, so keeping the first minimum resolves residual ties.
fn better(own: &Cost, other: &Cost, best: Option<(&Cost, &Cost)>) -> bool {
    match best {
        None => true,
        Some((bo, bt)) => match own.cmp(bo) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => other < bt,
        },
    }
}

impl<'g> ExactSolver<'g> {
    pub fn new(g: &'g Graph, rules: RuleSet, opts: SolveOptions) -> Self {
        let oracle = opts.cross_check.then(|| Feasibility::new(g, rules));
        ExactSolver { g, rules, opts, memo: HashMap::new(), expanded: 0, oracle }
    }

    pub fn stats(&self) -> SolveStats {
        SolveStats { nodes_expanded: self.expanded }
    }

    pub fn evaluate(&mut self, state: &GameState) -> Result<StateValue, SolveError> {
        Ok(self.entry(state)?.0)
    }

    /// Equilibrium move of the player to move, `None` if terminal or infeasible.
    pub fn best_move(&mut self, state: &GameState) -> Result<Option<Move>, SolveError> {
        Ok(self.entry(state)?.1.map(|edge| Move { edge }))
    }

    fn entry(&mut self, state: &GameState) -> Result<(StateValue, Option<EdgeIdx>), SolveError> {
        if state.is_terminal() {
            return Ok((StateValue::zero(), None));
        }
        let key = state.key(self.rules);
        if let Some(e) = self.memo.get(&key) {
            return Ok((e.value.clone(), e.best));
        }
        self.expanded += 1;
        if self.expanded > self.opts.budget {
            return Err(SolveError::BudgetExceeded(self.opts.budget));
        }
        let g = self.g;
        let mover = state.turn();
        let mut best: Option<(Cost, Cost, EdgeIdx)> = None;
        for &e in g.out_edges(state.pos(mover)) {
            if !state.permits(g, self.rules, e) {
                continue;
            }
            let child = state.advance(g, e);
            let v = self.evaluate(&child)?;
            if let Some(oracle) = self.oracle.as_mut() {
                assert_eq!(
                    oracle.feasible(&child),
                    !v.is_infeasible(),
                    "feasibility and value propagation disagree"
                );
            }
            let (Some(own), Some(other)) = (v.cost(mover), v.cost(mover.other())) else {
                continue;
            };
            let own = &g.edge(e).cost + own;
            if better(&own, other, best.as_ref().map(|(o, t, _)| (o, t))) {
                best = Some((own, other.clone(), e));
            }
        }
        let (value, choice) = match best {
            None => (StateValue::Infeasible, None),
            Some((own, other, e)) => {
                let v = match mover {
                    Player::A => StateValue::finite(own, other),
                    Player::B => StateValue::finite(other, own),
                };
                (v, Some(e))
            }
        };
        self.memo.insert(key, Entry { value: value.clone(), best: choice });
        Ok((value, choice))
    }

    /// Plays equilibrium moves from `state` to the end of the game.
    pub fn play_out(&mut self, state: &GameState) -> Result<GameState, SolveError> {
        let mut cur = state.clone();
        while !cur.is_terminal() {
            match self.best_move(&cur)? {
                Some(mv) => cur = cur.advance(self.g, mv.edge),
                None => return Err(SolveError::NoFeasiblePlay),
            }
        }
        Ok(cur)
    }

    pub fn equilibrium(&mut self) -> Result<Equilibrium, SolveError> {
        let end = self.play_out(&initial_state(self.g))?;
        Ok(Equilibrium::from_terminal(self.g, &end).expect("play_out ends terminal"))
    }
}

/// Equilibrium value of `state` with default options.
pub fn evaluate_state(state: &GameState, g: &Graph, rules: RuleSet) -> Result<StateValue, SolveError> {
    ExactSolver::new(g, rules, SolveOptions::default()).evaluate(state)
}

pub fn solve_exact(g: &Graph, rules: RuleSet) -> Result<Equilibrium, SolveError> {
    solve_exact_with(g, rules, SolveOptions::default()).map(|(e, _)| e)
}

pub fn solve_exact_with(
    g: &Graph,
    rules: RuleSet,
    opts: SolveOptions,
) -> Result<(Equilibrium, SolveStats), SolveError> {
    let mut solver = ExactSolver::new(g, rules, opts);
    let eq = solver.equilibrium()?;
    Ok((eq, solver.stats()))
}

struct CoopSearch<'g> {
    g: &'g Graph,
    rules: RuleSet,
    budget: u64,
    expanded: u64,
    memo: HashMap<StateKey, Option<(Cost, Cost, EdgeIdx)>>,
}

impl CoopSearch<'_> {
    /// Best (total, cost_a) of a completion and its first edge; `None` if infeasible.
    fn best(&mut self, state: &GameState) -> Result<Option<(Cost, Cost, Option<EdgeIdx>)>, SolveError> {
        if state.is_terminal() {
            return Ok(Some((Cost::zero(), Cost::zero(), None)));
        }
        let key = state.key(self.rules);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone().map(|(t, a, e)| (t, a, Some(e))));
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(SolveError::BudgetExceeded(self.budget));
        }
        let g = self.g;
        let mut best: Option<(Cost, Cost, EdgeIdx)> = None;
        for &e in g.out_edges(state.pos(state.turn())) {
            if !state.permits(g, self.rules, e) {
                continue;
            }
            let Some((total, ca, _)) = self.best(&state.advance(g, e))? else {
                continue;
            };
            let c = &g.edge(e).cost;
            let total = c + &total;
            let ca = if state.turn() == Player::A { c + &ca } else { ca };
            if better(&total, &ca, best.as_ref().map(|(t, a, _)| (t, a))) {
                best = Some((total, ca, e));
            }
        }
        self.memo.insert(key, best.clone());
        Ok(best.map(|(t, a, e)| (t, a, Some(e))))
    }
}

/// Minimum-total feasible play; ties by smaller `cost_a`, then lexicographically smallest edge ids.
pub fn cooperative_optimum(g: &Graph, rules: RuleSet) -> Result<Equilibrium, SolveError> {
    cooperative_optimum_with(g, rules, DEFAULT_BUDGET)
}

pub fn cooperative_optimum_with(g: &Graph, rules: RuleSet, budget: u64) -> Result<Equilibrium, SolveError> {
    let mut search = CoopSearch { g, rules, budget, expanded: 0, memo: HashMap::new() };
    let mut state = initial_state(g);
    while !state.is_terminal() {
        match search.best(&state)? {
            Some((_, _, Some(e))) => state = state.advance(g, e),
            _ => return Err(SolveError::NoFeasiblePlay),
        }
    }
    Ok(Equilibrium::from_terminal(g, &state).expect("loop ends terminal"))
}

/// Equilibrium total over cooperative total, exact; 0/0 counts as 1.
pub fn price_of_anarchy(g: &Graph, rules: RuleSet) -> Result<BigRational, SolveError> {
    let spe = solve_exact(g, rules)?;
    let coop = cooperative_optimum(g, rules)?;
    poa_ratio(&spe.total(), &coop.total())
}

pub fn poa_ratio(spe_total: &Cost, coop_total: &Cost) -> Result<BigRational, SolveError> {
    match spe_total.checked_div(coop_total) {
        Some(r) => Ok(r),
        None if spe_total.is_zero() => Ok(Cost::one().ratio().clone()),
        None => Err(SolveError::UnboundedPriceOfAnarchy),
    }
}
