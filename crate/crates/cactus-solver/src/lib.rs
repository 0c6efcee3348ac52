//! Polynomial solvers for structured instances: the quadratic dynamic program
//! for cacti under simple-path play and the linear tree solver.

mod config;
mod dp;
mod tree;

use graph_core::{is_cactus, Cost, Graph, GraphBuilder, RuleSet, StructureError};
use spe_solver::{solve_exact_with, Equilibrium, SolveError, SolveOptions};
use thiserror::Error;

use config::{exceptional_configs, Side};
use dp::{Dp, Pair};

pub use dp::CostTables;
pub use tree::{is_tree, solve_tree};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CactusError {
    #[error("not a cactus")]
    NotACactus,
    #[error("not a tree")]
    NotATree,
    #[error("no feasible play")]
    NoFeasiblePlay,
    #[error("dp/exact divergence: {0}")]
    DpExactDivergence(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("edge costs exceed the exact integer range of the dynamic program")]
    CostOverflow,
    #[error(transparent)]
    Exact(#[from] SolveError),
}

impl From<StructureError> for CactusError {
    fn from(_: StructureError) -> Self {
        CactusError::NotACactus
    }
}

#[derive(Clone, Debug, Default)]
pub struct CactusOptions {
    /// Solve both orientations and the exact game tree; fail on any mismatch.
    pub verify: bool,
    /// Node budget of the exact solver in verify mode (`None` for its default).
    pub exact_budget: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct CactusSolution {
    pub equilibrium: Equilibrium,
    pub tables: CostTables,
    pub swapped: bool,
}

/// True iff A can traverse some cycle along two arcs while B can step onto one
/// of its interior vertices; the instance is then solved with roles exchanged.
pub fn role_swap_needed(g: &Graph) -> bool {
    exceptional_configs(g).is_ok_and(|cs| cs.iter().any(|c| c.side == Side::A))
}

/// At most one exceptional cycle per player is supported.
fn checked_config(g: &Graph) -> Result<Vec<config::Exceptional>, CactusError> {
    if !is_cactus(g) {
        return Err(CactusError::NotACactus);
    }
    let found = exceptional_configs(g)?;
    for side in [Side::A, Side::B] {
        let ys: Vec<&str> = found.iter().filter(|c| c.side == side).map(|c| g.token(c.y)).collect();
        if ys.len() > 1 {
            return Err(CactusError::Unsupported(format!(
                "{} two-arc cycles of one player with opponent attachments at {}",
                ys.len(),
                ys.join(", ")
            )));
        }
    }
    Ok(found)
}

/// Whether any feasible play exists under R3, by the boolean version of the sweep.
pub fn cactus_feasible(g: &Graph) -> Result<bool, CactusError> {
    let exc = checked_config(g)?;
    if g.s() == g.t() {
        return Ok(true);
    }
    Ok(Dp::new(g, &exc)?.feasible())
}

fn solve_direct(g: &Graph) -> Result<(Equilibrium, CostTables), CactusError> {
    let exc = checked_config(g)?;
    let dp = Dp::new(g, &exc)?;
    let tab = dp.sweep::<Pair>();
    let eq = if g.s() == g.t() {
        dp::assemble(g, Vec::new(), Vec::new(), g.s())
    } else {
        dp.equilibrium(&tab)?
    };
    Ok((eq, dp.tables(tab)))
}

/// The instance with roles exchanged: B starts one zero-cost step earlier at a
/// fresh vertex, so it moves first while A keeps its original move timing.
///
/// The fresh token sorts last, so all original vertex and edge ids are kept.
pub fn swapped_instance(g: &Graph) -> Graph {
    let last = g.tokens().iter().max().cloned().unwrap_or_default();
    let fresh = format!("{last}'");
    let mut b = GraphBuilder::from_graph(g);
    b.edge(&fresh, g.token(g.t()), Cost::zero())
        .expect("fresh token is valid");
    b.start(&fresh, g.token(g.s())).expect("tokens are valid");
    let h = b.build().expect("start is set");
    debug_assert!(g.tokens().iter().enumerate().all(|(i, t)| h.token(i) == t));
    debug_assert_eq!(h.edge(g.m()).tail, g.n());
    h
}

fn solve_swapped(g: &Graph) -> Result<(Equilibrium, CostTables), CactusError> {
    let h = swapped_instance(g);
    let (eq, tables) = solve_direct(&h)?;
    let back = Equilibrium {
        cost_a: eq.cost_b,
        cost_b: eq.cost_a,
        path_a: eq.path_b,
        path_b: eq.path_a[1..].to_vec(),
        edges_a: eq.edges_b,
        edges_b: eq.edges_a[1..].to_vec(),
        meeting: eq.meeting,
    };
    Ok((back, tables.mark_swapped()))
}

pub fn solve_cactus_r3(g: &Graph) -> Result<Equilibrium, CactusError> {
    solve_cactus_r3_with(g, &CactusOptions::default()).map(|s| s.equilibrium)
}

pub fn solve_cactus_r3_with(g: &Graph, opts: &CactusOptions) -> Result<CactusSolution, CactusError> {
    let swapped = role_swap_needed(g) && g.s() != g.t();
    let main = if swapped { solve_swapped(g) } else { solve_direct(g) };
    if opts.verify {
        let other = if swapped { solve_direct(g) } else { solve_swapped(g) };
        let mut exact_opts = SolveOptions::default();
        if let Some(b) = opts.exact_budget {
            exact_opts.budget = b;
        }
        let exact = match solve_exact_with(g, RuleSet::R3, exact_opts) {
            Ok((eq, _)) => Ok(eq),
            Err(SolveError::NoFeasiblePlay) => Err(CactusError::NoFeasiblePlay),
            Err(e) => return Err(e.into()),
        };
        let mine = main.as_ref().map(|(eq, _)| eq);
        let describe = |r: Result<&Equilibrium, &CactusError>| match r {
            Ok(eq) => format!("({}, {}) meeting {}", eq.cost_a, eq.cost_b, g.token(eq.meeting)),
            Err(e) => e.to_string(),
        };
        let others = [
            ("other orientation", other.as_ref().map(|(eq, _)| eq)),
            ("exact", exact.as_ref()),
        ];
        for (name, theirs) in others {
            if theirs != mine {
                return Err(CactusError::DpExactDivergence(format!(
                    "{name} gives {}, dp gives {}",
                    describe(theirs),
                    describe(mine)
                )));
            }
        }
    }
    let (equilibrium, tables) = main?;
    Ok(CactusSolution { equilibrium, tables, swapped })
}
