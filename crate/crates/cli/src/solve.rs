use std::io::Write;

use cactus_solver::{is_tree, solve_cactus_r3_with, solve_tree, CactusError, CactusOptions};
use graph_core::{is_cactus, Cost, Graph, RuleSet};
use serde::Serialize;
use spe_solver::{
    cooperative_optimum_with, poa_ratio, solve_exact_with, Equilibrium, SolveOptions, DEFAULT_BUDGET,
};

use crate::args::{Engine, PoaArgs, SolveArgs};
use crate::{load, parse_cost, rules_for, CmdResult, Failure};

/// Machine-readable result; field order is part of the format.
#[derive(Serialize)]
struct Report {
    cost_a: String,
    cost_b: String,
    path_a: Vec<String>,
    path_b: Vec<String>,
    meeting: String,
    nodes_expanded: Option<u64>,
    engine: &'static str,
    rules: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    within_bounds: Option<bool>,
}

fn ratio(c: &Cost) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl From<CactusError> for Failure {
    fn from(e: CactusError) -> Self {
        match e {
            CactusError::NoFeasiblePlay => Failure::Infeasible,
            CactusError::Exact(e) => e.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn pick_engine(g: &Graph, rules: RuleSet, requested: Engine) -> Result<Engine, Failure> {
    match requested {
        Engine::Auto if is_tree(g) => Ok(Engine::Tree),
        Engine::Auto if rules.simple_paths && is_cactus(g) => Ok(Engine::Cactus),
        Engine::Auto => Ok(Engine::Exact),
        Engine::Tree if !is_tree(g) => Err(Failure::Usage("not a tree".into())),
        Engine::Cactus if !rules.simple_paths => {
            Err(Failure::Usage("the cactus engine solves simple-path play; use --rules r3".into()))
        }
        Engine::Cactus if !is_cactus(g) => Err(Failure::Usage("not a cactus".into())),
        e => Ok(e),
    }
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Auto => "auto",
        Engine::Exact => "exact",
        Engine::Cactus => "cactus",
        Engine::Tree => "tree",
    }
}

pub fn cmd_solve(a: &SolveArgs, out: &mut impl Write) -> CmdResult {
    let g = load(&a.input)?;
    let rules = rules_for(&g, a.rules);
    let bounds = match &a.check_bounds {
        Some(v) => Some((parse_cost(&v[0], "CA")?, parse_cost(&v[1], "CB")?)),
        None => None,
    };
    let mut engine = pick_engine(&g, rules, a.engine)?;
    if a.dump_tables && engine != Engine::Cactus {
        return Err(Failure::Usage("--dump-tables needs the cactus engine".into()));
    }
    let opts = SolveOptions { budget: a.budget.unwrap_or(DEFAULT_BUDGET), ..SolveOptions::default() };
    let mut nodes = None;
    let mut tables = None;
    let eq: Equilibrium = match engine {
        Engine::Tree => solve_tree(&g)?,
        Engine::Cactus => match solve_cactus_r3_with(&g, &CactusOptions::default()) {
            Ok(sol) => {
                tables = Some(sol.tables);
                sol.equilibrium
            }
            Err(e @ (CactusError::Unsupported(_) | CactusError::CostOverflow))
                if a.engine == Engine::Auto && !a.dump_tables =>
            {
                eprintln!("note: {e}; falling back to the exact solver");
                engine = Engine::Exact;
                let (eq, stats) = solve_exact_with(&g, rules, opts)?;
                nodes = Some(stats.nodes_expanded);
                eq
            }
            Err(e) => return Err(e.into()),
        },
        _ => {
            let (eq, stats) = solve_exact_with(&g, rules, opts)?;
            nodes = Some(stats.nodes_expanded);
            eq
        }
    };
    let within = bounds.map(|(ca, cb)| eq.cost_a <= ca && eq.cost_b <= cb);
    if a.json {
        let report = Report {
            cost_a: ratio(&eq.cost_a),
            cost_b: ratio(&eq.cost_b),
            path_a: g.path_tokens(&eq.path_a),
            path_b: g.path_tokens(&eq.path_b),
            meeting: g.token(eq.meeting).to_string(),
            nodes_expanded: nodes,
            engine: engine_name(engine),
            rules: rules.name(),
            within_bounds: within,
        };
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        out.write_all(eq.render(&g).as_bytes())?;
        if let Some(w) = within {
            writeln!(out, "{}", if w { "yes" } else { "no" })?;
        }
    }
    if let (true, Some(t)) = (a.dump_tables, tables) {
        out.write_all(t.dump().as_bytes())?;
    }
    Ok(())
}

pub fn cmd_poa(a: &PoaArgs, out: &mut impl Write) -> CmdResult {
    let g = load(&a.input)?;
    let rules = rules_for(&g, a.rules);
    let budget = a.budget.unwrap_or(DEFAULT_BUDGET);
    let (spe, _) = solve_exact_with(&g, rules, SolveOptions { budget, ..SolveOptions::default() })?;
    let coop = cooperative_optimum_with(&g, rules, budget)?;
    let r = poa_ratio(&spe.total(), &coop.total())?;
    writeln!(out, "spe total {}", spe.total())?;
    writeln!(out, "cooperative total {}", coop.total())?;
    writeln!(out, "poa {r}")?;
    Ok(())
}
