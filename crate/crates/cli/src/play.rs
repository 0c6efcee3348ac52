use std::collections::VecDeque;
use std::io::{BufRead, Write};

use game_engine::{feasibility_precheck, initial_state, legal_moves, GameState, Move, Player};
use graph_core::Graph;
use spe_solver::{Equilibrium, ExactSolver, SolveOptions, DEFAULT_BUDGET};

use crate::args::{PlayArgs, Side};
use crate::{load, rules_for, CmdResult, Failure};

fn describe(g: &Graph, e: usize) -> String {
    let ed = g.edge(e);
    format!("{}->{} ({})", g.token(ed.tail), g.token(ed.head), ed.cost)
}

/// Matches a move index or `u->v` / `u→v` against the listed legal moves.
fn pick(g: &Graph, legal: &[Move], input: &str) -> Option<Move> {
    let input = input.trim();
    if let Ok(i) = input.parse::<usize>() {
        return legal.get(i).copied();
    }
    let (u, v) = input.split_once("->").or_else(|| input.split_once('→'))?;
    let (u, v) = (u.trim(), v.trim());
    legal.iter().copied().find(|mv| {
        let ed = g.edge(mv.edge);
        g.token(ed.tail) == u && g.token(ed.head) == v
    })
}

struct Input<'r, R: BufRead> {
    script: VecDeque<String>,
    reader: &'r mut R,
}

impl<R: BufRead> Input<'_, R> {
    /// Next scripted token, then lines from the reader; `None` on end of input.
    fn next(&mut self, out: &mut impl Write) -> Result<Option<String>, Failure> {
        if let Some(tok) = self.script.pop_front() {
            writeln!(out, "> {tok}")?;
            return Ok(Some(tok));
        }
        write!(out, "> ")?;
        out.flush()?;
        let mut line = String::new();
        if self.reader.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(None);
        }
        Ok(Some(line.trim().to_string()))
    }
}

fn human_move<R: BufRead>(
    g: &Graph,
    state: &GameState,
    legal: &[Move],
    solver: &mut ExactSolver,
    input: &mut Input<R>,
    out: &mut impl Write,
) -> Result<Move, Failure> {
    for (i, mv) in legal.iter().enumerate() {
        let value = solver.evaluate(&state.advance(g, mv.edge))?;
        writeln!(out, "  [{i}] {}  value {value}", describe(g, mv.edge))?;
    }
    loop {
        let Some(tok) = input.next(out)? else {
            return Err(Failure::Aborted);
        };
        match pick(g, legal, &tok) {
            Some(mv) => return Ok(mv),
            None => writeln!(out, "illegal move index")?,
        }
    }
}

pub fn cmd_play<R: BufRead>(a: &PlayArgs, reader: &mut R, out: &mut impl Write) -> CmdResult {
    let g = load(&a.input)?;
    let rules = rules_for(&g, a.rules);
    if !feasibility_precheck(&g, rules) {
        return Err(Failure::Infeasible);
    }
    let human = match a.side {
        Side::A => Player::A,
        Side::B => Player::B,
    };
    let script = a
        .moves
        .as_deref()
        .map(|m| m.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
        .unwrap_or_default();
    let mut input = Input { script, reader };
    let opts = SolveOptions { budget: a.budget.unwrap_or(DEFAULT_BUDGET), ..SolveOptions::default() };
    let mut solver = ExactSolver::new(&g, rules, opts);
    let mut state = initial_state(&g);
    while !state.is_terminal() {
        let turn = state.turn();
        writeln!(
            out,
            "A at {}, B at {}; {} to move",
            g.token(state.pos_a()),
            g.token(state.pos_b()),
            turn.label()
        )?;
        let mv = if turn == human {
            let legal = legal_moves(&state, &g, rules).map_err(|e| Failure::Usage(e.to_string()))?;
            human_move(&g, &state, &legal, &mut solver, &mut input, out)?
        } else {
            solver.best_move(&state)?.ok_or(Failure::Infeasible)?
        };
        writeln!(out, "{} plays {}", turn.label(), describe(&g, mv.edge))?;
        state = state.advance(&g, mv.edge);
    }
    let eq = Equilibrium::from_terminal(&g, &state).expect("terminal state");
    out.write_all(eq.render(&g).as_bytes())?;
    Ok(())
}
