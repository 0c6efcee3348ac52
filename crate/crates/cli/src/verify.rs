use std::io::Write;

use cactus_solver::{solve_cactus_r3, solve_tree, CactusError};
use gadget_gen::{
    gen_3partition_cactus, gen_example, gen_qsat_bipartite, gen_random_cactus, gen_random_tree, gen_vertex_cover_dag,
    partition_constants, qsat_epsilon, Formula, Gadget, PartitionOptions, SourceGraph,
};
use graph_core::{is_bipartite, is_cactus, is_dag, Cost, Graph, RuleSet};
use spe_solver::{price_of_anarchy, solve_exact, Equilibrium, SolveError};

use crate::args::{Suite, VerifyArgs};
use crate::{CmdResult, Failure};

struct Checks<'o, W: Write> {
    out: &'o mut W,
    failed: usize,
}

impl<W: Write> Checks<'_, W> {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) -> CmdResult {
        if ok {
            writeln!(self.out, "PASS {name}")?;
        } else {
            self.failed += 1;
            writeln!(self.out, "FAIL {name}: {}", detail())?;
        }
        Ok(())
    }

    fn finish(self) -> CmdResult {
        match self.failed {
            0 => Ok(()),
            n => Err(Failure::Verification(format!("{n} check(s) failed"))),
        }
    }
}

type Outcome = Result<(Cost, Cost, Vec<String>, Vec<String>, String), String>;

fn outcome(g: &Graph, r: Result<Equilibrium, String>) -> Outcome {
    r.map(|eq| {
        (
            eq.cost_a.clone(),
            eq.cost_b.clone(),
            g.path_tokens(&eq.path_a),
            g.path_tokens(&eq.path_b),
            g.token(eq.meeting).to_string(),
        )
    })
}

fn exact(g: &Graph, rules: RuleSet) -> Outcome {
    outcome(g, solve_exact(g, rules).map_err(|e| e.to_string()))
}

fn fast(g: &Graph, r: Result<Equilibrium, CactusError>) -> Outcome {
    outcome(
        g,
        r.map_err(|e| match e {
            CactusError::NoFeasiblePlay => SolveError::NoFeasiblePlay.to_string(),
            e => e.to_string(),
        }),
    )
}

/// Sizes cycle through `2..=max` so every size is covered.
fn size(trial: usize, max: usize) -> usize {
    2 + trial % (max.max(2) - 1)
}

fn oracle_suite(
    a: &VerifyArgs,
    out: &mut impl Write,
    name: &str,
    generate: fn(usize, u64) -> Result<Gadget, gadget_gen::GadgetError>,
    compare: impl Fn(&Graph) -> Vec<(Outcome, Outcome)>,
) -> CmdResult {
    for trial in 0..a.trials {
        let seed = a.seed.wrapping_add(trial as u64);
        let gadget = generate(size(trial, a.n), seed)?;
        for (mine, oracle) in compare(&gadget.graph) {
            if mine != oracle {
                writeln!(out, "FAIL {name} trial {trial}: dp/exact divergence: {mine:?} vs exact {oracle:?}")?;
                out.write_all(gadget.to_text().as_bytes())?;
                return Err(Failure::Verification("dp/exact divergence".into()));
            }
        }
    }
    writeln!(out, "PASS {name}: {} instances", a.trials)?;
    Ok(())
}

fn examples(out: &mut impl Write) -> CmdResult {
    let mut c = Checks { out, failed: 0 };
    let int = Cost::from_int;
    let g = gen_example(1, None)?.graph;
    let got = exact(&g, RuleSet::R2);
    let want: Outcome = Ok((int(4), int(5), vec!["s".into(), "d".into(), "b".into(), "e".into()], vec![
        "t".into(),
        "c".into(),
        "e".into(),
    ], "e".into()));
    c.check("example 1", got == want, || format!("{got:?}"))?;
    for m in [3, 10, 1000] {
        let g = gen_example(2, Some(&int(m)))?.graph;
        let eq = solve_exact(&g, RuleSet::R2)?;
        let poa = price_of_anarchy(&g, RuleSet::R2)?;
        let want_poa = Cost::new(m as i64 + 1, 3).expect("nonzero").ratio().clone();
        let ok = (eq.cost_a.clone(), eq.cost_b.clone()) == (int(1), int(m))
            && g.token(eq.meeting) == "v2"
            && poa == want_poa;
        c.check(&format!("example 2 M={m}"), ok, || format!("({}, {}) poa {poa}", eq.cost_a, eq.cost_b))?;
    }
    for m in [5, 50] {
        let g = gen_example(3, Some(&int(m)))?.graph;
        for rules in [RuleSet::R2, RuleSet::R3] {
            let eq = solve_exact(&g, rules)?;
            let ok = (eq.cost_a.clone(), eq.cost_b.clone()) == (int(2 * m + 2), int(4));
            c.check(&format!("example 3 M={m} {}", rules.name()), ok, || {
                format!("({}, {})", eq.cost_a, eq.cost_b)
            })?;
        }
    }
    c.finish()
}

const TRUE_FORMULA: &str = "E x1 A x2 : (x1 | x2) & (x1 | ~x2)";
const FALSE_FORMULA: &str = "E x1 A x2 : (x1 | x2) & (~x1 | x2)";

fn gadgets(out: &mut impl Write) -> CmdResult {
    let mut c = Checks { out, failed: 0 };
    let one = Cost::one();
    for text in [TRUE_FORMULA, FALSE_FORMULA, "E x1 A x2 E x3 A x4 : (x1 | ~x2 | x3) & (~x3 | x4)"] {
        let f = Formula::parse(text)?;
        let bound = Cost::new(1, 2 * f.var_count() as i64 + 6).expect("nonzero");
        for simple in [false, true] {
            let g = gen_qsat_bipartite(&f, simple)?;
            let ok = is_bipartite(&g.graph) && qsat_epsilon(f.var_count()) < bound;
            c.check(&format!("qsat structure simple={simple} [{f}]"), ok, String::new)?;
        }
    }
    for (n, edges) in [(3, vec![(1, 2), (1, 3), (2, 3)]), (8, vec![(1, 2), (3, 4), (5, 6), (7, 8)]), (4, vec![(2, 3), (3, 4), (1, 4)])] {
        let h = SourceGraph::new(n, edges)?;
        let (k, m) = (3, h.edges.len());
        let plain = gen_vertex_cover_dag(&h, k, false)?.graph;
        let split = gen_vertex_cover_dag(&h, k, true)?.graph;
        let ok = is_dag(&plain)
            && plain.n() == 6 + (k + 1) + n + 17 * m
            && plain.m() == 5 + k + 2 * n + n * (n - 1) / 2 + 21 * m
            && is_bipartite(&split)
            && split.m() == 2 * plain.m()
            && total(&split) == total(&plain);
        c.check(&format!("vertex-cover structure n={n} m={m}"), ok, || {
            format!("|V|={} |E|={}", plain.n(), plain.m())
        })?;
    }
    for items in [vec![1, 1, 2, 1, 1, 2], vec![2, 2, 2, 1, 3, 2, 3, 2, 1, 2, 2, 2]] {
        let pc = partition_constants(&items)?;
        let g = gen_3partition_cactus(&items, &PartitionOptions::default())?.graph;
        let count = |v: u64| g.edges().iter().filter(|e| e.cost == Cost::from_int(v)).count();
        let ok = is_cactus(&g)
            && count(2) == 1
            && count(1) == 2
            && count(0) == g.m() - 3
            && pc.m == 2 * pc.n * pc.k_tilde
            && pc.k == 3 * pc.m + 2 * pc.k_tilde;
        c.check(&format!("3-partition structure {items:?}"), ok, String::new)?;
    }

    let k3 = SourceGraph::new(3, vec![(1, 2), (1, 3), (2, 3)])?;
    let g = gen_vertex_cover_dag(&k3, 3, false)?.graph;
    let eps = Cost::new(1, g.m() as i64).expect("nonzero");
    let eq = solve_exact(&g, RuleSet::R2)?;
    c.check("vertex-cover K3 k=3", eq.cost_a == &Cost::from_int(9) * &eps, || format!("c(A) = {}", eq.cost_a))?;
    let four = SourceGraph::new(8, vec![(1, 2), (3, 4), (5, 6), (7, 8)])?;
    let g = gen_vertex_cover_dag(&four, 3, false)?.graph;
    let eq = solve_exact(&g, RuleSet::R2)?;
    c.check("vertex-cover 4 disjoint edges k=3", eq.cost_a > one, || format!("c(A) = {}", eq.cost_a))?;

    for (simple, rules) in [(false, RuleSet::R2), (true, RuleSet::R3)] {
        for text in [TRUE_FORMULA, FALSE_FORMULA] {
            let f = Formula::parse(text)?;
            let g = gen_qsat_bipartite(&f, simple)?.graph;
            let eq = solve_exact(&g, rules)?;
            let ok = if f.evaluate() { eq.cost_a < one } else { eq.cost_a > one };
            c.check(&format!("qsat behavior simple={simple} [{f}] {}", f.evaluate()), ok, || {
                format!("c(A) = {}", eq.cost_a)
            })?;
        }
    }
    c.finish()
}

fn total(g: &Graph) -> Cost {
    g.edges().iter().map(|e| &e.cost).sum()
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> CmdResult {
    match a.suite {
        Suite::DpVsExact => oracle_suite(a, out, "dp-vs-exact", gen_random_cactus, |g| {
            vec![(fast(g, solve_cactus_r3(g)), exact(g, RuleSet::R3))]
        }),
        Suite::TreeVsExact => oracle_suite(a, out, "tree-vs-exact", gen_random_tree, |g| {
            let tree = fast(g, solve_tree(g));
            vec![(tree.clone(), exact(g, RuleSet::R2)), (tree, exact(g, RuleSet::R3))]
        }),
        Suite::Gadgets => gadgets(out),
        Suite::Examples => examples(out),
    }
}
