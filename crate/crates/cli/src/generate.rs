use std::io::Write;

use gadget_gen::{
    gen_3partition_cactus, gen_example, gen_qsat_bipartite, gen_random_cactus, gen_random_dag, gen_random_tree,
    gen_scaling_cactus, gen_vertex_cover_dag_with, parse_edge_list, qsat_normalize, Formula, Gadget,
    PartitionOptions, SourceGraph, VcOptions,
};
use graph_core::export_dot;

use crate::args::{GenerateArgs, GenerateKind};
use crate::{parse_cost, CmdResult, Failure};

fn parse_items(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad item `{s}`"))))
        .collect()
}

fn build(kind: &GenerateKind) -> Result<Gadget, Failure> {
    let gadget = match kind {
        GenerateKind::Example { which, m } => {
            let m = m.as_deref().map(|m| parse_cost(m, "--m")).transpose()?;
            gen_example(*which, m.as_ref())?
        }
        GenerateKind::ThreePart { items, a_spine, b_spine, padding } => {
            let opts = PartitionOptions { a_spine: *a_spine, b_spine: *b_spine, padding: *padding };
            gen_3partition_cactus(&parse_items(items)?, &opts)?
        }
        GenerateKind::Qsat { formula, simple, normalize } => {
            let mut f = Formula::parse(formula)?;
            if *normalize {
                f = qsat_normalize(&f)?;
            }
            gen_qsat_bipartite(&f, *simple)?
        }
        GenerateKind::Vc { edges, n, k, split, dead_end_cost } => {
            let edges = parse_edge_list(edges)?;
            let largest = edges.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
            let h = SourceGraph::new(n.unwrap_or(largest), edges)?;
            let opts = VcOptions {
                bipartite_split: *split,
                dead_end_cost: parse_cost(dead_end_cost, "--dead-end-cost")?,
            };
            gen_vertex_cover_dag_with(&h, *k, &opts)?
        }
        GenerateKind::RandomCactus(s) => gen_random_cactus(s.n, s.seed)?,
        GenerateKind::RandomTree(s) => gen_random_tree(s.n, s.seed)?,
        GenerateKind::RandomDag(s) => gen_random_dag(s.n, s.seed)?,
        GenerateKind::Scaling(s) => gen_scaling_cactus(s.n, s.seed)?,
    };
    Ok(gadget)
}

pub fn cmd_generate(a: &GenerateArgs, out: &mut impl Write) -> CmdResult {
    let gadget = build(&a.kind)?;
    let text = gadget.to_text();
    match &a.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    if let Some(path) = &a.dot {
        std::fs::write(path, export_dot(&gadget.graph))
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if !gadget.spec.derived.is_empty() {
        let line: Vec<String> = gadget.spec.derived.iter().map(|(k, v)| format!("{k}={v}")).collect();
        eprintln!("{}", line.join(" "));
    }
    Ok(())
}
