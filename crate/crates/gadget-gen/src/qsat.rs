//! Bipartite instance encoding a normalized quantified formula.

use graph_core::{Cost, GraphBuilder};

use crate::{Formula, Gadget, GadgetError, GadgetKind, GadgetSpec};

/// Cost of the cheap edges for `n` variables; strictly below `1/(2n+6)`.
pub fn qsat_epsilon(n: usize) -> Cost {
    Cost::new(1, 2 * n as i64 + 7).expect("positive denominator")
}

fn v(i: usize, k: usize) -> String {
    format!("v{i}_{k}")
}

/// Variable `x_i` (1-based, odd for player A) becomes a hexagon: the literal
/// `x_i` is the path `v_i0 v_i1 v_i2 v_i3`, its negation `v_i0 v_i5 v_i4 v_i3`.
/// A walks the odd hexagons to `y` and `dA`, B the even ones to `dB`; both then
/// pick a clause.
///
/// With `simple_path_variant` the `w_j`/`z_j` pair is replaced by a pair of
/// unit-cost arcs between `qA_j` and `qB_j`, which is the form meant for
/// simple-path play.
pub fn gen_qsat_bipartite(f: &Formula, simple_path_variant: bool) -> Result<Gadget, GadgetError> {
    if !f.is_normalized() || f.var_count() == 0 {
        return Err(GadgetError::NotNormalized);
    }
    let n = f.var_count();
    let eps = qsat_epsilon(n);
    let mut b = GraphBuilder::new();
    let e = |b: &mut GraphBuilder, u: &str, w: &str, c: &Cost| -> Result<(), GadgetError> {
        b.edge(u, w, c.clone())?;
        Ok(())
    };
    for i in 1..=n {
        for (x, y) in [(0, 1), (1, 2), (2, 3), (0, 5), (5, 4), (4, 3)] {
            e(&mut b, &v(i, x), &v(i, y), &eps)?;
        }
        if i + 2 <= n {
            e(&mut b, &v(i, 3), &v(i + 2, 0), &eps)?;
        }
    }
    e(&mut b, &v(n - 1, 3), "y", &eps)?;
    e(&mut b, "y", "dA", &eps)?;
    e(&mut b, &v(n, 3), "dB", &eps)?;
    let one = Cost::one();
    let back = Cost::new(21, 10).expect("constant");
    for (j, clause) in f.clauses.iter().enumerate() {
        let j = j + 1;
        let (ca, cb, qa, qb) = (format!("CA{j}"), format!("CB{j}"), format!("qA{j}"), format!("qB{j}"));
        e(&mut b, "dA", &ca, &eps)?;
        e(&mut b, &ca, &qa, &eps)?;
        e(&mut b, "dB", &cb, &eps)?;
        e(&mut b, &cb, &qb, &eps)?;
        if simple_path_variant {
            e(&mut b, &qa, &qb, &one)?;
            e(&mut b, &qb, &qa, &one)?;
        } else {
            let (w, z) = (format!("w{j}"), format!("z{j}"));
            e(&mut b, &qa, &w, &eps)?;
            e(&mut b, &w, &z, &one)?;
            e(&mut b, &z, &w, &one)?;
            e(&mut b, &z, &qb, &back)?;
            e(&mut b, &qb, &z, &eps)?;
        }
        let mut lits = clause.clone();
        lits.sort_by_key(|l| (l.var, l.negated));
        lits.dedup();
        for l in lits {
            let i = l.var + 1;
            if i % 2 == 1 {
                // A may cross the middle of the hexagon of the literal's complement
                let (enter, leave) = if l.negated { (1, 2) } else { (5, 4) };
                e(&mut b, &ca, &v(i, enter), &eps)?;
                e(&mut b, &v(i, leave), &qa, &eps)?;
            } else {
                let enter = if l.negated { 5 } else { 1 };
                e(&mut b, &qb, &v(i, enter), &eps)?;
            }
        }
    }
    b.start(&v(1, 0), &v(2, 0))?;
    let graph = b.build()?;
    let kind = if simple_path_variant { GadgetKind::QsatSimple } else { GadgetKind::Qsat };
    let spec = GadgetSpec::new(kind)
        .param("formula", f)
        .derive("n", n)
        .derive("m", f.clauses.len())
        .derive("eps", eps);
    Ok(Gadget { spec, graph })
}
