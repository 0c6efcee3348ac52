//! Cactus instance encoding a 3-partition question.

use graph_core::{Cost, GraphBuilder};

use crate::{Gadget, GadgetError, GadgetKind, GadgetSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionConstants {
    /// Number of triples.
    pub n: u64,
    pub k_tilde: u64,
    pub m: u64,
    pub k: u64,
    /// Cycle lengths `M + 2 c~_i` at `a4`.
    pub c: Vec<u64>,
    /// `3M/4`
    pub quarter: u64,
    /// Number of 2-cycles at `b5`, `ceil(M/4 + 5/2 max c~_i)`.
    pub padding: u64,
}

pub fn partition_constants(items: &[u64]) -> Result<PartitionConstants, GadgetError> {
    if items.is_empty() || !items.len().is_multiple_of(3) {
        return Err(GadgetError::ItemCount);
    }
    if items.contains(&0) {
        return Err(GadgetError::InvalidParameter("items must be positive".into()));
    }
    let n = items.len() as u64 / 3;
    let sum: u64 = items.iter().sum();
    if !sum.is_multiple_of(n) {
        return Err(GadgetError::SumNotDivisible);
    }
    let k_tilde = sum / n;
    let m = 2 * n * k_tilde;
    if !m.is_multiple_of(4) {
        return Err(GadgetError::NonIntegralCycle);
    }
    let max = *items.iter().max().expect("nonempty");
    Ok(PartitionConstants {
        n,
        k_tilde,
        m,
        k: 3 * m + 2 * k_tilde,
        c: items.iter().map(|c| m + 2 * c).collect(),
        quarter: 3 * m / 4,
        padding: (m + 10 * max).div_ceil(4),
    })
}

#[derive(Clone, Debug)]
pub struct PartitionOptions {
    /// Edges from `a1` to `a4`; the first two steps reach `a2` and `a3`.
    pub a_spine: usize,
    /// Edges from `b1` to `b4`; the first two steps reach `b2` and `b3`.
    pub b_spine: usize,
    /// Overrides the number of 2-cycles at `b5`.
    pub padding: Option<u64>,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        // A one step longer than B: A sits on a4 exactly when B is to move on b4.
        PartitionOptions { a_spine: 4, b_spine: 3, padding: None }
    }
}

struct Emitter {
    b: GraphBuilder,
}

impl Emitter {
    /// Path of `len` edges with fresh interior vertices `{tag}.1`, ...; only the first edge carries `first`.
    fn path(&mut self, from: &str, to: &str, len: u64, tag: &str, first: u64) -> Result<(), GadgetError> {
        assert!(len >= 1);
        let mut prev = from.to_string();
        for i in 1..=len {
            let next = if i == len { to.to_string() } else { format!("{tag}.{i}") };
            let c = if i == 1 { first } else { 0 };
            self.b.edge(&prev, &next, Cost::from_int(c))?;
            prev = next;
        }
        Ok(())
    }

    fn cycle(&mut self, at: &str, len: u64, tag: &str, first: u64) -> Result<(), GadgetError> {
        self.path(at, at, len, tag, first)
    }
}

/// All costs are 0 except the escape edge leaving `a4` and the first edge of
/// B's direct route from `b1` (cost 1 each) and the first edge of the long
/// cycle at `b4` (cost 2).
pub fn gen_3partition_cactus(items: &[u64], opts: &PartitionOptions) -> Result<Gadget, GadgetError> {
    let pc = partition_constants(items)?;
    if opts.a_spine < 3 || opts.b_spine < 3 {
        return Err(GadgetError::InvalidParameter("spines need at least 3 edges".into()));
    }
    let padding = opts.padding.unwrap_or(pc.padding);
    let mut em = Emitter { b: GraphBuilder::new() };
    em.path("a1", "a2", 1, "a12", 0)?;
    em.path("a2", "a3", 1, "a23", 0)?;
    em.path("a3", "a4", opts.a_spine as u64 - 2, "a34", 0)?;
    em.path("a2", "t", 2, "a2t", 0)?;
    em.path("a4", "t", 6, "a4t", 1)?;
    for (i, &c) in pc.c.iter().enumerate() {
        em.cycle("a4", c, &format!("c{}", i + 1), 0)?;
    }
    for r in 1..=2 {
        em.cycle("a4", pc.quarter, &format!("qa{r}"), 0)?;
        em.cycle("b4", pc.quarter, &format!("qb{r}"), 0)?;
    }
    em.path("b1", "t", 3, "b1t", 1)?;
    em.path("b1", "b2", 1, "b12", 0)?;
    em.path("b2", "b3", 1, "b23", 0)?;
    em.path("b3", "b4", opts.b_spine as u64 - 2, "b34", 0)?;
    em.path("b2", "t", 4, "b2t", 0)?;
    for r in 1..pc.n {
        em.cycle("b4", pc.k, &format!("kb{r}"), 0)?;
    }
    em.cycle("b4", 3 * pc.m - 2, "long", 2)?;
    em.path("b4", "b5", 1, "b45", 0)?;
    em.path("b5", "b3", 2, "b53", 0)?;
    em.path("b3", "b2", 1, "b32", 0)?;
    for r in 1..=padding {
        em.cycle("b5", 2, &format!("pad{r}"), 0)?;
    }
    em.b.start("a1", "b1")?;
    let graph = em.b.build()?;
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let spec = GadgetSpec::new(GadgetKind::ThreePartition)
        .param("items", list(items))
        .param("a-spine", opts.a_spine)
        .param("b-spine", opts.b_spine)
        .derive("M", pc.m)
        .derive("K", pc.k)
        .derive("Ktilde", pc.k_tilde)
        .derive("n", pc.n)
        .derive("c", list(&pc.c))
        .derive("padding", padding);
    Ok(Gadget { spec, graph })
}
