//! Seeded random instance families, resampled until a feasible play exists.

use cactus_solver::cactus_feasible;
use game_engine::feasibility_precheck;
use graph_core::{Cost, Graph, GraphBuilder, RuleSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Gadget, GadgetError, GadgetKind, GadgetSpec};

pub const MAX_RESAMPLES: usize = 1000;

/// Up to this size feasibility is decided by exhaustive search, above it by the cactus sweep.
const EXHAUSTIVE_LIMIT: usize = 14;

type Edges = Vec<(usize, usize, Cost)>;

fn cost(rng: &mut ChaCha8Rng) -> Cost {
    Cost::new(rng.random_range(0..=12), rng.random_range(1..=2)).expect("positive denominator")
}

fn build(n_tokens: usize, edges: &Edges, s: usize, t: usize) -> Result<Graph, GadgetError> {
    let width = n_tokens.saturating_sub(1).to_string().len();
    let tok = |v: usize| format!("v{v:0width$}");
    let mut b = GraphBuilder::new();
    for (u, w, c) in edges {
        b.edge(&tok(*u), &tok(*w), c.clone())?;
    }
    b.start(&tok(s), &tok(t))?;
    Ok(b.build()?)
}

fn distinct_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let s = rng.random_range(0..n);
    let t = (s + rng.random_range(1..n)) % n;
    (s, t)
}

/// Cycle through `ring[0]` (the attachment) with a random orientation pattern:
/// directed either way, two arcs from the attachment, or arbitrary. Outward
/// cycles are always directed, so they never need the extra table layers.
fn orient_cycle(rng: &mut ChaCha8Rng, ring: &[usize], edges: &mut Edges, outward: bool) {
    let len = ring.len();
    let mode = if outward { 0 } else { rng.random_range(0..4) };
    let split = rng.random_range(1..len.max(2));
    let pattern: Vec<bool> = (0..len)
        .map(|i| match mode {
            0 => true,
            1 => false,
            2 => i < split,
            _ => rng.random_bool(0.5),
        })
        .collect();
    for (i, fwd) in pattern.into_iter().enumerate() {
        let (a, b) = (ring[i], ring[(i + 1) % len]);
        let c = cost(rng);
        edges.push(if fwd { (a, b, c) } else { (b, a, c) });
    }
}

/// Random cactus on vertices `offset..offset+n` hanging off `offset`.
fn grow_cactus(rng: &mut ChaCha8Rng, n: usize, offset: usize, outward: bool) -> Edges {
    let mut edges = Vec::new();
    let mut used = 1;
    while used < n {
        let base = offset + rng.random_range(0..used);
        let room = n - used;
        if room == 1 || rng.random_bool(0.5) {
            let fresh = offset + used;
            let fwd = if outward { rng.random_bool(0.9) } else { rng.random_bool(0.5) };
            let c = cost(rng);
            edges.push(if fwd { (base, fresh, c) } else { (fresh, base, c) });
            used += 1;
        } else {
            let len = rng.random_range(2..=room.min(5) + 1);
            let mut ring = vec![base];
            ring.extend(offset + used..offset + used + len - 1);
            used += len - 1;
            orient_cycle(rng, &ring, &mut edges, outward);
        }
    }
    edges
}

fn feasible(g: &Graph, rules: RuleSet) -> bool {
    if g.n() <= EXHAUSTIVE_LIMIT {
        feasibility_precheck(g, rules)
    } else {
        cactus_feasible(g).unwrap_or(false)
    }
}

fn resample(
    kind: GadgetKind,
    n: usize,
    seed: u64,
    mut attempt: impl FnMut(&mut ChaCha8Rng) -> Result<Graph, GadgetError>,
    accept: impl Fn(&Graph) -> bool,
) -> Result<Gadget, GadgetError> {
    if n < 2 {
        return Err(GadgetError::InvalidParameter("n must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for tries in 1..=MAX_RESAMPLES {
        let g = attempt(&mut rng)?;
        if accept(&g) {
            let spec = GadgetSpec::new(kind).param("n", n).param("seed", seed).derive("attempts", tries);
            return Ok(Gadget { spec, graph: g });
        }
    }
    Err(GadgetError::ResamplingBudget)
}

/// Random tree with random edge orientations.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Gadget, GadgetError> {
    resample(
        GadgetKind::RandomTree,
        n,
        seed,
        |rng| {
            let mut edges = Edges::new();
            for child in 1..n {
                let parent = rng.random_range(0..child);
                let c = cost(rng);
                edges.push(if rng.random_bool(0.5) { (parent, child, c) } else { (child, parent, c) });
            }
            let (s, t) = distinct_pair(rng, n);
            build(n, &edges, s, t)
        },
        |g| feasible(g, RuleSet::R3),
    )
}

/// Random cactus: bridges and cycles of length 2 to 6 attached at random
/// vertices, every orientation pattern allowed; feasible under simple-path play.
pub fn gen_random_cactus(n: usize, seed: u64) -> Result<Gadget, GadgetError> {
    resample(
        GadgetKind::RandomCactus,
        n,
        seed,
        |rng| {
            let edges = grow_cactus(rng, n, 0, false);
            let (s, t) = distinct_pair(rng, n);
            build(n, &edges, s, t)
        },
        |g| feasible(g, RuleSet::R3),
    )
}

/// Random DAG: a random vertex order with forward edges of density about 3/n.
pub fn gen_random_dag(n: usize, seed: u64) -> Result<Gadget, GadgetError> {
    resample(
        GadgetKind::RandomDag,
        n,
        seed,
        |rng| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let p = (3.0 / n as f64).min(0.8);
            let mut edges = Edges::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(p) {
                        let c = cost(rng);
                        edges.push((order[i], order[j], c));
                    }
                }
            }
            let (s, t) = distinct_pair(rng, n);
            build(n, &edges, s, t)
        },
        |g| feasibility_precheck(g, RuleSet::R2),
    )
}

/// Large cacti for timing the dynamic program: two mostly outward-oriented
/// cacti rooted at the two homebases, glued at one vertex, so both players
/// reach a linear share of the vertices.
pub fn gen_scaling_cactus(n: usize, seed: u64) -> Result<Gadget, GadgetError> {
    if n < 4 {
        return Err(GadgetError::InvalidParameter("n must be at least 4".into()));
    }
    resample(
        GadgetKind::ScalingCactus,
        n,
        seed,
        |rng| {
            let na = n / 2;
            let nb = n - na + 1;
            let mut edges = grow_cactus(rng, na, 0, true);
            let glue_a = rng.random_range(1..na);
            let glue_b = na + rng.random_range(1..nb);
            for (u, w, c) in grow_cactus(rng, nb, na, true) {
                let fix = |v: usize| match v {
                    v if v == glue_b => glue_a,
                    v if v > glue_b => v - 1,
                    v => v,
                };
                edges.push((fix(u), fix(w), c));
            }
            build(n, &edges, 0, na)
        },
        |g| cactus_feasible(g).unwrap_or(false),
    )
}
