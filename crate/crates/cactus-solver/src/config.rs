//! The exceptional cycle: one player can traverse it along two arcs while the
//! opponent can step onto an interior vertex of it.
//!
//! Everywhere else a player's visited set, as far as the opponent can ever
//! observe it, is the must-visit set of its current position. On such a cycle
//! it additionally matters whether the player went through the opponent's
//! attachment vertex `y`, which the DP tracks with one flag bit.

use graph_core::{
    attachment_vertex, cactus_cycles, reachable_from, undirected_distances, EdgeSet, Graph,
    StructureError, VertexIdx,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Exceptional {
    /// The player that traverses the cycle along two arcs.
    pub side: Side,
    pub entry: VertexIdx,
    pub sink: VertexIdx,
    /// Interior vertex where the opponent's part of the graph attaches.
    pub y: VertexIdx,
}

pub(crate) fn exceptional_configs(g: &Graph) -> Result<Vec<Exceptional>, StructureError> {
    let all = EdgeSet::all(g);
    let reach_a = reachable_from(g, g.s(), &all);
    let reach_b = reachable_from(g, g.t(), &all);
    let dist_s = undirected_distances(g, g.s());
    let dist_t = undirected_distances(g, g.t());
    let mut found = Vec::new();
    for c in cactus_cycles(g)? {
        let k = c.len();
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        for i in 0..k {
            let v = c.vertices[i];
            let out = [c.edges[i], c.edges[(i + k - 1) % k]]
                .iter()
                .filter(|&&e| g.edge(e).tail == v)
                .count();
            match out {
                2 => sources.push(v),
                0 => sinks.push(v),
                _ => {}
            }
        }
        if sources.len() != 1 || sinks.len() != 1 {
            continue;
        }
        let (source, sink) = (sources[0], sinks[0]);
        let sides = [
            (Side::A, &dist_s, &dist_t, &reach_a, &reach_b, g.t()),
            (Side::B, &dist_t, &dist_s, &reach_b, &reach_a, g.s()),
        ];
        for (side, own_dist, other_dist, own_reach, other_reach, other_home) in sides {
            let Some(entry) = attachment_vertex(&c, own_dist) else { continue };
            let Some(y) = attachment_vertex(&c, other_dist) else { continue };
            if entry == source
                && own_reach[entry]
                && y != entry
                && y != sink
                && y != other_home
                && other_reach[y]
            {
                found.push(Exceptional { side, entry, sink, y });
            }
        }
    }
    Ok(found)
}
