use fixedbitset::FixedBitSet;

use super::{Digraph, EdgeIx, VertexIx};

/// Precomputed transitive closure, for callers issuing many path queries.
#[derive(Clone, Debug)]
pub struct Reachability {
    rows: Vec<FixedBitSet>,
}

impl Reachability {
    pub fn new(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &v in g.topo_order().iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(v.0);
            for &e in g.out_edges(v) {
                row.union_with(&rows[g.head(e).0]);
            }
            rows[v.0] = row;
        }
        Reachability { rows }
    }

    pub fn reaches(&self, u: VertexIx, v: VertexIx) -> bool {
        self.rows[u.0].contains(v.0)
    }

    pub fn from(&self, u: VertexIx) -> &FixedBitSet {
        &self.rows[u.0]
    }
}

/// Longest directed path through `allowed` edges that starts in `starts` and
/// ends in `targets` (`None` means any vertex). Ties go to the
/// lexicographically smallest edge-index sequence. Empty paths are never
/// returned.
pub(crate) fn longest_path(
    g: &Digraph,
    allowed: &FixedBitSet,
    starts: Option<&FixedBitSet>,
    targets: Option<&FixedBitSet>,
) -> Option<Vec<EdgeIx>> {
    // best[v]: optimal path from v to a target (possibly empty when v is one)
    let mut best: Vec<Option<Vec<EdgeIx>>> = vec![None; g.vertex_count()];
    for &v in g.topo_order().iter().rev() {
        let mut pick: Option<Vec<EdgeIx>> = None;
        for &e in g.out_edges(v) {
            if !allowed.contains(e.0) {
                continue;
            }
            let Some(rest) = &best[g.head(e).0] else { continue };
            let better = match &pick {
                None => true,
                Some(p) => rest.len() + 1 > p.len() || (rest.len() + 1 == p.len() && e < p[0]),
            };
            if better {
                let mut path = Vec::with_capacity(rest.len() + 1);
                path.push(e);
                path.extend_from_slice(rest);
                pick = Some(path);
            }
        }
        if pick.is_none() && targets.is_none_or(|t| t.contains(v.0)) {
            pick = Some(Vec::new());
        }
        best[v.0] = pick;
    }

    g.vertices()
        .filter(|v| starts.is_none_or(|s| s.contains(v.0)))
        .filter_map(|v| best[v.0].take())
        .filter(|p| !p.is_empty())
        .fold(None, |acc: Option<Vec<EdgeIx>>, p| match acc {
            Some(a) if a.len() > p.len() || (a.len() == p.len() && a <= p) => Some(a),
            _ => Some(p),
        })
}
