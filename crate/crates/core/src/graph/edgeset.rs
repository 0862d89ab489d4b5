use std::fmt;

use fixedbitset::FixedBitSet;

use super::paths::longest_path;
use super::{Digraph, EdgeIx, VertexIx};
use crate::error::GraphError;

/// A subset of the edges of a host graph.
#[derive(Clone)]
pub struct EdgeSet<'g> {
    host: &'g Digraph,
    members: FixedBitSet,
}

impl<'g> EdgeSet<'g> {
    pub fn empty(host: &'g Digraph) -> Self {
        EdgeSet { host, members: FixedBitSet::with_capacity(host.edge_count()) }
    }

    pub fn full(host: &'g Digraph) -> Self {
        Self::from_edges(host, host.edges())
    }

    pub fn from_edges(host: &'g Digraph, edges: impl IntoIterator<Item = EdgeIx>) -> Self {
        let mut s = Self::empty(host);
        for e in edges {
            s.insert(e);
        }
        s
    }

    /// Resolve edge ids against the host.
    pub fn from_ids<S: AsRef<str>>(host: &'g Digraph, ids: &[S]) -> Result<Self, GraphError> {
        let edges = ids.iter().map(|id| host.edge_by_id(id.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_edges(host, edges))
    }

    pub(crate) fn from_bits(host: &'g Digraph, members: FixedBitSet) -> Self {
        EdgeSet { host, members }
    }

    pub fn host(&self) -> &'g Digraph {
        self.host
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn insert(&mut self, e: EdgeIx) -> bool {
        !self.members.put(e.0)
    }

    pub fn contains(&self, e: EdgeIx) -> bool {
        self.members.contains(e.0)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeIx> + '_ {
        self.members.ones().map(EdgeIx)
    }

    pub fn ids(&self) -> Vec<&'g str> {
        let host = self.host;
        self.iter().map(|e| host.edge_id(e)).collect()
    }

    pub fn is_subset(&self, other: &EdgeSet<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `V(G)`: every tail and head of a member, as a vertex bitset.
    pub fn vertex_bits(&self) -> FixedBitSet {
        let mut vs = FixedBitSet::with_capacity(self.host.vertex_count());
        for e in self.iter() {
            vs.insert(self.host.tail(e).0);
            vs.insert(self.host.head(e).0);
        }
        vs
    }

    pub fn vertices(&self) -> Vec<VertexIx> {
        self.vertex_bits().ones().map(VertexIx).collect()
    }

    /// Connectivity of `V(G)` when edge directions are ignored, using only
    /// member edges.
    pub fn is_connected(&self) -> Result<bool, GraphError> {
        let first = self.iter().next().ok_or(GraphError::EmptyEdgeSet)?;
        let vs = self.vertex_bits();
        let mut seen = FixedBitSet::with_capacity(self.host.vertex_count());
        let mut stack = vec![self.host.tail(first)];
        seen.insert(self.host.tail(first).0);
        while let Some(v) = stack.pop() {
            let host = self.host;
            let out = host.out_edges(v).iter().map(|&e| (e, host.head(e)));
            let inc = host.in_edges(v).iter().map(|&e| (e, host.tail(e)));
            for (e, w) in out.chain(inc) {
                if self.contains(e) && !seen.put(w.0) {
                    stack.push(w);
                }
            }
        }
        Ok(seen == vs)
    }

    /// Positive path from `u` to `v` inside `Γ(G)`; the empty path counts.
    pub fn path_exists(&self, u: VertexIx, v: VertexIx) -> bool {
        if u == v {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(self.host.vertex_count());
        let mut stack = vec![u];
        seen.insert(u.0);
        while let Some(x) = stack.pop() {
            for &e in self.host.out_edges(x) {
                if !self.contains(e) {
                    continue;
                }
                let h = self.host.head(e);
                if h == v {
                    return true;
                }
                if !seen.put(h.0) {
                    stack.push(h);
                }
            }
        }
        false
    }

    /// A maximum-length directed path made of member edges, ties broken by
    /// the lexicographically smallest edge-index sequence.
    pub fn longest_positive_path(&self) -> Result<Vec<EdgeIx>, GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptyEdgeSet);
        }
        Ok(longest_path(self.host, &self.members, None, None).expect("nonempty set has a path"))
    }

    /// Longest member path from a host source to a host sink.
    pub fn source_sink_path(&self) -> Option<Vec<EdgeIx>> {
        let mut sources = FixedBitSet::with_capacity(self.host.vertex_count());
        sources.extend(self.host.sources().into_iter().map(|v| v.0));
        let mut sinks = FixedBitSet::with_capacity(self.host.vertex_count());
        sinks.extend(self.host.sinks().into_iter().map(|v| v.0));
        longest_path(self.host, &self.members, Some(&sources), Some(&sinks))
    }
}

impl PartialEq for EdgeSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.host, other.host) && self.members == other.members
    }
}

impl Eq for EdgeSet<'_> {}

impl fmt::Debug for EdgeSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ids()).finish()
    }
}
