//! Finite simple acyclic directed graphs.
//!
//! An edge runs from its tail to its head. Graphs are validated once on
//! construction (no parallel edges, no directed cycles, ranks drop by exactly
//! one along every edge when ranks are given) and immutable afterwards.

mod dot;
mod edgeset;
mod paths;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

pub use edgeset::EdgeSet;
pub use paths::Reachability;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexIx(pub usize);

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeIx(pub usize);

impl fmt::Display for VertexIx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeIx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: VertexIx,
    pub head: VertexIx,
}

/// Unvalidated graph description; [`GraphBuilder::build`] turns it into a
/// [`Digraph`] and [`GraphBuilder::validate`] reports every problem at once.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<(String, Option<u32>)>,
    edges: Vec<(String, String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<String>, rank: Option<u32>) -> &mut Self {
        self.vertices.push((id.into(), rank));
        self
    }

    pub fn edge(&mut self, id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>) -> &mut Self {
        self.edges.push((id.into(), tail.into(), head.into()));
        self
    }

    /// Check simplicity, acyclicity and rank consistency, collecting every
    /// violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut index = HashMap::new();
        for (i, (id, _)) in self.vertices.iter().enumerate() {
            if index.insert(id.as_str(), i).is_some() {
                report.errors.push(GraphError::DuplicateVertex(id.clone()));
            }
        }

        let mut edge_ids = HashSet::new();
        let mut endpoints: HashMap<(usize, usize), &str> = HashMap::new();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        let mut resolved = Vec::new();
        for (id, tail, head) in &self.edges {
            if !edge_ids.insert(id.as_str()) {
                report.errors.push(GraphError::DuplicateEdgeId(id.clone()));
            }
            let (Some(&t), Some(&h)) = (index.get(tail.as_str()), index.get(head.as_str())) else {
                for v in [tail, head] {
                    if !index.contains_key(v.as_str()) {
                        report.errors.push(GraphError::UnknownVertex(v.clone()));
                    }
                }
                continue;
            };
            if let Some(first) = endpoints.insert((t, h), id) {
                report.simple = false;
                report.errors.push(GraphError::DuplicateEdge { first: first.to_owned(), second: id.clone() });
            }
            adj[t].push(h);
            resolved.push((id, t, h));
        }

        if let Some(cycle) = find_cycle(&adj) {
            report.acyclic = false;
            report.errors.push(GraphError::Cycle(cycle.into_iter().map(|v| self.vertices[v].0.clone()).collect()));
        }

        let ranked = self.vertices.iter().filter(|(_, r)| r.is_some()).count();
        if ranked > 0 {
            if ranked < self.vertices.len() {
                report.rank_consistent = Some(false);
                let missing = self.vertices.iter().find(|(_, r)| r.is_none()).unwrap();
                report.errors.push(GraphError::PartialRank(missing.0.clone()));
            } else {
                let mut ok = true;
                for (id, t, h) in resolved {
                    let (tr, hr) = (self.vertices[t].1.unwrap(), self.vertices[h].1.unwrap());
                    if tr != hr + 1 {
                        ok = false;
                        report.errors.push(GraphError::RankViolation {
                            edge: id.clone(),
                            tail_rank: tr,
                            head_rank: hr,
                        });
                    }
                }
                report.rank_consistent = Some(ok);
            }
        }
        report
    }

    pub fn build(&self) -> Result<Digraph, GraphError> {
        if let Some(err) = self.validate().errors.into_iter().next() {
            return Err(err);
        }
        let n = self.vertices.len();
        let vertex_ids: Vec<String> = self.vertices.iter().map(|(id, _)| id.clone()).collect();
        let vertex_index: HashMap<String, VertexIx> =
            vertex_ids.iter().enumerate().map(|(i, id)| (id.clone(), VertexIx(i))).collect();
        let rank = if self.vertices.iter().all(|(_, r)| r.is_some()) && n > 0 {
            Some(self.vertices.iter().map(|(_, r)| r.unwrap()).collect())
        } else {
            None
        };
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut edge_index = HashMap::new();
        let mut by_endpoints = HashMap::new();
        for (i, (id, tail, head)) in self.edges.iter().enumerate() {
            let (t, h) = (vertex_index[tail], vertex_index[head]);
            out_edges[t.0].push(EdgeIx(i));
            in_edges[h.0].push(EdgeIx(i));
            edge_index.insert(id.clone(), EdgeIx(i));
            by_endpoints.insert((t, h), EdgeIx(i));
            edges.push(Edge { id: id.clone(), tail: t, head: h });
        }
        let mut g = Digraph {
            vertex_ids,
            vertex_index,
            rank,
            edges,
            edge_index,
            by_endpoints,
            out_edges,
            in_edges,
            topo: Vec::new(),
        };
        g.topo = g.kahn_order();
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub simple: bool,
    pub acyclic: bool,
    /// `None` when no ranks were supplied.
    pub rank_consistent: Option<bool>,
    pub errors: Vec<GraphError>,
}

impl Default for ValidationReport {
    fn default() -> Self {
        ValidationReport { simple: true, acyclic: true, rank_consistent: None, errors: Vec::new() }
    }
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Vertex sequence of some directed cycle, or `None` if the graph is acyclic.
fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = adj.len();
    let mut mark = vec![Mark::New; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Active;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    Mark::Active => {
                        let mut cycle = vec![w];
                        let mut x = v;
                        while x != w {
                            cycle.push(x);
                            x = parent[x];
                        }
                        cycle.reverse();
                        cycle.rotate_right(1);
                        return Some(cycle);
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct Digraph {
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, VertexIx>,
    rank: Option<Vec<u32>>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeIx>,
    by_endpoints: HashMap<(VertexIx, VertexIx), EdgeIx>,
    out_edges: Vec<Vec<EdgeIx>>,
    in_edges: Vec<Vec<EdgeIx>>,
    topo: Vec<VertexIx>,
}

/// Which half of the modularity condition failed, and on which edge pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularityViolation {
    /// Two edges with a common tail whose heads have no common successor.
    CommonTail(EdgeIx, EdgeIx),
    /// Two edges with a common head whose tails have no common predecessor.
    CommonHead(EdgeIx, EdgeIx),
}

impl Digraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexIx> + '_ {
        (0..self.vertex_ids.len()).map(VertexIx)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeIx> + '_ {
        (0..self.edges.len()).map(EdgeIx)
    }

    pub fn edge(&self, e: EdgeIx) -> &Edge {
        &self.edges[e.0]
    }

    pub fn tail(&self, e: EdgeIx) -> VertexIx {
        self.edges[e.0].tail
    }

    pub fn head(&self, e: EdgeIx) -> VertexIx {
        self.edges[e.0].head
    }

    pub fn vertex_id(&self, v: VertexIx) -> &str {
        &self.vertex_ids[v.0]
    }

    pub fn edge_id(&self, e: EdgeIx) -> &str {
        &self.edges[e.0].id
    }

    pub fn vertex_by_id(&self, id: &str) -> Result<VertexIx, GraphError> {
        self.vertex_index.get(id).copied().ok_or_else(|| GraphError::UnknownVertex(id.to_owned()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<EdgeIx, GraphError> {
        self.edge_index.get(id).copied().ok_or_else(|| GraphError::UnknownEdge(id.to_owned()))
    }

    pub fn edge_between(&self, tail: VertexIx, head: VertexIx) -> Option<EdgeIx> {
        self.by_endpoints.get(&(tail, head)).copied()
    }

    pub fn rank(&self, v: VertexIx) -> Option<u32> {
        self.rank.as_ref().map(|r| r[v.0])
    }

    /// True when ranks were supplied; construction already checked that
    /// every edge drops rank by one.
    pub fn is_layered(&self) -> bool {
        self.rank.is_some()
    }

    pub fn out_edges(&self, v: VertexIx) -> &[EdgeIx] {
        &self.out_edges[v.0]
    }

    pub fn in_edges(&self, v: VertexIx) -> &[EdgeIx] {
        &self.in_edges[v.0]
    }

    /// Vertices in an order where every edge goes from earlier to later.
    pub fn topo_order(&self) -> &[VertexIx] {
        &self.topo
    }

    fn kahn_order(&self) -> Vec<VertexIx> {
        let mut indeg: Vec<usize> = self.in_edges.iter().map(Vec::len).collect();
        let mut queue: VecDeque<VertexIx> = self.vertices().filter(|v| indeg[v.0] == 0).collect();
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in self.out_edges(v) {
                let h = self.head(e);
                indeg[h.0] -= 1;
                if indeg[h.0] == 0 {
                    queue.push_back(h);
                }
            }
        }
        order
    }

    /// Vertices with no incoming edge.
    pub fn sources(&self) -> Vec<VertexIx> {
        self.vertices().filter(|v| self.in_edges[v.0].is_empty()).collect()
    }

    /// Vertices with no outgoing edge.
    pub fn sinks(&self) -> Vec<VertexIx> {
        self.vertices().filter(|v| self.out_edges[v.0].is_empty()).collect()
    }

    pub fn is_source(&self, v: VertexIx) -> bool {
        self.in_edges[v.0].is_empty()
    }

    pub fn is_sink(&self, v: VertexIx) -> bool {
        self.out_edges[v.0].is_empty()
    }

    /// Vertices reachable from `u` by a positive path, `u` included.
    pub fn reachable_from(&self, u: VertexIx) -> FixedBitSet {
        self.reach(u, |v| self.out_edges(v).iter().map(|&e| self.head(e)))
    }

    /// Vertices that reach `v` by a positive path, `v` included.
    pub fn reaching(&self, v: VertexIx) -> FixedBitSet {
        self.reach(v, |w| self.in_edges(w).iter().map(|&e| self.tail(e)))
    }

    fn reach<'a, I>(&'a self, start: VertexIx, next: impl Fn(VertexIx) -> I) -> FixedBitSet
    where
        I: Iterator<Item = VertexIx> + 'a,
    {
        let mut seen = FixedBitSet::with_capacity(self.vertex_count());
        let mut stack = vec![start];
        seen.insert(start.0);
        while let Some(v) = stack.pop() {
            for w in next(v) {
                if !seen.put(w.0) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Whether a directed path from `u` to `v` exists; the empty path counts,
    /// so this is true for `u == v`.
    pub fn positive_path_exists(&self, u: VertexIx, v: VertexIx) -> bool {
        self.reachable_from(u).contains(v.0)
    }

    pub fn positive_path_exists_by_id(&self, u: &str, v: &str) -> Result<bool, GraphError> {
        Ok(self.positive_path_exists(self.vertex_by_id(u)?, self.vertex_by_id(v)?))
    }

    pub fn reachability(&self) -> Reachability {
        Reachability::new(self)
    }

    /// No path of length two or more joins the endpoints of `e`.
    pub fn is_essential(&self, e: EdgeIx) -> bool {
        let (t, h) = (self.tail(e), self.head(e));
        !self.out_edges(t).iter().any(|&g| g != e && self.positive_path_exists(self.head(g), h))
    }

    /// Edges lying on at least one directed path from `u` to `v`.
    pub fn edges_on_st_paths(&self, u: VertexIx, v: VertexIx) -> EdgeSet<'_> {
        let fwd = self.reachable_from(u);
        let back = self.reaching(v);
        EdgeSet::from_edges(self, self.edges().filter(|&e| fwd.contains(self.tail(e).0) && back.contains(self.head(e).0)))
    }

    /// First violation of the modularity conditions in canonical order, if any.
    pub fn modularity_violation(&self) -> Option<ModularityViolation> {
        let succ: Vec<FixedBitSet> = self.vertices().map(|v| self.neighbours(v, true)).collect();
        let pred: Vec<FixedBitSet> = self.vertices().map(|v| self.neighbours(v, false)).collect();
        for v in self.vertices() {
            let outs = self.out_edges(v);
            for (i, &e1) in outs.iter().enumerate() {
                for &e2 in &outs[i + 1..] {
                    let (a, b) = (self.head(e1), self.head(e2));
                    if succ[a.0].is_disjoint(&succ[b.0]) {
                        return Some(ModularityViolation::CommonTail(e1, e2));
                    }
                }
            }
            let ins = self.in_edges(v);
            for (i, &f1) in ins.iter().enumerate() {
                for &f2 in &ins[i + 1..] {
                    let (a, b) = (self.tail(f1), self.tail(f2));
                    if pred[a.0].is_disjoint(&pred[b.0]) {
                        return Some(ModularityViolation::CommonHead(f1, f2));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_violation().is_none()
    }

    fn neighbours(&self, v: VertexIx, forward: bool) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.vertex_count());
        if forward {
            s.extend(self.out_edges(v).iter().map(|&e| self.head(e).0));
        } else {
            s.extend(self.in_edges(v).iter().map(|&e| self.tail(e).0));
        }
        s
    }

    /// Rebuild the description this graph came from.
    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for v in self.vertices() {
            b.vertex(self.vertex_id(v), self.rank(v));
        }
        for e in &self.edges {
            b.edge(e.id.clone(), self.vertex_id(e.tail), self.vertex_id(e.head));
        }
        b
    }
}
