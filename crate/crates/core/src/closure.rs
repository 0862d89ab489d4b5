//! D- and U-operations on edge pairs, DU-completion, and the ample /
//! sufficient classification of edge sets.
//!
//! A D-operation takes two edges `e1, e2` with a common tail to every pair
//! `f1, f2` with a common head such that `f_i` continues `e_i`; a
//! U-operation goes the other way. Results always range over the host's
//! edges, so completion never invents edges.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::ClosureError;
use crate::graph::{Digraph, EdgeIx, EdgeSet, VertexIx};
use crate::hasse::BooleanLattice;

pub type EdgePair = (EdgeIx, EdgeIx);

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OpKind {
    D,
    U,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::D => "D",
            OpKind::U => "U",
        })
    }
}

/// All common-head pairs `(f1, f2)` with `t(f_i) = h(e_i)`, for edges with a
/// common tail.
pub fn d_results(g: &Digraph, e1: EdgeIx, e2: EdgeIx) -> Result<Vec<EdgePair>, ClosureError> {
    if e1 == e2 {
        return Err(ClosureError::SameEdge(g.edge_id(e1).to_owned()));
    }
    if g.tail(e1) != g.tail(e2) {
        return Err(ClosureError::NoCommonTail(g.edge_id(e1).to_owned(), g.edge_id(e2).to_owned()));
    }
    Ok(d_unchecked(g, e1, e2))
}

/// All common-tail pairs `(e1, e2)` with `h(e_i) = t(f_i)`, for edges with a
/// common head.
pub fn u_results(g: &Digraph, f1: EdgeIx, f2: EdgeIx) -> Result<Vec<EdgePair>, ClosureError> {
    if f1 == f2 {
        return Err(ClosureError::SameEdge(g.edge_id(f1).to_owned()));
    }
    if g.head(f1) != g.head(f2) {
        return Err(ClosureError::NoCommonHead(g.edge_id(f1).to_owned(), g.edge_id(f2).to_owned()));
    }
    Ok(u_unchecked(g, f1, f2))
}

fn d_unchecked(g: &Digraph, e1: EdgeIx, e2: EdgeIx) -> Vec<EdgePair> {
    let mut out = Vec::new();
    for &f1 in g.out_edges(g.head(e1)) {
        for &f2 in g.out_edges(g.head(e2)) {
            if g.head(f1) == g.head(f2) {
                out.push((f1, f2));
            }
        }
    }
    out
}

fn u_unchecked(g: &Digraph, f1: EdgeIx, f2: EdgeIx) -> Vec<EdgePair> {
    let mut out = Vec::new();
    for &e1 in g.in_edges(g.tail(f1)) {
        for &e2 in g.in_edges(g.tail(f2)) {
            if g.tail(e1) == g.tail(e2) {
                out.push((e1, e2));
            }
        }
    }
    out
}

/// One operation applied during completion: `output` was obtained from
/// `input` by `kind`, aligned so that `output.0` pairs with `input.0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureStep {
    pub kind: OpKind,
    pub input: EdgePair,
    pub output: EdgePair,
    /// Members of `output` that entered the set at this step.
    pub new_edges: Vec<EdgeIx>,
}

/// Every operation application performed by [`completion`], in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureTrace {
    pub steps: Vec<ClosureStep>,
}

impl ClosureTrace {
    /// The step that first added `e`, if it was not an initial member.
    pub fn derivation(&self, e: EdgeIx) -> Option<&ClosureStep> {
        self.steps.iter().find(|s| s.new_edges.contains(&e))
    }

    pub fn render(&self, g: &Digraph) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| {
                let new: Vec<&str> = s.new_edges.iter().map(|&e| g.edge_id(e)).collect();
                format!(
                    "{} ({}, {}) -> ({}, {}) new [{}]",
                    s.kind,
                    g.edge_id(s.input.0),
                    g.edge_id(s.input.1),
                    g.edge_id(s.output.0),
                    g.edge_id(s.output.1),
                    new.join(", ")
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Completion<'g> {
    pub set: EdgeSet<'g>,
    pub trace: ClosureTrace,
}

/// Least DU-complete superset of `es`.
///
/// Worklist over edges in FIFO order: when an edge is dequeued it is paired
/// with every already-dequeued member sharing its tail (D) or head (U), so
/// each unordered pair is examined exactly once.
pub fn completion<'g>(es: &EdgeSet<'g>) -> Completion<'g> {
    let g = es.host();
    let mut members = es.bits().clone();
    let mut done = FixedBitSet::with_capacity(g.edge_count());
    let mut queue: VecDeque<EdgeIx> = es.iter().collect();
    let mut trace = ClosureTrace::default();

    while let Some(e) = queue.pop_front() {
        let mut apply = |kind: OpKind, pair: EdgePair, results: Vec<EdgePair>, queue: &mut VecDeque<EdgeIx>| {
            for out in results {
                let mut new_edges = Vec::new();
                for x in [out.0, out.1] {
                    if !members.put(x.0) {
                        new_edges.push(x);
                        queue.push_back(x);
                    }
                }
                trace.steps.push(ClosureStep { kind, input: pair, output: out, new_edges });
            }
        };
        for &other in g.out_edges(g.tail(e)) {
            if other != e && done.contains(other.0) {
                let pair = (other.min(e), other.max(e));
                apply(OpKind::D, pair, d_unchecked(g, pair.0, pair.1), &mut queue);
            }
        }
        for &other in g.in_edges(g.head(e)) {
            if other != e && done.contains(other.0) {
                let pair = (other.min(e), other.max(e));
                apply(OpKind::U, pair, u_unchecked(g, pair.0, pair.1), &mut queue);
            }
        }
        done.insert(e.0);
    }

    Completion { set: EdgeSet::from_bits(g, members), trace }
}

/// Whether every D/U result of member pairs is a member.
pub fn is_complete(es: &EdgeSet<'_>) -> bool {
    let g = es.host();
    let inside = |pairs: Vec<EdgePair>| pairs.into_iter().all(|(a, b)| es.contains(a) && es.contains(b));
    let members: Vec<EdgeIx> = es.iter().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.tail(a) == g.tail(b) && !inside(d_unchecked(g, a, b)) {
                return false;
            }
            if g.head(a) == g.head(b) && !inside(u_unchecked(g, a, b)) {
                return false;
            }
        }
    }
    true
}

/// Which ampleness condition failed, and at which host vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmpleFailure {
    /// Non-sink `v` that every spanned vertex reaches.
    AllReach(VertexIx),
    /// Non-source `v` that reaches every spanned vertex.
    ReachesAll(VertexIx),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmpleReport {
    pub ample: bool,
    pub failure: Option<AmpleFailure>,
}

/// Ampleness of the vertex set spanned by `es`, quantifying over every host
/// vertex: each non-sink must be unreachable from some spanned vertex, and
/// each non-source must fail to reach some spanned vertex.
pub fn is_ample(es: &EdgeSet<'_>) -> AmpleReport {
    let g = es.host();
    let reach = g.reachability();
    let spanned = es.vertices();
    for v in g.vertices() {
        if !g.is_sink(v) && spanned.iter().all(|&u| reach.reaches(u, v)) {
            return AmpleReport { ample: false, failure: Some(AmpleFailure::AllReach(v)) };
        }
        if !g.is_source(v) && spanned.iter().all(|&w| reach.reaches(v, w)) {
            return AmpleReport { ample: false, failure: Some(AmpleFailure::ReachesAll(v)) };
        }
    }
    AmpleReport { ample: true, failure: None }
}

/// Ampleness on `Γ_n` by element coverage: every `l` lies in some spanned
/// subset and is missing from another.
pub fn gamma_n_ample_fast(lattice: &BooleanLattice, es: &EdgeSet<'_>) -> Result<bool, ClosureError> {
    if !std::ptr::eq(lattice.graph(), es.host()) {
        return Err(ClosureError::HostMismatch);
    }
    let spanned: Vec<u32> = es.vertices().into_iter().map(|v| lattice.subset(v).0).collect();
    let any_in = spanned.iter().fold(0u32, |acc, s| acc | s);
    let any_out = spanned.iter().fold(0u32, |acc, s| acc | !s);
    let full = crate::hasse::Subset::full(lattice.n()).0;
    Ok(any_in & any_out & full == full)
}

#[derive(Clone, Debug)]
pub struct Sufficiency<'g> {
    pub sufficient: bool,
    pub completion: Completion<'g>,
    /// Longest source-to-sink path inside the completion, when one exists.
    pub path: Option<Vec<EdgeIx>>,
}

/// An edge set is sufficient when its completion contains a positive path
/// from a source of the host to a sink of the host.
pub fn is_sufficient<'g>(es: &EdgeSet<'g>) -> Sufficiency<'g> {
    let completion = completion(es);
    let path = completion.set.source_sink_path();
    Sufficiency { sufficient: path.is_some(), completion, path }
}

/// For a complete connected `F` and spanned vertices `u, v` with no positive
/// path `u → v` inside `F`: an edge of `F` leaving `v` and an edge of `F`
/// entering `u`, returned as `(f, e)`.
pub fn lemma_witness(f: &EdgeSet<'_>, u: VertexIx, v: VertexIx) -> Result<(EdgeIx, EdgeIx), ClosureError> {
    let g = f.host();
    if !f.is_connected()? {
        return Err(ClosureError::NotConnected);
    }
    if !is_complete(f) {
        return Err(ClosureError::NotComplete);
    }
    let spanned = f.vertex_bits();
    for x in [u, v] {
        if !spanned.contains(x.0) {
            return Err(ClosureError::VertexOutsideSet(g.vertex_id(x).to_owned()));
        }
    }
    if f.path_exists(u, v) {
        return Err(ClosureError::PathExists(g.vertex_id(u).to_owned(), g.vertex_id(v).to_owned()));
    }
    let leaving = g.out_edges(v).iter().copied().find(|&e| f.contains(e));
    let entering = g.in_edges(u).iter().copied().find(|&e| f.contains(e));
    match (leaving, entering) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(ClosureError::LemmaViolated { u: g.vertex_id(u).to_owned(), v: g.vertex_id(v).to_owned() }),
    }
}
