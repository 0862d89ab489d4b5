//! Graphs of right divisors of a monic polynomial.
//!
//! Starting from `P`, every divisor `B1` is split as `B1 = (t − x)·B2` for
//! each `x ∈ S` that is a left root of `B1`; `B2` becomes a vertex one rank
//! lower and the edge `B1 → B2` is labeled `x`. Only divisors reachable from
//! `P` this way are built.

use std::collections::{BTreeMap, VecDeque};

use crate::error::DivisorError;
use crate::graph::{Digraph, EdgeIx, GraphBuilder, VertexIx};
use crate::hasse::{BooleanLattice, Subset};
use crate::poly::NCPoly;
use crate::pseudoroots::{diamond_holds, PseudoRootTable};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct DivisorGraph<R> {
    graph: Digraph,
    /// Right divisor at each vertex, by vertex index.
    polys: Vec<NCPoly<R>>,
    /// `P = quotients[v]·polys[v]`.
    quotients: Vec<NCPoly<R>>,
    /// Label `α(e)` and the name of the element of `S` it came from.
    labels: Vec<R>,
    label_names: Vec<String>,
    /// Names of elements of `S` that never split any divisor.
    unused: Vec<String>,
}

impl<R: Ring> DivisorGraph<R> {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn poly(&self, v: VertexIx) -> &NCPoly<R> {
        &self.polys[v.0]
    }

    pub fn quotient(&self, v: VertexIx) -> &NCPoly<R> {
        &self.quotients[v.0]
    }

    pub fn label(&self, e: EdgeIx) -> &R {
        &self.labels[e.0]
    }

    pub fn label_name(&self, e: EdgeIx) -> &str {
        &self.label_names[e.0]
    }

    pub fn unused(&self) -> &[String] {
        &self.unused
    }

    /// Overwrite one label, e.g. to check that the relation checks notice.
    pub fn set_label(&mut self, e: EdgeIx, value: R) {
        self.labels[e.0] = value;
    }

    /// The vertex holding `P`.
    pub fn source(&self) -> VertexIx {
        VertexIx(0)
    }

    /// The vertex holding the constant polynomial 1, when reached.
    pub fn unit_vertex(&self) -> Option<VertexIx> {
        self.graph.vertices().find(|&v| self.polys[v.0].degree() == Some(0))
    }

    /// `∏ (t − α(e))` along `path`, in path order.
    pub fn path_product(&self, path: &[EdgeIx]) -> Result<NCPoly<R>, DivisorError> {
        let unit = self.polys[0].coeffs()[0].one_like();
        Ok(NCPoly::from_linear_factors(&unit, path.iter().map(|e| &self.labels[e.0]))?)
    }

    /// Structural invariants: `P = Q·B` at every vertex, rank equals degree,
    /// and `B1 = (t − α(e))·B2` on every edge.
    pub fn check_invariants(&self) -> Result<(), DivisorError> {
        let p = &self.polys[0];
        for v in self.graph.vertices() {
            let b = &self.polys[v.0];
            if self.quotients[v.0].mul(b)? != *p {
                return Err(DivisorError::Invariant(format!("P ≠ Q·B at {}", self.graph.vertex_id(v))));
            }
            if self.graph.rank(v) != b.degree().map(|d| d as u32) {
                return Err(DivisorError::Invariant(format!("rank ≠ degree at {}", self.graph.vertex_id(v))));
            }
        }
        for e in self.graph.edges() {
            let lhs = NCPoly::linear(&self.labels[e.0]).mul(&self.polys[self.graph.head(e).0])?;
            if lhs != self.polys[self.graph.tail(e).0] {
                return Err(DivisorError::Invariant(format!("edge {} does not split", self.graph.edge_id(e))));
            }
        }
        Ok(())
    }
}

/// Breadth-first construction from `P`. Vertices are `v0 = P, v1, …` in
/// discovery order, ranked by degree; edge ids are `<tail>:<name>`.
pub fn build_divisor_graph<R: Ring>(p: &NCPoly<R>, s: &[(String, R)]) -> Result<DivisorGraph<R>, DivisorError> {
    if !p.is_monic() {
        return Err(DivisorError::NotMonic);
    }
    let unit = p.coeffs()[0].clone();
    let mut polys = vec![p.clone()];
    let mut quotients = vec![NCPoly::one(&unit)];
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut used = vec![false; s.len()];
    let mut queue = VecDeque::from([0usize]);

    while let Some(v) = queue.pop_front() {
        if polys[v].degree() == Some(0) {
            continue;
        }
        for (k, (_, x)) in s.iter().enumerate() {
            let (q, r) = polys[v].left_divide_linear(x)?;
            if !r.is_zero() {
                continue;
            }
            let w = match polys.iter().position(|b| *b == q) {
                Some(w) => w,
                None => {
                    polys.push(q);
                    quotients.push(quotients[v].mul(&NCPoly::linear(x))?);
                    queue.push_back(polys.len() - 1);
                    polys.len() - 1
                }
            };
            // B1 = (t − x)·B2 pins x down once B2 is monic, so a second
            // element of S splitting off the same B2 is a duplicate value.
            if edges.iter().any(|&(a, b, _)| a == v && b == w) {
                continue;
            }
            used[k] = true;
            edges.push((v, w, k));
        }
    }

    let mut b = GraphBuilder::new();
    for (v, poly) in polys.iter().enumerate() {
        b.vertex(format!("v{v}"), poly.degree().map(|d| d as u32));
    }
    for &(v, w, k) in &edges {
        b.edge(format!("v{v}:{}", s[k].0), format!("v{v}"), format!("v{w}"));
    }
    Ok(DivisorGraph {
        graph: b.build()?,
        polys,
        quotients,
        labels: edges.iter().map(|&(_, _, k)| s[k].1.clone()).collect(),
        label_names: edges.iter().map(|&(_, _, k)| s[k].0.clone()).collect(),
        unused: s.iter().zip(&used).filter(|(_, &u)| !u).map(|((name, _), _)| name.clone()).collect(),
    })
}

/// Two positive paths with the same endpoints and different products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathConflict {
    pub from: VertexIx,
    pub to: VertexIx,
    pub first: Vec<EdgeIx>,
    pub second: Vec<EdgeIx>,
}

#[derive(Clone, Debug)]
pub struct PathIndependence<R> {
    pub conflict: Option<PathConflict>,
    /// The common product over source → unit-vertex paths, when independent.
    pub source_to_unit: Option<NCPoly<R>>,
}

impl<R> PathIndependence<R> {
    pub fn holds(&self) -> bool {
        self.conflict.is_none()
    }
}

/// Compare `∏ (t − α(e))` over every positive path between every ordered
/// pair of vertices.
pub fn verify_path_independence<R: Ring>(dg: &DivisorGraph<R>) -> Result<PathIndependence<R>, DivisorError> {
    let g = &dg.graph;
    let unit = dg.polys[0].coeffs()[0].one_like();
    let mut source_to_unit = None;
    for v in g.vertices() {
        let mut seen: BTreeMap<VertexIx, (Vec<EdgeIx>, NCPoly<R>)> = BTreeMap::new();
        let mut stack: Vec<(VertexIx, Vec<EdgeIx>, NCPoly<R>)> = vec![(v, Vec::new(), NCPoly::one(&unit))];
        while let Some((x, path, prod)) = stack.pop() {
            for &e in g.out_edges(x).iter().rev() {
                let w = g.head(e);
                let mut p2 = path.clone();
                p2.push(e);
                let q = prod.mul(&NCPoly::linear(&dg.labels[e.0]))?;
                match seen.get(&w) {
                    Some((first, known)) if *known != q => {
                        let conflict = PathConflict { from: v, to: w, first: first.clone(), second: p2 };
                        return Ok(PathIndependence { conflict: Some(conflict), source_to_unit: None });
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(w, (p2.clone(), q.clone()));
                    }
                }
                stack.push((w, p2, q));
            }
        }
        if v == dg.source() {
            source_to_unit = dg.unit_vertex().and_then(|u| seen.get(&u)).map(|(_, q)| q.clone());
        }
    }
    Ok(PathIndependence { conflict: None, source_to_unit })
}

/// Sum and product relations on every diamond of the labeling; `None` when
/// all hold, otherwise the offending `[e1, f1, e2, f2]`.
pub fn diamond_relations_check<R: Ring>(dg: &DivisorGraph<R>) -> Option<[EdgeIx; 4]> {
    let g = &dg.graph;
    for v in g.vertices() {
        let outs = g.out_edges(v);
        for (k, &e1) in outs.iter().enumerate() {
            for &e2 in &outs[k + 1..] {
                for &f1 in g.out_edges(g.head(e1)) {
                    for &f2 in g.out_edges(g.head(e2)) {
                        if g.head(f1) == g.head(f2) {
                            let l = |e: EdgeIx| &dg.labels[e.0];
                            if !diamond_holds(l(e1), l(f1), l(e2), l(f2)) {
                                return Some([e1, f1, e2, f2]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Result of checking that every edge on a source → unit path carries a
/// pseudo-root of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    /// Edges lying on some source → unit path.
    pub edges: Vec<EdgeIx>,
    /// Edges whose reconstruction `Q1·(t − α(e))·Q2 = P` failed.
    pub failed: Vec<EdgeIx>,
}

impl Identification {
    pub fn holds(&self) -> bool {
        self.failed.is_empty()
    }
}

fn some_path(g: &Digraph, from: VertexIx, to: VertexIx) -> Option<Vec<EdgeIx>> {
    let mut parent: BTreeMap<VertexIx, EdgeIx> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = Vec::new();
            let mut cur = to;
            while cur != from {
                let e = parent[&cur];
                path.push(e);
                cur = g.tail(e);
            }
            path.reverse();
            return Some(path);
        }
        for &e in g.out_edges(x) {
            let w = g.head(e);
            if w != from && !parent.contains_key(&w) {
                parent.insert(w, e);
                queue.push_back(w);
            }
        }
    }
    None
}

/// For each edge on a source → unit path, rebuild `P` as
/// `Q1·(t − α(e))·Q2` from path segments through it.
pub fn iterated_identification<R: Ring>(dg: &DivisorGraph<R>) -> Result<Identification, DivisorError> {
    let g = &dg.graph;
    let source = dg.source();
    let unit = dg.unit_vertex().ok_or(DivisorError::NoSourceSinkPath)?;
    if !g.positive_path_exists(source, unit) || source == unit {
        return Err(DivisorError::NoSourceSinkPath);
    }
    let on_paths = g.edges_on_st_paths(source, unit);
    let mut failed = Vec::new();
    for e in on_paths.iter() {
        let before = some_path(g, source, g.tail(e)).expect("edge lies on a source path");
        let after = some_path(g, g.head(e), unit).expect("edge lies on a unit path");
        let rebuilt = dg.path_product(&before)?.mul(&NCPoly::linear(&dg.labels[e.0]))?.mul(&dg.path_product(&after)?)?;
        if rebuilt != dg.polys[0] {
            failed.push(e);
        }
    }
    Ok(Identification { edges: on_paths.iter().collect(), failed })
}

/// Check that `dg` is `Γ_n` with `α` equal to the pseudo-root table: the
/// source is the top, and each edge leaving the image of `T` must carry
/// `x_{T∖{i}, i}` for some `i ∈ T`, leading to the image of `T ∖ {i}`.
pub fn match_boolean_lattice<T: Scalar>(
    dg: &DivisorGraph<Matrix<T>>,
    lattice: &BooleanLattice,
    table: &PseudoRootTable<T>,
) -> Result<BTreeMap<VertexIx, Subset>, DivisorError> {
    let g = &dg.graph;
    let gamma = lattice.graph();
    let mismatch = |s: String| Err(DivisorError::LatticeMismatch(s));
    if g.vertex_count() != gamma.vertex_count() || g.edge_count() != gamma.edge_count() {
        return mismatch(format!(
            "{} vertices and {} edges, expected {} and {}",
            g.vertex_count(),
            g.edge_count(),
            gamma.vertex_count(),
            gamma.edge_count()
        ));
    }
    let mut image: BTreeMap<VertexIx, Subset> = BTreeMap::from([(dg.source(), Subset::full(lattice.n()))]);
    let mut hit = vec![false; gamma.edge_count()];
    for &v in g.topo_order() {
        let Some(&t) = image.get(&v) else {
            return mismatch(format!("vertex {} is not reached from the source", g.vertex_id(v)));
        };
        for &e in g.out_edges(v) {
            let found = t.elements().find(|&i| table.get(crate::hasse::GammaLabel { set: t.without(i), index: i }) == Some(dg.label(e)));
            let Some(i) = found else {
                return mismatch(format!("label of {} is no pseudo-root leaving {t}", g.edge_id(e)));
            };
            let head = t.without(i);
            match image.insert(g.head(e), head) {
                Some(prev) if prev != head => {
                    return mismatch(format!("vertex {} maps to both {prev} and {head}", g.vertex_id(g.head(e))));
                }
                _ => {}
            }
            let ge = lattice.edge(crate::hasse::GammaLabel { set: head, index: i }).expect("label lies in Γ_n");
            if std::mem::replace(&mut hit[ge.0], true) {
                return mismatch(format!("edge {} of Γ_n is hit twice", gamma.edge_id(ge)));
            }
        }
    }
    Ok(image)
}
