//! Edge labelings by ring elements, their propagation through the
//! DU-completion, and factorizations read off a source-to-sink path.

use std::collections::BTreeMap;

use super::conj::{d_expr, d_op, diamond_holds, u_expr, u_op, ConjExpr};
use super::PseudoRootTable;
use crate::closure::{completion, is_sufficient, ClosureStep, ClosureTrace, Completion, OpKind};
use crate::error::{GraphError, LabelError};
use crate::graph::{Digraph, EdgeIx, EdgeSet};
use crate::hasse::BooleanLattice;
use crate::matrix::Matrix;
use crate::poly::NCPoly;
use crate::ring::Ring;
use crate::scalar::Scalar;

/// A ring value together with the expression that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Label<R> {
    pub value: R,
    pub expr: ConjExpr,
}

/// Edges of a host graph labeled by ring elements. Input labels are named
/// generators; derived labels carry expressions over those names.
#[derive(Clone, Debug)]
pub struct LabeledEdgeSet<'g, R> {
    host: &'g Digraph,
    labels: BTreeMap<EdgeIx, Label<R>>,
    generators: BTreeMap<String, R>,
}

impl<'g, R: Ring> LabeledEdgeSet<'g, R> {
    pub fn new(host: &'g Digraph) -> Self {
        LabeledEdgeSet { host, labels: BTreeMap::new(), generators: BTreeMap::new() }
    }

    /// Label `e` by the generator `name` with the given value. A name may be
    /// reused only with the same value.
    pub fn insert(&mut self, e: EdgeIx, name: impl Into<String>, value: R) -> Result<(), LabelError> {
        let name = name.into();
        if let Some(old) = self.generators.get(&name) {
            if *old != value {
                return Err(LabelError::InconsistentLabels {
                    edge: self.host.edge_id(e).to_owned(),
                    detail: format!("generator {name} already bound to a different value"),
                });
            }
        }
        self.generators.insert(name.clone(), value.clone());
        self.labels.insert(e, Label { value, expr: ConjExpr::gen(name) });
        Ok(())
    }

    pub fn insert_by_id(&mut self, edge_id: &str, name: impl Into<String>, value: R) -> Result<(), LabelError> {
        let e = self.host.edge_by_id(edge_id).map_err(|err| LabelError::InconsistentLabels {
            edge: edge_id.to_owned(),
            detail: err.to_string(),
        })?;
        self.insert(e, name, value)
    }

    pub fn host(&self) -> &'g Digraph {
        self.host
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, e: EdgeIx) -> Option<&Label<R>> {
        self.labels.get(&e)
    }

    pub fn value(&self, e: EdgeIx) -> Option<&R> {
        self.labels.get(&e).map(|l| &l.value)
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeIx, &Label<R>)> {
        self.labels.iter().map(|(e, l)| (*e, l))
    }

    pub fn generators(&self) -> &BTreeMap<String, R> {
        &self.generators
    }

    pub fn edge_set(&self) -> EdgeSet<'g> {
        EdgeSet::from_edges(self.host, self.labels.keys().copied())
    }

    /// Sum and product relations on every diamond whose four edges are
    /// labeled.
    pub fn check_diamonds(&self) -> Result<(), LabelError> {
        let g = self.host;
        let keys: Vec<EdgeIx> = self.labels.keys().copied().collect();
        for (k, &e1) in keys.iter().enumerate() {
            for &e2 in &keys[k + 1..] {
                if g.tail(e1) != g.tail(e2) {
                    continue;
                }
                for &f1 in g.out_edges(g.head(e1)) {
                    for &f2 in g.out_edges(g.head(e2)) {
                        if g.head(f1) != g.head(f2) {
                            continue;
                        }
                        let (Some(b1), Some(b2)) = (self.value(f1), self.value(f2)) else { continue };
                        if !diamond_holds(&self.labels[&e1].value, b1, &self.labels[&e2].value, b2) {
                            return Err(LabelError::InconsistentLabels {
                                edge: g.edge_id(e1).to_owned(),
                                detail: format!(
                                    "diamond {}·{} / {}·{} violates the sum or product relation",
                                    g.edge_id(e1),
                                    g.edge_id(f1),
                                    g.edge_id(e2),
                                    g.edge_id(f2)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'g, T: Scalar> LabeledEdgeSet<'g, Matrix<T>> {
    /// Label the given edges of `Γ_n` with their pseudo-root table entries,
    /// naming each generator `x` followed by the edge id.
    pub fn from_table(
        lattice: &'g BooleanLattice,
        table: &PseudoRootTable<T>,
        edges: impl IntoIterator<Item = EdgeIx>,
    ) -> Result<Self, GraphError> {
        let mut ls = LabeledEdgeSet::new(lattice.graph());
        for e in edges {
            let label = lattice.label(e);
            let value = table.get(label).ok_or_else(|| GraphError::UnknownEdge(label.to_string()))?;
            ls.insert(e, format!("x{label}"), value.clone()).expect("table labels are distinct per name");
        }
        Ok(ls)
    }
}

#[derive(Clone, Debug)]
pub struct LabeledCompletion<'g, R> {
    pub labeled: LabeledEdgeSet<'g, R>,
    pub trace: ClosureTrace,
    /// Steps never evaluated, either because a conjugating difference was
    /// singular or because an input edge never received a label.
    pub skipped: Vec<ClosureStep>,
    /// Edges of the graph completion left without a label.
    pub unlabeled: Vec<EdgeIx>,
}

fn apply_step<R: Ring>(kind: OpKind, l0: &Label<R>, l1: &Label<R>) -> Result<(Label<R>, Label<R>), LabelError> {
    let ((v0, v1), (x0, x1)) = match kind {
        OpKind::D => (d_op(&l0.value, &l1.value)?, d_expr(&l0.expr, &l1.expr)),
        OpKind::U => (u_op(&l0.value, &l1.value)?, u_expr(&l0.expr, &l1.expr)),
    };
    Ok((Label { value: v0, expr: x0 }, Label { value: v1, expr: x1 }))
}

/// Propagate labels along the DU-completion of the labeled edges.
///
/// Every recorded closure step is evaluated with d/u-operations once its
/// inputs carry labels; an edge reached by several steps must receive the
/// same value from each. Steps with a singular difference are skipped and
/// reported.
pub fn labeled_completion<'g, R: Ring>(ls: &LabeledEdgeSet<'g, R>) -> Result<LabeledCompletion<'g, R>, LabelError> {
    ls.check_diamonds()?;
    let g = ls.host;
    let Completion { set, trace } = completion(&ls.edge_set());
    let mut out = ls.clone();
    let mut applied = vec![false; trace.steps.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for (k, step) in trace.steps.iter().enumerate() {
            if applied[k] {
                continue;
            }
            let (Some(l0), Some(l1)) = (out.labels.get(&step.input.0), out.labels.get(&step.input.1)) else {
                continue;
            };
            let Ok((o0, o1)) = apply_step(step.kind, l0, l1) else { continue };
            applied[k] = true;
            changed = true;
            for (e, lab) in [(step.output.0, o0), (step.output.1, o1)] {
                match out.labels.get(&e) {
                    Some(existing) if existing.value != lab.value => {
                        return Err(LabelError::InconsistentLabels {
                            edge: g.edge_id(e).to_owned(),
                            detail: format!(
                                "{} on ({}, {}) gives a value different from an earlier derivation",
                                step.kind,
                                g.edge_id(step.input.0),
                                g.edge_id(step.input.1)
                            ),
                        });
                    }
                    Some(_) => {}
                    None => {
                        out.labels.insert(e, lab);
                    }
                }
            }
        }
    }
    out.check_diamonds()?;
    let skipped = trace.steps.iter().zip(&applied).filter(|(_, &a)| !a).map(|(s, _)| s.clone()).collect();
    let unlabeled = set.iter().filter(|e| !out.labels.contains_key(e)).collect();
    Ok(LabeledCompletion { labeled: out, trace, skipped, unlabeled })
}

/// A complete factorization read off a labeled source-to-sink path.
#[derive(Clone, Debug)]
pub struct Factorization<'g, R> {
    /// Edges from the source down to the sink.
    pub path: Vec<EdgeIx>,
    pub factors: Vec<R>,
    /// How each factor is expressed through the input generators.
    pub exprs: Vec<ConjExpr>,
    /// `(t − factors[0])(t − factors[1])…`.
    pub polynomial: NCPoly<R>,
    pub completion: LabeledCompletion<'g, R>,
}

/// Factor the polynomial carried by a sufficient labeled edge set.
pub fn derive_factorization<'g, R: Ring>(ls: &LabeledEdgeSet<'g, R>) -> Result<Factorization<'g, R>, LabelError> {
    if ls.is_empty() || !is_sufficient(&ls.edge_set()).sufficient {
        return Err(LabelError::NotSufficient);
    }
    let completion = labeled_completion(ls)?;
    let path = completion.labeled.edge_set().source_sink_path().ok_or(LabelError::Blocked)?;
    let labels: Vec<&Label<R>> = path.iter().map(|e| &completion.labeled.labels[e]).collect();
    let factors: Vec<R> = labels.iter().map(|l| l.value.clone()).collect();
    let exprs = labels.iter().map(|l| l.expr.clone()).collect();
    let polynomial = NCPoly::from_linear_factors(&factors[0].one_like(), &factors)?;
    Ok(Factorization { path, factors, exprs, polynomial, completion })
}
