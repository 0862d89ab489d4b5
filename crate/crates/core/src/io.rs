//! JSON forms of matrices, polynomials, graphs, edge sets, root sets,
//! labeled edge sets and divisor graphs.
//!
//! Rationals are written as `"p"` or `"p/q"` in lowest terms; on input any
//! `"p/q"` (and bare integers) is accepted and normalized.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::DivisorGraph;
use crate::error::{GraphError, LabelError, LinalgError, PolyError, RootError};
use crate::graph::{Digraph, EdgeSet, GraphBuilder};
use crate::matrix::Matrix;
use crate::poly::NCPoly;
use crate::pseudoroots::{LabeledEdgeSet, RootSet};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Int(i64),
    Text(String),
}

impl EntryJson {
    fn to_rational(&self) -> Result<Rational, LinalgError> {
        match self {
            EntryJson::Int(i) => Ok(Rational::from_integer((*i).into())),
            EntryJson::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub entries: Vec<Vec<EntryJson>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix<Rational>) -> Self {
        MatrixJson {
            d: m.dim(),
            entries: m.rows().map(|r| r.iter().map(|x| EntryJson::Text(format_rational(x))).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix<Rational>, IoError> {
        if self.entries.len() != self.d {
            return Err(IoError::Invalid(format!("matrix declares d = {} but has {} rows", self.d, self.entries.len())));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(EntryJson::to_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub d: usize,
    /// Leading coefficient first.
    pub coeffs: Vec<MatrixJson>,
}

impl PolyJson {
    pub fn from_poly(p: &NCPoly<Matrix<Rational>>) -> Self {
        PolyJson { d: p.zero_element().dim(), coeffs: p.coeffs().iter().map(MatrixJson::from_matrix).collect() }
    }

    pub fn to_poly(&self) -> Result<NCPoly<Matrix<Rational>>, IoError> {
        if self.coeffs.is_empty() {
            return Ok(NCPoly::zero(&Matrix::zeros(self.d)));
        }
        let coeffs = self.coeffs.iter().map(MatrixJson::to_matrix).collect::<Result<Vec<_>, _>>()?;
        if coeffs.iter().any(|c| c.dim() != self.d) {
            return Err(IoError::Invalid(format!("coefficient dimension differs from d = {}", self.d)));
        }
        Ok(NCPoly::from_coeffs(coeffs)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &Digraph) -> Self {
        GraphJson {
            vertices: g.vertices().map(|v| VertexJson { id: g.vertex_id(v).to_owned(), rank: g.rank(v) }).collect(),
            edges: g
                .edges()
                .map(|e| EdgeJson {
                    id: g.edge_id(e).to_owned(),
                    tail: g.vertex_id(g.tail(e)).to_owned(),
                    head: g.vertex_id(g.head(e)).to_owned(),
                })
                .collect(),
        }
    }

    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for v in &self.vertices {
            b.vertex(v.id.clone(), v.rank);
        }
        for e in &self.edges {
            b.edge(e.id.clone(), e.tail.clone(), e.head.clone());
        }
        b
    }

    pub fn to_graph(&self) -> Result<Digraph, GraphError> {
        self.to_builder().build()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSetJson {
    pub edges: Vec<String>,
}

impl EdgeSetJson {
    pub fn from_set(es: &EdgeSet<'_>) -> Self {
        EdgeSetJson { edges: es.ids().into_iter().map(str::to_owned).collect() }
    }

    pub fn resolve<'g>(&self, host: &'g Digraph) -> Result<EdgeSet<'g>, GraphError> {
        EdgeSet::from_ids(host, &self.edges)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSetJson {
    pub n: usize,
    pub d: usize,
    pub roots: Vec<MatrixJson>,
}

impl RootSetJson {
    pub fn from_roots(rs: &RootSet<Rational>) -> Self {
        RootSetJson { n: rs.n(), d: rs.d(), roots: rs.roots().iter().map(MatrixJson::from_matrix).collect() }
    }

    pub fn to_roots(&self) -> Result<RootSet<Rational>, IoError> {
        if self.roots.len() != self.n {
            return Err(IoError::Invalid(format!("n = {} but {} roots given", self.n, self.roots.len())));
        }
        let roots = self.roots.iter().map(MatrixJson::to_matrix).collect::<Result<Vec<_>, _>>()?;
        if roots.iter().any(|x| x.dim() != self.d) {
            return Err(IoError::Invalid(format!("root dimension differs from d = {}", self.d)));
        }
        Ok(RootSet::new(roots)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledEdgeJson {
    /// Host edge id; may be omitted when only the named values are needed.
    #[serde(default)]
    pub edge: String,
    pub value: MatrixJson,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledSetJson {
    pub edges: Vec<LabeledEdgeJson>,
}

impl LabeledSetJson {
    /// Input generators only; derived labels are not part of this format.
    pub fn from_labeled(ls: &LabeledEdgeSet<'_, Matrix<Rational>>) -> Self {
        let g = ls.host();
        LabeledSetJson {
            edges: ls
                .iter()
                .map(|(e, l)| LabeledEdgeJson {
                    edge: g.edge_id(e).to_owned(),
                    value: MatrixJson::from_matrix(&l.value),
                    name: l.expr.to_string(),
                })
                .collect(),
        }
    }

    pub fn resolve<'g>(&self, host: &'g Digraph) -> Result<LabeledEdgeSet<'g, Matrix<Rational>>, IoError> {
        let mut ls = LabeledEdgeSet::new(host);
        for entry in &self.edges {
            let e = host.edge_by_id(&entry.edge)?;
            ls.insert(e, entry.name.clone(), entry.value.to_matrix()?)?;
        }
        Ok(ls)
    }

    /// `(name, value)` pairs in file order.
    pub fn named_values(&self) -> Result<Vec<(String, Matrix<Rational>)>, IoError> {
        self.edges.iter().map(|e| Ok((e.name.clone(), e.value.to_matrix()?))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorGraphJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub polys: BTreeMap<String, PolyJson>,
    pub labels: BTreeMap<String, MatrixJson>,
}

impl DivisorGraphJson {
    pub fn from_divisor_graph(dg: &DivisorGraph<Matrix<Rational>>) -> Self {
        let g = dg.graph();
        DivisorGraphJson {
            graph: GraphJson::from_graph(g),
            polys: g.vertices().map(|v| (g.vertex_id(v).to_owned(), PolyJson::from_poly(dg.poly(v)))).collect(),
            labels: g.edges().map(|e| (g.edge_id(e).to_owned(), MatrixJson::from_matrix(dg.label(e)))).collect(),
        }
    }
}

/// Human-readable polynomial, e.g. `t^2 + [[0,1],[0,0]] t + …`.
pub fn format_poly(p: &NCPoly<Matrix<Rational>>) -> String {
    let Some(n) = p.degree() else { return "0".into() };
    let mut terms = Vec::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = n - j;
        let var = match power {
            0 => String::new(),
            1 => "t".into(),
            k => format!("t^{k}"),
        };
        let coeff = if c == &Matrix::identity(c.dim()) && power > 0 { String::new() } else { format_matrix(c) };
        terms.push(match (coeff.is_empty(), var.is_empty()) {
            (true, _) => var,
            (false, true) => coeff,
            (false, false) => format!("{coeff} {var}"),
        });
    }
    terms.join(" + ")
}

/// `[[a,b],[c,d]]`.
pub fn format_matrix(m: &Matrix<Rational>) -> String {
    let rows: Vec<String> =
        m.rows().map(|r| format!("[{}]", r.iter().map(format_rational).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}
