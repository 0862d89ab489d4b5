//! Hasse graphs of ranked posets: the subset lattice `Γ_n`, complexes of
//! subsets, and the partition order by consecutive-block summation.
//!
//! Every generator returns an ordinary [`Digraph`] whose edges run from the
//! larger element (tail) to the element it covers (head), with rank attached.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::HasseError;
use crate::graph::{Digraph, EdgeIx, GraphBuilder, VertexIx};

pub const MAX_BOOLEAN_N: usize = 12;
pub const MAX_PARTITION_N: usize = 10;

/// A subset of `{1, …, 32}` stored as a bitmask (bit `i-1` ↔ element `i`).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        Subset(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn from_elements(elems: impl IntoIterator<Item = usize>) -> Self {
        Subset(elems.into_iter().fold(0, |m, i| m | (1 << (i - 1))))
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << (i - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for Subset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| format!("subset must look like {{1,3}}: {s:?}"))?;
        let mut set = Subset::EMPTY;
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok.parse().map_err(|_| format!("bad element {tok:?} in {s:?}"))?;
            if !(1..=32).contains(&i) {
                return Err(format!("element {i} out of range in {s:?}"));
            }
            set = set.with(i);
        }
        Ok(set)
    }
}

/// The edge `(A, i)` of `Γ_n`, running from `A ∪ {i}` down to `A`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GammaLabel {
    pub set: Subset,
    pub index: usize,
}

impl GammaLabel {
    pub fn new(set: Subset, index: usize) -> Result<Self, String> {
        if index == 0 || index > 32 {
            return Err(format!("index {index} out of range"));
        }
        if set.contains(index) {
            return Err(format!("index {index} lies in {set}"));
        }
        Ok(GammaLabel { set, index })
    }

    pub fn tail(self) -> Subset {
        self.set.with(self.index)
    }

    pub fn head(self) -> Subset {
        self.set
    }
}

impl fmt::Display for GammaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.set, self.index)
    }
}

impl FromStr for GammaLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (set, index) = s.rsplit_once(':').ok_or_else(|| format!("edge label must look like {{1,3}}:2: {s:?}"))?;
        let index: usize = index.trim().parse().map_err(|_| format!("bad index in {s:?}"))?;
        GammaLabel::new(set.parse()?, index)
    }
}

/// `Γ_n` together with the subset / label bookkeeping for its vertices and
/// edges. Vertex `k` is the subset with mask `k`; edges are ordered by
/// `(A, i)`.
#[derive(Clone, Debug)]
pub struct BooleanLattice {
    n: usize,
    graph: Digraph,
    labels: Vec<GammaLabel>,
}

impl BooleanLattice {
    pub fn new(n: usize) -> Result<Self, HasseError> {
        if !(1..=MAX_BOOLEAN_N).contains(&n) {
            return Err(HasseError::OutOfRange { n, min: 1, max: MAX_BOOLEAN_N });
        }
        let mut b = GraphBuilder::new();
        for mask in 0..(1u32 << n) {
            let s = Subset(mask);
            b.vertex(s.to_string(), Some(s.len() as u32));
        }
        let mut labels = Vec::with_capacity(n << (n - 1));
        for mask in 0..(1u32 << n) {
            let a = Subset(mask);
            for i in 1..=n {
                if !a.contains(i) {
                    let label = GammaLabel { set: a, index: i };
                    b.edge(label.to_string(), label.tail().to_string(), a.to_string());
                    labels.push(label);
                }
            }
        }
        Ok(BooleanLattice { n, graph: b.build()?, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn into_graph(self) -> Digraph {
        self.graph
    }

    pub fn label(&self, e: EdgeIx) -> GammaLabel {
        self.labels[e.0]
    }

    pub fn labels(&self) -> &[GammaLabel] {
        &self.labels
    }

    pub fn edge(&self, label: GammaLabel) -> Option<EdgeIx> {
        self.graph.edge_between(self.vertex(label.tail())?, self.vertex(label.head())?)
    }

    pub fn vertex(&self, s: Subset) -> Option<VertexIx> {
        (s.is_subset_of(Subset::full(self.n))).then_some(VertexIx(s.0 as usize))
    }

    pub fn subset(&self, v: VertexIx) -> Subset {
        Subset(v.0 as u32)
    }

    pub fn top(&self) -> VertexIx {
        VertexIx(Subset::full(self.n).0 as usize)
    }

    pub fn bottom(&self) -> VertexIx {
        VertexIx(0)
    }
}

/// `Γ_n` as a plain graph.
pub fn boolean_lattice(n: usize) -> Result<Digraph, HasseError> {
    BooleanLattice::new(n).map(BooleanLattice::into_graph)
}

/// Result of [`hasse_from_poset`]. When some cover jumps more than one rank
/// the graph is returned without ranks and the offending edges are listed.
#[derive(Clone, Debug)]
pub struct HasseGraph {
    pub graph: Digraph,
    pub rank_gaps: Vec<(String, String)>,
}

/// Hasse graph of a finite strict partial order: an edge `x → y` for every
/// covering pair `y < x`.
///
/// The order is checked for irreflexivity, antisymmetry and transitivity on
/// the given elements, and the rank for strict monotonicity.
pub fn hasse_from_poset<T>(
    elements: &[T],
    less: impl Fn(&T, &T) -> bool,
    rank: impl Fn(&T) -> u32,
    name: impl Fn(&T) -> String,
) -> Result<HasseGraph, HasseError> {
    let n = elements.len();
    let lt: Vec<Vec<bool>> = elements.iter().map(|a| elements.iter().map(|b| less(a, b)).collect()).collect();
    let names: Vec<String> = elements.iter().map(&name).collect();
    let ranks: Vec<u32> = elements.iter().map(&rank).collect();

    for i in 0..n {
        if lt[i][i] {
            return Err(HasseError::Reflexive(names[i].clone()));
        }
        for j in 0..n {
            if !lt[i][j] {
                continue;
            }
            if lt[j][i] {
                return Err(HasseError::NotAntisymmetric(names[i].clone(), names[j].clone()));
            }
            if ranks[i] >= ranks[j] {
                return Err(HasseError::RankNotMonotone { lower: names[i].clone(), upper: names[j].clone() });
            }
            for k in 0..n {
                if lt[j][k] && !lt[i][k] {
                    return Err(HasseError::NotTransitive(names[i].clone(), names[j].clone(), names[k].clone()));
                }
            }
        }
    }

    let mut covers = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt[y][x] && !(0..n).any(|z| lt[y][z] && lt[z][x]) {
                covers.push((x, y));
            }
        }
    }
    let rank_gaps: Vec<(String, String)> = covers
        .iter()
        .filter(|&&(x, y)| ranks[x] != ranks[y] + 1)
        .map(|&(x, y)| (names[x].clone(), names[y].clone()))
        .collect();

    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(names[i].clone(), rank_gaps.is_empty().then_some(ranks[i]));
    }
    for &(x, y) in &covers {
        b.edge(format!("{}>{}", names[x], names[y]), names[x].clone(), names[y].clone());
    }
    Ok(HasseGraph { graph: b.build()?, rank_gaps })
}

/// Hasse graph of a downward-closed family of subsets, ranked by size.
pub fn complex_hasse(family: &[BTreeSet<usize>]) -> Result<Digraph, HasseError> {
    let sets: Vec<Subset> = family
        .iter()
        .map(|s| {
            if s.iter().any(|&i| !(1..=32).contains(&i)) {
                Err(HasseError::OutOfRange { n: *s.iter().max().unwrap(), min: 1, max: 32 })
            } else {
                Ok(Subset::from_elements(s.iter().copied()))
            }
        })
        .collect::<Result<_, _>>()?;
    let mut uniq: Vec<Subset> = sets.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    uniq.sort_by_key(|s| (s.len(), *s));
    let present: HashSet<Subset> = uniq.iter().copied().collect();
    // one-element removals suffice for downward closure by induction
    for &b in &uniq {
        for i in b.elements() {
            if !present.contains(&b.without(i)) {
                return Err(HasseError::NotAComplex { subset: b.without(i).to_string(), superset: b.to_string() });
            }
        }
    }
    let h = hasse_from_poset(
        &uniq,
        |a, b| a != b && a.is_subset_of(*b),
        |s| s.len() as u32,
        |s| s.to_string(),
    )?;
    Ok(h.graph)
}

/// A partition of `n` as a weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ≤ finer`: the parts of `self` are the sums of consecutive blocks
    /// of the parts of `finer`, in the order written.
    pub fn is_coarsening_of(&self, finer: &Partition) -> bool {
        let mut it = finer.0.iter();
        for &target in &self.0 {
            let mut acc = 0;
            while acc < target {
                match it.next() {
                    Some(&p) => acc += p,
                    None => return false,
                }
            }
            if acc != target {
                return false;
            }
        }
        it.next().is_none()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order starting from `(n)`.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Hasse graph of the partitions of `n` under consecutive-block summation,
/// ranked by length. Finer partitions sit higher.
pub fn partition_lattice(n: usize) -> Result<Digraph, HasseError> {
    if !(1..=MAX_PARTITION_N).contains(&n) {
        return Err(HasseError::OutOfRange { n, min: 1, max: MAX_PARTITION_N });
    }
    let parts = partitions(n as u32);
    let h = hasse_from_poset(
        &parts,
        |a, b| a != b && a.is_coarsening_of(b),
        |p| p.len() as u32,
        |p| p.to_string(),
    )?;
    if let Some((x, y)) = h.rank_gaps.first() {
        return Err(HasseError::RankGap { upper: x.clone(), lower: y.clone() });
    }
    Ok(h.graph)
}
