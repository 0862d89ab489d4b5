//! Reference implementations used as test oracles. None of this calls into
//! the library's algebra or closure code: matrices are 2×2 with hand-written
//! arithmetic, and closures are naive fixed-point iterations.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ncfactor::graph::Digraph;
use ncfactor::{RatMatrix, Rational};
use num_traits::{One, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A 2×2 rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct M2(pub [[Rational; 2]; 2]);

impl M2 {
    pub fn zero() -> Self {
        M2([[q(0), q(0)], [q(0), q(0)]])
    }

    pub fn id() -> Self {
        M2([[q(1), q(0)], [q(0), q(1)]])
    }

    pub fn of(m: &RatMatrix) -> Self {
        assert_eq!(m.dim(), 2);
        M2([[m.get(0, 0).clone(), m.get(0, 1).clone()], [m.get(1, 0).clone(), m.get(1, 1).clone()]])
    }

    pub fn add(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        M2([[&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]], [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]]])
    }

    pub fn sub(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        M2([[&a[0][0] - &b[0][0], &a[0][1] - &b[0][1]], [&a[1][0] - &b[1][0], &a[1][1] - &b[1][1]]])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        let e = |r: usize, c: usize| &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c];
        M2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn det(&self) -> Rational {
        let a = &self.0;
        &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
    }

    /// Adjugate over determinant.
    pub fn inv(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let a = &self.0;
        Some(M2([[&a[1][1] / &d, -&a[0][1] / &d], [-&a[1][0] / &d, &a[0][0] / &d]]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    /// `(a − b) a (a − b)^{-1}`.
    pub fn lconj(a: &Self, b: &Self) -> Option<Self> {
        let d = a.sub(b);
        Some(d.mul(a).mul(&d.inv()?))
    }
}

/// Polynomial with 2×2 coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct P2(pub Vec<M2>);

impl P2 {
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![M2::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        P2(out)
    }

    /// `(t − xs[0])(t − xs[1])…`.
    pub fn from_factors(xs: &[M2]) -> Self {
        xs.iter().fold(P2(vec![M2::id()]), |acc, x| acc.mul(&P2(vec![M2::zero().sub(x), M2::id()])))
    }

    /// `Σ a_k x^k` with coefficients on the left.
    pub fn right_eval(&self, x: &M2) -> M2 {
        let mut pow = M2::id();
        let mut acc = M2::zero();
        for a in &self.0 {
            acc = acc.add(&a.mul(&pow));
            pow = pow.mul(x);
        }
        acc
    }

    /// Coefficient of `t^k` compared against a library polynomial.
    pub fn matches(&self, p: &ncfactor::RatPoly) -> bool {
        p.degree() == Some(self.0.len() - 1)
            && self.0.iter().enumerate().all(|(k, c)| *c == M2::of(&p.coeff_of_power(k)))
    }
}

/// Elementary symmetric polynomials `e_0, …, e_n` of `s`.
pub fn elementary_symmetric(s: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for x in s {
        let mut next = e.clone();
        next.push(Rational::zero());
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(Rational::zero) + x * &e[k - 1];
        }
        e = next;
    }
    e
}

/// An edge `(A, i)` of `Γ_n`: `A` as a bitmask, `i` 1-based.
pub type Gx = (u32, usize);

pub fn bit(i: usize) -> u32 {
    1 << (i - 1)
}

pub fn gamma_edges(n: usize) -> Vec<Gx> {
    let mut out = Vec::new();
    for a in 0..1u32 << n {
        for i in 1..=n {
            if a & bit(i) == 0 {
                out.push((a, i));
            }
        }
    }
    out
}

pub fn gx_tail(e: Gx) -> u32 {
    e.0 | bit(e.1)
}

pub fn gx_head(e: Gx) -> u32 {
    e.0
}

/// Naive DU-closure in `Γ_n`, applied to every pair until nothing changes.
pub fn gamma_closure(set: &BTreeSet<Gx>) -> BTreeSet<Gx> {
    let mut cur = set.clone();
    loop {
        let mut add = Vec::new();
        for &e in &cur {
            for &f in &cur {
                if e == f {
                    continue;
                }
                if gx_tail(e) == gx_tail(f) {
                    let low = gx_tail(e) & !bit(e.1) & !bit(f.1);
                    add.push((low, f.1));
                    add.push((low, e.1));
                }
                if gx_head(e) == gx_head(f) {
                    let h = gx_head(e);
                    add.push((h | bit(e.1), f.1));
                    add.push((h | bit(f.1), e.1));
                }
            }
        }
        let before = cur.len();
        cur.extend(add);
        if cur.len() == before {
            return cur;
        }
    }
}

/// `(A, i)` in the library's label syntax, e.g. `{1,3}:2`.
pub fn gx_id(e: Gx) -> String {
    let elems: Vec<String> = (1..=32).filter(|&k| e.0 & bit(k) != 0).map(|k| k.to_string()).collect();
    format!("{{{}}}:{}", elems.join(","), e.1)
}

/// A host graph as plain `(tail, head)` index pairs.
#[derive(Clone, Debug)]
pub struct Plain {
    pub nv: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Plain {
    pub fn of(g: &Digraph) -> Self {
        Plain { nv: g.vertex_count(), edges: g.edges().map(|e| (g.tail(e).0, g.head(e).0)).collect() }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    fn edge_index(&self, u: usize, v: usize) -> usize {
        self.edges.iter().position(|&x| x == (u, v)).unwrap()
    }

    /// Naive DU-closure of a set of edge indices.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut cur = set.clone();
        loop {
            let mut add = Vec::new();
            for &a in &cur {
                for &b in &cur {
                    let ((ta, ha), (tb, hb)) = (self.edges[a], self.edges[b]);
                    if a == b {
                        continue;
                    }
                    if ta == tb {
                        for w in 0..self.nv {
                            if self.has_edge(ha, w) && self.has_edge(hb, w) {
                                add.push(self.edge_index(ha, w));
                                add.push(self.edge_index(hb, w));
                            }
                        }
                    }
                    if ha == hb {
                        for z in 0..self.nv {
                            if self.has_edge(z, ta) && self.has_edge(z, tb) {
                                add.push(self.edge_index(z, ta));
                                add.push(self.edge_index(z, tb));
                            }
                        }
                    }
                }
            }
            let before = cur.len();
            cur.extend(add);
            if cur.len() == before {
                return cur;
            }
        }
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.nv).filter(|&v| self.edges.iter().all(|&(_, h)| h != v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.nv).filter(|&v| self.edges.iter().all(|&(t, _)| t != v)).collect()
    }

    /// Reflexive-transitive closure of the host, by Floyd–Warshall.
    pub fn reach(&self) -> Vec<Vec<bool>> {
        let n = self.nv;
        let mut r = vec![vec![false; n]; n];
        for (v, row) in r.iter_mut().enumerate() {
            row[v] = true;
        }
        for &(t, h) in &self.edges {
            r[t][h] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if r[i][k] {
                    for j in 0..n {
                        if r[k][j] {
                            r[i][j] = true;
                        }
                    }
                }
            }
        }
        r
    }

    pub fn spanned(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect()
    }

    /// Weak connectivity of the spanned vertices through member edges.
    pub fn connected(&self, set: &BTreeSet<usize>) -> bool {
        let vs = self.spanned(set);
        let Some(&start) = vs.iter().next() else { return false };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in set {
                let (t, h) = self.edges[e];
                for (a, b) in [(t, h), (h, t)] {
                    if a == v && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        seen == vs
    }

    /// Does the set contain a nonempty directed path from a host source to a host sink?
    pub fn source_sink_path(&self, set: &BTreeSet<usize>) -> bool {
        let sinks = self.sinks();
        for s in self.sources() {
            let mut seen = BTreeSet::new();
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in set {
                    let (t, h) = self.edges[e];
                    if t == v {
                        if sinks.contains(&h) {
                            return true;
                        }
                        if seen.insert(h) {
                            stack.push(h);
                        }
                    }
                }
            }
        }
        false
    }

    pub fn sufficient(&self, set: &BTreeSet<usize>) -> bool {
        self.source_sink_path(&self.closure(set))
    }

    /// Both ampleness conditions, quantified over every host vertex.
    pub fn ample(&self, set: &BTreeSet<usize>) -> bool {
        let r = self.reach();
        let w = self.spanned(set);
        let (sources, sinks) = (self.sources(), self.sinks());
        (0..self.nv).all(|v| {
            let c1 = sinks.contains(&v) || w.iter().any(|&u| !r[u][v]);
            let c2 = sources.contains(&v) || w.iter().any(|&x| !r[v][x]);
            c1 && c2
        })
    }

    /// Brute-force modularity: every common-tail pair of edges has heads
    /// with a common successor, and dually.
    pub fn modular(&self) -> bool {
        let succ = |v: usize| -> BTreeSet<usize> { self.edges.iter().filter(|e| e.0 == v).map(|e| e.1).collect() };
        let pred = |v: usize| -> BTreeSet<usize> { self.edges.iter().filter(|e| e.1 == v).map(|e| e.0).collect() };
        for (a, &(ta, ha)) in self.edges.iter().enumerate() {
            for &(tb, hb) in &self.edges[a + 1..] {
                if ta == tb && succ(ha).is_disjoint(&succ(hb)) {
                    return false;
                }
                if ha == hb && pred(ta).is_disjoint(&pred(tb)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Subsets of `0..m` given by the bits of `mask`.
pub fn mask_set(mask: u64, m: usize) -> BTreeSet<usize> {
    (0..m).filter(|&k| mask >> k & 1 == 1).collect()
}
