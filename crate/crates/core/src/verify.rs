//! Named property suites, each run over exhaustive or seeded inputs and
//! summarized as a [`SuiteReport`].

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::closure::{completion, gamma_n_ample_fast, is_ample, is_sufficient, lemma_witness};
use crate::divisor::{build_divisor_graph, diamond_relations_check, match_boolean_lattice, verify_path_independence};
use crate::error::{DivisorError, HasseError, LabelError, PolyError, RootError};
use crate::graph::{Digraph, EdgeIx, EdgeSet};
use crate::hasse::{partition_lattice, BooleanLattice};
use crate::matrix::Matrix;
use crate::pseudoroots::{
    build_table, canonical_polynomial, d_op, diamond_holds, labeled_completion, pseudo_root, random_matrix,
    sample_generic_roots, scalar_specialize, u_op, LabeledEdgeSet, RootSet,
};
use crate::scalar::{rat, Rational};

pub const DEFAULT_SEED: u64 = 7;

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "ordering-independence",
    "census",
    "lemma325",
    "ample-sufficient",
    "ample-fast",
    "diamond-ops",
    "two-oracle",
    "divisors",
    "scalar",
];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}; known suites: {known}", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("{0}")]
    Bounds(String),
    #[error(transparent)]
    Hasse(#[from] HasseError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub n: Option<usize>,
    pub d: usize,
    pub seed: u64,
    /// Number of random cases for sampled suites.
    pub count: Option<usize>,
    /// Host for `ample-sufficient`: `boolean` or `partition`.
    pub host: String,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { n: None, d: 2, seed: DEFAULT_SEED, count: None, host: "boolean".into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub lines: Vec<String>,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), passed: true, cases: 0, lines: Vec::new(), counterexample: None }
    }

    fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }
}

fn bounded(n: Option<usize>, default: usize, min: usize, max: usize) -> Result<usize, VerifyError> {
    let n = n.unwrap_or(default);
    if (min..=max).contains(&n) {
        Ok(n)
    } else {
        Err(VerifyError::Bounds(format!("n = {n} outside {min}..={max}")))
    }
}

pub fn run_suite(name: &str, p: &VerifyParams) -> Result<SuiteReport, VerifyError> {
    match name {
        "ordering-independence" => ordering_independence(p),
        "census" => census(bounded(p.n, 3, 2, 4)?),
        "lemma325" => lemma325(bounded(p.n, 3, 2, 4)?),
        "ample-sufficient" => ample_sufficient(p),
        "ample-fast" => ample_fast(bounded(p.n, 4, 1, 4)?),
        "diamond-ops" => diamond_ops(p),
        "two-oracle" => two_oracle(p),
        "divisors" => divisors(p),
        "scalar" => scalar(bounded(p.n, 4, 1, 8)?),
        other => Err(VerifyError::UnknownSuite(other.into())),
    }
}

fn set_text(es: &EdgeSet<'_>) -> String {
    format!("[{}]", es.ids().join(", "))
}

/// Index `i` of every edge `(A, i)` in the set, as a multiset.
fn indices(lat: &BooleanLattice, es: &EdgeSet<'_>) -> Vec<usize> {
    es.iter().map(|e| lat.label(e).index).collect()
}

fn distinct(xs: &[usize]) -> bool {
    xs.iter().collect::<BTreeSet<_>>().len() == xs.len()
}

fn ordering_independence(p: &VerifyParams) -> Result<SuiteReport, VerifyError> {
    let n = bounded(p.n, 3, 1, 5)?;
    let count = p.count.unwrap_or(5);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut r = SuiteReport::new("ordering-independence");
    for case in 0..count {
        let rs = sample_generic_roots(&mut rng, n, p.d)?;
        for mask in 0..1u32 << n {
            let a: Vec<usize> = crate::hasse::Subset(mask).elements().collect();
            for i in (1..=n).filter(|i| !a.contains(i)) {
                let base = pseudo_root(&rs, &a, i)?;
                for perm in a.iter().copied().permutations(a.len()) {
                    r.cases += 1;
                    if pseudo_root(&rs, &perm, i)? != base {
                        r.fail(format!("case {case}: x_{{{a:?},{i}}} changes under ordering {perm:?}"));
                    }
                }
            }
        }
        let poly = canonical_polynomial(&rs)?;
        for (k, x) in rs.roots().iter().enumerate() {
            r.cases += 1;
            if !poly.right_eval(x)?.is_zero() {
                r.fail(format!("case {case}: x_{} is not a right root", k + 1));
            }
        }
    }
    r.lines.push(format!("n={n} d={} seed={} root sets={count} checks={}", p.d, p.seed, r.cases));
    Ok(r)
}

fn census(n: usize) -> Result<SuiteReport, VerifyError> {
    let lat = BooleanLattice::new(n)?;
    let g = lat.graph();
    let mut r = SuiteReport::new("census");
    let (mut suff, mut conn_distinct, mut disconnected_suff) = (0, 0, 0);
    for combo in g.edges().combinations(n) {
        let es = EdgeSet::from_edges(g, combo);
        let connected = es.is_connected().unwrap_or(false);
        let idx = indices(&lat, &es);
        let dist = distinct(&idx);
        let s = is_sufficient(&es).sufficient;
        r.cases += 1;
        suff += s as usize;
        conn_distinct += (connected && dist) as usize;
        disconnected_suff += (!connected && s) as usize;
        r.lines.push(format!("{} connected={connected} distinct={dist} sufficient={s}", set_text(&es)));
        if connected && dist && !s {
            r.fail(format!("connected set with distinct indices is not sufficient: {}", set_text(&es)));
        }
        if s && !dist {
            r.fail(format!("sufficient set with a repeated index: {}", set_text(&es)));
        }
    }
    r.lines.push(format!(
        "n={n} subsets={} sufficient={suff} connected_distinct={conn_distinct} disconnected_sufficient={disconnected_suff}",
        r.cases
    ));
    Ok(r)
}

/// Distinct complete connected edge sets obtained as completions of all
/// subsets with at most `max_size` edges.
pub fn complete_connected_sets(g: &Digraph, max_size: usize) -> Vec<EdgeSet<'_>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for k in 1..=max_size.min(g.edge_count()) {
        for combo in g.edges().combinations(k) {
            let c = completion(&EdgeSet::from_edges(g, combo)).set;
            let key: Vec<usize> = c.iter().map(|e: EdgeIx| e.0).collect();
            if seen.insert(key) && c.is_connected().unwrap_or(false) {
                out.push(c);
            }
        }
    }
    out
}

fn lemma325(n: usize) -> Result<SuiteReport, VerifyError> {
    let lat = BooleanLattice::new(n)?;
    let g = lat.graph();
    let sets = complete_connected_sets(g, 4);
    let mut r = SuiteReport::new("lemma325");
    for f in &sets {
        let vs = f.vertices();
        for &u in &vs {
            for &v in &vs {
                if f.path_exists(u, v) {
                    continue;
                }
                r.cases += 1;
                if let Err(e) = lemma_witness(f, u, v) {
                    r.fail(format!("{} u={} v={}: {e}", set_text(f), g.vertex_id(u), g.vertex_id(v)));
                }
            }
        }
    }
    r.lines.push(format!("n={n} complete connected sets={} (u,v) pairs={}", sets.len(), r.cases));
    Ok(r)
}

fn ample_sufficient(p: &VerifyParams) -> Result<SuiteReport, VerifyError> {
    let g = match p.host.as_str() {
        "boolean" => BooleanLattice::new(bounded(p.n, 3, 1, 4)?)?.into_graph(),
        "partition" => partition_lattice(bounded(p.n, 4, 1, 6)?)?,
        other => return Err(VerifyError::Bounds(format!("unknown host {other:?}; use boolean or partition"))),
    };
    let mut r = SuiteReport::new("ample-sufficient");
    if !g.is_modular() || !g.is_layered() {
        r.fail("host is not modular and layered".into());
        return Ok(r);
    }
    // exhaustive up to 16 edges, otherwise all subsets of at most 4 edges
    let max = if g.edge_count() <= 16 { g.edge_count() } else { 4 };
    let mut ample_connected = 0;
    for k in 1..=max {
        for combo in g.edges().combinations(k) {
            let es = EdgeSet::from_edges(&g, combo);
            r.cases += 1;
            if is_ample(&es).ample && es.is_connected().unwrap_or(false) {
                ample_connected += 1;
                if !is_sufficient(&es).sufficient {
                    r.fail(format!("ample connected set is not sufficient: {}", set_text(&es)));
                }
            }
        }
    }
    r.lines.push(format!(
        "host={} edges={} subsets={} ample_connected={ample_connected}",
        p.host,
        g.edge_count(),
        r.cases
    ));
    Ok(r)
}

fn ample_fast(n: usize) -> Result<SuiteReport, VerifyError> {
    let mut r = SuiteReport::new("ample-fast");
    for m in 1..=n {
        let lat = BooleanLattice::new(m)?;
        let g = lat.graph();
        for k in 1..=m {
            for combo in g.edges().combinations(k) {
                let es = EdgeSet::from_edges(g, combo);
                r.cases += 1;
                let fast = gamma_n_ample_fast(&lat, &es).expect("same host");
                if fast != is_ample(&es).ample {
                    r.fail(format!("n={m} {}: fast={fast}", set_text(&es)));
                }
            }
        }
    }
    r.lines.push(format!("n<={n} sets={}", r.cases));
    Ok(r)
}

fn diamond_ops(p: &VerifyParams) -> Result<SuiteReport, VerifyError> {
    let count = p.count.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut r = SuiteReport::new("diamond-ops");
    let mut singular = 0;
    while r.cases < count {
        let a = random_matrix(&mut rng, p.d);
        let b = random_matrix(&mut rng, p.d);
        let (Ok((d1, d2)), Ok((u1, u2))) = (d_op(&a, &b), u_op(&a, &b)) else {
            singular += 1;
            continue;
        };
        r.cases += 1;
        if !diamond_holds(&a, &d1, &b, &d2) {
            r.fail(format!("d_op relations fail on {a:?}, {b:?}"));
        }
        if !diamond_holds(&u1, &a, &u2, &b) {
            r.fail(format!("u_op relations fail on {a:?}, {b:?}"));
        }
    }
    r.lines.push(format!("d={} seed={} pairs={} singular_rejected={singular}", p.d, p.seed, r.cases));
    Ok(r)
}

fn two_oracle(p: &VerifyParams) -> Result<SuiteReport, VerifyError> {
    let n = bounded(p.n, 3, 1, 4)?;
    let count = p.count.unwrap_or(3);
    let lat = BooleanLattice::new(n)?;
    let bottom: Vec<EdgeIx> = (1..=n).map(|i| lat.edge(crate::hasse::GammaLabel { set: Default::default(), index: i }).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut r = SuiteReport::new("two-oracle");
    for case in 0..count {
        let rs = sample_generic_roots(&mut rng, n, p.d)?;
        let table = build_table(&rs)?;
        let ls = LabeledEdgeSet::from_table(&lat, &table, bottom.iter().copied()).expect("table covers Γ_n");
        let c = labeled_completion(&ls)?;
        if !c.unlabeled.is_empty() {
            r.fail(format!("case {case}: {} edges left unlabeled", c.unlabeled.len()));
        }
        for (e, l) in c.labeled.iter() {
            r.cases += 1;
            if Some(&l.value) != table.get(lat.label(e)) {
                r.fail(format!("case {case}: edge {} differs from the table", lat.label(e)));
            }
        }
    }
    r.lines.push(format!("n={n} d={} seed={} root sets={count} edges compared={}", p.d, p.seed, r.cases));
    Ok(r)
}

fn divisors(p: &VerifyParams) -> Result<SuiteReport, VerifyError> {
    let n = bounded(p.n, 3, 1, 4)?;
    let count = p.count.unwrap_or(1);
    let lat = BooleanLattice::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut r = SuiteReport::new("divisors");
    for case in 0..count {
        let rs = sample_generic_roots(&mut rng, n, p.d)?;
        let table = build_table(&rs)?;
        let poly = canonical_polynomial(&rs)?;
        let s: Vec<(String, Matrix<Rational>)> = table.iter().map(|(l, x)| (format!("x{l}"), x.clone())).collect();
        let dg = build_divisor_graph(&poly, &s)?;
        r.cases += 1;
        if let Err(e) = match_boolean_lattice(&dg, &lat, &table) {
            r.fail(format!("case {case}: {e}"));
        }
        let paths = verify_path_independence(&dg)?.holds();
        let diamonds = diamond_relations_check(&dg).is_none();
        if !(paths && diamonds) {
            r.fail(format!("case {case}: path independence {paths}, diamond relations {diamonds}"));
        }
    }
    r.lines.push(format!("n={n} d={} seed={} polynomials={}", p.d, p.seed, r.cases));
    Ok(r)
}

fn scalar(n: usize) -> Result<SuiteReport, VerifyError> {
    let s: Vec<Rational> = (1..=n as i64).map(|k| rat(3 * k - 7)).collect();
    let rs = RootSet::scalars(s.clone())?;
    let table = build_table(&rs)?;
    let spec = scalar_specialize(table.entries().keys().copied(), &s)?;
    let mut r = SuiteReport::new("scalar");
    for (l, v) in table.iter() {
        r.cases += 1;
        if v.get(0, 0) != &spec[&l] {
            r.fail(format!("entry {l} is not s_{}", l.index));
        }
    }
    // elementary symmetric polynomials with alternating signs
    let poly = canonical_polynomial(&rs)?;
    let mut viete = vec![rat(1)];
    for x in &s {
        let mut next = viete.clone();
        next.push(rat(0));
        for (j, c) in viete.iter().enumerate() {
            next[j + 1] = &next[j + 1] - &(c * x);
        }
        viete = next;
    }
    let coeffs: Vec<Rational> = poly.coeffs().iter().map(|c| c.get(0, 0).clone()).collect();
    r.cases += 1;
    if coeffs != viete {
        r.fail(format!("coefficients {coeffs:?} differ from Viète {viete:?}"));
    }
    r.lines.push(format!("n={n} values={s:?} entries={}", table.len()));
    Ok(r)
}
