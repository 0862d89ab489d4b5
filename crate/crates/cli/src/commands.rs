use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ncfactor::closure::{completion, is_ample, is_sufficient, AmpleFailure, ClosureTrace};
use ncfactor::divisor::build_divisor_graph;
use ncfactor::error::LabelError;
use ncfactor::graph::{Digraph, EdgeIx, EdgeSet, ModularityViolation, VertexIx};
use ncfactor::hasse::{complex_hasse, partition_lattice, BooleanLattice, GammaLabel, Subset};
use ncfactor::io::{
    format_matrix, format_poly, DivisorGraphJson, EdgeSetJson, GraphJson, LabeledSetJson, MatrixJson, PolyJson,
    RootSetJson,
};
use ncfactor::pseudoroots::{
    build_table, canonical_polynomial, derive_factorization, polynomial_for_ordering, random_generic_roots,
};
use ncfactor::verify::{run_suite, SuiteReport, VerifyParams, SUITES};
use ncfactor::RatPoly;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::failure::Failure;
use crate::{Cli, Command, Format, GenKind};

/// Largest root count accepted by `gen roots`.
const MAX_GEN_ROOTS: usize = 8;

/// Runs the parsed command; `Ok(false)` means the property asked about is false.
pub fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Gen { kind, n, d, faces } => gen(cli, *kind, *n, *d, faces.as_deref()),
        Command::Check { graph } => check(cli, graph),
        Command::Closure { graph, edgeset } => closure(cli, graph, edgeset),
        Command::Sufficient { graph, edgeset } => sufficient(cli, graph, edgeset),
        Command::Ample { graph, edgeset } => ample(cli, graph, edgeset),
        Command::Factor { rootset, orderings } => factor(cli, rootset, orderings),
        Command::Derive { graph, labeled } => derive(cli, graph, labeled),
        Command::Divisors { poly, labeled } => divisors(cli, poly, labeled),
        Command::Verify { suite, n, d, count, host } => {
            let params = VerifyParams { n: *n, d: *d, seed: cli.seed, count: *count, host: host.clone() };
            verify(cli, suite, &params)
        }
    }
}

fn format(cli: &Cli, default: Format) -> Format {
    cli.format.unwrap_or(default)
}

fn unsupported(cmd: &str, f: Format) -> Failure {
    Failure::input(format!("{cmd} has no {f:?} output").to_lowercase())
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Digraph, Failure> {
    let gj: GraphJson = read_json(path)?;
    gj.to_graph().map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_edgeset<'g>(g: &'g Digraph, path: &Path) -> Result<EdgeSet<'g>, Failure> {
    let ej: EdgeSetJson = read_json(path)?;
    ej.resolve(g).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn edge_ids(g: &Digraph, edges: impl IntoIterator<Item = EdgeIx>) -> Vec<String> {
    edges.into_iter().map(|e| g.edge_id(e).to_owned()).collect()
}

fn vertex_ids(g: &Digraph, vs: impl IntoIterator<Item = VertexIx>) -> Vec<String> {
    vs.into_iter().map(|v| g.vertex_id(v).to_owned()).collect()
}

fn bracketed(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

fn graph_text(g: &Digraph) -> String {
    let mut s = format!("vertices: {}\nedges: {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "{}: {} -> {}", g.edge_id(e), g.vertex_id(g.tail(e)), g.vertex_id(g.head(e)));
    }
    s
}

fn gen(cli: &Cli, kind: GenKind, n: Option<usize>, d: usize, faces: Option<&Path>) -> Result<bool, Failure> {
    let need_n = || n.ok_or_else(|| Failure::input("-n is required"));
    let g = match kind {
        GenKind::Boolean => BooleanLattice::new(need_n()?)?.into_graph(),
        GenKind::Partition => partition_lattice(need_n()?)?,
        GenKind::Complex => {
            let path = faces.ok_or_else(|| Failure::input("gen complex needs --faces"))?;
            let family: Vec<BTreeSet<usize>> = read_json(path)?;
            complex_hasse(&family)?
        }
        GenKind::Roots => {
            let n = need_n()?;
            if !(1..=MAX_GEN_ROOTS).contains(&n) || d == 0 {
                return Err(Failure::input(format!("need 1 <= n <= {MAX_GEN_ROOTS} and d >= 1")));
            }
            let rs = random_generic_roots(n, d, cli.seed)?;
            let text = match format(cli, Format::Json) {
                Format::Json => pretty(&RootSetJson::from_roots(&rs)),
                Format::Text => rs.roots().iter().enumerate().map(|(k, x)| format!("x{} = {}\n", k + 1, format_matrix(x))).collect(),
                f => return Err(unsupported("gen roots", f)),
            };
            emit(cli, &text)?;
            return Ok(true);
        }
    };
    let text = match format(cli, Format::Json) {
        Format::Json => pretty(&GraphJson::from_graph(&g)),
        Format::Dot => g.to_dot(None),
        Format::Text => graph_text(&g),
    };
    emit(cli, &text)?;
    Ok(true)
}

fn violation_text(g: &Digraph, v: ModularityViolation) -> String {
    match v {
        ModularityViolation::CommonTail(a, b) => {
            format!("edges {} and {} share a tail but their heads have no common successor", g.edge_id(a), g.edge_id(b))
        }
        ModularityViolation::CommonHead(a, b) => {
            format!("edges {} and {} share a head but their tails have no common predecessor", g.edge_id(a), g.edge_id(b))
        }
    }
}

fn check(cli: &Cli, path: &Path) -> Result<bool, Failure> {
    let gj: GraphJson = read_json(path)?;
    let builder = gj.to_builder();
    let report = builder.validate();
    if !report.is_valid() {
        let errs: Vec<String> = report.errors.iter().map(ToString::to_string).collect();
        return Err(Failure::input(format!(
            "{}: simple={} acyclic={}: {}",
            path.display(),
            report.simple,
            report.acyclic,
            errs.join("; ")
        )));
    }
    let g = builder.build()?;
    let layered = g.is_layered();
    let violation = g.modularity_violation();
    let sources = vertex_ids(&g, g.sources());
    let sinks = vertex_ids(&g, g.sinks());
    let ok = layered && violation.is_none();
    let text = match format(cli, Format::Text) {
        Format::Text => {
            let mut s = format!(
                "simple: true\nacyclic: true\nlayered: {layered}\nmodular: {}\nsources: {}\nsinks: {}\n",
                violation.is_none(),
                sources.join(", "),
                sinks.join(", ")
            );
            if let Some(v) = violation {
                let _ = writeln!(s, "modularity witness: {}", violation_text(&g, v));
            }
            s
        }
        Format::Json => pretty(&json!({
            "simple": true,
            "acyclic": true,
            "layered": layered,
            "modular": violation.is_none(),
            "modularity_witness": violation.map(|v| violation_text(&g, v)),
            "sources": sources,
            "sinks": sinks,
        })),
        Format::Dot => g.to_dot(None),
    };
    emit(cli, &text)?;
    Ok(ok)
}

fn trace_json(g: &Digraph, trace: &ClosureTrace) -> Value {
    trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "kind": s.kind.to_string(),
                "input": [g.edge_id(s.input.0), g.edge_id(s.input.1)],
                "output": [g.edge_id(s.output.0), g.edge_id(s.output.1)],
                "new": edge_ids(g, s.new_edges.iter().copied()),
            })
        })
        .collect()
}

fn closure(cli: &Cli, graph: &Path, edgeset: &Path) -> Result<bool, Failure> {
    let g = load_graph(graph)?;
    let es = load_edgeset(&g, edgeset)?;
    let c = completion(&es);
    let members = edge_ids(&g, c.set.iter());
    let text = match format(cli, Format::Text) {
        Format::Text => {
            let mut s = format!(
                "input: {}\ncompletion: {} ({} edges)\nsteps: {}\n",
                bracketed(&edge_ids(&g, es.iter())),
                bracketed(&members),
                members.len(),
                c.trace.steps.len()
            );
            for (k, line) in c.trace.render(&g).iter().enumerate() {
                let _ = writeln!(s, "step {}: {line}", k + 1);
            }
            s
        }
        Format::Json => pretty(&json!({
            "input": edge_ids(&g, es.iter()),
            "completion": members,
            "trace": trace_json(&g, &c.trace),
        })),
        Format::Dot => g.to_dot(Some(&c.set)),
    };
    emit(cli, &text)?;
    Ok(true)
}

fn sufficient(cli: &Cli, graph: &Path, edgeset: &Path) -> Result<bool, Failure> {
    let g = load_graph(graph)?;
    let es = load_edgeset(&g, edgeset)?;
    let s = is_sufficient(&es);
    let path = s.path.as_ref().map(|p| edge_ids(&g, p.iter().copied()));
    let members = edge_ids(&g, s.completion.set.iter());
    let text = match format(cli, Format::Text) {
        Format::Text => format!(
            "sufficient: {}\npath: {}\ncompletion: {}\n",
            s.sufficient,
            path.as_ref().map_or("none".to_owned(), |p| p.join(" -> ")),
            bracketed(&members)
        ),
        Format::Json => pretty(&json!({
            "sufficient": s.sufficient,
            "path": path,
            "completion": members,
        })),
        Format::Dot => {
            let shown = match &s.path {
                Some(p) => EdgeSet::from_edges(&g, p.iter().copied()),
                None => s.completion.set.clone(),
            };
            g.to_dot(Some(&shown))
        }
    };
    emit(cli, &text)?;
    Ok(s.sufficient)
}

fn ample(cli: &Cli, graph: &Path, edgeset: &Path) -> Result<bool, Failure> {
    let g = load_graph(graph)?;
    let es = load_edgeset(&g, edgeset)?;
    let report = is_ample(&es);
    let connected = es.is_connected()?;
    let spanned = vertex_ids(&g, es.vertices());
    let witness = report.failure.map(|f| match f {
        AmpleFailure::AllReach(v) => {
            (format!("every spanned vertex reaches the non-sink {}", g.vertex_id(v)), "all-reach", g.vertex_id(v))
        }
        AmpleFailure::ReachesAll(v) => {
            (format!("the non-source {} reaches every spanned vertex", g.vertex_id(v)), "reaches-all", g.vertex_id(v))
        }
    });
    let text = match format(cli, Format::Text) {
        Format::Text => {
            let mut s = format!("ample: {}\nconnected: {connected}\nspanned: {}\n", report.ample, bracketed(&spanned));
            if let Some((w, _, _)) = &witness {
                let _ = writeln!(s, "witness: {w}");
            }
            s
        }
        Format::Json => pretty(&json!({
            "ample": report.ample,
            "connected": connected,
            "spanned": spanned,
            "witness": witness.as_ref().map(|(_, kind, v)| json!({"kind": kind, "vertex": v})),
        })),
        Format::Dot => g.to_dot(Some(&es)),
    };
    emit(cli, &text)?;
    Ok(report.ample)
}

fn parse_ordering(s: &str, n: usize) -> Result<Vec<usize>, Failure> {
    let ord: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::input(format!("ordering {s:?} is not a comma-separated list of indices")))?;
    let mut sorted = ord.clone();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(Failure::input(format!("ordering {s:?} is not a permutation of 1..={n}")));
    }
    Ok(ord)
}

fn factor(cli: &Cli, path: &Path, orderings: &[String]) -> Result<bool, Failure> {
    let rs = read_json::<RootSetJson>(path)?.to_roots()?;
    let n = rs.n();
    rs.genericity().clone()?;
    let poly = canonical_polynomial(&rs)?;
    let table = build_table(&rs)?;
    let orderings: Vec<Vec<usize>> = if orderings.is_empty() {
        vec![(1..=n).collect()]
    } else {
        orderings.iter().map(|s| parse_ordering(s, n)).collect::<Result<_, _>>()?
    };

    let mut chains = Vec::new();
    for ord in &orderings {
        let mut labels = Vec::with_capacity(n);
        for k in 0..n {
            let label = GammaLabel::new(Subset::from_elements(ord[..k].iter().copied()), ord[k]).map_err(Failure::input)?;
            labels.push(label);
        }
        if polynomial_for_ordering(&rs, ord)? != poly {
            return Err(Failure::Numeric(format!("ordering {ord:?} gives a different polynomial")));
        }
        // (t − y_n)…(t − y_1): the last chain edge comes first
        labels.reverse();
        chains.push((ord, labels));
    }

    let text = match format(cli, Format::Text) {
        Format::Text => {
            let mut s = format!("n: {n}\nd: {}\nP(t) = {}\ntable:\n", rs.d(), format_poly(&poly));
            for (label, m) in table.iter() {
                let _ = writeln!(s, "  x[{label}] = {}", format_matrix(m));
            }
            for (ord, labels) in &chains {
                let ord: Vec<String> = ord.iter().map(ToString::to_string).collect();
                let product: String = labels.iter().map(|l| format!("(t - x[{l}])")).collect();
                let _ = writeln!(s, "ordering {}: P(t) = {product}", ord.join(","));
            }
            s
        }
        Format::Json => pretty(&json!({
            "n": n,
            "d": rs.d(),
            "polynomial": PolyJson::from_poly(&poly),
            "table": table.iter().map(|(l, m)| (l.to_string(), MatrixJson::from_matrix(m))).collect::<BTreeMap<_, _>>(),
            "factorizations": chains.iter().map(|(ord, labels)| json!({
                "ordering": ord,
                "factors": labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        f => return Err(unsupported("factor", f)),
    };
    emit(cli, &text)?;
    Ok(true)
}

fn coefficient_lines(p: &RatPoly) -> Vec<(usize, String)> {
    let deg = p.degree().unwrap_or(0);
    (0..=deg).rev().map(|k| (k, format_matrix(&p.coeff_of_power(k)))).collect()
}

fn derive(cli: &Cli, graph: &Path, labeled: &Path) -> Result<bool, Failure> {
    let g = load_graph(graph)?;
    let ls = read_json::<LabeledSetJson>(labeled)?.resolve(&g)?;
    let f = match derive_factorization(&ls) {
        Ok(f) => f,
        Err(LabelError::NotSufficient) => {
            let text = match format(cli, Format::Text) {
                Format::Json => pretty(&json!({ "sufficient": false })),
                Format::Dot => g.to_dot(Some(&ls.edge_set())),
                Format::Text => "sufficient: false\n".to_owned(),
            };
            emit(cli, &text)?;
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let path = edge_ids(&g, f.path.iter().copied());
    let text = match format(cli, Format::Text) {
        Format::Text => {
            let mut s = format!("sufficient: true\npath: {}\n", path.join(" -> "));
            for (k, ((id, x), expr)) in path.iter().zip(&f.factors).zip(&f.exprs).enumerate() {
                let _ = writeln!(s, "factor {}: {id} = {}", k + 1, format_matrix(x));
                let _ = writeln!(s, "  expr: {expr}");
            }
            let _ = writeln!(s, "P(t) = {}", format_poly(&f.polynomial));
            for (k, c) in coefficient_lines(&f.polynomial) {
                let _ = writeln!(s, "coefficient t^{k}: {c}");
            }
            let _ = writeln!(s, "labeled edges: {}", f.completion.labeled.len());
            let _ = writeln!(s, "skipped steps: {}", f.completion.skipped.len());
            s
        }
        Format::Json => {
            let labels: serde_json::Map<String, Value> = f
                .completion
                .labeled
                .iter()
                .map(|(e, l)| {
                    (g.edge_id(e).to_owned(), json!({"value": MatrixJson::from_matrix(&l.value), "expr": l.expr.to_string()}))
                })
                .collect();
            pretty(&json!({
                "sufficient": true,
                "path": path,
                "factors": path.iter().zip(&f.factors).zip(&f.exprs).map(|((id, x), expr)| json!({
                    "edge": id,
                    "value": MatrixJson::from_matrix(x),
                    "expr": expr.to_string(),
                })).collect::<Vec<_>>(),
                "polynomial": PolyJson::from_poly(&f.polynomial),
                "labels": labels,
                "skipped_steps": f.completion.skipped.len(),
            }))
        }
        Format::Dot => {
            let exprs = &f.completion.labeled;
            let shown = EdgeSet::from_edges(&g, f.path.iter().copied());
            g.to_dot_with(Some(&shown), |e| match exprs.get(e) {
                Some(l) => format!("{} = {}", g.edge_id(e), l.expr),
                None => g.edge_id(e).to_owned(),
            })
        }
    };
    emit(cli, &text)?;
    Ok(true)
}

fn divisors(cli: &Cli, poly: &Path, labeled: &Path) -> Result<bool, Failure> {
    let p = read_json::<PolyJson>(poly)?.to_poly()?;
    let s = read_json::<LabeledSetJson>(labeled)?.named_values()?;
    let dg = build_divisor_graph(&p, &s)?;
    let g = dg.graph();
    let text = match format(cli, Format::Json) {
        Format::Json => pretty(&DivisorGraphJson::from_divisor_graph(&dg)),
        Format::Dot => g.to_dot_with(None, |e| dg.label_name(e).to_owned()),
        Format::Text => {
            let mut s = format!("vertices: {}\nedges: {}\n", g.vertex_count(), g.edge_count());
            for v in g.vertices() {
                let _ = writeln!(s, "{} = {}", g.vertex_id(v), format_poly(dg.poly(v)));
            }
            for e in g.edges() {
                let _ = writeln!(s, "{}: {} -> {}", g.edge_id(e), g.vertex_id(g.tail(e)), g.vertex_id(g.head(e)));
            }
            let unit = dg.unit_vertex().map_or("none".to_owned(), |v| g.vertex_id(v).to_owned());
            let _ = writeln!(s, "unit vertex: {unit}");
            let _ = writeln!(s, "unused: {}", bracketed(dg.unused()));
            s
        }
    };
    emit(cli, &text)?;
    Ok(true)
}

fn report_text(r: &SuiteReport, s: &mut String) {
    for line in &r.lines {
        let _ = writeln!(s, "{line}");
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(s, "counterexample: {c}");
    }
    let _ = writeln!(s, "suite={} passed={} cases={}", r.suite, r.passed, r.cases);
}

fn verify(cli: &Cli, suite: &str, params: &VerifyParams) -> Result<bool, Failure> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let reports = names.iter().map(|name| run_suite(name, params)).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let text = match format(cli, Format::Text) {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                report_text(r, &mut s);
            }
            if reports.len() > 1 {
                let _ = writeln!(s, "all passed={passed}");
            }
            s
        }
        Format::Json if reports.len() == 1 => pretty(&reports[0]),
        Format::Json => pretty(&json!({ "passed": passed, "suites": reports })),
        f => return Err(unsupported("verify", f)),
    };
    emit(cli, &text)?;
    Ok(passed)
}
