use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Digraph, EdgeIx, EdgeSet};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Digraph {
    /// Graphviz rendering. Positive edges are solid; members of `highlight`
    /// are drawn bold red. Layered graphs get one `rank=same` group per layer.
    pub fn to_dot(&self, highlight: Option<&EdgeSet<'_>>) -> String {
        self.to_dot_with(highlight, |e| self.edge_id(e).to_owned())
    }

    pub fn to_dot_with(&self, highlight: Option<&EdgeSet<'_>>, label: impl Fn(EdgeIx) -> String) -> String {
        let mut out = String::from("digraph G {\n  rankdir=TB;\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {};", quote(self.vertex_id(v)));
        }
        if self.is_layered() {
            let mut layers: BTreeMap<u32, Vec<&str>> = BTreeMap::new();
            for v in self.vertices() {
                layers.entry(self.rank(v).unwrap()).or_default().push(self.vertex_id(v));
            }
            for members in layers.values().rev() {
                let names: Vec<String> = members.iter().map(|m| quote(m)).collect();
                let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
            }
        }
        for e in self.edges() {
            let edge = self.edge(e);
            let style = if highlight.is_some_and(|h| h.contains(e)) {
                ", color=red, penwidth=2"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  {} -> {} [label={}, style=solid{}];",
                quote(self.vertex_id(edge.tail)),
                quote(self.vertex_id(edge.head)),
                quote(&label(e)),
                style
            );
        }
        out.push_str("}\n");
        out
    }
}
