//! Graphviz renderings. Highlighted edges are red, as in certificate
//! drawings; edges between branch sets of a minor model are blue.

use std::collections::BTreeSet;
use std::fmt::Write;

use linfdim::graph_core::MinorModel;
use linfdim::scalar::format_rational;
use linfdim::structure::SpqrTree;
use linfdim::{EdgeId, Graph, Rational};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_dot(g: &Graph, d: Option<&[Rational]>, red: &BTreeSet<EdgeId>) -> String {
    let mut out = String::from("graph G {\n");
    for name in g.names() {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut attrs = Vec::new();
        if let Some(d) = d {
            attrs.push(format!("label={}", quote(&format_rational(&d[e]))));
        }
        if red.contains(&e) {
            attrs.push("color=red".into());
            attrs.push("penwidth=2".into());
        }
        let attrs = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
        writeln!(out, "  {} -- {}{};", quote(g.name(u)), quote(g.name(v)), attrs).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn spqr_dot(t: &SpqrTree) -> String {
    let mut out = String::from("graph T {\n  node [shape=box];\n");
    for (i, node) in t.nodes.iter().enumerate() {
        let names: Vec<&str> = node.minor.vertices.iter().map(|&v| t.host.name(v)).collect();
        let label = format!("{}{}: {}", node.kind.tag(), i, names.join(" "));
        writeln!(out, "  n{i} [label={}];", quote(&label)).unwrap();
    }
    for te in &t.tree_edges {
        let label = format!("{}{}", t.host.name(te.ends.0), t.host.name(te.ends.1));
        writeln!(out, "  n{} -- n{} [label={}];", te.a, te.b, quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The host graph with branch sets in red and one blue edge per pattern
/// edge.
pub fn model_dot(m: &MinorModel) -> String {
    let mut owner = vec![None; m.host.n()];
    for (a, img) in m.images.iter().enumerate() {
        for &v in img {
            owner[v] = Some(a);
        }
    }
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = String::from("graph M {\n");
    for (v, name) in m.host.names().iter().enumerate() {
        let attrs = match owner[v] {
            Some(a) => format!(" [color=red, xlabel={}]", quote(m.pattern.name(a))),
            None => " [color=gray]".to_string(),
        };
        writeln!(out, "  {}{};", quote(name), attrs).unwrap();
    }
    for &(u, v) in m.host.edges() {
        let color = match (owner[u], owner[v]) {
            (Some(a), Some(b)) if a == b => "red",
            (Some(a), Some(b)) if m.pattern.has_edge(a, b) && used.insert((a.min(b), a.max(b))) => "blue",
            _ => "lightgray",
        };
        writeln!(out, "  {} -- {} [color={color}];", quote(m.host.name(u)), quote(m.host.name(v))).unwrap();
    }
    out.push_str("}\n");
    out
}
