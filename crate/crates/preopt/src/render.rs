//! DOT output for diagrams.
//!
//! Layout contract: inputs on the source rank, one rank per slice, outputs on
//! the sink rank. Wires are edges labelled with their atom; a box consumes
//! the frontier segment under it and emits one edge per output wire. Holes
//! are dashed boxes, barriers dotted boxes stretched across every live wire.
//! Output is a pure function of the diagram, so goldens can diff it.

use std::fmt::Write as _;

use crate::diagram::{Diagram, SliceKind};

/// Render a diagram (or a comb's underlying diagram) as DOT text.
pub fn render_dot(d: &Diagram) -> String {
    let sig = d.signature();
    let levels = d.levels();
    let mut out = String::new();
    out.push_str("digraph diagram {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [fontname=\"monospace\"];\n");

    // frontier[w] = name of the node currently feeding wire w
    let mut frontier: Vec<String> = Vec::new();
    out.push_str("  { rank=source;");
    for (j, a) in d.dom().atoms().iter().enumerate() {
        write!(out, " in{j} [shape=plaintext, label=\"{a}\"];").unwrap();
        frontier.push(format!("in{j}"));
    }
    out.push_str(" }\n");

    // invisible spine forcing one rank per slice
    for i in 0..d.slices().len() {
        writeln!(out, "  lvl{i} [shape=point, style=invis, label=\"\"];").unwrap();
        if i > 0 {
            writeln!(out, "  lvl{} -> lvl{i} [style=invis];", i - 1).unwrap();
        }
    }

    let mut edges: Vec<String> = Vec::new();
    for (i, s) in d.slices().iter().enumerate() {
        let level = &levels[i];
        let node = format!("n{i}");
        match s.kind {
            SliceKind::Gen(id) => {
                let g = sig.generator(id);
                writeln!(out, "  {node} [shape=box, label=\"{}\"];", g.name).unwrap();
                thread_box(&mut frontier, &mut edges, level, &node, s.offset, g.dom.len(), g.cod.len());
            }
            SliceKind::Hole(slot) => {
                let h = sig.hole(slot).expect("stored diagram has specs for its holes");
                writeln!(out, "  {node} [shape=box, style=dashed, label=\"hole {slot}\"];").unwrap();
                thread_box(&mut frontier, &mut edges, level, &node, s.offset, h.in_type.len(), h.out_type.len());
            }
            SliceKind::Barrier => {
                let w = frontier.len().max(1);
                writeln!(
                    out,
                    "  {node} [shape=box, style=dotted, label=\"\", height=0.1, width={}.0];",
                    w
                )
                .unwrap();
                let full = frontier.len();
                thread_box(&mut frontier, &mut edges, level, &node, 0, full, full);
            }
        }
        writeln!(out, "  {{ rank=same; lvl{i}; {node}; }}").unwrap();
    }

    out.push_str("  { rank=sink;");
    for (j, a) in d.cod().atoms().iter().enumerate() {
        write!(out, " out{j} [shape=plaintext, label=\"{a}\"];").unwrap();
    }
    out.push_str(" }\n");
    let last = levels.last().expect("levels() is nonempty");
    for (j, a) in last.atoms().iter().enumerate() {
        edges.push(format!("  {} -> out{j} [label=\"{a}\"];", frontier[j]));
    }

    for e in edges {
        out.push_str(&e);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

fn thread_box(
    frontier: &mut Vec<String>,
    edges: &mut Vec<String>,
    level: &crate::signature::ObjectWord,
    node: &str,
    offset: usize,
    m: usize,
    n: usize,
) {
    for j in 0..m {
        let w = offset + j;
        edges.push(format!("  {} -> {node} [label=\"{}\"];", frontier[w], level.atoms()[w]));
    }
    frontier.splice(offset..offset + m, std::iter::repeat(node.to_string()).take(n));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_diagram;
    use crate::signature::Signature;

    fn labels(dot: &str) -> Vec<String> {
        let mut out: Vec<String> = dot
            .match_indices("label=\"")
            .map(|(i, _)| {
                let rest = &dot[i + 7..];
                rest[..rest.find('"').unwrap()].to_string()
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn rendering_is_deterministic() {
        let sig = Signature::demo();
        let d = parse_diagram(&sig, "A*B | s@0, g@1, hole(B,B,0)@1, barrier").unwrap();
        assert_eq!(render_dot(&d), render_dot(&d));
        assert!(render_dot(&d).contains("style=dashed"));
        assert!(render_dot(&d).contains("style=dotted"));
    }

    #[test]
    fn normal_form_renders_the_same_label_multiset() {
        let sig = Signature::demo();
        let d = parse_diagram(&sig, "A*B | g@1, s@0, f@0").unwrap();
        let nf = d.normal_form().unwrap();
        assert_ne!(d.slices(), nf.slices(), "pick a non-normal example");
        assert_eq!(labels(&render_dot(&d)), labels(&render_dot(&nf)));
    }

    #[test]
    fn identity_threads_inputs_to_outputs() {
        let sig = Signature::demo();
        let d = parse_diagram(&sig, "A*B").unwrap();
        let dot = render_dot(&d);
        assert!(dot.contains("in0 -> out0"));
        assert!(dot.contains("in1 -> out1"));
    }
}
