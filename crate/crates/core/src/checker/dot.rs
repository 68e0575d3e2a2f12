use std::fmt::Write;

use super::Lts;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes are state digests. The initial state is boxed, terminal states are
/// double circles.
pub(super) fn render(lts: &Lts<'_>) -> String {
    let engine = lts.engine();
    let mut out = String::new();
    writeln!(out, "digraph lts {{").unwrap();
    writeln!(out, "  node [shape=circle fontsize=10];").unwrap();
    for (i, s) in lts.states().enumerate() {
        let shape = if i == 0 {
            "box"
        } else if lts.is_terminal(i) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(
            out,
            "  \"{}\" [label=\"{}\\n{}\" shape={}];",
            s.digest(),
            i,
            s.phase(),
            shape
        )
        .unwrap();
    }
    for e in lts.edges() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            lts.state(e.from).digest(),
            lts.state(e.to).digest(),
            escape(&engine.describe_step(&e.label, &e.emitted))
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
