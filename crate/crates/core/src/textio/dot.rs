use std::fmt::Write;

use crate::canon::{CanonicalForm, Component};

/// Graphviz rendering of a canonical form.
///
/// Components become nodes chained left to right; a shuffle node has an
/// edge to the first component of each block. Node ids are preorder indices.
pub fn to_dot(cf: &CanonicalForm) -> String {
    let mut out = String::from("digraph canonical {\n  node [shape=box];\n");
    let mut next_id = 0;
    if cf.is_empty() {
        let _ = writeln!(out, "  n0 [label=\"0\"];");
    } else {
        emit(&mut out, cf, &mut next_id);
    }
    out.push_str("}\n");
    out
}

/// Emits the component chain of `cf`; returns the id of its first node.
fn emit(out: &mut String, cf: &CanonicalForm, next_id: &mut usize) -> usize {
    let mut first = None;
    let mut prev: Option<usize> = None;
    for c in cf.components() {
        let id = *next_id;
        *next_id += 1;
        first.get_or_insert(id);
        if let Some(p) = prev {
            let _ = writeln!(out, "  n{p} -> n{id} [style=dashed];");
        }
        prev = Some(id);
        match c {
            Component::Scat(s) => {
                let label = CanonicalForm::from_scat(s.clone()).to_string();
                let _ = writeln!(out, "  n{id} [label=\"{}\"];", escape(&label));
            }
            Component::Shuf(blocks) => {
                let _ = writeln!(out, "  n{id} [label=\"Q\", shape=ellipse];");
                for block in blocks {
                    let child = emit(out, block, next_id);
                    let _ = writeln!(out, "  n{id} -> n{child};");
                }
            }
        }
    }
    first.unwrap_or(*next_id)
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonicalize;
    use crate::textio::parse;

    fn dot(s: &str) -> String {
        to_dot(&canonicalize(&parse(s).unwrap()).unwrap())
    }

    #[test]
    fn single_shuffle_of_z() {
        let d = dot("Q[Z]");
        assert!(d.starts_with("digraph"));
        assert!(d.contains("n0 [label=\"Q\", shape=ellipse];"));
        assert!(d.contains("n1 [label=\"Z\"];"));
        assert!(d.contains("n0 -> n1;"));
    }

    #[test]
    fn chain_then_fan_out() {
        let d = dot("N + Q[Z]");
        assert!(d.contains("n0 [label=\"N\"];"));
        assert!(d.contains("n0 -> n1 [style=dashed];"));
        assert!(d.contains("n1 -> n2;"));
        assert!(d.contains("n2 [label=\"Z\"];"));
    }

    #[test]
    fn rationals() {
        let d = dot("Q");
        assert!(d.contains("n1 [label=\"1\"];"));
        assert_eq!(d.matches("->").count(), 1);
    }
}
