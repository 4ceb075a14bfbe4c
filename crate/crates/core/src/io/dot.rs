//! Graphviz export. Blocks become clusters; heavy vertices are boxes and
//! light vertices circles. Hypergraphs are drawn through their incidence
//! graph with one point-shaped node per edge.

use std::fmt::Write;

use crate::instance::{PartitionedInstance, Role};

pub fn export_dot(inst: &PartitionedInstance) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "graph instance {{");
    let _ = writeln!(w, "  node [fontsize=10];");
    for blk in inst.blocks() {
        let _ = writeln!(w, "  subgraph cluster_{} {{", blk.id.0);
        let mut label = blk.id.to_string();
        if let Some(g) = blk.grade {
            let _ = write!(label, " grade {g}");
        }
        if blk.padding {
            label.push_str(" padding");
        }
        let _ = writeln!(w, "    label=\"{label}\";");
        for &v in &blk.members {
            let shape = match inst.vertices()[v.index()].role {
                Some(Role::Heavy) => "box",
                Some(Role::Light) => "circle",
                None => "ellipse",
            };
            let _ = writeln!(w, "    {v} [shape={shape}];");
        }
        let _ = writeln!(w, "  }}");
    }
    if inst.uniformity() == 2 {
        for e in inst.edges() {
            let _ = writeln!(w, "  {} -- {};", e[0], e[1]);
        }
    } else {
        for (i, e) in inst.edges().enumerate() {
            let _ = writeln!(w, "  e{i} [shape=point];");
            for v in e {
                let _ = writeln!(w, "  e{i} -- {v};");
            }
        }
    }
    let _ = writeln!(w, "}}");
    out
}
