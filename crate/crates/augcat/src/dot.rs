//! DOT export: shape categories (objects + generating morphisms), trees, and
//! presheaf level graphs. Labels are stable across runs.

use crate::cat::{FiniteCategory, MorId};
use crate::presheaf::Presheaf;
use crate::shapes::{PTree, ShapeCategory};

fn esc(s: &str) -> String {
    s.replace('"', "\\\"")
}

/// Objects as nodes, generating morphisms as edges (faces solid, degeneracies
/// dashed, automorphisms dotted).
pub fn category_dot(cat: &FiniteCategory, gens: &[MorId]) -> String {
    let mut out = String::from("digraph category {\n  rankdir=BT;\n");
    for o in cat.objects() {
        out.push_str(&format!(
            "  \"{}\" [label=\"{} (d={})\"];\n",
            esc(&cat.object(o).name),
            esc(&cat.object(o).name),
            cat.degree(o)
        ));
    }
    let mut gens: Vec<MorId> = gens.to_vec();
    gens.sort();
    for m in gens {
        let style = if cat.is_mono(m) && !cat.is_iso(m) {
            "solid"
        } else if cat.is_iso(m) {
            "dotted"
        } else {
            "dashed"
        };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\", style={}];\n",
            esc(&cat.object(cat.dom(m)).name),
            esc(&cat.object(cat.cod(m)).name),
            esc(&cat.morphism(m).name),
            style
        ));
    }
    out.push_str("}\n");
    out
}

pub fn shape_dot(shape: &ShapeCategory) -> String {
    let mut gens = shape.face_gens.clone();
    gens.extend_from_slice(&shape.degen_gens);
    if let Some(c) = &shape.crossed {
        for sp in &c.special {
            for &t in sp {
                if !shape.cat.is_identity(t) {
                    gens.push(t);
                }
            }
        }
    }
    category_dot(&shape.cat, &gens)
}

/// A rooted tree: vertices as solid nodes, dangling edges (root and leaves)
/// as point nodes.
pub fn tree_dot(tree: &PTree) -> String {
    let mut out = String::from("digraph tree {\n  rankdir=BT;\n");
    let mut next_id = 0u32;
    // Returns the node id representing the lower endpoint of this edge.
    fn walk(t: &PTree, below: String, out: &mut String, next_id: &mut u32) {
        match t {
            PTree::Leaf => {
                let leaf = format!("l{}", *next_id);
                *next_id += 1;
                out.push_str(&format!("  \"{leaf}\" [shape=point, label=\"\"];\n"));
                out.push_str(&format!("  \"{below}\" -> \"{leaf}\";\n"));
            }
            PTree::Vertex(cs) => {
                let v = format!("v{}", *next_id);
                *next_id += 1;
                out.push_str(&format!("  \"{v}\" [shape=circle, label=\"\"];\n"));
                out.push_str(&format!("  \"{below}\" -> \"{v}\";\n"));
                for c in cs {
                    walk(c, v.clone(), out, next_id);
                }
            }
        }
    }
    out.push_str("  \"root\" [shape=point, label=\"\"];\n");
    walk(tree, "root".to_string(), &mut out, &mut next_id);
    out.push_str("}\n");
    out
}

/// Elements as nodes grouped per object, generator actions as edges.
pub fn presheaf_dot(p: &Presheaf) -> String {
    let shape = p.shape();
    let cat = &shape.cat;
    let mut out = String::from("digraph presheaf {\n");
    for o in cat.objects() {
        if cat.degree(o) > p.truncation() {
            continue;
        }
        for (i, name) in p.level(o).iter().enumerate() {
            out.push_str(&format!(
                "  \"{}:{}\" [label=\"{}\"];\n",
                esc(&cat.object(o).name),
                i,
                esc(name)
            ));
        }
    }
    let mut gens = shape.face_gens.clone();
    gens.extend_from_slice(&shape.degen_gens);
    gens.sort();
    for m in gens {
        let (a, b) = (cat.dom(m), cat.cod(m));
        if cat.degree(a) > p.truncation() || cat.degree(b) > p.truncation() {
            continue;
        }
        for (j, &img) in p.action_vec(m).iter().enumerate() {
            out.push_str(&format!(
                "  \"{}:{}\" -> \"{}:{}\" [label=\"{}\"];\n",
                esc(&cat.object(b).name),
                j,
                esc(&cat.object(a).name),
                img,
                esc(&cat.morphism(m).name)
            ));
        }
    }
    out.push_str("}\n");
    out
}
