//! Graphviz export: one cluster per grid position, element nodes, order covers inside clusters.

use std::fmt::Write;

use crate::collars::PreCollared;
use crate::cubemodel::cube::{coords_of, format_index, pos_count, sharp};
use crate::cubemodel::{Cube, TMap};
use crate::finspace::{cylinder, FinSpace};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn node(prefix: &str, pos: &str, id: &str) -> String {
    quote(&format!("{prefix}[{pos}]{id}"))
}

fn cluster(out: &mut String, prefix: &str, pos: &str, x: &FinSpace, row: usize, col: usize) {
    let _ = writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{prefix}{pos}")));
    let _ = writeln!(out, "    label={};", quote(&format!("{prefix}({pos})")));
    let _ = writeln!(out, "    style=rounded; // grid row {row}, column {col}");
    for id in x.ids() {
        let _ = writeln!(out, "    {} [label={}];", node(prefix, pos, id), quote(id));
    }
    if x.is_empty() {
        let _ = writeln!(out, "    {} [label=\"∅\", shape=plaintext];", node(prefix, pos, ""));
    }
    for (a, b) in x.covers() {
        let _ = writeln!(out, "    {} -> {} [style=dotted, arrowhead=none];", node(prefix, pos, x.id(a)), node(prefix, pos, x.id(b)));
    }
    let _ = writeln!(out, "  }}");
}

/// Grid row/column for a position: first two coordinates only, for the layout comment.
fn place(t: &[i8]) -> (usize, usize) {
    let r = t.first().map_or(0, |&c| (c + 1) as usize);
    let c = t.get(1).map_or(0, |&c| (c + 1) as usize);
    (r, c)
}

fn cube_body(out: &mut String, prefix: &str, u: &Cube) {
    let n = u.degree();
    for p in 0..pos_count(n) {
        let t = coords_of(n, p);
        let (r, c) = place(&t);
        cluster(out, prefix, &format_index(&t), u.space(p), r, c);
    }
    for p in 0..pos_count(n) {
        let t = coords_of(n, p);
        for d in 0..n {
            if t[d] == 0 {
                continue;
            }
            let q = sharp(p, n, d);
            let (s, tt) = (format_index(&t), format_index(&coords_of(n, q)));
            let m = u.arr(d, p);
            for e in 0..m.src().len() {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{}\", color=blue];",
                    node(prefix, &s, m.src().id(e)),
                    node(prefix, &tt, m.dst().id(m.apply(e))),
                    d + 1
                );
            }
        }
    }
}

pub fn cube_dot(u: &Cube) -> String {
    let mut out = String::from("digraph cube {\n  compound=true;\n  node [shape=box, fontsize=10];\n");
    cube_body(&mut out, "", u);
    out.push_str("}\n");
    out
}

/// Collar arrows are drawn dashed from the end-of-cylinder copies `(x, p_end)`.
pub fn precollared_dot(u: &PreCollared) -> String {
    let mut out = String::from("digraph collared {\n  compound=true;\n  node [shape=box, fontsize=10];\n");
    cube_body(&mut out, "", u.cube());
    let c = u.cube();
    let n = c.degree();
    for p in 0..pos_count(n) {
        let t = coords_of(n, p);
        for d in 0..n {
            let Some(col) = u.collar(d + 1, p) else { continue };
            let q = sharp(p, n, d);
            let cyl = cylinder(c.space(p), col.k).unwrap();
            let (s, tt) = (format_index(&t), format_index(&coords_of(n, q)));
            for x in 0..c.space(p).len() {
                let img = col.map.apply(cyl.at(x, 2 * col.k));
                let _ = writeln!(
                    out,
                    "  {} -> {} [style=dashed, color=darkgreen, label=\"collar {}\"];",
                    node("", &s, c.space(p).id(x)),
                    node("", &tt, col.map.dst().id(img)),
                    d + 1
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn tmap_dot(f: &TMap) -> String {
    let mut out = String::from("digraph tmap {\n  compound=true;\n  node [shape=box, fontsize=10];\n");
    cube_body(&mut out, "src", f.src());
    cube_body(&mut out, "dst", f.dst());
    let n = f.degree();
    for p in 0..pos_count(n) {
        let s = format_index(&coords_of(n, p));
        let m = f.comp(p);
        for e in 0..m.src().len() {
            let _ = writeln!(
                out,
                "  {} -> {} [style=bold, color=red];",
                node("src", &s, m.src().id(e)),
                node("dst", &s, m.dst().id(m.apply(e)))
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_is_balanced_and_names_clusters() {
        let x = FinSpace::new(&["a", "b"], &[("a", "b")]).unwrap();
        let u = Cube::from_space(&x).degeneracy(1).unwrap().degeneracy(1).unwrap();
        let d = cube_dot(&u);
        assert!(d.starts_with("digraph"));
        assert_eq!(d.matches('{').count(), d.matches('}').count());
        assert_eq!(d.matches("subgraph").count(), 9);
        let t = tmap_dot(&TMap::identity(&u));
        assert_eq!(t.matches("subgraph").count(), 18);
    }
}
