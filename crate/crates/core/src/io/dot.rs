//! DOT output. Objects are nodes and non-unit arrows are edges; the output
//! depends only on the order of objects and arrows.

use std::fmt::Write as _;

use crate::anchor::orbits;
use crate::butterfly::Butterfly;
use crate::groupoid::{ArrowId, Groupoid};

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn edges(out: &mut String, g: &Groupoid, attrs: impl Fn(ArrowId) -> String) {
    for a in g.arrow_ids().filter(|&a| !g.is_unit(a)) {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{}];",
            esc(g.object_label(g.src(a))),
            esc(g.object_label(g.tgt(a))),
            esc(g.arrow_label(a)),
            attrs(a)
        );
    }
}

pub fn groupoid_dot(g: &Groupoid, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", esc(name));
    for b in g.object_ids() {
        let _ = writeln!(out, "  {};", esc(g.object_label(b)));
    }
    edges(&mut out, g, |_| String::new());
    out.push_str("}\n");
    out
}

/// One cluster per orbit.
pub fn orbit_dot(g: &Groupoid, name: &str) -> String {
    let (orbs, _) = orbits(g);
    let mut out = format!("digraph {} {{\n", esc(name));
    for (i, orbit) in orbs.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label={};", esc(&format!("orbit {i}")));
        for &b in orbit {
            let _ = writeln!(out, "    {};", esc(g.object_label(b)));
        }
        out.push_str("  }\n");
    }
    edges(&mut out, g, |_| String::new());
    out.push_str("}\n");
    out
}

/// The core with edges classed by wing: `R` in blue, `R′` in red, the rest
/// grey.
pub fn butterfly_dot(b: &Butterfly, name: &str) -> String {
    let k = b.core();
    let mut out = format!("digraph {} {{\n", esc(name));
    for e in k.object_ids() {
        let _ = writeln!(out, "  {};", esc(k.object_label(e)));
    }
    edges(&mut out, k, |a| {
        let (class, color) = if b.wing().contains(a) {
            ("wing", "blue")
        } else if b.co_wing().contains(a) {
            ("co_wing", "red")
        } else {
            ("core", "grey")
        };
        format!(", class={class}, color={color}")
    });
    out.push_str("}\n");
    out
}
