//! Graphviz DOT export with fixed grid positions (render with neato -n).

use crate::graph::{Coord, GridGraph};
use std::fmt::Write;

fn node_id(v: &Coord) -> String {
    let mut s = String::from("v");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push('_');
        }
        write!(s, "{}", x).unwrap();
    }
    s
}

/// Bipartite graphs place vertex (i,j) at x = j, y = −i. Graphs with more
/// parties render one bipartite block per leading-party layer, side by
/// side, using the last two parties as the in-block row and column.
pub fn export_dot(g: &GridGraph) -> String {
    let dims = g.dims();
    let n = dims.len();
    let cols = dims[n - 1];
    let block_width = cols + 1;
    let pos = |v: &Coord| -> (isize, isize) {
        let row = v[n - 2] as isize;
        let col = v[n - 1] as isize;
        let mut block = 0isize;
        for p in 0..n - 2 {
            block = block * dims[p] as isize + v[p] as isize;
        }
        (block * block_width as isize + col, -row)
    };
    let mut out = String::from("graph grid {\n  node [shape=circle, width=0.3, fixedsize=true];\n");
    for v in g.vertices() {
        let (x, y) = pos(&v);
        writeln!(out, "  {} [pos=\"{},{}!\"];", node_id(&v), x, y).unwrap();
    }
    for e in g.edges() {
        let (a, b) = e.ends();
        writeln!(out, "  {} -- {};", node_id(a), node_id(b)).unwrap();
    }
    out.push_str("}\n");
    out
}
