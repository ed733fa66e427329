//! Graph exports and SVG frames.

use std::fmt::Write as _;

use crate::geometry::{PointSet, Segment};
use crate::reconfig::{MoveStep, ReconfigGraph};
use crate::structures::{CanonicalKey, SpanningTree};

/// Largest n whose DOT labels are edge lists rather than key hex.
pub const DOT_EDGE_LABEL_MAX_N: usize = 6;

pub fn key_hex(k: CanonicalKey) -> String {
    format!("{:x}", k.bits())
}

/// The graph in DOT, one node per tree.
pub fn to_dot(g: &ReconfigGraph, n: usize) -> String {
    let mut out = format!("graph reconfig {{\n  // family={} op={}\n", g.family, g.op);
    for (i, t) in g.vertices.iter().enumerate() {
        let label = if n <= DOT_EDGE_LABEL_MAX_N { t.to_string() } else { key_hex(t.key()) };
        let _ = writeln!(out, "  v{i} [label=\"{label}\"];");
    }
    for (i, adj) in g.adjacency.iter().enumerate() {
        for &j in adj.iter().filter(|&&j| j as usize > i) {
            let _ = writeln!(out, "  v{i} -- v{j};");
        }
    }
    out.push_str("}\n");
    out
}

/// One `key1 key2` line per graph edge, keys in hex.
pub fn to_edge_list(g: &ReconfigGraph) -> String {
    let mut out = String::new();
    for (i, adj) in g.adjacency.iter().enumerate() {
        for &j in adj.iter().filter(|&&j| j as usize > i) {
            let _ = writeln!(
                out,
                "{} {}",
                key_hex(g.vertices[i].key()),
                key_hex(g.vertices[j as usize].key())
            );
        }
    }
    out
}

/// Draws `t` on `ps`. With a step, its removed edge is dashed and its added
/// edge dotted; other tree edges are solid. The view box is the bounding
/// box grown by 10% on every side, with y pointing up.
pub fn render_svg(ps: &PointSet, t: &SpanningTree, step: Option<&MoveStep>) -> String {
    let pts = ps.points();
    let (min_x, max_x) = (pts.iter().map(|p| p.x).min().unwrap(), pts.iter().map(|p| p.x).max().unwrap());
    let (min_y, max_y) = (pts.iter().map(|p| p.y).min().unwrap(), pts.iter().map(|p| p.y).max().unwrap());
    let w = (max_x - min_x).max(1) as f64;
    let h = (max_y - min_y).max(1) as f64;
    let (mx, my) = (w * 0.1, h * 0.1);
    let unit = w.max(h) / 100.0;
    let x = |i: usize| pts[i].x as f64 - min_x as f64 + mx;
    let y = |i: usize| max_y as f64 - pts[i].y as f64 + my;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {:.3} {:.3}\">",
        w + 2.0 * mx,
        h + 2.0 * my
    );
    let line = |out: &mut String, s: Segment, style: &str| {
        let _ = writeln!(
            out,
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke-width=\"{:.3}\" {style}/>",
            x(s.a),
            y(s.a),
            x(s.b),
            y(s.b),
            unit * 0.6
        );
    };
    let removed = step.map(|s| s.removed);
    for e in t.edges() {
        if Some(e) != removed {
            line(&mut out, e, "stroke=\"black\"");
        }
    }
    if let Some(s) = step {
        line(
            &mut out,
            s.removed,
            &format!("stroke=\"#c0392b\" stroke-dasharray=\"{:.3} {:.3}\"", unit * 3.0, unit * 1.5),
        );
        line(
            &mut out,
            s.added,
            &format!(
                "stroke=\"#2471a3\" stroke-linecap=\"round\" stroke-dasharray=\"0 {:.3}\"",
                unit * 1.5
            ),
        );
    }
    for i in 0..pts.len() {
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"white\" stroke=\"black\" stroke-width=\"{:.3}\"/>",
            x(i),
            y(i),
            unit * 1.2,
            unit * 0.3
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"{:.3}\" text-anchor=\"middle\">{i}</text>",
            x(i),
            y(i) - unit * 2.0,
            unit * 3.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Frame `i` shows the `i`-th tree of the trajectory with the step about to
/// be applied marked; the last frame shows the final tree.
pub fn svg_frames(ps: &PointSet, trajectory: &[SpanningTree], steps: &[MoveStep]) -> Vec<(String, String)> {
    trajectory
        .iter()
        .enumerate()
        .map(|(i, t)| (format!("step_{i:04}.svg"), render_svg(ps, t, steps.get(i))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconfig::{build_graph, OpKind};
    use crate::structures::Family;

    fn square() -> PointSet {
        PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn dot_and_edge_list() {
        let ps = square();
        let g = build_graph(&ps, Family::Caterpillars, OpKind::Slide).unwrap();
        let dot = to_dot(&g, ps.len());
        assert!(dot.starts_with("graph reconfig {"));
        assert_eq!(dot.matches(" -- ").count(), g.edge_count());
        assert!(dot.contains("label=\"0,1 0,2 0,3\""));
        assert_eq!(to_edge_list(&g).lines().count(), g.edge_count());
    }

    #[test]
    fn svg_is_deterministic() {
        let ps = square();
        let t = SpanningTree::from_path(&ps, &[0, 1, 2, 3]).unwrap();
        let a = render_svg(&ps, &t, None);
        assert_eq!(a, render_svg(&ps, &t, None));
        assert_eq!(a.matches("<line").count(), 3);
        assert!(a.contains("viewBox=\"0 0 2.400 2.400\""));
    }
}
