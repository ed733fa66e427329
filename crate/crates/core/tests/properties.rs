use std::collections::HashSet;

use proptest::prelude::*;

use plane_reconfig::analysis::{fixed_endpoint_graph, random_point_set, DEFAULT_GRID};
use plane_reconfig::cli::export::render_svg;
use plane_reconfig::cli::formats::{parse_point_set, parse_sequence, serialize_point_set, serialize_sequence};
use plane_reconfig::constructive::rotation_to_star;
use plane_reconfig::geometry::{orientation, properly_cross, Point, PointSet};
use plane_reconfig::reconfig::{all_exchanges, classify_move, neighbors, OpKind};
use plane_reconfig::structures::{caterpillar_spine, enumerate_plane_trees, Family, SpanningTree};

const COORD: i64 = 1_000_000;

fn coord() -> impl Strategy<Value = i64> {
    -COORD..=COORD
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

/// A random point set with 4 to 6 points and one of its plane trees.
fn set_and_tree(family: Family) -> impl Strategy<Value = (PointSet, SpanningTree)> {
    (4usize..=6, any::<u64>(), any::<prop::sample::Index>()).prop_map(move |(n, seed, pick)| {
        let ps = random_point_set(n, seed, DEFAULT_GRID).unwrap();
        let trees = enumerate_plane_trees(&ps, family).unwrap();
        let t = trees[pick.index(trees.len())];
        (ps, t)
    })
}

fn connected(t: &SpanningTree) -> bool {
    let adj = t.adjacency();
    let mut seen = vec![false; t.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orientation_is_alternating(p in point(), q in point(), r in point()) {
        let o = orientation(p, q, r);
        prop_assert!((-1..=1).contains(&o));
        prop_assert_eq!(orientation(q, r, p), o);
        prop_assert_eq!(orientation(q, p, r), -o);
        prop_assert_eq!(orientation(p, p, r), 0);
    }

    #[test]
    fn point_sets_are_in_general_position(pts in prop::collection::vec(point(), 3..8)) {
        let bad = (0..pts.len()).any(|i| {
            (i + 1..pts.len()).any(|j| {
                pts[i] == pts[j] || (j + 1..pts.len()).any(|k| orientation(pts[i], pts[j], pts[k]) == 0)
            })
        });
        prop_assert_eq!(PointSet::new(pts).is_err(), bad);
    }

    #[test]
    fn trees_are_plane_and_spanning((ps, t) in set_and_tree(Family::All)) {
        let edges = t.edges();
        prop_assert_eq!(edges.len(), ps.len() - 1);
        prop_assert_eq!(t.key().bits().count_ones() as usize, ps.len() - 1);
        prop_assert!(connected(&t));
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                prop_assert!(!properly_cross(e, f, &ps));
            }
        }
        let mut rev = edges.clone();
        rev.reverse();
        prop_assert_eq!(SpanningTree::from_edges(&ps, &rev).unwrap().key(), t.key());
    }

    #[test]
    fn spine_holds_every_inner_vertex_in_order((_ps, t) in set_and_tree(Family::Caterpillars)) {
        let spine = caterpillar_spine(&t).unwrap();
        let inner: HashSet<usize> = (0..t.n()).filter(|&v| t.degree(v) >= 2).collect();
        prop_assert_eq!(spine.iter().copied().collect::<HashSet<_>>(), inner);
        let adj = t.adjacency();
        for w in spine.windows(2) {
            prop_assert!(adj[w[0]].contains(&w[1]));
        }
    }

    #[test]
    fn exchanges_respect_the_hierarchy((ps, t) in set_and_tree(Family::All)) {
        for (step, r) in all_exchanges(&ps, &t) {
            prop_assert!(step.removed != step.added);
            prop_assert!(t.contains(step.removed) && !t.contains(step.added));
            prop_assert!(r.validate(&ps).is_ok());
            prop_assert!(step.kinds.contains(OpKind::Flip));
            prop_assert!(step.kinds.is_downward_closed());
            let back = classify_move(&ps, &r, &t).unwrap().unwrap();
            prop_assert_eq!(back.kinds, step.kinds);
        }
    }

    #[test]
    fn neighbor_relation_is_symmetric((ps, t) in set_and_tree(Family::Caterpillars), op in 0usize..5) {
        let op = OpKind::ALL[op];
        for r in neighbors(&ps, &t, op, Family::Caterpillars) {
            prop_assert!(neighbors(&ps, &r, op, Family::Caterpillars).contains(&t));
        }
    }

    #[test]
    fn fixed_endpoint_flips_are_suffix_reversals(n in 4usize..=6, seed in any::<u64>(), u in 0usize..6) {
        let ps = random_point_set(n, seed, DEFAULT_GRID).unwrap();
        let g = fixed_endpoint_graph(&ps, u % n).unwrap();
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            g.paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for (i, p) in g.paths.iter().enumerate() {
            prop_assert_eq!(p[0], u % n);
            let mut expected: Vec<u32> = (1..n - 1)
                .filter_map(|k| {
                    let mut r = p.clone();
                    r[k..].reverse();
                    index.get(&r).map(|&j| j as u32)
                })
                .collect();
            expected.sort_unstable();
            let mut got = g.adjacency[i].clone();
            got.sort_unstable();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn point_set_files_round_trip(n in 3usize..=9, seed in any::<u64>()) {
        let ps = random_point_set(n, seed, DEFAULT_GRID).unwrap();
        prop_assert_eq!(parse_point_set(&serialize_point_set(&ps)).unwrap(), ps);
    }

    #[test]
    fn sequence_records_round_trip((ps, t) in set_and_tree(Family::Caterpillars)) {
        let seq = rotation_to_star(&ps, &t).unwrap();
        let text = serialize_sequence(&ps, &seq);
        prop_assert_eq!(parse_sequence(&text, &ps).unwrap(), seq);
    }

    #[test]
    fn svg_is_deterministic((ps, t) in set_and_tree(Family::All)) {
        let a = render_svg(&ps, &t, None);
        prop_assert_eq!(&a, &render_svg(&ps, &t, None));
        prop_assert_eq!(a.matches("<line").count(), ps.len() - 1);
        prop_assert_eq!(a.matches("<circle").count(), ps.len());
    }
}
