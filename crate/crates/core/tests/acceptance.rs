//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line;
//! run with `--nocapture` to see them. Instance counts and bounds are pinned
//! below.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use plane_reconfig::analysis::{
    convex_point_set, instance_seeds, random_point_set, search_isolated_caterpillar, verify, Claim,
    SearchStrategy, VerifyReport, DEFAULT_GRID, ISOLATED_BUDGET,
};
use plane_reconfig::constructive::{convex_cat_to_star, convex_path_to_path, Detours};
use plane_reconfig::geometry::{properly_cross, PointSet, Segment};
use plane_reconfig::reconfig::{build_graph, classify_move, neighbors, OpKind};
use plane_reconfig::structures::{caterpillar_spine, enumerate_plane_trees, make_star, Family, SpanningTree};

const SEED: u64 = 20_240_601;
/// Random sets for the move hierarchy check, spread evenly over n = 4..7.
const HIERARCHY_SETS: usize = 1000;
/// Random sets per n for the constructive and rotation checks (n = 3..7).
const CONSTRUCTIVE_SAMPLES: usize = 40;
/// Random 7-point sets whose slide graph must be connected.
const SLIDE_SETS_N7: usize = 1000;
/// Random sets per n for the path graph checks (n = 5..8).
const PATH_SAMPLES: usize = 50;
/// Random sets per n for the well-separated component check (n = 3..7).
const WS_SAMPLES: usize = 20;
/// Search seed for isolated caterpillars; the budget is `ISOLATED_BUDGET`.
const ISOLATED_SEED: u64 = 1;

fn line(name: &str, pass: bool, detail: &str) {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}

fn detours_text(d: Detours) -> String {
    format!(
        "detours(split_retries={} searches={} connector_searches={})",
        d.split_retries, d.searches, d.connector_searches
    )
}

fn run_claims(claims: &[Claim], range: RangeInclusive<usize>, samples: usize) -> Vec<VerifyReport> {
    claims
        .iter()
        .map(|&c| verify(c, range.clone(), samples, SEED).unwrap())
        .collect()
}

fn summarize(name: &str, reports: &[VerifyReport]) {
    let mut d = Detours::default();
    for r in reports {
        for i in r.instances.iter().filter(|i| !i.pass) {
            println!("  {i}");
        }
        let rd = r.detours();
        d.split_retries += rd.split_retries;
        d.searches += rd.searches;
        d.connector_searches += rd.connector_searches;
    }
    let instances: usize = reports.iter().map(|r| r.instances.len()).sum();
    let failures: usize = reports.iter().map(VerifyReport::failures).sum();
    let pass = reports.iter().all(VerifyReport::pass);
    line(name, pass, &format!("instances={instances} failures={failures} {}", detours_text(d)));
    assert!(pass);
}

/// All pairs of plane trees that differ in one edge each, as index pairs
/// into `trees`, found by looking up every single-edge exchange.
fn distance_two_pairs(ps: &PointSet, trees: &[SpanningTree]) -> Vec<(usize, usize)> {
    let index: std::collections::HashMap<_, usize> = trees.iter().enumerate().map(|(i, t)| (t.key(), i)).collect();
    let mut out = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        for e in t.edges() {
            for &f in ps.segments() {
                if t.contains(f) {
                    continue;
                }
                if let Some(&j) = index.get(&t.exchange(e, f).key()) {
                    if i < j {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn move_hierarchy_is_downward_closed() {
    let per_n = HIERARCHY_SETS / 4;
    let sets: Vec<PointSet> = (4..=7)
        .flat_map(|n| instance_seeds(SEED + n as u64, per_n).into_iter().map(move |s| (n, s)))
        .map(|(n, s)| random_point_set(n, s, DEFAULT_GRID).unwrap())
        .collect();
    let (pairs, violations) = sets
        .par_iter()
        .map(|ps| {
            let trees = enumerate_plane_trees(ps, Family::All).unwrap();
            let pairs = distance_two_pairs(ps, &trees);
            let bad = pairs
                .iter()
                .filter(|&&(i, j)| {
                    [(i, j), (j, i)].iter().any(|&(a, b)| {
                        !classify_move(ps, &trees[a], &trees[b])
                            .unwrap()
                            .is_some_and(|m| m.kinds.contains(OpKind::Flip) && m.kinds.is_downward_closed())
                    })
                })
                .count();
            (pairs.len(), bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    line(
        "move hierarchy",
        violations == 0,
        &format!("sets={} pairs={pairs} violations={violations}", sets.len()),
    );
    assert_eq!(violations, 0);
}

#[test]
fn convex_slide_graph_diameter() {
    let mut details = Vec::new();
    let mut pass = true;
    for n in 4..=8 {
        let ps = convex_point_set(n).unwrap();
        let g = build_graph(&ps, Family::Caterpillars, OpKind::Slide).unwrap();
        let d = g.diameter();
        let bound = 3 * n - 8;
        pass &= d.is_some_and(|d| d <= bound);
        details.push(format!("n={n}:{d:?}<={bound}"));
    }
    line("convex caterpillar slide diameter", pass, &details.join(" "));
    assert!(pass);
}

#[test]
fn convex_sequences_within_length_bounds() {
    let (mut checked, mut bad) = (0, 0);
    for n in 4..=7 {
        let ps = convex_point_set(n).unwrap();
        for c in enumerate_plane_trees(&ps, Family::Caterpillars).unwrap() {
            let spine = caterpillar_spine(&c).unwrap();
            if spine.is_empty() {
                continue;
            }
            for s in [spine[0], *spine.last().unwrap()] {
                checked += 1;
                let ok = convex_cat_to_star(&ps, &c, s).is_ok_and(|q| {
                    q.validate(&ps).is_ok() && q.len() <= n - 1 - c.degree(s) && q.end() == make_star(&ps, s)
                });
                bad += usize::from(!ok);
            }
        }
    }
    for n in 5..=7 {
        let ps = convex_point_set(n).unwrap();
        let paths = enumerate_plane_trees(&ps, Family::Paths).unwrap();
        let b: usize = paths
            .par_iter()
            .map(|p| {
                paths
                    .iter()
                    .filter(|q| {
                        !convex_path_to_path(&ps, p, q)
                            .is_ok_and(|s| s.validate(&ps).is_ok() && s.len() <= 2 * n - 6 && s.end() == **q)
                    })
                    .count()
            })
            .sum();
        checked += paths.len() * paths.len();
        bad += b;
    }
    line("convex sequence lengths", bad == 0, &format!("sequences={checked} violations={bad}"));
    assert_eq!(bad, 0);
}

#[test]
fn constructive_slide_sequences_revalidate() {
    let reports = run_claims(
        &[Claim::StarMerges, Claim::WellSeparated, Claim::TripleSpines],
        3..=7,
        CONSTRUCTIVE_SAMPLES,
    );
    summarize("constructive slide sequences", &reports);
}

#[test]
fn rotations_reach_a_star() {
    let reports = run_claims(&[Claim::Rotations], 3..=7, CONSTRUCTIVE_SAMPLES);
    summarize("rotation sequences and rotation graph", &reports);
}

#[test]
fn slide_graph_connected_up_to_seven_points() {
    let mut reports = run_claims(&[Claim::SmallSlides], 3..=6, 0);
    reports.extend(run_claims(&[Claim::SmallSlides], 7..=7, SLIDE_SETS_N7));
    summarize("caterpillar slide graph connected for n<=7", &reports);
}

#[test]
fn isolated_caterpillars_exist_from_eight_points() {
    let results: Vec<(usize, Option<String>)> = [8, 9, 10]
        .into_par_iter()
        .map(|n| {
            let r = search_isolated_caterpillar(n, SearchStrategy::Random, ISOLATED_BUDGET, ISOLATED_SEED).unwrap();
            let found = r.filter(|r| {
                // independent of the search's own bookkeeping
                let ps = &r.point_set;
                r.witness.validate(ps).is_ok()
                    && r.witness.is_caterpillar()
                    && neighbors(ps, &r.witness, OpKind::Slide, Family::Caterpillars).is_empty()
                    && r.revalidate().unwrap()
            });
            (n, found.map(|r| format!("{} iterations={}", r.witness, r.iterations)))
        })
        .collect();
    let pass = results.iter().all(|(_, f)| f.is_some());
    let detail: Vec<String> = results
        .iter()
        .map(|(n, f)| format!("n={n}:{}", f.as_deref().unwrap_or("none")))
        .collect();
    line(
        "isolated caterpillars",
        pass,
        &format!("budget={ISOLATED_BUDGET} seed={ISOLATED_SEED} {}", detail.join(" ")),
    );
    assert!(pass);
}

#[test]
fn fixed_endpoint_path_graph_structure() {
    let reports = run_claims(
        &[
            Claim::FixedEndpointGirth,
            Claim::FixedEndpointNoIsolated,
            Claim::DegreeOne,
            Claim::FixedEndpointComponents,
            Claim::PathComponents,
        ],
        5..=8,
        PATH_SAMPLES,
    );
    summarize("path flip graph structure", &reports);
}

#[test]
fn peeling_paths_connected() {
    let reports = run_claims(&[Claim::PeelingComponent], 5..=8, PATH_SAMPLES);
    summarize("peeling paths", &reports);
}

#[test]
fn well_separated_caterpillars_share_a_component() {
    let report = verify(Claim::WellSeparatedComponent, 3..=7, WS_SAMPLES, SEED).unwrap();
    // counts reported against the closed-form bound, which is not asserted
    for n in 3..=7 {
        let counts: Vec<&str> = report
            .instances
            .iter()
            .filter(|i| i.n == n)
            .filter_map(|i| i.detail.split_whitespace().find(|w| w.starts_with("count=")))
            .collect();
        let max = counts.iter().filter_map(|c| c[6..].parse::<u128>().ok()).max().unwrap_or(0);
        println!("  n={n} max_count={max} bound={}", (3u128.pow(n as u32) - 1) / 2);
    }
    summarize("well-separated component", &[report]);
}

#[test]
fn convex_path_flip_diameter() {
    let mut pass = true;
    let mut details = Vec::new();
    for n in 5..=8 {
        let ps = convex_point_set(n).unwrap();
        let d = build_graph(&ps, Family::Paths, OpKind::Flip).unwrap().diameter();
        pass &= d == Some(2 * n - 6);
        details.push(format!("n={n}:{d:?}=={}", 2 * n - 6));
    }
    line("convex path flip diameter", pass, &details.join(" "));
    assert!(pass);
}

/// Plane spanning trees of `family` by trying every (n-1)-subset of segments.
fn subset_oracle(ps: &PointSet, family: Family) -> usize {
    let segs = ps.segments().to_vec();
    let n = ps.len();
    let mut count = 0;
    let mut pick = Vec::with_capacity(n - 1);
    fn rec(
        ps: &PointSet,
        segs: &[Segment],
        start: usize,
        need: usize,
        pick: &mut Vec<Segment>,
        family: Family,
        count: &mut usize,
    ) {
        if need == 0 {
            if let Ok(t) = SpanningTree::from_edges(ps, pick) {
                if family.contains(&t) {
                    *count += 1;
                }
            }
            return;
        }
        for i in start..=segs.len() - need {
            let s = segs[i];
            if pick.iter().any(|&p| properly_cross(p, s, ps)) {
                continue;
            }
            pick.push(s);
            rec(ps, segs, i + 1, need - 1, pick, family, count);
            pick.pop();
        }
    }
    rec(ps, &segs, 0, n - 1, &mut pick, family, &mut count);
    count
}

#[test]
fn oracles_agree() {
    let mut mismatches = 0;
    let mut details = Vec::new();
    for n in 3..=6 {
        let ps = convex_point_set(n).unwrap();
        for family in [Family::All, Family::Caterpillars, Family::Paths] {
            let fast = enumerate_plane_trees(&ps, family).unwrap().len();
            let slow = subset_oracle(&ps, family);
            mismatches += usize::from(fast != slow);
            if family == Family::All {
                details.push(format!("n={n}:{slow}"));
            }
        }
    }
    let mut sets: Vec<PointSet> = (3..=5).map(|n| convex_point_set(n).unwrap()).collect();
    for n in 4..=5 {
        for s in instance_seeds(SEED ^ n as u64, 10) {
            sets.push(random_point_set(n, s, DEFAULT_GRID).unwrap());
        }
    }
    let mut scans = 0;
    for ps in &sets {
        for family in [Family::All, Family::Caterpillars, Family::Paths] {
            let trees = enumerate_plane_trees(ps, family).unwrap();
            for op in OpKind::ALL {
                for t in &trees {
                    scans += 1;
                    let naive: HashSet<_> = trees
                        .iter()
                        .filter(|r| {
                            classify_move(ps, t, r)
                                .unwrap()
                                .is_some_and(|m| m.kinds.contains(op))
                        })
                        .map(SpanningTree::key)
                        .collect();
                    let fast: HashSet<_> = neighbors(ps, t, op, family).iter().map(SpanningTree::key).collect();
                    mismatches += usize::from(naive != fast);
                }
            }
        }
    }
    line(
        "oracles",
        mismatches == 0,
        &format!("plane tree counts {} neighbor_scans={scans} mismatches={mismatches}", details.join(" ")),
    );
    assert_eq!(mismatches, 0);
}
