//! Command-line surface: `validate`, `graph`, `sequence`, `verify` and
//! `search-isolated`.

pub mod export;
pub mod formats;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{search_isolated_caterpillar, verify, Claim, SearchStrategy};
use crate::constructive::{
    convex_cat_to_star, convex_path_to_path, double_star_to_star, peeling_connect, rotation_to_star,
    star_to_star_general, triple_star_to_star, well_separated_to_star, with_detours, MoveSequence,
};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, PointSet, Segment};
use crate::reconfig::{build_graph_with_cap, OpKind, DEFAULT_VERTEX_CAP};
use crate::structures::{Family, SpanningTree, DEFAULT_CAP_N};

use export::{svg_frames, to_dot, to_edge_list};
use formats::{parse_point_set, parse_segment, serialize_point_set, serialize_sequence};

const CAP_ENV: &str = "PLANE_RECONFIG_CAP_N";

#[derive(Debug, Parser)]
#[command(name = "plane-reconfig", version, about = "Reconfiguration of plane spanning trees, caterpillars and paths")]
pub struct Cli {
    /// Enumeration cap on n (default 10; also read from PLANE_RECONFIG_CAP_N).
    #[arg(long, global = true)]
    pub cap_n: Option<usize>,
    /// Cap on reconfiguration graph vertices.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP)]
    pub max_vertices: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a point set file: size, hull size, general position.
    Validate { file: PathBuf },
    /// Build a reconfiguration graph and report on it.
    Graph {
        file: PathBuf,
        /// all, caterpillars or paths.
        #[arg(long, default_value = "all")]
        family: String,
        /// flip, compatible-flip, rotation, empty-triangle-rotation or slide.
        #[arg(long, default_value = "flip")]
        op: String,
        /// Write the graph as DOT or as a hex key edge list.
        #[arg(long)]
        export: Option<ExportFormat>,
        /// Export destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report the number of connected components.
        #[arg(long)]
        components: bool,
        /// Report the diameter, or inf when disconnected.
        #[arg(long)]
        diameter: bool,
    },
    /// Generate and validate a move sequence.
    ///
    /// SVG frames: points are circles labelled by index, tree edges are solid
    /// black, the edge removed by the next step is dashed red and the edge it
    /// adds is dotted blue.
    Sequence {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: SequenceKind,
        /// Start tree as an edge list, e.g. "0,1 1,2 2,3".
        #[arg(long)]
        tree: Option<String>,
        /// Target tree for path-to-path.
        #[arg(long)]
        target: Option<String>,
        /// Spine end to collapse onto for cat-to-star.
        #[arg(long)]
        s: Option<usize>,
        /// First center for double-star and star-to-star.
        #[arg(long)]
        u: Option<usize>,
        /// Second center; the sequence ends at the star on v.
        #[arg(long)]
        v: Option<usize>,
        /// Spine orientation for well-separated, e.g. "0,1,2".
        #[arg(long)]
        spine: Option<String>,
        /// Vertex sequences for peeling-connect, e.g. "0,1,2,3".
        #[arg(long)]
        p: Option<String>,
        /// Target vertex sequence for peeling-connect.
        #[arg(long)]
        q: Option<String>,
        /// Sequence record destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for step_0000.svg onward.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a claim on convex and seeded random instances.
    Verify {
        /// T1, C1, P1, L1, T4, L4, T5, P2, L5, L6, L7, T6, T7 or WS.
        #[arg(long)]
        theorem: String,
        /// Inclusive range such as 4..8.
        #[arg(long, default_value = "4..7")]
        n_range: String,
        /// Random sets per n.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Look for a caterpillar with no slide to another caterpillar.
    SearchIsolated {
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Candidates to evaluate before giving up.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// random or exhaustive-order-types.
        #[arg(long, default_value = "random")]
        strategy: String,
        /// Witness destination: a point set file with the tree in a comment.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceKind {
    CatToStar,
    PathToPath,
    DoubleStar,
    WellSeparated,
    TripleStar,
    RotationStar,
    PeelingConnect,
    StarToStar,
}

/// Parses `a..b` or `a..=b` as an inclusive range.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Precondition(format!("bad range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn parse_edges(ps: &PointSet, s: &str) -> Result<SpanningTree> {
    let edges: Vec<Segment> = s
        .split_whitespace()
        .map(|e| parse_segment(e).ok_or_else(|| Error::Precondition(format!("bad edge {e:?}"))))
        .collect::<Result<_>>()?;
    SpanningTree::from_edges(ps, &edges)
}

fn parse_vertices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| Error::Precondition(format!("bad vertex {v:?}"))))
        .collect()
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Precondition(format!("--{name} is required for this kind")))
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    parse_point_set(&std::fs::read_to_string(path)?)
}

/// Applies the cap flags, warning on stderr past the defaults.
fn apply_caps(cli: &Cli, err: &mut dyn Write) {
    if let Some(c) = cli.cap_n {
        if c > DEFAULT_CAP_N {
            let _ = writeln!(err, "warning: enumeration cap raised to n = {c}; runs may be very slow");
        }
        std::env::set_var(CAP_ENV, c.to_string());
    }
    if cli.max_vertices > DEFAULT_VERTEX_CAP {
        let _ = writeln!(
            err,
            "warning: graph vertex cap raised to {}; memory use may be large",
            cli.max_vertices
        );
    }
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    apply_caps(&cli, err);
    let res = match cli.command {
        Command::Validate { ref file } => cmd_validate(file, out),
        Command::Graph {
            ref file,
            ref family,
            ref op,
            export,
            out: ref dest,
            components,
            diameter,
        } => cmd_graph(file, family, op, export, dest.as_deref(), components, diameter, cli.max_vertices, out),
        Command::Sequence { .. } => cmd_sequence(&cli.command, out),
        Command::Verify {
            ref theorem,
            ref n_range,
            samples,
            seed,
        } => cmd_verify(theorem, n_range, samples, seed, out),
        Command::SearchIsolated {
            n,
            budget,
            seed,
            ref strategy,
            out: ref dest,
        } => cmd_search_isolated(n, budget, seed, strategy, dest.as_deref(), out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn cmd_validate(file: &Path, out: &mut dyn Write) -> Result<i32> {
    let ps = read_point_set(file)?;
    let hull = convex_hull(&ps, &ps.all_indices());
    writeln!(out, "n={} hull={} general-position=ok", ps.len(), hull.len())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_graph(
    file: &Path,
    family: &str,
    op: &str,
    export: Option<ExportFormat>,
    dest: Option<&Path>,
    components: bool,
    diameter: bool,
    max_vertices: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let ps = read_point_set(file)?;
    let family = Family::parse(family).ok_or_else(|| Error::Precondition(format!("unknown family {family:?}")))?;
    let op = OpKind::parse(op).ok_or_else(|| Error::Precondition(format!("unknown op {op:?}")))?;
    let g = build_graph_with_cap(&ps, family, op, max_vertices)?;
    let mut line = format!("vertices={} edges={}", g.len(), g.edge_count());
    if components {
        line.push_str(&format!(" components={}", g.components().len()));
    }
    if diameter {
        match g.diameter() {
            Some(d) => line.push_str(&format!(" diameter={d}")),
            None => line.push_str(" diameter=inf"),
        }
    }
    writeln!(out, "{line}")?;
    if let Some(fmt) = export {
        let text = match fmt {
            ExportFormat::Dot => to_dot(&g, ps.len()),
            ExportFormat::Edges => to_edge_list(&g),
        };
        match dest {
            Some(p) => std::fs::write(p, text)?,
            None => out.write_all(text.as_bytes())?,
        }
    }
    Ok(0)
}

fn build_sequence(ps: &PointSet, cmd: &Command) -> Result<MoveSequence> {
    let Command::Sequence {
        kind,
        tree,
        target,
        s,
        u,
        v,
        spine,
        p,
        q,
        ..
    } = cmd
    else {
        unreachable!("called with a sequence command")
    };
    let tree = || need(tree.as_deref(), "tree").and_then(|t| parse_edges(ps, t));
    match kind {
        SequenceKind::CatToStar => convex_cat_to_star(ps, &tree()?, need(*s, "s")?),
        SequenceKind::PathToPath => {
            let target = parse_edges(ps, need(target.as_deref(), "target")?)?;
            convex_path_to_path(ps, &tree()?, &target)
        }
        SequenceKind::DoubleStar => double_star_to_star(ps, &tree()?, need(*u, "u")?, need(*v, "v")?),
        SequenceKind::WellSeparated => {
            well_separated_to_star(ps, &tree()?, &parse_vertices(need(spine.as_deref(), "spine")?)?)
        }
        SequenceKind::TripleStar => triple_star_to_star(ps, &tree()?),
        SequenceKind::RotationStar => rotation_to_star(ps, &tree()?),
        SequenceKind::PeelingConnect => peeling_connect(
            ps,
            &parse_vertices(need(p.as_deref(), "p")?)?,
            &parse_vertices(need(q.as_deref(), "q")?)?,
        ),
        SequenceKind::StarToStar => star_to_star_general(ps, need(*u, "u")?, need(*v, "v")?),
    }
}

pub fn cmd_sequence(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    let Command::Sequence { file, out: dest, svg, .. } = cmd else {
        unreachable!("called with a sequence command")
    };
    let ps = read_point_set(file)?;
    let (seq, detours) = with_detours(|| build_sequence(&ps, cmd));
    let seq = seq?;
    seq.validate(&ps)?;
    let record = serialize_sequence(&ps, &seq);
    writeln!(
        out,
        "steps={} op={} family={} end={} detours={}",
        seq.len(),
        seq.required_kind,
        seq.family,
        seq.end(),
        detours.total()
    )?;
    match dest {
        Some(p) => std::fs::write(p, &record)?,
        None => out.write_all(record.as_bytes())?,
    }
    if let Some(dir) = svg {
        std::fs::create_dir_all(dir)?;
        for (name, body) in svg_frames(&ps, &seq.trajectory(), &seq.steps) {
            std::fs::write(dir.join(name), body)?;
        }
    }
    Ok(0)
}

pub fn cmd_verify(id: &str, n_range: &str, samples: usize, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let claim = Claim::parse(id).ok_or_else(|| Error::Precondition(format!("unknown id {id:?}")))?;
    let range = parse_n_range(n_range)?;
    let report = verify(claim, range, samples, seed)?;
    for r in &report.instances {
        writeln!(out, "{r}")?;
    }
    writeln!(out, "{}", report.summary())?;
    Ok(if report.pass() { 0 } else { 1 })
}

pub fn cmd_search_isolated(
    n: usize,
    budget: usize,
    seed: u64,
    strategy: &str,
    dest: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let strategy =
        SearchStrategy::parse(strategy).ok_or_else(|| Error::Precondition(format!("unknown strategy {strategy:?}")))?;
    match search_isolated_caterpillar(n, strategy, budget, seed)? {
        Some(r) => {
            let ok = r.revalidate()?;
            let text = format!(
                "# caterpillar with no slide to another caterpillar (seed {seed}, {} candidates)\n# edges {}\n{}",
                r.iterations,
                r.witness,
                serialize_point_set(&r.point_set)
            );
            writeln!(out, "found n={n} iterations={} revalidated={ok} edges={}", r.iterations, r.witness)?;
            match dest {
                Some(p) => std::fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(if ok { 0 } else { 1 })
        }
        None => {
            writeln!(out, "none found n={n} budget={budget} seed={seed}")?;
            Ok(0)
        }
    }
}

/// Reads a witness written by `search-isolated`: the point set and the tree
/// from its `# edges` comment.
pub fn read_witness(text: &str) -> Result<(PointSet, SpanningTree)> {
    let ps = parse_point_set(text)?;
    let edges = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("# edges "))
        .ok_or_else(|| Error::Parse { line: 0, msg: "missing # edges line".into() })?;
    let t = parse_edges(&ps, edges)?;
    Ok((ps, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("4..8").unwrap(), 4..=8);
        assert_eq!(parse_n_range("5..=5").unwrap(), 5..=5);
        assert!(parse_n_range("8..4").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn cli_parses() {
        let cli = Cli::try_parse_from(["plane-reconfig", "verify", "--theorem", "T1", "--n-range", "4..5"]).unwrap();
        assert!(matches!(cli.command, Command::Verify { .. }));
        assert!(Cli::try_parse_from(["plane-reconfig", "bogus"]).is_err());
    }
}
