//! Plain-text point set and move sequence files.
//!
//! A point set file holds one point per line as two decimal integers;
//! blank lines and lines starting with `#` are skipped.
//!
//! A sequence record reads
//!
//! ```text
//! op slide
//! family caterpillars
//! points sha256:<hex digest of the serialized point set>
//! start 0,1 1,2 2,3
//! - 1,2 + 0,2 kinds=flip,compatible-flip,rotation,empty-triangle-rotation,slide
//! ```
//!
//! with one `-`/`+` line per step.

use sha2::{Digest, Sha256};

use crate::constructive::MoveSequence;
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, Segment};
use crate::reconfig::{MoveStep, OpKind, OpKinds};
use crate::structures::{Family, SpanningTree};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a point set file; geometric errors (collinear triples, duplicate
/// points) come from point set validation.
pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut pts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(i + 1, format!("expected two integers, found {:?}", line)));
        }
        let num = |s: &str| s.parse::<i64>().map_err(|e| parse_err(i + 1, format!("{s:?}: {e}")));
        pts.push(Point::new(num(fields[0])?, num(fields[1])?));
    }
    if pts.is_empty() {
        return Err(parse_err(text.lines().count().max(1), "no points"));
    }
    PointSet::new(pts)
}

pub fn serialize_point_set(ps: &PointSet) -> String {
    ps.points().iter().map(|p| format!("{} {}\n", p.x, p.y)).collect()
}

/// Hex SHA-256 of the serialized point set.
pub fn point_set_hash(ps: &PointSet) -> String {
    let digest = Sha256::digest(serialize_point_set(ps).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses `a,b` into a segment.
pub fn parse_segment(s: &str) -> Option<Segment> {
    let (a, b) = s.split_once(',')?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a != b).then(|| Segment::new(a, b))
}

fn parse_kinds(s: &str) -> Option<OpKinds> {
    let mut k = OpKinds::empty();
    if s.is_empty() {
        return Some(k);
    }
    for name in s.split(',') {
        k.insert(OpKind::parse(name)?);
    }
    Some(k)
}

pub fn serialize_sequence(ps: &PointSet, seq: &MoveSequence) -> String {
    let mut out = format!(
        "op {}\nfamily {}\npoints sha256:{}\nstart {}\n",
        seq.required_kind,
        seq.family,
        point_set_hash(ps),
        seq.start
    );
    for s in &seq.steps {
        out.push_str(&format!("- {} + {} kinds={}\n", s.removed, s.added, s.kinds));
    }
    out
}

/// Parses a sequence record for `ps` and re-validates every step.
pub fn parse_sequence(text: &str, ps: &PointSet) -> Result<MoveSequence> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut header = |key: &str| -> Result<(usize, String)> {
        let (no, l) = lines.next().ok_or_else(|| parse_err(0, format!("missing {key} line")))?;
        let rest = l
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' ').or(if r.is_empty() { Some("") } else { None }))
            .ok_or_else(|| parse_err(no, format!("expected {key:?}")))?;
        Ok((no, rest.trim().to_string()))
    };
    let (no, op) = header("op")?;
    let op = OpKind::parse(&op).ok_or_else(|| parse_err(no, format!("unknown op {op:?}")))?;
    let (no, fam) = header("family")?;
    let family = Family::parse(&fam).ok_or_else(|| parse_err(no, format!("unknown family {fam:?}")))?;
    let (no, hash) = header("points")?;
    let hash = hash
        .strip_prefix("sha256:")
        .ok_or_else(|| parse_err(no, "expected sha256:<hex>"))?;
    if hash != point_set_hash(ps) {
        return Err(parse_err(no, "point set hash does not match"));
    }
    let (no, start) = header("start")?;
    let edges: Vec<Segment> = start
        .split_whitespace()
        .map(|s| parse_segment(s).ok_or_else(|| parse_err(no, format!("bad edge {s:?}"))))
        .collect::<Result<_>>()?;
    let start = SpanningTree::from_edges(ps, &edges).map_err(|e| parse_err(no, e.to_string()))?;
    let mut steps = Vec::new();
    for (no, l) in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        let step = match f.as_slice() {
            ["-", e, "+", g, k] => {
                let kinds = k.strip_prefix("kinds=").and_then(parse_kinds);
                match (parse_segment(e), parse_segment(g), kinds) {
                    (Some(removed), Some(added), Some(kinds)) => MoveStep { removed, added, kinds },
                    _ => return Err(parse_err(no, format!("bad step {l:?}"))),
                }
            }
            _ => return Err(parse_err(no, format!("bad step {l:?}"))),
        };
        steps.push(step);
    }
    let seq = MoveSequence {
        start,
        steps,
        required_kind: op,
        family,
    };
    seq.validate(ps)?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructive::convex_cat_to_star;

    const SQUARE: &str = "# unit square\n0 0\n2 0\n\n2 2\n0 2\n";

    #[test]
    fn point_set_round_trip() {
        let ps = parse_point_set(SQUARE).unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(parse_point_set(&serialize_point_set(&ps)).unwrap(), ps);
    }

    #[test]
    fn point_set_errors() {
        assert!(matches!(parse_point_set(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_point_set("0 0\n1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_point_set("0 0 0\n"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(
            parse_point_set("0 0\n1 1\n2 2\n0 1\n"),
            Err(Error::CollinearTriple(0, 1, 2))
        );
    }

    #[test]
    fn sequence_round_trip() {
        let ps = parse_point_set(SQUARE).unwrap();
        let p = SpanningTree::from_path(&ps, &[0, 1, 2, 3]).unwrap();
        let seq = convex_cat_to_star(&ps, &p, 0).unwrap();
        let text = serialize_sequence(&ps, &seq);
        assert_eq!(parse_sequence(&text, &ps).unwrap(), seq);
        let other = parse_point_set("0 0\n3 0\n2 2\n0 2\n").unwrap();
        assert!(parse_sequence(&text, &other).is_err());
    }

    #[test]
    fn tampered_sequence_is_rejected() {
        let ps = parse_point_set(SQUARE).unwrap();
        let p = SpanningTree::from_path(&ps, &[0, 1, 2, 3]).unwrap();
        let seq = convex_cat_to_star(&ps, &p, 0).unwrap();
        let text = serialize_sequence(&ps, &seq).replace("+ 0,2", "+ 1,3");
        assert!(parse_sequence(&text, &ps).is_err());
    }
}
