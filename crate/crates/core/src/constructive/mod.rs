//! Executable reconfiguration sequences.
//!
//! Every generator drives a [`SequenceBuilder`], which re-checks each
//! exchange (tree-ness, planarity, operation kind, family membership) as it
//! is applied, so a sequence that is returned is valid by construction.
//! [`MoveSequence::validate`] repeats those checks from scratch.

mod convex;
mod peeling;
mod radial;
mod rotation;
mod stars;

pub use convex::{convex_cat_to_star, convex_path_to_path};
pub use peeling::{peeling_connect, peeling_connector};
pub use radial::radial_path;
pub use rotation::rotation_to_star;
pub use stars::{
    double_star_to_star, star_to_star_general, statement_b, triple_star_to_star, well_separated_to_star,
};

use std::cell::Cell;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::{PointSet, Segment};
use crate::reconfig::{all_exchanges, classify_move, exchange_kinds, MoveStep, OpKind};
use crate::structures::{caterpillar_spine, CanonicalKey, Family, SpanningTree};

/// A start tree and a list of exchanges, all of kind `required_kind`, with
/// every intermediate tree in `family`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSequence {
    pub start: SpanningTree,
    pub steps: Vec<MoveStep>,
    pub required_kind: OpKind,
    pub family: Family,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Start, every intermediate, and the final tree.
    pub fn trajectory(&self) -> Vec<SpanningTree> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for s in &self.steps {
            cur = cur.exchange(s.removed, s.added);
            out.push(cur);
        }
        out
    }

    pub fn end(&self) -> SpanningTree {
        *self.trajectory().last().unwrap()
    }

    /// Re-checks every step independently of the generator that built it.
    pub fn validate(&self, ps: &PointSet) -> Result<()> {
        self.start.validate(ps)?;
        if !self.family.contains(&self.start) {
            return Err(Error::InvalidMove(format!("start {} is not in family {}", self.start, self.family)));
        }
        let traj = self.trajectory();
        for (i, (w, step)) in traj.windows(2).zip(&self.steps).enumerate() {
            w[1].validate(ps)
                .map_err(|e| Error::InvalidMove(format!("step {i}: {e}")))?;
            let got = classify_move(ps, &w[0], &w[1])?
                .ok_or_else(|| Error::InvalidMove(format!("step {i} is not a single exchange")))?;
            if got.removed != step.removed || got.added != step.added || got.kinds != step.kinds {
                return Err(Error::InvalidMove(format!("step {i} is recorded inconsistently")));
            }
            if !got.kinds.contains(self.required_kind) {
                return Err(Error::InvalidMove(format!(
                    "step {i} ({} -> {}) is not a {}",
                    step.removed, step.added, self.required_kind
                )));
            }
            if !self.family.contains(&w[1]) {
                return Err(Error::InvalidMove(format!("step {i} leaves family {}", self.family)));
            }
        }
        Ok(())
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> MoveSequence {
        MoveSequence {
            start: self.end(),
            steps: self.steps.iter().rev().map(MoveStep::reversed).collect(),
            required_kind: self.required_kind,
            family: self.family,
        }
    }
}

/// Places where a construction left the plain proof steps. Every sequence
/// is validated either way; these only say how it was found.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Detours {
    /// Hull edges closed through a split point other than the nearest one.
    pub split_retries: usize,
    /// Targets reached by breadth-first search over admissible moves.
    pub searches: usize,
    /// Peeling connectors found by exhaustive search.
    pub connector_searches: usize,
}

impl Detours {
    pub fn total(&self) -> usize {
        self.split_retries + self.searches + self.connector_searches
    }

    fn add(&mut self, o: Detours) {
        self.split_retries += o.split_retries;
        self.searches += o.searches;
        self.connector_searches += o.connector_searches;
    }
}

thread_local! {
    static TALLY: Cell<Detours> = const { Cell::new(Detours { split_retries: 0, searches: 0, connector_searches: 0 }) };
}

fn record(d: Detours) {
    TALLY.with(|t| {
        let mut cur = t.get();
        cur.add(d);
        t.set(cur);
    });
}

/// Runs `f` and returns its result with the detours taken by every
/// generator it called on this thread.
pub fn with_detours<T>(f: impl FnOnce() -> T) -> (T, Detours) {
    let saved = TALLY.with(|t| t.replace(Detours::default()));
    let out = f();
    let got = TALLY.with(|t| t.replace(saved));
    let mut merged = saved;
    merged.add(got);
    TALLY.with(|t| t.set(merged));
    (out, got)
}

/// Vertices that must stay on the spine or hang off a spine end.
fn on_spine_or_end_leaf(t: &SpanningTree, v: usize) -> bool {
    let Some(spine) = caterpillar_spine(t) else {
        return false;
    };
    if spine.contains(&v) {
        return true;
    }
    let (Some(&head), Some(&tail)) = (spine.first(), spine.last()) else {
        return false;
    };
    let adj = t.adjacency();
    adj[v].len() == 1 && (adj[v][0] == head || adj[v][0] == tail)
}

/// Applies exchanges one at a time, rejecting any that is not a valid move of
/// the required kind within the family.
pub struct SequenceBuilder<'a> {
    ps: &'a PointSet,
    start: SpanningTree,
    current: SpanningTree,
    steps: Vec<MoveStep>,
    required: OpKind,
    family: Family,
    guards: Vec<usize>,
    fixed_endpoint: Option<usize>,
    limit: usize,
    detours: Detours,
}

impl<'a> SequenceBuilder<'a> {
    pub fn new(ps: &'a PointSet, start: SpanningTree, required: OpKind, family: Family) -> Result<Self> {
        start.validate(ps)?;
        if !family.contains(&start) {
            return Err(Error::Precondition(format!("start {start} is not in family {family}")));
        }
        Ok(SequenceBuilder {
            ps,
            start,
            current: start,
            steps: Vec::new(),
            required,
            family,
            guards: Vec::new(),
            fixed_endpoint: None,
            limit: 1 << 20,
            detours: Detours::default(),
        })
    }

    pub fn ps(&self) -> &'a PointSet {
        self.ps
    }

    pub fn current(&self) -> SpanningTree {
        self.current
    }

    pub fn mark(&self) -> usize {
        self.steps.len()
    }

    /// Requires `v` to remain a spine vertex or a head/tail leaf.
    pub(crate) fn guard(&mut self, v: usize) {
        self.guards.push(v);
    }

    /// Requires every intermediate path to keep `v` as an endpoint.
    pub(crate) fn fix_endpoint(&mut self, v: usize) {
        self.fixed_endpoint = Some(v);
    }

    fn check(&self, e: Segment, f: Segment) -> Result<(SpanningTree, MoveStep)> {
        self.check_from(self.current, e, f)
    }

    /// Checks the exchange as if `cur` were the current tree.
    fn check_from(&self, cur: SpanningTree, e: Segment, f: Segment) -> Result<(SpanningTree, MoveStep)> {
        if !cur.contains(e) {
            return Err(Error::InvalidMove(format!("{e} is not an edge of {cur}")));
        }
        if cur.contains(f) {
            return Err(Error::InvalidMove(format!("{f} is already an edge of {cur}")));
        }
        let next = cur.exchange(e, f);
        next.validate(self.ps)
            .map_err(|err| Error::InvalidMove(format!("-{e} +{f} on {cur}: {err}")))?;
        let kinds = exchange_kinds(self.ps, &cur, e, f);
        if !kinds.contains(self.required) {
            return Err(Error::InvalidMove(format!(
                "-{e} +{f} on {cur} is not a {} (kinds: {kinds})",
                self.required
            )));
        }
        if !self.family.contains(&next) {
            return Err(Error::InvalidMove(format!("-{e} +{f} on {cur} leaves {}", self.family)));
        }
        for &g in &self.guards {
            if !on_spine_or_end_leaf(&next, g) {
                return Err(Error::InvalidMove(format!(
                    "-{e} +{f} on {cur}: {g} leaves the spine"
                )));
            }
        }
        if let Some(u) = self.fixed_endpoint {
            if next.degree(u) != 1 {
                return Err(Error::InvalidMove(format!("-{e} +{f} on {cur}: endpoint {u} moved")));
            }
        }
        Ok((next, MoveStep { removed: e, added: f, kinds }))
    }

    pub fn can_apply(&self, e: Segment, f: Segment) -> bool {
        self.check(e, f).is_ok()
    }

    pub fn apply(&mut self, e: Segment, f: Segment) -> Result<()> {
        if self.steps.len() >= self.limit {
            return Err(Error::Construction("step limit reached".into()));
        }
        let (next, step) = self.check(e, f)?;
        self.current = next;
        self.steps.push(step);
        Ok(())
    }

    /// Slides edge `ab` to `ac`; the third side `bc` must be present.
    pub fn slide(&mut self, a: usize, b: usize, c: usize) -> Result<()> {
        self.apply(Segment::new(a, b), Segment::new(a, c))
    }

    /// Undoes the steps recorded since `mark`, most recent first, appending
    /// the reversed exchanges.
    pub fn undo_since(&mut self, mark: usize, upto: usize) -> Result<()> {
        let rev: Vec<MoveStep> = self.steps[mark..upto].iter().rev().map(MoveStep::reversed).collect();
        for s in rev {
            self.apply(s.removed, s.added)?;
        }
        Ok(())
    }

    pub(crate) fn note_detour(&mut self, split_rank: usize) {
        self.detours.split_retries += (split_rank > 0) as usize;
    }

    pub(crate) fn note_search(&mut self) {
        self.detours.searches += 1;
    }

    pub(crate) fn note_connector_search(&mut self) {
        self.detours.connector_searches += 1;
    }

    /// Breadth-first search from the current tree over moves this builder
    /// accepts, to the nearest tree satisfying `goal`; the moves found are
    /// applied. At most `cap` trees are visited.
    pub(crate) fn search_to(&mut self, goal: impl Fn(&SpanningTree) -> bool, cap: usize) -> Result<()> {
        let start = self.current;
        if goal(&start) {
            return Ok(());
        }
        let mut parent: HashMap<CanonicalKey, (CanonicalKey, Segment, Segment)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = HashSet::from([start.key()]);
        let mut found = None;
        'bfs: while let Some(t) = queue.pop_front() {
            for (step, r) in all_exchanges(self.ps, &t) {
                if seen.contains(&r.key()) || self.check_from(t, step.removed, step.added).is_err() {
                    continue;
                }
                seen.insert(r.key());
                parent.insert(r.key(), (t.key(), step.removed, step.added));
                if goal(&r) {
                    found = Some(r.key());
                    break 'bfs;
                }
                if seen.len() > cap {
                    break 'bfs;
                }
                queue.push_back(r);
            }
        }
        let mut key = found.ok_or_else(|| {
            Error::Construction(format!("no target reachable from {start} within {cap} trees"))
        })?;
        let mut moves = Vec::new();
        while key != start.key() {
            let (prev, e, f) = parent[&key];
            moves.push((e, f));
            key = prev;
        }
        self.note_search();
        for (e, f) in moves.into_iter().rev() {
            self.apply(e, f)?;
        }
        Ok(())
    }

    /// Discards every step after `mark`.
    pub fn rollback(&mut self, mark: usize) {
        while self.steps.len() > mark {
            let s = self.steps.pop().unwrap();
            self.current = self.current.exchange(s.added, s.removed);
        }
    }

    pub fn finish(self) -> MoveSequence {
        record(self.detours);
        MoveSequence {
            start: self.start,
            steps: self.steps,
            required_kind: self.required,
            family: self.family,
        }
    }
}
