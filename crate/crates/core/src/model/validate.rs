//! Well-formedness rules for configurations.
//!
//! Local rules (identifier uniqueness, entry presence, edge targets, successor
//! arity, outcome labels) are checked first. Reachability and cycles are
//! checked on any graph whose edges resolve. Dead ends and fork/join nesting
//! assume a DAG and are only checked when no cycle was found.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{ActivityId, ActivityKind, Configuration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    DuplicateId,
    MissingEntry,
    UnknownTarget,
    BadArity,
    DuplicateOutcome,
    Unreachable,
    Cycle,
    DeadEnd,
    UnbalancedFork,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DuplicateId => "duplicate-id",
            Self::MissingEntry => "missing-entry",
            Self::UnknownTarget => "unknown-target",
            Self::BadArity => "bad-arity",
            Self::DuplicateOutcome => "duplicate-outcome",
            Self::Unreachable => "unreachable",
            Self::Cycle => "cycle",
            Self::DeadEnd => "dead-end",
            Self::UnbalancedFork => "unbalanced-fork",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A broken rule and the activity it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub activity: ActivityId,
}

impl Violation {
    fn new(kind: ViolationKind, activity: &ActivityId) -> Self {
        Self {
            kind,
            activity: activity.clone(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.activity)
    }
}

pub(super) fn validate(cfg: &Configuration) -> Vec<Violation> {
    let mut out = BTreeSet::new();
    let mut index: HashMap<&ActivityId, usize> = HashMap::new();
    for (i, a) in cfg.activities.iter().enumerate() {
        if index.insert(&a.id, i).is_some() {
            out.insert(Violation::new(ViolationKind::DuplicateId, &a.id));
        }
    }
    if !index.contains_key(&cfg.entry) {
        out.insert(Violation::new(ViolationKind::MissingEntry, &cfg.entry));
    }
    for a in &cfg.activities {
        check_local(a, &mut out);
        if a.successors.iter().any(|e| !index.contains_key(&e.target)) {
            out.insert(Violation::new(ViolationKind::UnknownTarget, &a.id));
        }
    }
    let unresolved = out.iter().any(|v| {
        matches!(
            v.kind,
            ViolationKind::DuplicateId | ViolationKind::MissingEntry | ViolationKind::UnknownTarget
        )
    });
    if unresolved {
        return out.into_iter().collect();
    }

    let n = cfg.activities.len();
    let succ: Vec<Vec<usize>> = cfg
        .activities
        .iter()
        .map(|a| a.successors.iter().map(|e| index[&e.target]).collect())
        .collect();
    let entry = index[&cfg.entry];
    let name = |i: usize| &cfg.activities[i].id;

    let mut reached = vec![false; n];
    let mut stack = vec![entry];
    reached[entry] = true;
    while let Some(v) = stack.pop() {
        for &s in &succ[v] {
            if !reached[s] {
                reached[s] = true;
                stack.push(s);
            }
        }
    }
    for (i, r) in reached.iter().enumerate() {
        if !r {
            out.insert(Violation::new(ViolationKind::Unreachable, name(i)));
        }
    }

    let back_targets = back_edge_targets(&succ, entry);
    for &t in &back_targets {
        out.insert(Violation::new(ViolationKind::Cycle, name(t)));
    }
    if !back_targets.is_empty() {
        return out.into_iter().collect();
    }

    // reverse reachability from the final activities
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, ss) in succ.iter().enumerate() {
        for &s in ss {
            pred[s].push(v);
        }
    }
    let mut live = vec![false; n];
    let mut stack: Vec<usize> = (0..n)
        .filter(|&i| cfg.activities[i].kind == ActivityKind::Final)
        .collect();
    for &f in &stack {
        live[f] = true;
    }
    while let Some(v) = stack.pop() {
        for &p in &pred[v] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    for (i, l) in live.iter().enumerate() {
        if !l {
            out.insert(Violation::new(ViolationKind::DeadEnd, name(i)));
        }
    }

    let mut nesting = Nesting {
        cfg,
        succ: &succ,
        indegree: pred.iter().map(Vec::len).collect(),
        memo: HashMap::new(),
        out: &mut out,
    };
    let top = nesting.exits(entry);
    for exit in top {
        if let Exit::Join(j) = exit {
            out.insert(Violation::new(ViolationKind::UnbalancedFork, name(j)));
        }
    }

    out.into_iter().collect()
}

fn check_local(a: &super::Activity, out: &mut BTreeSet<Violation>) {
    let n = a.successors.len();
    let labelled = a.successors.iter().filter(|e| e.outcome.is_some()).count();
    let arity_ok = match a.kind {
        ActivityKind::Task | ActivityKind::Join => n == 1 && labelled == 0,
        ActivityKind::Decision => n >= 2 && labelled == n,
        ActivityKind::Fork => {
            let distinct: HashSet<_> = a.successors.iter().map(|e| &e.target).collect();
            n >= 2 && labelled == 0 && distinct.len() == n
        }
        ActivityKind::Final => n == 0,
    };
    if !arity_ok {
        out.insert(Violation::new(ViolationKind::BadArity, &a.id));
    }
    if a.kind == ActivityKind::Decision {
        let mut seen = HashSet::new();
        for o in a.successors.iter().filter_map(|e| e.outcome.as_ref()) {
            if !seen.insert(o) {
                out.insert(Violation::new(ViolationKind::DuplicateOutcome, &a.id));
            }
        }
    }
}

/// Iterative DFS from `entry` and then from every unvisited node; returns
/// the targets of all back edges.
fn back_edge_targets(succ: &[Vec<usize>], entry: usize) -> BTreeSet<usize> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let n = succ.len();
    let mut color = vec![Color::White; n];
    let mut targets = BTreeSet::new();
    let roots = std::iter::once(entry).chain(0..n);
    for root in roots {
        if color[root] != Color::White {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = Color::Grey;
        while let Some((v, i)) = stack.last_mut() {
            if let Some(&s) = succ[*v].get(*i) {
                *i += 1;
                match color[s] {
                    Color::White => {
                        color[s] = Color::Grey;
                        stack.push((s, 0));
                    }
                    Color::Grey => {
                        targets.insert(s);
                    }
                    Color::Black => {}
                }
            } else {
                color[*v] = Color::Black;
                stack.pop();
            }
        }
    }
    targets
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Exit {
    Final,
    Join(usize),
}

/// Computes, for each node of a DAG, where a single token starting there
/// ends up: at a final activity, or parked at a join it cannot fire alone.
/// A fork is balanced when every branch exits at the same join and that join
/// has exactly one incoming edge per branch.
struct Nesting<'a> {
    cfg: &'a Configuration,
    succ: &'a [Vec<usize>],
    indegree: Vec<usize>,
    memo: HashMap<usize, BTreeSet<Exit>>,
    out: &'a mut BTreeSet<Violation>,
}

impl Nesting<'_> {
    fn exits(&mut self, v: usize) -> BTreeSet<Exit> {
        if let Some(e) = self.memo.get(&v) {
            return e.clone();
        }
        let a = &self.cfg.activities[v];
        let result = match a.kind {
            ActivityKind::Final => BTreeSet::from([Exit::Final]),
            ActivityKind::Join => BTreeSet::from([Exit::Join(v)]),
            ActivityKind::Task | ActivityKind::Decision => {
                let mut acc = BTreeSet::new();
                for &s in self.succ[v].clone().iter() {
                    acc.extend(self.exits(s));
                }
                acc
            }
            ActivityKind::Fork => {
                let mut join = None;
                let mut ok = true;
                for &s in self.succ[v].clone().iter() {
                    let e = self.exits(s);
                    match (e.len(), e.first()) {
                        (1, Some(&Exit::Join(j))) if join.is_none() || join == Some(j) => {
                            join = Some(j)
                        }
                        _ => ok = false,
                    }
                }
                match join {
                    Some(j) if ok && self.indegree[j] == self.succ[v].len() => {
                        let mut acc = BTreeSet::new();
                        for &s in self.succ[j].clone().iter() {
                            acc.extend(self.exits(s));
                        }
                        acc
                    }
                    _ => {
                        self.out
                            .insert(Violation::new(ViolationKind::UnbalancedFork, &a.id));
                        BTreeSet::new()
                    }
                }
            }
        };
        self.memo.insert(v, result.clone());
        result
    }
}
