use std::collections::BTreeSet;

use super::{ActivityKind, Graph, NodeIx, Tokens, Trace};

pub(super) fn conforms(g: &Graph, trace: &Trace) -> bool {
    g.replay(trace.steps().iter().map(|s| g.lookup(s.as_str())))
}

impl Graph {
    /// Replays a sequence of completed activities against every token
    /// marking it could have produced. Decision outcomes are not recorded,
    /// so the replay keeps a set of candidate markings and branches at each
    /// decision. `None` stands for a name foreign to this graph.
    pub(crate) fn replay<I: IntoIterator<Item = Option<NodeIx>>>(&self, steps: I) -> bool {
        let Some(start) = self.initial() else {
            return false;
        };
        let mut current: BTreeSet<Tokens> = BTreeSet::from([start]);
        for step in steps {
            let Some(at) = step else {
                return false;
            };
            let mut next = BTreeSet::new();
            for marking in &current {
                if self.node(at).kind == ActivityKind::Decision {
                    for e in 0..self.node(at).succ.len() {
                        next.extend(self.fire(marking, at, Some(e)));
                    }
                } else {
                    next.extend(self.fire(marking, at, None));
                }
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|m| m.is_empty())
    }
}

pub(super) fn enumerate(g: &Graph, max_len: usize) -> Vec<Trace> {
    let mut found: BTreeSet<Vec<NodeIx>> = BTreeSet::new();
    if let Some(start) = g.initial() {
        let mut path = Vec::new();
        let bounds = Bounds::of(g);
        walk(g, &bounds, &start, &mut path, max_len, &mut found);
    }
    let mut out: Vec<Trace> = found
        .into_iter()
        .map(|p| p.iter().map(|&n| g.name(n).clone()).collect())
        .collect();
    out.sort();
    out
}

/// Lower bounds on the visible steps a token still owes: `finish[n]` until
/// the order can end, `local[n]` until the token reaches a join or ends.
struct Bounds {
    finish: Vec<u32>,
    local: Vec<u32>,
}

impl Bounds {
    fn of(g: &Graph) -> Self {
        const INF: u32 = u32::MAX / 4;
        let n = g.nodes.len();
        let (mut finish, mut local) = (vec![INF; n], vec![INF; n]);
        // relax to a fixpoint; values only decrease, so cycles terminate
        let mut changed = true;
        while changed {
            changed = false;
            for (i, node) in g.nodes.iter().enumerate() {
                let fin = |v: &[u32]| node.succ.iter().map(|&s| v[s as usize]).collect::<Vec<_>>();
                let cost = u32::from(node.kind.is_visible());
                let (f, l) = match node.kind {
                    ActivityKind::Final => (1, 1),
                    ActivityKind::Fork => (
                        fin(&finish).into_iter().max().unwrap_or(INF),
                        fin(&local).into_iter().fold(0, |a, b| (a + b).min(INF)),
                    ),
                    ActivityKind::Join => (fin(&finish).into_iter().min().unwrap_or(INF), 0),
                    _ => (
                        (cost + fin(&finish).into_iter().min().unwrap_or(INF)).min(INF),
                        (cost + fin(&local).into_iter().min().unwrap_or(INF)).min(INF),
                    ),
                };
                if f < finish[i] || l < local[i] {
                    finish[i] = finish[i].min(f);
                    local[i] = local[i].min(l);
                    changed = true;
                }
            }
        }
        Bounds { finish, local }
    }

    fn owed(&self, marking: &Tokens) -> usize {
        let at = |v: &[u32], t: &NodeIx| v[*t as usize] as usize;
        let longest = marking
            .iter()
            .map(|t| at(&self.finish, t))
            .max()
            .unwrap_or(0);
        let pending: usize = marking.iter().map(|t| at(&self.local, t)).sum();
        longest.max(pending)
    }
}

fn walk(
    g: &Graph,
    bounds: &Bounds,
    marking: &Tokens,
    path: &mut Vec<NodeIx>,
    max_len: usize,
    found: &mut BTreeSet<Vec<NodeIx>>,
) {
    if marking.is_empty() {
        found.insert(path.clone());
        return;
    }
    if path.len() + bounds.owed(marking) > max_len {
        return;
    }
    let mut seen: Option<NodeIx> = None;
    for &at in marking {
        // markings are sorted; skip duplicate positions
        if seen == Some(at) {
            continue;
        }
        seen = Some(at);
        let node = g.node(at);
        if !node.kind.is_visible() {
            continue;
        }
        let branches: Vec<Option<usize>> = if node.kind == ActivityKind::Decision {
            (0..node.succ.len()).map(Some).collect()
        } else {
            vec![None]
        };
        for edge in branches {
            if let Some(next) = g.fire(marking, at, edge) {
                path.push(at);
                walk(g, bounds, &next, path, max_len, found);
                path.pop();
            }
        }
    }
}
