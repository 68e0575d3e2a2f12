use std::collections::HashMap;

use smallvec::SmallVec;

use super::{ActivityId, ActivityKind, Configuration, Outcome};

pub(crate) type NodeIx = u16;

/// Sorted multiset of token positions.
pub(crate) type Tokens = SmallVec<[NodeIx; 4]>;

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub(crate) id: ActivityId,
    pub(crate) kind: ActivityKind,
    pub(crate) succ: Vec<NodeIx>,
    pub(crate) outcomes: Vec<Option<Outcome>>,
    pub(crate) indegree: u16,
}

/// Index-based form of a [`Configuration`], used by the token game.
#[derive(Debug, Clone)]
pub(crate) struct Graph {
    pub(crate) nodes: Vec<Node>,
    pub(crate) entry: NodeIx,
    index: HashMap<ActivityId, NodeIx>,
}

impl Graph {
    /// Fails on duplicate ids, a missing entry or dangling edges. All other
    /// rule breaks still compile; the token game is total on them.
    pub(crate) fn compile(cfg: &Configuration) -> Option<Graph> {
        if cfg.activities.len() > NodeIx::MAX as usize {
            return None;
        }
        let mut index = HashMap::with_capacity(cfg.activities.len());
        for (i, a) in cfg.activities.iter().enumerate() {
            if index.insert(a.id.clone(), i as NodeIx).is_some() {
                return None;
            }
        }
        let entry = *index.get(&cfg.entry)?;
        let mut nodes = Vec::with_capacity(cfg.activities.len());
        for a in &cfg.activities {
            let succ = a
                .successors
                .iter()
                .map(|e| index.get(&e.target).copied())
                .collect::<Option<Vec<_>>>()?;
            nodes.push(Node {
                id: a.id.clone(),
                kind: a.kind,
                succ,
                outcomes: a.successors.iter().map(|e| e.outcome.clone()).collect(),
                indegree: 0,
            });
        }
        for i in 0..nodes.len() {
            for s in nodes[i].succ.clone() {
                nodes[s as usize].indegree += 1;
            }
        }
        Some(Graph {
            nodes,
            entry,
            index,
        })
    }

    pub(crate) fn lookup(&self, name: &str) -> Option<NodeIx> {
        self.index.get(name).copied()
    }

    pub(crate) fn node(&self, ix: NodeIx) -> &Node {
        &self.nodes[ix as usize]
    }

    pub(crate) fn name(&self, ix: NodeIx) -> &ActivityId {
        &self.nodes[ix as usize].id
    }

    /// Tokens of a fresh order.
    pub(crate) fn initial(&self) -> Option<Tokens> {
        let mut t = Tokens::new();
        self.place(&mut t, self.entry, 0).then_some(t)
    }

    /// Completes the activity at `at`, consuming one token there. `edge`
    /// selects the decision branch. Returns `None` if no visible token rests
    /// at `at` or the routing below it does not terminate.
    pub(crate) fn fire(&self, tokens: &Tokens, at: NodeIx, edge: Option<usize>) -> Option<Tokens> {
        let node = self.node(at);
        if !node.kind.is_visible() {
            return None;
        }
        let pos = tokens.iter().position(|&t| t == at)?;
        let mut next = tokens.clone();
        next.remove(pos);
        let ok = match (node.kind, edge) {
            (ActivityKind::Decision, Some(e)) => {
                let target = *node.succ.get(e)?;
                self.place(&mut next, target, 0)
            }
            (ActivityKind::Decision, None) => return None,
            _ => node.succ.iter().all(|&s| self.place(&mut next, s, 0)),
        };
        ok.then_some(next)
    }

    fn place(&self, tokens: &mut Tokens, at: NodeIx, depth: usize) -> bool {
        // Only routing nodes recurse; a chain longer than the graph loops.
        if depth > self.nodes.len() {
            return false;
        }
        let node = self.node(at);
        match node.kind {
            ActivityKind::Fork => node.succ.iter().all(|&s| self.place(tokens, s, depth + 1)),
            ActivityKind::Join => {
                let arrived = tokens.iter().filter(|&&t| t == at).count() + 1;
                if arrived >= node.indegree.max(1) as usize {
                    tokens.retain(|t| *t != at);
                    node.succ.iter().all(|&s| self.place(tokens, s, depth + 1))
                } else {
                    insert_sorted(tokens, at);
                    true
                }
            }
            _ => {
                insert_sorted(tokens, at);
                true
            }
        }
    }
}

fn insert_sorted(tokens: &mut Tokens, at: NodeIx) {
    let pos = tokens.partition_point(|&t| t <= at);
    tokens.insert(pos, at);
}
