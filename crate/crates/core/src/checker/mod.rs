//! Explicit-state exploration of the reachable transition system and the
//! verdicts for the four reconfiguration requirements.
//!
//! States are discovered breadth-first and numbered in discovery order, so
//! the first state (or edge) satisfying a predicate is reached by a shortest
//! path, and following BFS parent links yields a minimal counterexample.

mod dot;
mod property;

use indexmap::IndexSet;
use serde::Serialize;
use smallvec::SmallVec;
use thiserror::Error;

use crate::engine::{
    Engine, EngineError, ExecutionTrace, GlobalState, Transition, TransitionLabel,
};

pub use property::{check, check_all, CheckReport, PropertyId};

pub const DEFAULT_MAX_STATES: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("state budget exceeded: more than {limit} reachable states")]
    StateBudgetExceeded { limit: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LtsStats {
    pub states: usize,
    pub transitions: usize,
    pub max_depth: usize,
    pub acyclic: bool,
}

#[derive(Debug, Clone)]
pub struct LtsEdge {
    pub from: usize,
    pub to: usize,
    pub label: TransitionLabel,
    pub emitted: SmallVec<[TransitionLabel; 2]>,
}

/// The reachable labelled transition system of one engine.
#[derive(Debug)]
pub struct Lts<'e> {
    engine: &'e Engine,
    states: IndexSet<GlobalState>,
    edges: Vec<LtsEdge>,
    /// `edges[first_edge[i]..first_edge[i + 1]]` leave state `i`.
    first_edge: Vec<usize>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    back_edge: Option<usize>,
    stats: LtsStats,
}

/// Breadth-first exploration from the initial state. Fails once more than
/// `max_states` distinct states have been discovered.
pub fn explore(engine: &Engine, max_states: usize) -> Result<Lts<'_>, CheckError> {
    let mut states = IndexSet::new();
    states.insert(engine.initial_state());
    let mut edges = Vec::new();
    let mut first_edge = Vec::new();
    let mut parent = vec![None];
    let mut depth = vec![0usize];
    if max_states == 0 {
        return Err(CheckError::StateBudgetExceeded { limit: max_states });
    }

    let mut i = 0;
    while i < states.len() {
        first_edge.push(edges.len());
        let state = states.get_index(i).expect("queued state").clone();
        for label in engine.enabled(&state) {
            let Transition {
                label,
                emitted,
                target,
            } = engine.successor(&state, &label);
            let (to, fresh) = states.insert_full(target);
            if fresh {
                if states.len() > max_states {
                    return Err(CheckError::StateBudgetExceeded { limit: max_states });
                }
                parent.push(Some(edges.len()));
                depth.push(depth[i] + 1);
            }
            edges.push(LtsEdge {
                from: i,
                to,
                label,
                emitted,
            });
        }
        i += 1;
    }
    first_edge.push(edges.len());

    let mut lts = Lts {
        engine,
        stats: LtsStats {
            states: states.len(),
            transitions: edges.len(),
            max_depth: depth.iter().copied().max().unwrap_or(0),
            acyclic: true,
        },
        states,
        edges,
        first_edge,
        parent,
        depth,
        back_edge: None,
    };
    lts.back_edge = lts.find_back_edge();
    lts.stats.acyclic = lts.back_edge.is_none();
    Ok(lts)
}

impl<'e> Lts<'e> {
    pub fn engine(&self) -> &'e Engine {
        self.engine
    }

    pub fn stats(&self) -> LtsStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> &GlobalState {
        self.states.get_index(i).expect("state index")
    }

    pub fn states(&self) -> impl Iterator<Item = &GlobalState> {
        self.states.iter()
    }

    pub fn index_of(&self, s: &GlobalState) -> Option<usize> {
        self.states.get_index_of(s)
    }

    pub fn edges(&self) -> &[LtsEdge] {
        &self.edges
    }

    pub fn out_edges(&self, i: usize) -> &[LtsEdge] {
        &self.edges[self.first_edge[i]..self.first_edge[i + 1]]
    }

    pub fn is_terminal(&self, i: usize) -> bool {
        self.first_edge[i] == self.first_edge[i + 1]
    }

    pub fn terminal_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_terminal(i))
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    /// Edge closing a cycle, if the system has one.
    pub fn back_edge(&self) -> Option<&LtsEdge> {
        self.back_edge.map(|e| &self.edges[e])
    }

    /// Path to the source of a back edge, followed by the back edge.
    pub fn cycle_witness(&self) -> Option<ExecutionTrace> {
        let e = self.back_edge?;
        let mut path = self.path_edges(self.edges[e].from);
        path.push(e);
        Some(self.trace_of(&path))
    }

    fn find_back_edge(&self) -> Option<usize> {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Grey,
            Black,
        }
        let mut color = vec![Color::White; self.len()];
        for root in 0..self.len() {
            if color[root] != Color::White {
                continue;
            }
            color[root] = Color::Grey;
            let mut stack = vec![(root, self.first_edge[root])];
            while let Some((v, e)) = stack.last_mut() {
                if *e < self.first_edge[*v + 1] {
                    let edge = *e;
                    *e += 1;
                    let to = self.edges[edge].to;
                    match color[to] {
                        Color::White => {
                            color[to] = Color::Grey;
                            stack.push((to, self.first_edge[to]));
                        }
                        Color::Grey => return Some(edge),
                        Color::Black => {}
                    }
                } else {
                    color[*v] = Color::Black;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Edge indices of the BFS tree path from the initial state to `i`.
    fn path_edges(&self, mut i: usize) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.depth[i]);
        while let Some(e) = self.parent[i] {
            path.push(e);
            i = self.edges[e].from;
        }
        path.reverse();
        path
    }

    fn trace_of(&self, edges: &[usize]) -> ExecutionTrace {
        let mut trace = ExecutionTrace::start(self.state(0));
        for &e in edges {
            let edge = &self.edges[e];
            let t = Transition {
                label: edge.label,
                emitted: edge.emitted.clone(),
                target: self.state(edge.to).clone(),
            };
            trace.push(self.engine, &t);
        }
        trace
    }

    /// Shortest label path from the initial state to state `i`.
    pub fn path_to(&self, i: usize) -> ExecutionTrace {
        self.trace_of(&self.path_edges(i))
    }

    /// First state in BFS order satisfying `pred`.
    pub fn find_state(&self, pred: impl Fn(&GlobalState) -> bool) -> Option<usize> {
        self.states.iter().position(pred)
    }

    /// A shortest path to a state satisfying `pred`, or `None` if no
    /// reachable state does.
    pub fn shortest_counterexample(
        &self,
        pred: impl Fn(&GlobalState) -> bool,
    ) -> Option<ExecutionTrace> {
        self.find_state(pred).map(|i| self.path_to(i))
    }

    /// A shortest path whose last transition satisfies `pred`.
    pub fn shortest_to_transition(
        &self,
        pred: impl Fn(&LtsEdge) -> bool,
    ) -> Option<ExecutionTrace> {
        // Edges are stored in BFS order of their source, so the first match
        // has a minimal-depth source.
        let e = self.edges.iter().position(pred)?;
        let mut path = self.path_edges(self.edges[e].from);
        path.push(e);
        Some(self.trace_of(&path))
    }

    /// The reachable system as a DOT digraph.
    pub fn to_dot(&self) -> String {
        dot::render(self)
    }
}
