//! Workflow configurations as activity graphs.
//!
//! A [`Configuration`] is a directed acyclic graph of activities with a single
//! entry. Orders move through it by the token game: a token rests on each
//! activity that is ready to run, forks split a token into one per branch,
//! joins wait for every branch to arrive, and a final activity consumes its
//! token. Forks and joins are routing nodes and never show up in a [`Trace`];
//! tasks, decisions and finals do.

mod graph;
mod language;
mod serial;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use graph::{Graph, NodeIx, Tokens};
pub use validate::{Violation, ViolationKind};

/// Maximum length of any symbolic identifier.
pub const MAX_SYMBOL_LEN: usize = 64;

/// Outcome label that marks a business rejection at a decision.
pub const REJECT_OUTCOME: &str = "reject";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid identifier {0:?}: expected 1..=64 characters from [A-Za-z0-9_.-]")]
    BadSymbol(String),
    #[error("unknown activity `{0}`")]
    UnknownActivity(ActivityId),
    #[error("decision `{0}` requires an outcome label")]
    MissingOutcome(ActivityId),
    #[error("decision `{activity}` has no outcome `{outcome}`")]
    UnknownOutcome {
        activity: ActivityId,
        outcome: String,
    },
    #[error("activity `{0}` is not a decision and takes no outcome label")]
    UnexpectedOutcome(ActivityId),
}

fn check_symbol(s: &str) -> Result<(), ModelError> {
    let ok = !s.is_empty()
        && s.len() <= MAX_SYMBOL_LEN
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
    if ok {
        Ok(())
    } else {
        Err(ModelError::BadSymbol(s.to_owned()))
    }
}

macro_rules! symbol {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Result<Self, ModelError> {
                let s = s.into();
                check_symbol(&s)?;
                Ok(Self(s))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl TryFrom<String> for $name {
            type Error = ModelError;
            fn try_from(s: String) -> Result<Self, ModelError> {
                Self::new(s)
            }
        }

        impl TryFrom<&str> for $name {
            type Error = ModelError;
            fn try_from(s: &str) -> Result<Self, ModelError> {
                Self::new(s)
            }
        }

        impl From<$name> for String {
            fn from(v: $name) -> String {
                v.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl PartialEq<str> for $name {
            fn eq(&self, other: &str) -> bool {
                self.0 == other
            }
        }

        impl PartialEq<&str> for $name {
            fn eq(&self, other: &&str) -> bool {
                self.0 == *other
            }
        }
    };
}

symbol!(
    /// Name of an activity, unique within its configuration.
    ActivityId
);
symbol!(
    /// Name of a configuration, e.g. `C1`.
    ConfigId
);
symbol!(
    /// Label on a decision's outgoing edge.
    Outcome
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ActivityKind {
    Task,
    Decision,
    Fork,
    Join,
    Final,
}

impl ActivityKind {
    /// Whether completing an activity of this kind is recorded in a trace.
    pub fn is_visible(self) -> bool {
        matches!(self, Self::Task | Self::Decision | Self::Final)
    }
}

impl fmt::Display for ActivityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One outgoing edge. Only decision edges carry an outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub outcome: Option<Outcome>,
    pub target: ActivityId,
}

impl Edge {
    pub fn to(target: ActivityId) -> Self {
        Self {
            outcome: None,
            target,
        }
    }

    pub fn on(outcome: Outcome, target: ActivityId) -> Self {
        Self {
            outcome: Some(outcome),
            target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activity {
    pub id: ActivityId,
    pub kind: ActivityKind,
    pub successors: Vec<Edge>,
}

/// The structure of a workflow: the unit that reconfiguration replaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub id: ConfigId,
    pub entry: ActivityId,
    pub activities: Vec<Activity>,
}

/// A compiled [`Configuration`]. Answers the same queries without
/// rebuilding the graph each time.
#[derive(Debug, Clone)]
pub struct Matcher {
    graph: Graph,
}

impl Matcher {
    pub fn conforms(&self, trace: &Trace) -> bool {
        language::conforms(&self.graph, trace)
    }

    pub fn enumerate_traces(&self, max_len: usize) -> Vec<Trace> {
        language::enumerate(&self.graph, max_len)
    }
}

/// Activities completed by one order, in completion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trace(pub Vec<ActivityId>);

impl Trace {
    /// Builds a trace from activity names.
    pub fn of<S: AsRef<str>>(names: &[S]) -> Result<Self, ModelError> {
        names
            .iter()
            .map(|n| ActivityId::new(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Trace)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[ActivityId] {
        &self.0
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl FromIterator<ActivityId> for Trace {
    fn from_iter<I: IntoIterator<Item = ActivityId>>(iter: I) -> Self {
        Trace(iter.into_iter().collect())
    }
}

impl Configuration {
    pub fn activity(&self, id: &ActivityId) -> Option<&Activity> {
        self.activities.iter().find(|a| &a.id == id)
    }

    /// Checks every well-formedness rule. An empty result means the
    /// configuration is usable by the engine.
    pub fn validate(&self) -> Vec<Violation> {
        validate::validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Targets reached from `activity`. Decisions need the outcome that was
    /// taken; every other kind must be queried without one.
    pub fn successors(
        &self,
        activity: &ActivityId,
        outcome: Option<&str>,
    ) -> Result<Vec<ActivityId>, ModelError> {
        let a = self
            .activity(activity)
            .ok_or_else(|| ModelError::UnknownActivity(activity.clone()))?;
        match (a.kind, outcome) {
            (ActivityKind::Decision, None) => Err(ModelError::MissingOutcome(a.id.clone())),
            (ActivityKind::Decision, Some(o)) => a
                .successors
                .iter()
                .find(|e| e.outcome.as_ref().is_some_and(|x| x == o))
                .map(|e| vec![e.target.clone()])
                .ok_or_else(|| ModelError::UnknownOutcome {
                    activity: a.id.clone(),
                    outcome: o.to_owned(),
                }),
            (_, Some(_)) => Err(ModelError::UnexpectedOutcome(a.id.clone())),
            (_, None) => Ok(a.successors.iter().map(|e| e.target.clone()).collect()),
        }
    }

    /// Whether `trace` is a complete run of this configuration's token game.
    pub fn conforms(&self, trace: &Trace) -> bool {
        self.matcher().is_some_and(|m| m.conforms(trace))
    }

    /// Every complete run of the token game with at most `max_len` steps,
    /// sorted lexicographically.
    pub fn enumerate_traces(&self, max_len: usize) -> Vec<Trace> {
        self.matcher()
            .map(|m| m.enumerate_traces(max_len))
            .unwrap_or_default()
    }

    /// Compiles the token game once for repeated queries. `None` if ids,
    /// the entry or an edge target do not resolve.
    pub fn matcher(&self) -> Option<Matcher> {
        Graph::compile(self).map(|graph| Matcher { graph })
    }

    /// Parses the JSON configuration document.
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Renders the canonical JSON document (pretty-printed, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("configuration serializes");
        s.push('\n');
        s
    }
}
