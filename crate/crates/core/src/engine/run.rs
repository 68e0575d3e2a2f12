use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Engine, EngineError, GlobalState, StateDigest, Transition, TransitionLabel};

/// How `run` picks among enabled labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// Uniform choice from a seeded ChaCha8 stream.
    Random { seed: u64 },
    /// Index into the sorted enabled list, one entry per step.
    Script(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    #[serde(skip)]
    pub label: TransitionLabel,
    #[serde(skip)]
    pub emitted: Vec<TransitionLabel>,
    /// Rendered label, emitted events appended with `/`.
    #[serde(rename = "label")]
    pub text: String,
    /// Digest of the state reached.
    pub digest: StateDigest,
}

/// A label path from the initial state. Prints one line per transition:
/// `<index> <label> <state-digest-hex16>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExecutionTrace {
    pub initial: StateDigest,
    pub steps: Vec<TraceStep>,
}

impl ExecutionTrace {
    pub(crate) fn start(initial: &GlobalState) -> Self {
        Self {
            initial: initial.digest(),
            steps: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, engine: &Engine, t: &Transition) {
        self.steps.push(TraceStep {
            label: t.label,
            emitted: t.emitted.to_vec(),
            text: engine.describe_step(&t.label, &t.emitted),
            digest: t.target.digest(),
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn labels(&self) -> Vec<TransitionLabel> {
        self.steps.iter().map(|s| s.label).collect()
    }

    /// Labels and emitted events, flattened in occurrence order.
    pub fn events(&self) -> Vec<TransitionLabel> {
        self.steps
            .iter()
            .flat_map(|s| std::iter::once(s.label).chain(s.emitted.iter().copied()))
            .collect()
    }

    pub fn label_texts(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.text.as_str()).collect()
    }
}

impl fmt::Display for ExecutionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{i} {} {}", s.text, s.digest)?;
        }
        Ok(())
    }
}

/// A finished execution.
#[derive(Debug, Clone)]
pub struct Run {
    pub trace: ExecutionTrace,
    pub terminal: GlobalState,
}

impl Engine {
    /// Executes from the initial state until no label is enabled.
    pub fn run(&self, policy: &Policy) -> Result<Run, EngineError> {
        let mut rng = match policy {
            Policy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
            Policy::Script(_) => None,
        };
        let mut state = self.initial_state();
        let mut trace = ExecutionTrace::start(&state);
        loop {
            let enabled = self.enabled(&state);
            if enabled.is_empty() {
                break;
            }
            let step = trace.len();
            let index = match (policy, rng.as_mut()) {
                (Policy::Random { .. }, Some(rng)) => rng.random_range(0..enabled.len()),
                (Policy::Script(script), _) => {
                    let index = *script.get(step).ok_or(EngineError::ScriptExhausted {
                        step,
                        enabled: enabled.len(),
                    })?;
                    if index >= enabled.len() {
                        return Err(EngineError::ScriptIndexOutOfRange {
                            step,
                            index,
                            enabled: enabled.len(),
                        });
                    }
                    index
                }
                (Policy::Random { .. }, None) => unreachable!(),
            };
            let t = self.successor(&state, &enabled[index]);
            trace.push(self, &t);
            state = t.target;
        }
        Ok(Run {
            trace,
            terminal: state,
        })
    }

    /// Applies `labels` in order from the initial state, checking that each
    /// one is enabled when it is taken.
    pub fn replay(&self, labels: &[TransitionLabel]) -> Result<Run, EngineError> {
        let mut state = self.initial_state();
        let mut trace = ExecutionTrace::start(&state);
        for label in labels {
            let t = self.apply(&state, label)?;
            trace.push(self, &t);
            state = t.target;
        }
        Ok(Run {
            trace,
            terminal: state,
        })
    }
}
