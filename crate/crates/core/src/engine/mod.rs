//! Interleaving operational semantics of a workflow under reconfiguration.
//!
//! A global state holds the engine phase, every in-flight order and the
//! remaining arrival budget. [`Engine::enabled`] lists the atomic actions
//! permitted by the chosen [`StrategyKind`]; [`Engine::apply`] performs one.
//! No action ever changes another order's tokens.
//!
//! * `Abort`: `StartReconfig` aborts every in-flight order and switches
//!   straight to the new configuration.
//! * `SuspendResume`: `StartReconfig` suspends every in-flight order; only
//!   reconfiguration steps run until `CompleteReconfig` resumes them on the
//!   old graph. Arrivals wait.
//! * `Overlap`: old orders, reconfiguration steps and new-configuration
//!   arrivals all interleave. `CompleteReconfig` waits for the old orders to
//!   drain.

mod label;
mod run;
mod state;

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::model::{ActivityKind, ConfigId, Configuration, Graph, Violation, REJECT_OUTCOME};

pub use label::{ActivityRef, TransitionLabel};
pub use run::{ExecutionTrace, Policy, Run, TraceStep};
pub use state::{EngineMode, Flags, GlobalState, Order, OrderId, Phase, Slot, StateDigest};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("configuration `{config}` is invalid: {}", join(violations))]
    InvalidConfiguration {
        config: ConfigId,
        violations: Vec<Violation>,
    },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("label {0} is not enabled")]
    NotEnabled(String),
    #[error("script index {index} out of range at step {step} ({enabled} labels enabled)")]
    ScriptIndexOutOfRange {
        step: usize,
        index: usize,
        enabled: usize,
    },
    #[error("script ended at step {step} with {enabled} labels still enabled")]
    ScriptExhausted { step: usize, enabled: usize },
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// The old and the new configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkflowSpec {
    pub old: Configuration,
    pub new: Configuration,
}

impl WorkflowSpec {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("workflow spec serializes");
        s.push('\n');
        s
    }

    pub fn config(&self, slot: Slot) -> &Configuration {
        match slot {
            Slot::Old => &self.old,
            Slot::New => &self.new,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyKind {
    Abort,
    SuspendResume,
    Overlap,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReconfigurationStrategy {
    pub variant: StrategyKind,
    /// Number of internal reconfiguration actions; must be zero for `Abort`.
    pub reconfig_steps: u32,
}

impl ReconfigurationStrategy {
    pub fn new(variant: StrategyKind, reconfig_steps: u32) -> Self {
        Self {
            variant,
            reconfig_steps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReconfigTrigger {
    /// Reconfiguration may start in any state of the old mode.
    Nondeterministic,
    /// The old configuration accepts at most `n` orders; reconfiguration may
    /// start once it has, or once no more orders can arrive.
    AfterNAccepts(u32),
}

/// Bounds an execution for exhaustive checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scenario {
    pub arrival_budget: u32,
    pub strategy: ReconfigurationStrategy,
    pub reconfig_trigger: ReconfigTrigger,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.strategy.variant == StrategyKind::Abort && self.strategy.reconfig_steps != 0 {
            return Err(EngineError::InvalidScenario(format!(
                "Abort is instantaneous and takes reconfig_steps = 0, got {}",
                self.strategy.reconfig_steps
            )));
        }
        Ok(())
    }
}

/// Deliberate semantic faults, used to show that the checker notices them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Orders accepted once reconfiguration has started still run on the old
    /// graph, although they are bound to the new configuration.
    AcceptNewOrdersUnderOld,
}

/// One atomic step: the label, the side events it emitted, and the target.
#[derive(Debug, Clone)]
pub struct Transition {
    pub label: TransitionLabel,
    pub emitted: SmallVec<[TransitionLabel; 2]>,
    pub target: GlobalState,
}

/// The semantics for one workflow spec and scenario.
#[derive(Debug, Clone)]
pub struct Engine {
    spec: WorkflowSpec,
    scenario: Scenario,
    graphs: [Graph; 2],
    fault: Option<Fault>,
}

impl Engine {
    pub fn new(spec: &WorkflowSpec, scenario: &Scenario) -> Result<Self, EngineError> {
        for cfg in [&spec.old, &spec.new] {
            let violations = cfg.validate();
            if !violations.is_empty() {
                return Err(EngineError::InvalidConfiguration {
                    config: cfg.id.clone(),
                    violations,
                });
            }
        }
        scenario.validate()?;
        let compile = |c: &Configuration| Graph::compile(c).expect("validated configuration");
        Ok(Self {
            graphs: [compile(&spec.old), compile(&spec.new)],
            spec: spec.clone(),
            scenario: *scenario,
            fault: None,
        })
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn spec(&self) -> &WorkflowSpec {
        &self.spec
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub(crate) fn graph(&self, slot: Slot) -> &Graph {
        &self.graphs[slot as usize]
    }

    pub fn config_id(&self, slot: Slot) -> &ConfigId {
        &self.spec.config(slot).id
    }

    pub fn initial_state(&self) -> GlobalState {
        GlobalState {
            mode: EngineMode {
                phase: Phase::RunningOld,
                steps_remaining: 0,
            },
            orders: Vec::new(),
            arrivals_remaining: self.scenario.arrival_budget,
            next_order_serial: 0,
            flags: Flags::default(),
        }
    }

    fn strategy(&self) -> StrategyKind {
        self.scenario.strategy.variant
    }

    fn old_mode_accepts(&self, s: &GlobalState) -> bool {
        match self.scenario.reconfig_trigger {
            ReconfigTrigger::Nondeterministic => true,
            ReconfigTrigger::AfterNAccepts(n) => s.next_order_serial < n,
        }
    }

    fn may_start(&self, s: &GlobalState) -> bool {
        match self.scenario.reconfig_trigger {
            ReconfigTrigger::Nondeterministic => true,
            ReconfigTrigger::AfterNAccepts(n) => {
                s.next_order_serial >= n || s.arrivals_remaining == 0
            }
        }
    }

    fn new_order_slot(&self) -> Slot {
        match self.fault {
            Some(Fault::AcceptNewOrdersUnderOld) => Slot::Old,
            None => Slot::New,
        }
    }

    /// Every label enabled in `s`, sorted.
    pub fn enabled(&self, s: &GlobalState) -> Vec<TransitionLabel> {
        let mut out = Vec::new();
        let phase = s.mode.phase;
        let strategy = self.strategy();

        if s.arrivals_remaining > 0 {
            let slot = match phase {
                Phase::RunningOld => self.old_mode_accepts(s).then_some(Slot::Old),
                Phase::Reconfiguring => {
                    (strategy == StrategyKind::Overlap).then(|| self.new_order_slot())
                }
                Phase::RunningNew => Some(self.new_order_slot()),
            };
            if let Some(slot) = slot {
                out.push(TransitionLabel::Accept(OrderId(s.next_order_serial), slot));
            }
        }

        let frozen = phase == Phase::Reconfiguring && strategy == StrategyKind::SuspendResume;
        if !frozen {
            for o in s.orders.iter().filter(|o| !o.suspended) {
                self.order_labels(o, &mut out);
            }
        }

        match phase {
            Phase::RunningOld => {
                if self.may_start(s) {
                    out.push(TransitionLabel::StartReconfig);
                }
            }
            Phase::Reconfiguring => {
                if s.mode.steps_remaining > 0 {
                    out.push(TransitionLabel::ReconfigStep);
                } else if strategy != StrategyKind::Overlap || !s.runs_on(Slot::Old) {
                    out.push(TransitionLabel::CompleteReconfig);
                }
            }
            Phase::RunningNew => {}
        }

        out.sort_unstable();
        out
    }

    fn order_labels(&self, o: &Order, out: &mut Vec<TransitionLabel>) {
        let g = self.graph(o.accepted_under);
        let mut prev = None;
        for &t in &o.tokens {
            if prev == Some(t) {
                continue;
            }
            prev = Some(t);
            let activity = ActivityRef {
                slot: o.accepted_under,
                node: t,
            };
            let node = g.node(t);
            match node.kind {
                ActivityKind::Task => out.push(TransitionLabel::Step {
                    order: o.id,
                    activity,
                    outcome: None,
                }),
                ActivityKind::Decision => {
                    for (i, outcome) in node.outcomes.iter().enumerate() {
                        let reject = outcome.as_ref().is_some_and(|x| x == REJECT_OUTCOME);
                        out.push(if reject {
                            TransitionLabel::BusinessReject {
                                order: o.id,
                                activity,
                            }
                        } else {
                            TransitionLabel::Step {
                                order: o.id,
                                activity,
                                outcome: Some(i as u8),
                            }
                        });
                    }
                }
                ActivityKind::Final if o.tokens.len() == 1 => {
                    out.push(TransitionLabel::Complete(o.id))
                }
                ActivityKind::Final => out.push(TransitionLabel::Step {
                    order: o.id,
                    activity,
                    outcome: None,
                }),
                ActivityKind::Fork | ActivityKind::Join => {}
            }
        }
    }

    /// Performs `label`, which must be enabled in `s`.
    pub fn apply(
        &self,
        s: &GlobalState,
        label: &TransitionLabel,
    ) -> Result<Transition, EngineError> {
        if !self.enabled(s).contains(label) {
            return Err(EngineError::NotEnabled(self.describe(label)));
        }
        Ok(self.successor(s, label))
    }

    /// Like [`Engine::apply`] without the enabledness check. Callers pass a
    /// label taken from `enabled(s)`.
    pub(crate) fn successor(&self, s: &GlobalState, label: &TransitionLabel) -> Transition {
        let mut next = s.clone();
        let mut emitted = SmallVec::new();
        match *label {
            TransitionLabel::Accept(id, slot) => {
                let tokens = self.graph(slot).initial().expect("validated entry");
                let bound_to = if s.mode.phase == Phase::RunningOld {
                    Slot::Old
                } else {
                    Slot::New
                };
                next.orders.push(Order {
                    id,
                    accepted_under: slot,
                    bound_to,
                    tokens,
                    trace: SmallVec::new(),
                    suspended: false,
                });
                next.arrivals_remaining -= 1;
                next.next_order_serial += 1;
            }
            TransitionLabel::Step {
                order,
                activity,
                outcome,
            } => {
                self.fire(&mut next, order, activity, outcome.map(usize::from));
            }
            TransitionLabel::BusinessReject { order, activity } => {
                let edge = self
                    .graph(activity.slot)
                    .node(activity.node)
                    .outcomes
                    .iter()
                    .position(|o| o.as_ref().is_some_and(|x| x == REJECT_OUTCOME));
                self.fire(&mut next, order, activity, edge);
            }
            TransitionLabel::Complete(order) => {
                let ix = next
                    .orders
                    .binary_search_by_key(&order, |o| o.id)
                    .expect("order in flight");
                let mut o = next.orders.remove(ix);
                o.trace.push(o.tokens[0]);
                if !self.order_conforms(&o) {
                    match o.bound_to {
                        Slot::Old => next.flags.old_conformance_violation = true,
                        Slot::New => next.flags.new_conformance_violation = true,
                    }
                }
            }
            TransitionLabel::StartReconfig => match self.strategy() {
                StrategyKind::Abort => {
                    for o in next.orders.drain(..) {
                        emitted.push(TransitionLabel::AbortOrder(o.id));
                        next.flags.forced_rejection_seen = true;
                    }
                    next.mode = EngineMode {
                        phase: Phase::RunningNew,
                        steps_remaining: 0,
                    };
                }
                StrategyKind::SuspendResume => {
                    for o in &mut next.orders {
                        o.suspended = true;
                        emitted.push(TransitionLabel::Suspend(o.id));
                    }
                    next.mode = EngineMode {
                        phase: Phase::Reconfiguring,
                        steps_remaining: self.scenario.strategy.reconfig_steps,
                    };
                }
                StrategyKind::Overlap => {
                    next.mode = EngineMode {
                        phase: Phase::Reconfiguring,
                        steps_remaining: self.scenario.strategy.reconfig_steps,
                    };
                }
            },
            TransitionLabel::ReconfigStep => next.mode.steps_remaining -= 1,
            TransitionLabel::CompleteReconfig => {
                for o in next.orders.iter_mut().filter(|o| o.suspended) {
                    o.suspended = false;
                    emitted.push(TransitionLabel::Resume(o.id));
                }
                next.mode = EngineMode {
                    phase: Phase::RunningNew,
                    steps_remaining: 0,
                };
            }
            TransitionLabel::AbortOrder(_)
            | TransitionLabel::Suspend(_)
            | TransitionLabel::Resume(_) => {
                unreachable!("emitted labels are never enabled")
            }
        }
        Transition {
            label: *label,
            emitted,
            target: next,
        }
    }

    fn fire(&self, s: &mut GlobalState, order: OrderId, at: ActivityRef, edge: Option<usize>) {
        let ix = s
            .orders
            .binary_search_by_key(&order, |o| o.id)
            .expect("order in flight");
        let o = &mut s.orders[ix];
        o.tokens = self
            .graph(at.slot)
            .fire(&o.tokens, at.node, edge)
            .expect("enabled step fires");
        o.trace.push(at.node);
    }

    /// Checks a completed order's trace against the configuration it is
    /// bound to, translating activity names if it ran on the other graph.
    fn order_conforms(&self, o: &Order) -> bool {
        let ran = self.graph(o.accepted_under);
        let required = self.graph(o.bound_to);
        if o.accepted_under == o.bound_to {
            required.replay(o.trace.iter().map(|&n| Some(n)))
        } else {
            required.replay(
                o.trace
                    .iter()
                    .map(|&n| required.lookup(ran.name(n).as_str())),
            )
        }
    }

    /// Display form of a label, e.g. `Step(o0,Evaluation,accept)`.
    pub fn describe(&self, label: &TransitionLabel) -> String {
        let name = |a: &ActivityRef| self.graph(a.slot).name(a.node).as_str();
        match label {
            TransitionLabel::Accept(o, slot) => format!("Accept({o},{})", self.config_id(*slot)),
            TransitionLabel::Step {
                order,
                activity,
                outcome: None,
            } => format!("Step({order},{})", name(activity)),
            TransitionLabel::Step {
                order,
                activity,
                outcome: Some(i),
            } => {
                let node = self.graph(activity.slot).node(activity.node);
                let outcome = node.outcomes[*i as usize]
                    .as_ref()
                    .map(|o| o.as_str())
                    .unwrap_or("?");
                format!("Step({order},{},{outcome})", name(activity))
            }
            TransitionLabel::Complete(o) => format!("Complete({o})"),
            TransitionLabel::BusinessReject { order, activity } => {
                format!("BusinessReject({order},{})", name(activity))
            }
            TransitionLabel::StartReconfig => "StartReconfig".into(),
            TransitionLabel::ReconfigStep => "ReconfigStep".into(),
            TransitionLabel::CompleteReconfig => "CompleteReconfig".into(),
            TransitionLabel::AbortOrder(o) => format!("AbortOrder({o})"),
            TransitionLabel::Suspend(o) => format!("Suspend({o})"),
            TransitionLabel::Resume(o) => format!("Resume({o})"),
        }
    }

    /// Label text with emitted events appended, `/`-separated.
    pub fn describe_step(&self, label: &TransitionLabel, emitted: &[TransitionLabel]) -> String {
        let mut s = self.describe(label);
        for e in emitted {
            s.push('/');
            s.push_str(&self.describe(e));
        }
        s
    }

    /// Activity name of a label's activity reference.
    pub fn activity_name(&self, a: &ActivityRef) -> &str {
        self.graph(a.slot).name(a.node).as_str()
    }

    /// Names of the positions currently holding tokens.
    pub fn token_names(&self, o: &Order) -> Vec<String> {
        let g = self.graph(o.accepted_under);
        o.tokens.iter().map(|&t| g.name(t).to_string()).collect()
    }

    /// Activities the order has completed so far.
    pub fn order_trace(&self, o: &Order) -> crate::model::Trace {
        let g = self.graph(o.accepted_under);
        o.trace.iter().map(|&t| g.name(t).clone()).collect()
    }
}
