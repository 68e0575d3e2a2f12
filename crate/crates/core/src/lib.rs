//! Executable model of dynamic workflow reconfiguration with an
//! explicit-state checker.
//!
//! * [`model`]: configurations as activity graphs, their validation and the
//!   token game that defines each configuration's trace language.
//! * [`engine`]: interleaving semantics of in-flight orders plus a
//!   reconfiguration process under the abort, suspend/resume and overlap
//!   strategies.
//! * [`checker`]: breadth-first exploration of the reachable transition
//!   system and verdicts with shortest counterexamples.
//! * [`casestudy`]: the built-in order-processing workflow.
//! * [`cli`]: the `validate`, `simulate` and `check` commands.

pub mod casestudy;
pub mod checker;
pub mod cli;
pub mod engine;
pub mod model;

pub use checker::{check, check_all, explore, CheckError, CheckReport, Lts, PropertyId};
pub use engine::{
    Engine, EngineError, ExecutionTrace, GlobalState, Policy, ReconfigTrigger,
    ReconfigurationStrategy, Scenario, StrategyKind, TransitionLabel, WorkflowSpec,
};
pub use model::{ActivityId, ActivityKind, Configuration, Trace, Violation};
