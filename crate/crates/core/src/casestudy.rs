//! The built-in order-processing workflow.
//!
//! Configuration 1 ships before it bills. Configuration 2 bills first and
//! then ships while notifying the customer in parallel. The two languages
//! share only the rejection path, so a conformance check against the wrong
//! configuration always shows up.
//!
//! The concrete graphs are stand-ins for the original case study, whose
//! detailed configurations were published separately.

use crate::engine::{
    ReconfigTrigger, ReconfigurationStrategy, Scenario, StrategyKind, WorkflowSpec,
};
use crate::model::{Activity, ActivityId, ActivityKind, ConfigId, Configuration, Edge, Outcome};

/// `config1()` rendered in the configuration document format.
pub const CONFIG1_JSON: &str = include_str!("../data/config1.json");
/// `config2()` rendered in the configuration document format.
pub const CONFIG2_JSON: &str = include_str!("../data/config2.json");
/// `workflow_spec()` rendered in the workflow document format.
pub const CASESTUDY_JSON: &str = include_str!("../data/casestudy.json");

fn id(s: &str) -> ActivityId {
    ActivityId::new(s).expect("built-in identifier")
}

fn task(name: &str, next: &str) -> Activity {
    Activity {
        id: id(name),
        kind: ActivityKind::Task,
        successors: vec![Edge::to(id(next))],
    }
}

fn evaluation(accept: &str) -> Activity {
    Activity {
        id: id("Evaluation"),
        kind: ActivityKind::Decision,
        successors: vec![
            Edge::on(Outcome::new("accept").unwrap(), id(accept)),
            Edge::on(Outcome::new("reject").unwrap(), id("Close")),
        ],
    }
}

fn close() -> Activity {
    Activity {
        id: id("Close"),
        kind: ActivityKind::Final,
        successors: vec![],
    }
}

pub fn config1() -> Configuration {
    Configuration {
        id: ConfigId::new("C1").unwrap(),
        entry: id("OrderReceipt"),
        activities: vec![
            task("OrderReceipt", "Evaluation"),
            evaluation("Shipping"),
            task("Shipping", "Billing"),
            task("Billing", "Archiving"),
            task("Archiving", "Close"),
            close(),
        ],
    }
}

pub fn config2() -> Configuration {
    Configuration {
        id: ConfigId::new("C2").unwrap(),
        entry: id("OrderReceipt"),
        activities: vec![
            task("OrderReceipt", "Evaluation"),
            evaluation("Billing"),
            task("Billing", "PayAndShip"),
            Activity {
                id: id("PayAndShip"),
                kind: ActivityKind::Fork,
                successors: vec![Edge::to(id("Shipping")), Edge::to(id("NotifyCustomer"))],
            },
            task("Shipping", "Sync"),
            task("NotifyCustomer", "Sync"),
            Activity {
                id: id("Sync"),
                kind: ActivityKind::Join,
                successors: vec![Edge::to(id("Archiving"))],
            },
            task("Archiving", "Close"),
            close(),
        ],
    }
}

/// Reconfiguration from `config1()` to `config2()`.
pub fn workflow_spec() -> WorkflowSpec {
    WorkflowSpec {
        old: config1(),
        new: config2(),
    }
}

/// One scenario per strategy: `abort`, `suspend` and `overlap`.
pub fn default_scenarios() -> Vec<(&'static str, Scenario)> {
    let budget = 2;
    vec![
        (
            "abort",
            Scenario {
                arrival_budget: budget,
                strategy: ReconfigurationStrategy::new(StrategyKind::Abort, 0),
                reconfig_trigger: ReconfigTrigger::AfterNAccepts(1),
            },
        ),
        (
            "suspend",
            Scenario {
                arrival_budget: budget,
                strategy: ReconfigurationStrategy::new(StrategyKind::SuspendResume, 2),
                reconfig_trigger: ReconfigTrigger::Nondeterministic,
            },
        ),
        (
            "overlap",
            Scenario {
                arrival_budget: budget,
                strategy: ReconfigurationStrategy::new(StrategyKind::Overlap, 2),
                reconfig_trigger: ReconfigTrigger::Nondeterministic,
            },
        ),
    ]
}

pub fn scenario(name: &str) -> Option<Scenario> {
    default_scenarios()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s)
}
