//! A workflow outside the case study: a support ticket process whose new
//! version runs diagnosis and a customer reply in parallel. Every strategy
//! is checked against it with three arrivals.

use wfreconf::checker::{self, DEFAULT_MAX_STATES};
use wfreconf::engine::{ReconfigTrigger, ReconfigurationStrategy, Scenario, StrategyKind};
use wfreconf::{Engine, PropertyId, WorkflowSpec};

const SPEC: &str = r#"{
  "old": {
    "id": "T1",
    "entry": "Open",
    "activities": [
      {"id": "Open", "kind": "Task", "successors": ["Triage"]},
      {"id": "Triage", "kind": "Decision", "successors": [{"fix": "Diagnose"}, {"reject": "Closed"}]},
      {"id": "Diagnose", "kind": "Task", "successors": ["Reply"]},
      {"id": "Reply", "kind": "Task", "successors": ["Closed"]},
      {"id": "Closed", "kind": "Final", "successors": []}
    ]
  },
  "new": {
    "id": "T2",
    "entry": "Open",
    "activities": [
      {"id": "Open", "kind": "Task", "successors": ["Triage"]},
      {"id": "Triage", "kind": "Decision", "successors": [{"fix": "Split"}, {"reject": "Closed"}]},
      {"id": "Split", "kind": "Fork", "successors": ["Diagnose", "Reply"]},
      {"id": "Diagnose", "kind": "Task", "successors": ["Merge"]},
      {"id": "Reply", "kind": "Task", "successors": ["Merge"]},
      {"id": "Merge", "kind": "Join", "successors": ["Closed"]},
      {"id": "Closed", "kind": "Final", "successors": []}
    ]
  }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = WorkflowSpec::from_json(SPEC)?;
    for strategy in [
        ReconfigurationStrategy::new(StrategyKind::Abort, 0),
        ReconfigurationStrategy::new(StrategyKind::SuspendResume, 1),
        ReconfigurationStrategy::new(StrategyKind::Overlap, 1),
    ] {
        let scenario = Scenario {
            arrival_budget: 3,
            strategy,
            reconfig_trigger: ReconfigTrigger::Nondeterministic,
        };
        let engine = Engine::new(&spec, &scenario)?;
        let reports = checker::check_all(&engine, &PropertyId::ALL, DEFAULT_MAX_STATES)?;
        let verdicts: Vec<_> = reports
            .iter()
            .map(|r| format!("{}={}", r.property, if r.holds { "ok" } else { "FAIL" }))
            .collect();
        println!(
            "{:?}: {} states, {}",
            strategy.variant,
            reports[0].stats.states,
            verdicts.join(" ")
        );
    }
    Ok(())
}
