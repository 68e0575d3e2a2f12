#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use wfreconf::{Engine, ReconfigTrigger, ReconfigurationStrategy, Scenario, StrategyKind};

pub fn engine(variant: StrategyKind, k: u32, budget: u32, trigger: ReconfigTrigger) -> Engine {
    let scenario = Scenario {
        arrival_budget: budget,
        strategy: ReconfigurationStrategy::new(variant, k),
        reconfig_trigger: trigger,
    };
    Engine::new(&wfreconf::casestudy::workflow_spec(), &scenario).unwrap()
}

/// The 24 scenario shapes: every strategy over budgets 0..=2 and step counts
/// 0..=2 with a nondeterministic trigger (Abort only with zero steps), plus
/// Abort triggered after the first accept.
pub fn grid() -> Vec<(StrategyKind, u32, u32, ReconfigTrigger)> {
    let mut out = Vec::new();
    for budget in 0..=2 {
        out.push((
            StrategyKind::Abort,
            0,
            budget,
            ReconfigTrigger::Nondeterministic,
        ));
        out.push((
            StrategyKind::Abort,
            0,
            budget,
            ReconfigTrigger::AfterNAccepts(1),
        ));
        for k in 0..=2 {
            for v in [StrategyKind::SuspendResume, StrategyKind::Overlap] {
                out.push((v, k, budget, ReconfigTrigger::Nondeterministic));
            }
        }
    }
    out
}
