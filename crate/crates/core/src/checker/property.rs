use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{explore, CheckError, Lts, LtsStats};
use crate::engine::{Engine, ExecutionTrace, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PropertyId {
    /// Reconfiguration never forces the rejection of an accepted order.
    R1,
    /// Orders accepted before the start meet the old configuration.
    R2,
    /// Orders accepted after the start meet the new configuration.
    R3,
    /// Every maximal execution is finite and ends reconfigured.
    R4,
    /// Every terminal state is reconfigured, empty and out of arrivals.
    DeadlockFree,
}

impl PropertyId {
    pub const ALL: [PropertyId; 5] = [Self::R1, Self::R2, Self::R3, Self::R4, Self::DeadlockFree];
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for PropertyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r1" => Ok(Self::R1),
            "r2" => Ok(Self::R2),
            "r3" => Ok(Self::R3),
            "r4" => Ok(Self::R4),
            "deadlock" | "deadlockfree" => Ok(Self::DeadlockFree),
            other => Err(format!("unknown property `{other}`")),
        }
    }
}

/// Verdict for one property; a counterexample is present iff it fails.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub property: PropertyId,
    pub holds: bool,
    pub stats: LtsStats,
    pub counterexample: Option<ExecutionTrace>,
}

impl CheckReport {
    fn new(property: PropertyId, stats: LtsStats, counterexample: Option<ExecutionTrace>) -> Self {
        Self {
            property,
            holds: counterexample.is_none(),
            stats,
            counterexample,
        }
    }

    /// Text form: the verdict line, then the counterexample labels (with
    /// state digests when `verbose`).
    pub fn render(&self, verbose: bool) -> String {
        let mut out = format!(
            "{} {} states={} transitions={}\n",
            self.property,
            if self.holds { "HOLDS" } else { "FAILS" },
            self.stats.states,
            self.stats.transitions
        );
        if let Some(cx) = &self.counterexample {
            for (i, step) in cx.steps.iter().enumerate() {
                if verbose {
                    out.push_str(&format!("  {i} {} {}\n", step.text, step.digest));
                } else {
                    out.push_str(&format!("  {i} {}\n", step.text));
                }
            }
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

pub fn check(lts: &Lts<'_>, property: PropertyId) -> CheckReport {
    let stats = lts.stats();
    let cx = match property {
        PropertyId::R1 => lts.shortest_counterexample(|s| s.flags().forced_rejection_seen),
        PropertyId::R2 => lts.shortest_counterexample(|s| s.flags().old_conformance_violation),
        PropertyId::R3 => lts.shortest_counterexample(|s| s.flags().new_conformance_violation),
        PropertyId::R4 => lts.cycle_witness().or_else(|| {
            lts.terminal_states()
                .find(|&i| lts.state(i).phase() != Phase::RunningNew)
                .map(|i| lts.path_to(i))
        }),
        PropertyId::DeadlockFree => lts
            .terminal_states()
            .find(|&i| {
                let s = lts.state(i);
                s.phase() != Phase::RunningNew || !s.is_idle()
            })
            .map(|i| lts.path_to(i)),
    };
    CheckReport::new(property, stats, cx)
}

/// Explores once and checks each requested property.
pub fn check_all(
    engine: &Engine,
    properties: &[PropertyId],
    max_states: usize,
) -> Result<Vec<CheckReport>, CheckError> {
    let lts = explore(engine, max_states)?;
    Ok(properties.iter().map(|&p| check(&lts, p)).collect())
}
