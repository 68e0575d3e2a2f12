//! Checks the four reconfiguration requirements plus deadlock freedom for
//! each built-in strategy and prints the verdicts.
//!
//! ```bash
//! cargo run -p wfreconf --example check_requirements
//! ```

use std::time::Instant;

use wfreconf::checker::{self, DEFAULT_MAX_STATES};
use wfreconf::{casestudy, Engine, PropertyId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = casestudy::workflow_spec();
    for (name, scenario) in casestudy::default_scenarios() {
        let engine = Engine::new(&spec, &scenario)?;
        let started = Instant::now();
        let lts = checker::explore(&engine, DEFAULT_MAX_STATES)?;
        let stats = lts.stats();
        println!(
            "== {name}: {} states, {} transitions, depth {}, acyclic {} ({:.1?})",
            stats.states,
            stats.transitions,
            stats.max_depth,
            stats.acyclic,
            started.elapsed()
        );
        for property in PropertyId::ALL {
            print!("{}", checker::check(&lts, property));
        }
    }
    Ok(())
}
