//! Writes the reachable transition system of a scenario as Graphviz DOT.
//!
//! ```bash
//! cargo run -p wfreconf --example export_dot -- abort > abort.dot
//! dot -Tsvg abort.dot > abort.svg
//! ```

use wfreconf::checker::{self, DEFAULT_MAX_STATES};
use wfreconf::{casestudy, Engine};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "abort".into());
    let scenario = casestudy::scenario(&name).ok_or(format!("unknown scenario {name}"))?;
    let engine = Engine::new(&casestudy::workflow_spec(), &scenario)?;
    let lts = checker::explore(&engine, DEFAULT_MAX_STATES)?;
    eprintln!("{name}: {:?}", lts.stats());
    print!("{}", lts.to_dot());
    Ok(())
}
