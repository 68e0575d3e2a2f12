//! Runs one random execution per strategy.
//!
//! ```bash
//! cargo run -p wfreconf --example simulate -- 7
//! ```

use wfreconf::{casestudy, Engine, Policy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0);
    let spec = casestudy::workflow_spec();
    for (name, scenario) in casestudy::default_scenarios() {
        let engine = Engine::new(&spec, &scenario)?;
        let run = engine.run(&Policy::Random { seed })?;
        println!("== {name} (seed {seed}), initial {}", run.trace.initial);
        print!("{}", run.trace);
        println!(
            "terminal {:?}, flags {:?}\n",
            run.terminal.phase(),
            run.terminal.flags()
        );
    }
    Ok(())
}
