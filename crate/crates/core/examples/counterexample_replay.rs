//! Finds the shortest execution in which Abort discards an accepted order,
//! then replays it label by label and prints the orders in flight.

use wfreconf::checker::{self, DEFAULT_MAX_STATES};
use wfreconf::{casestudy, Engine, PropertyId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = casestudy::scenario("abort").unwrap();
    let engine = Engine::new(&casestudy::workflow_spec(), &scenario)?;
    let lts = checker::explore(&engine, DEFAULT_MAX_STATES)?;
    let report = checker::check(&lts, PropertyId::R1);
    print!("{}", report.render(true));
    let Some(cx) = report.counterexample else {
        return Ok(());
    };

    let mut state = engine.initial_state();
    for label in cx.labels() {
        let t = engine.apply(&state, &label)?;
        println!("\n{}", engine.describe_step(&t.label, &t.emitted));
        state = t.target;
        for o in state.orders() {
            println!(
                "  {} on {} at {:?}, done {}",
                o.id(),
                engine.config_id(o.accepted_under()),
                engine.token_names(o),
                engine.order_trace(o)
            );
        }
        println!("  phase {:?}, flags {:?}", state.phase(), state.flags());
    }
    Ok(())
}
