//! Plants a bug (orders arriving during or after the switch still start on
//! the old configuration) and shows the checker catching it.

use wfreconf::checker::{self, DEFAULT_MAX_STATES};
use wfreconf::engine::Fault;
use wfreconf::{casestudy, Engine, PropertyId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = casestudy::workflow_spec();
    let scenario = casestudy::scenario("overlap").unwrap();
    let sound = Engine::new(&spec, &scenario)?;
    let faulty = Engine::new(&spec, &scenario)?.with_fault(Fault::AcceptNewOrdersUnderOld);

    for (tag, engine) in [("sound", &sound), ("faulty", &faulty)] {
        println!("== {tag}");
        for r in checker::check_all(
            engine,
            &[PropertyId::R2, PropertyId::R3],
            DEFAULT_MAX_STATES,
        )? {
            print!("{r}");
        }
    }
    Ok(())
}
