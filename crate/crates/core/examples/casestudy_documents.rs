//! Writes the built-in case study as configuration and scenario documents.
//!
//! ```bash
//! cargo run -p wfreconf --example casestudy_documents -- out/
//! ```
//!
//! Without a directory argument the workflow document is printed.

use std::fs;
use std::path::PathBuf;

use wfreconf::casestudy;

fn main() -> std::io::Result<()> {
    let Some(dir) = std::env::args().nth(1).map(PathBuf::from) else {
        print!("{}", casestudy::workflow_spec().to_json());
        return Ok(());
    };
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("config1.json"), casestudy::config1().to_json())?;
    fs::write(dir.join("config2.json"), casestudy::config2().to_json())?;
    fs::write(
        dir.join("casestudy.json"),
        casestudy::workflow_spec().to_json(),
    )?;
    for (name, scenario) in casestudy::default_scenarios() {
        fs::write(
            dir.join(format!("scenario-{name}.json")),
            scenario.to_json(),
        )?;
    }
    println!("wrote case study documents to {}", dir.display());
    Ok(())
}
