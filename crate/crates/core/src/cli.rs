//! The `validate`, `simulate` and `check` commands.
//!
//! Each command writes its results to `out`, diagnostics to `err`, and
//! returns the process exit code. Arguments naming a workflow or scenario
//! first resolve against the built-in case study (`casestudy`, `config1`,
//! `config2`; `abort`, `suspend`, `overlap`) and are read as file paths
//! otherwise.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::casestudy;
use crate::checker::{self, CheckError, PropertyId};
use crate::engine::{Engine, Policy, Scenario, WorkflowSpec};
use crate::model::Configuration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    /// Everything requested holds.
    Success = 0,
    /// Some property or rule is violated.
    Violated = 1,
    /// Unreadable, unparseable or inconsistent input.
    Usage = 2,
    /// The state budget was exhausted.
    Resource = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}: expected a workflow document with `old` and `new` configurations")]
    NotWorkflow(PathBuf),
    #[error("unknown scenario `{0}` (built-ins: abort, suspend, overlap)")]
    UnknownScenario(String),
}

impl InputError {
    fn parse(path: &Path, e: serde_json::Error) -> Self {
        Self::Parse {
            path: path.to_owned(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// A configuration document or a workflow (old + new) document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Configuration(Configuration),
    Workflow(WorkflowSpec),
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.to_owned(),
        source,
    })
}

pub fn load_document(name: &str) -> Result<Document, InputError> {
    match name {
        "casestudy" => return Ok(Document::Workflow(casestudy::workflow_spec())),
        "config1" => return Ok(Document::Configuration(casestudy::config1())),
        "config2" => return Ok(Document::Configuration(casestudy::config2())),
        _ => {}
    }
    let path = Path::new(name);
    let text = read(path)?;
    let probe: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| InputError::parse(path, e))?;
    if probe.get("activities").is_some() {
        Configuration::from_json(&text)
            .map(Document::Configuration)
            .map_err(|e| InputError::parse(path, e))
    } else {
        WorkflowSpec::from_json(&text)
            .map(Document::Workflow)
            .map_err(|e| InputError::parse(path, e))
    }
}

pub fn load_workflow(name: &str) -> Result<WorkflowSpec, InputError> {
    match load_document(name)? {
        Document::Workflow(w) => Ok(w),
        Document::Configuration(_) => Err(InputError::NotWorkflow(name.into())),
    }
}

pub fn load_scenario(name: &str) -> Result<Scenario, InputError> {
    if let Some(s) = casestudy::scenario(name) {
        return Ok(s);
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(InputError::UnknownScenario(name.to_owned()));
    }
    Scenario::from_json(&read(path)?).map_err(|e| InputError::parse(path, e))
}

fn fail(err: &mut dyn Write, e: impl std::fmt::Display) -> ExitCode {
    let _ = writeln!(err, "error: {e}");
    ExitCode::Usage
}

pub fn cmd_validate(spec: &str, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    let configs = match load_document(spec) {
        Ok(Document::Configuration(c)) => vec![c],
        Ok(Document::Workflow(w)) => vec![w.old, w.new],
        Err(e) => return fail(err, e),
    };
    let mut code = ExitCode::Success;
    for cfg in &configs {
        let violations = cfg.validate();
        for v in &violations {
            let _ = writeln!(out, "VIOLATION {} {}", v.kind, v.activity);
        }
        if violations.is_empty() {
            let _ = writeln!(out, "{}: valid", cfg.id);
        } else {
            let _ = writeln!(out, "{}: {} violation(s)", cfg.id, violations.len());
            code = ExitCode::Violated;
        }
    }
    code
}

fn engine_for(spec: &str, scenario: &str) -> Result<Engine, String> {
    let spec = load_workflow(spec).map_err(|e| e.to_string())?;
    let scenario = load_scenario(scenario).map_err(|e| e.to_string())?;
    Engine::new(&spec, &scenario).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
pub struct SimulateArgs {
    pub spec: String,
    pub scenario: String,
    pub seed: u64,
    /// Where to write the trace; standard output when absent.
    pub trace: Option<PathBuf>,
}

pub fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    let engine = match engine_for(&args.spec, &args.scenario) {
        Ok(e) => e,
        Err(e) => return fail(err, e),
    };
    let run = match engine.run(&Policy::Random { seed: args.seed }) {
        Ok(r) => r,
        Err(e) => return fail(err, e),
    };
    let text = run.trace.to_string();
    match &args.trace {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return fail(err, format!("cannot write {}: {e}", path.display()));
            }
            let _ = writeln!(
                out,
                "{} transitions, terminal phase {}",
                run.trace.len(),
                run.terminal.phase()
            );
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    ExitCode::Success
}

#[derive(Debug, Clone)]
pub struct CheckArgs {
    pub spec: String,
    pub scenario: String,
    pub properties: Vec<PropertyId>,
    pub dot: Option<PathBuf>,
    pub max_states: usize,
    pub verbose: bool,
    pub json: bool,
}

impl CheckArgs {
    pub fn new(spec: impl Into<String>, scenario: impl Into<String>) -> Self {
        Self {
            spec: spec.into(),
            scenario: scenario.into(),
            properties: PropertyId::ALL.to_vec(),
            dot: None,
            max_states: checker::DEFAULT_MAX_STATES,
            verbose: false,
            json: false,
        }
    }
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    let engine = match engine_for(&args.spec, &args.scenario) {
        Ok(e) => e,
        Err(e) => return fail(err, e),
    };
    let lts = match checker::explore(&engine, args.max_states) {
        Ok(lts) => lts,
        Err(e @ CheckError::StateBudgetExceeded { .. }) => {
            let _ = writeln!(err, "error: {e}");
            return ExitCode::Resource;
        }
        Err(e) => return fail(err, e),
    };
    if let Some(path) = &args.dot {
        if let Err(e) = fs::write(path, lts.to_dot()) {
            return fail(err, format!("cannot write {}: {e}", path.display()));
        }
    }
    let reports: Vec<_> = args
        .properties
        .iter()
        .map(|&p| checker::check(&lts, p))
        .collect();
    if args.json {
        let doc = serde_json::to_string_pretty(&reports).expect("reports serialize");
        let _ = writeln!(out, "{doc}");
    } else {
        for r in &reports {
            let _ = out.write_all(r.render(args.verbose).as_bytes());
        }
    }
    if reports.iter().all(|r| r.holds) {
        ExitCode::Success
    } else {
        ExitCode::Violated
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(
        f: impl FnOnce(&mut Vec<u8>, &mut Vec<u8>) -> ExitCode,
    ) -> (ExitCode, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = f(&mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn validate_builtins() {
        let (code, out, _) = capture(|o, e| cmd_validate("casestudy", o, e));
        assert_eq!(code, ExitCode::Success);
        assert_eq!(out, "C1: valid\nC2: valid\n");
        let (code, _, _) = capture(|o, e| cmd_validate("config2", o, e));
        assert_eq!(code, ExitCode::Success);
    }

    #[test]
    fn validate_missing_file() {
        let (code, _, err) = capture(|o, e| cmd_validate("/nonexistent/spec.json", o, e));
        assert_eq!(code, ExitCode::Usage);
        assert!(err.contains("cannot read"), "{err}");
    }

    #[test]
    fn scenario_resolution() {
        assert!(load_scenario("overlap").is_ok());
        assert!(matches!(
            load_scenario("sideways"),
            Err(InputError::UnknownScenario(_))
        ));
        assert!(matches!(
            load_workflow("config1"),
            Err(InputError::NotWorkflow(_))
        ));
    }

    #[test]
    fn check_exit_codes() {
        let (code, out, _) =
            capture(|o, e| cmd_check(&CheckArgs::new("casestudy", "overlap"), o, e));
        assert_eq!(code, ExitCode::Success);
        assert_eq!(out.lines().count(), 5);

        let (code, out, _) = capture(|o, e| cmd_check(&CheckArgs::new("casestudy", "abort"), o, e));
        assert_eq!(code, ExitCode::Violated);
        assert!(out.starts_with("R1 FAILS"), "{out}");

        let mut args = CheckArgs::new("casestudy", "suspend");
        args.max_states = 1;
        let (code, _, err) = capture(|o, e| cmd_check(&args, o, e));
        assert_eq!(code, ExitCode::Resource);
        assert!(err.contains("state budget"), "{err}");
    }
}
