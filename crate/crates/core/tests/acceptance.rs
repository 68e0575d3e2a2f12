//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

mod support;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use support::oracle;
use wfreconf::checker::DEFAULT_MAX_STATES;
use wfreconf::engine::{Fault, Phase, Slot, TransitionLabel};
use wfreconf::{
    casestudy, check, check_all, explore, ActivityId, Configuration, Engine, Policy, PropertyId,
    ReconfigTrigger, StrategyKind, Trace,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const REQUIREMENTS: [PropertyId; 4] = [
    PropertyId::R1,
    PropertyId::R2,
    PropertyId::R3,
    PropertyId::R4,
];

fn default_engine(name: &str) -> Engine {
    let scenario = casestudy::scenario(name).expect("built-in scenario");
    Engine::new(&casestudy::workflow_spec(), &scenario).expect("case study engine")
}

fn strategy_taxonomy() -> Outcome {
    let mut notes = Vec::new();
    for name in ["abort", "suspend", "overlap"] {
        let e = default_engine(name);
        let started = Instant::now();
        let lts = explore(&e, 1_000_000).map_err(|err| format!("{name}: {err}"))?;
        let reports: Vec<_> = PropertyId::ALL.iter().map(|&p| check(&lts, p)).collect();
        let elapsed = started.elapsed();
        ensure!(
            elapsed < Duration::from_secs(10),
            "{name}: took {elapsed:?}"
        );
        let holds = |p: PropertyId| reports.iter().any(|r| r.property == p && r.holds);

        match e.scenario().strategy.variant {
            StrategyKind::Abort => {
                let r1 = &reports[0];
                ensure!(!r1.holds, "abort: R1 holds");
                let cx = r1
                    .counterexample
                    .as_ref()
                    .ok_or("abort: no counterexample")?;
                ensure!(
                    matches!(cx.events().last(), Some(TransitionLabel::AbortOrder(_))),
                    "abort: counterexample ends in {:?}",
                    cx.label_texts().last()
                );
            }
            StrategyKind::SuspendResume => {
                for p in REQUIREMENTS {
                    ensure!(holds(p), "suspend: {p} fails");
                }
                let frozen_steps = lts
                    .edges()
                    .iter()
                    .filter(|edge| lts.state(edge.from).phase() == Phase::Reconfiguring)
                    .filter(|edge| {
                        !matches!(
                            edge.label,
                            TransitionLabel::ReconfigStep | TransitionLabel::CompleteReconfig
                        )
                    })
                    .count();
                ensure!(
                    frozen_steps == 0,
                    "suspend: {frozen_steps} order steps while reconfiguring"
                );
                ensure!(
                    lts.edges()
                        .iter()
                        .any(|edge| edge.label == TransitionLabel::ReconfigStep),
                    "suspend: no reconfiguration step"
                );
            }
            StrategyKind::Overlap => {
                for p in REQUIREMENTS {
                    ensure!(holds(p), "overlap: {p} fails");
                }
                ensure!(
                    lts.find_state(|s| s.runs_on(Slot::Old) && s.runs_on(Slot::New))
                        .is_some(),
                    "overlap: C1 and C2 orders never run together"
                );
            }
        }
        notes.push(format!(
            "{name} {} states {elapsed:.0?}",
            lts.stats().states
        ));
    }
    Ok(notes.join(", "))
}

fn termination() -> Outcome {
    let mut cases = 0;
    for variant in [StrategyKind::SuspendResume, StrategyKind::Overlap] {
        for budget in 0..=3 {
            for k in 0..=2 {
                let e = support::engine(variant, k, budget, ReconfigTrigger::Nondeterministic);
                let lts = explore(&e, DEFAULT_MAX_STATES).map_err(|err| err.to_string())?;
                let tag = format!("{variant:?} budget={budget} k={k}");
                ensure!(lts.stats().acyclic, "{tag}: cycle");
                ensure!(
                    lts.terminal_states()
                        .all(|i| lts.state(i).phase() == Phase::RunningNew),
                    "{tag}: stuck before the new configuration"
                );
                ensure!(check(&lts, PropertyId::R4).holds, "{tag}: R4 fails");
                if budget <= 2 {
                    ensure!(oracle::judge(&e).r4, "{tag}: oracle disagrees on R4");
                }
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} cases acyclic, oracle agrees up to budget 2"
    ))
}

fn fault_injection() -> Outcome {
    let mut notes = Vec::new();
    for name in ["suspend", "overlap"] {
        let clean = default_engine(name);
        let reports =
            check_all(&clean, &[PropertyId::R3], DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
        ensure!(reports[0].holds, "{name}: R3 fails without the fault");

        let faulty = default_engine(name).with_fault(Fault::AcceptNewOrdersUnderOld);
        let reports =
            check_all(&faulty, &[PropertyId::R3], DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
        ensure!(!reports[0].holds, "{name}: R3 holds under the fault");
        let cx = reports[0]
            .counterexample
            .as_ref()
            .ok_or("no counterexample")?;
        let run = faulty.replay(&cx.labels()).map_err(|e| e.to_string())?;
        ensure!(run.trace == *cx, "{name}: replay diverges");
        ensure!(
            run.terminal.flags().new_conformance_violation,
            "{name}: replayed run does not violate"
        );
        ensure!(
            clean.replay(&cx.labels()).is_err(),
            "{name}: the unmutated engine can follow the counterexample"
        );
        notes.push(format!("{name} {} steps", cx.len()));
    }
    Ok(format!("counterexamples replay: {}", notes.join(", ")))
}

fn oracle_agreement() -> Outcome {
    let started = Instant::now();
    let grid = support::grid();
    let mut failing = 0;
    for &(variant, k, budget, trigger) in &grid {
        let e = support::engine(variant, k, budget, trigger);
        let expected = oracle::judge(&e);
        let reports =
            check_all(&e, &PropertyId::ALL, DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
        for r in reports {
            ensure!(
                r.holds == expected.get(r.property),
                "{variant:?} k={k} budget={budget} {trigger:?}: {} checker={} oracle={}",
                r.property,
                r.holds,
                !r.holds
            );
            failing += usize::from(!r.holds);
        }
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "{} cases x 5 properties ({failing} failing verdicts) in {elapsed:.0?}",
        grid.len()
    ))
}

fn simulation_and_replay() -> Outcome {
    let mut runs = 0;
    for name in ["abort", "suspend", "overlap"] {
        let e = default_engine(name);
        let lts = explore(&e, DEFAULT_MAX_STATES).map_err(|e| e.to_string())?;
        for seed in 0..1000 {
            let run = e.run(&Policy::Random { seed }).map_err(|e| e.to_string())?;
            let i = lts
                .index_of(&run.terminal)
                .ok_or(format!("{name} seed {seed}: unknown state"))?;
            ensure!(
                lts.is_terminal(i),
                "{name} seed {seed}: stopped in a live state"
            );
            runs += 1;
        }
    }

    let mut replayed = 0;
    let mut engines: Vec<Engine> = support::grid()
        .into_iter()
        .map(|(v, k, b, t)| support::engine(v, k, b, t))
        .collect();
    for name in ["suspend", "overlap"] {
        engines.push(default_engine(name).with_fault(Fault::AcceptNewOrdersUnderOld));
    }
    for e in &engines {
        for r in check_all(e, &PropertyId::ALL, DEFAULT_MAX_STATES).map_err(|e| e.to_string())? {
            let Some(cx) = r.counterexample else { continue };
            let run = e
                .replay(&cx.labels())
                .map_err(|err| format!("{}: {err}", r.property))?;
            ensure!(
                run.trace == cx,
                "{} counterexample does not replay",
                r.property
            );
            replayed += 1;
        }
    }
    Ok(format!(
        "{runs} runs end in terminal states, {replayed} counterexamples replay"
    ))
}

/// Calls `f` on every word over `alphabet` with length `1..=max_len`.
fn for_each_word(alphabet: &[ActivityId], max_len: usize, mut f: impl FnMut(&Trace)) {
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        let mut word: Trace = digits.iter().map(|&d| alphabet[d].clone()).collect();
        loop {
            f(&word);
            let mut pos = 0;
            loop {
                if pos == len {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < alphabet.len() {
                    word.0[pos] = alphabet[digits[pos]].clone();
                    break;
                }
                digits[pos] = 0;
                word.0[pos] = alphabet[0].clone();
                pos += 1;
            }
            if pos == len {
                break;
            }
        }
    }
}

fn language_equivalence() -> Outcome {
    const BOUND: usize = 8;
    let mut notes = Vec::new();
    for cfg in [casestudy::config1(), casestudy::config2()] {
        let matcher = cfg.matcher().ok_or("configuration does not compile")?;
        let enumerated: BTreeSet<Trace> = cfg.enumerate_traces(BOUND).into_iter().collect();
        let names = |pred: fn(&Configuration, &ActivityId) -> bool| -> Vec<ActivityId> {
            cfg.activities
                .iter()
                .map(|a| a.id.clone())
                .filter(|id| pred(&cfg, id))
                .collect()
        };
        let visible = names(|c, id| c.activity(id).unwrap().kind.is_visible());
        let all = names(|_, _| true);

        let mut accepted = BTreeSet::new();
        let mut words = 0u64;
        for_each_word(&visible, BOUND, |w| {
            words += 1;
            if matcher.conforms(w) {
                accepted.insert(w.clone());
            }
        });
        ensure!(
            accepted == enumerated,
            "{}: {} accepted words, {} enumerated",
            cfg.id,
            accepted.len(),
            enumerated.len()
        );
        for w in &accepted {
            ensure!(
                cfg.conforms(w),
                "{}: {w} accepted only by the compiled form",
                cfg.id
            );
        }

        // silent routing nodes never appear in a conforming word
        let mut short = 0u64;
        let mut mismatch = None;
        for_each_word(&all, 4, |w| {
            short += 1;
            if matcher.conforms(w) != enumerated.contains(w) {
                mismatch.get_or_insert_with(|| w.clone());
            }
        });
        if let Some(w) = mismatch {
            return Err(format!("{}: {w} over the full alphabet", cfg.id));
        }
        notes.push(format!(
            "{} {} traces of {words} words",
            cfg.id,
            enumerated.len()
        ));
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("strategy taxonomy", strategy_taxonomy),
        ("reconfiguration terminates", termination),
        ("fault injection breaks R3", fault_injection),
        ("checker agrees with path oracle", oracle_agreement),
        (
            "simulation and counterexample replay",
            simulation_and_replay,
        ),
        ("conformance equals enumeration", language_equivalence),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = started.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
