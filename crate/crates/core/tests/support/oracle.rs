//! Verdicts computed by walking every maximal execution path.
//!
//! Only the engine's `enabled`/`apply` relation is used. Per-order traces,
//! the before/after split and forced rejections are rebuilt from the labels
//! along each path; the state flags are never read.

use std::collections::{BTreeMap, HashSet};

use wfreconf::engine::{GlobalState, Phase, TransitionLabel};
use wfreconf::{Configuration, Engine, PropertyId, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Verdicts {
    pub r1: bool,
    pub r2: bool,
    pub r3: bool,
    pub r4: bool,
    pub deadlock_free: bool,
}

impl Verdicts {
    pub fn get(&self, p: PropertyId) -> bool {
        match p {
            PropertyId::R1 => self.r1,
            PropertyId::R2 => self.r2,
            PropertyId::R3 => self.r3,
            PropertyId::R4 => self.r4,
            PropertyId::DeadlockFree => self.deadlock_free,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Pending {
    before_start: bool,
    names: Vec<String>,
}

type History = BTreeMap<u32, Pending>;

struct Walk<'a> {
    engine: &'a Engine,
    old: &'a Configuration,
    new: &'a Configuration,
    seen: HashSet<(GlobalState, History)>,
    on_path: HashSet<GlobalState>,
    forced: bool,
    old_bad: bool,
    new_bad: bool,
    diverges: bool,
    stuck_early: bool,
    deadlock: bool,
}

/// Longest path the walk follows before reporting divergence.
pub const DEPTH_LIMIT: usize = 10_000;

pub fn judge(engine: &Engine) -> Verdicts {
    let spec = engine.spec();
    let mut w = Walk {
        engine,
        old: &spec.old,
        new: &spec.new,
        seen: HashSet::new(),
        on_path: HashSet::new(),
        forced: false,
        old_bad: false,
        new_bad: false,
        diverges: false,
        stuck_early: false,
        deadlock: false,
    };
    w.visit(engine.initial_state(), History::new(), false, 0);
    Verdicts {
        r1: !w.forced,
        r2: !w.old_bad,
        r3: !w.new_bad,
        r4: !w.diverges && !w.stuck_early,
        deadlock_free: !w.deadlock,
    }
}

impl Walk<'_> {
    fn visit(&mut self, s: GlobalState, h: History, started: bool, depth: usize) {
        if depth > DEPTH_LIMIT || self.on_path.contains(&s) {
            self.diverges = true;
            return;
        }
        // Two paths reaching the same state with the same pending history
        // have the same futures, so one of them suffices.
        if !self.seen.insert((s.clone(), h.clone())) {
            return;
        }
        let enabled = self.engine.enabled(&s);
        if enabled.is_empty() {
            if s.phase() != Phase::RunningNew {
                self.stuck_early = true;
                self.deadlock = true;
            } else if !s.orders().is_empty() {
                self.deadlock = true;
            }
            return;
        }
        self.on_path.insert(s.clone());
        for label in enabled {
            let t = self.engine.apply(&s, &label).unwrap();
            let mut h2 = h.clone();
            let mut started2 = started;
            match label {
                TransitionLabel::Accept(id, _) => {
                    h2.insert(
                        id.0,
                        Pending {
                            before_start: !started,
                            names: Vec::new(),
                        },
                    );
                }
                TransitionLabel::Step {
                    order, activity, ..
                }
                | TransitionLabel::BusinessReject { order, activity } => {
                    let name = self.engine.activity_name(&activity).to_owned();
                    h2.get_mut(&order.0).unwrap().names.push(name);
                }
                TransitionLabel::Complete(order) => {
                    let o = s.order(order).unwrap();
                    let last = self.engine.token_names(o).pop().unwrap();
                    let mut p = h2.remove(&order.0).unwrap();
                    p.names.push(last);
                    let trace = Trace::of(&p.names).unwrap();
                    if p.before_start {
                        self.old_bad |= !self.old.conforms(&trace);
                    } else {
                        self.new_bad |= !self.new.conforms(&trace);
                    }
                }
                TransitionLabel::StartReconfig => started2 = true,
                _ => {}
            }
            for e in &t.emitted {
                if let TransitionLabel::AbortOrder(order) = e {
                    self.forced = true;
                    h2.remove(&order.0);
                }
            }
            self.visit(t.target, h2, started2, depth + 1);
        }
        self.on_path.remove(&s);
    }
}
