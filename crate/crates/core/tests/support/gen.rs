//! Random block-structured configurations.

use proptest::prelude::*;
use wfreconf::model::{Activity, ActivityKind, ConfigId, Edge, Outcome};
use wfreconf::{ActivityId, Configuration};

#[derive(Debug, Clone)]
pub enum Block {
    Task,
    Seq(Vec<Block>),
    /// A decision; `None` branches end the order at their own final.
    Choice(Vec<Option<Block>>),
    Par(Vec<Block>),
}

/// Blocks that always continue to their successor, as needed inside a fork.
fn closed() -> impl Strategy<Value = Block> {
    Just(Block::Task).prop_recursive(3, 10, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(Block::Seq),
            prop::collection::vec(inner.clone().prop_map(Some), 2..4).prop_map(Block::Choice),
            prop::collection::vec(inner, 2..4).prop_map(Block::Par),
        ]
    })
}

pub fn block() -> impl Strategy<Value = Block> {
    let top = prop_oneof![
        closed(),
        prop::collection::vec(prop::option::weighted(0.7, closed()), 2..4)
            .prop_filter("one branch continues", |bs| bs.iter().any(Option::is_some))
            .prop_map(Block::Choice),
    ];
    prop::collection::vec(top, 1..4).prop_map(Block::Seq)
}

struct Builder {
    acts: Vec<Activity>,
    n: usize,
}

fn id(s: String) -> ActivityId {
    ActivityId::new(s).unwrap()
}

impl Builder {
    fn fresh(&mut self, prefix: &str) -> ActivityId {
        self.n += 1;
        id(format!("{prefix}{}", self.n))
    }

    fn push(&mut self, id: ActivityId, kind: ActivityKind, successors: Vec<Edge>) {
        self.acts.push(Activity {
            id,
            kind,
            successors,
        });
    }

    fn end(&mut self) -> ActivityId {
        let e = self.fresh("End");
        self.push(e.clone(), ActivityKind::Final, vec![]);
        e
    }

    /// Emits `b` continuing to `next`; returns its first activity.
    fn build(&mut self, b: &Block, next: ActivityId) -> ActivityId {
        match b {
            Block::Task => {
                let t = self.fresh("T");
                self.push(t.clone(), ActivityKind::Task, vec![Edge::to(next)]);
                t
            }
            Block::Seq(bs) => bs.iter().rev().fold(next, |n, b| self.build(b, n)),
            Block::Choice(bs) => {
                let d = self.fresh("D");
                let edges = bs
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        let target = match b {
                            Some(b) => self.build(b, next.clone()),
                            None => self.end(),
                        };
                        Edge::on(Outcome::new(format!("o{i}")).unwrap(), target)
                    })
                    .collect();
                self.push(d.clone(), ActivityKind::Decision, edges);
                d
            }
            Block::Par(bs) => {
                let f = self.fresh("F");
                let j = self.fresh("J");
                self.push(j.clone(), ActivityKind::Join, vec![Edge::to(next)]);
                // each branch closes on its own task so the join sees one
                // edge per branch
                let edges = bs
                    .iter()
                    .map(|b| {
                        let m = self.fresh("M");
                        self.push(m.clone(), ActivityKind::Task, vec![Edge::to(j.clone())]);
                        Edge::to(self.build(b, m))
                    })
                    .collect();
                self.push(f.clone(), ActivityKind::Fork, edges);
                f
            }
        }
    }
}

pub fn configuration(b: &Block) -> Configuration {
    let mut builder = Builder {
        acts: Vec::new(),
        n: 0,
    };
    let end = builder.end();
    let entry = builder.build(b, end);
    builder.acts.sort_by(|a, b| a.id.cmp(&b.id));
    Configuration {
        id: ConfigId::new("G").unwrap(),
        entry,
        activities: builder.acts,
    }
}

pub fn configurations() -> impl Strategy<Value = Configuration> {
    block().prop_map(|b| configuration(&b))
}
