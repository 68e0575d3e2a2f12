//! Builds a configuration in code, breaks it in two ways, and prints what
//! validation reports for each version.

use wfreconf::model::{Activity, ActivityKind, ConfigId, Edge, Outcome};
use wfreconf::{ActivityId, Configuration};

fn id(s: &str) -> ActivityId {
    ActivityId::new(s).unwrap()
}

fn act(name: &str, kind: ActivityKind, succ: Vec<Edge>) -> Activity {
    Activity {
        id: id(name),
        kind,
        successors: succ,
    }
}

fn main() {
    let approval = Configuration {
        id: ConfigId::new("Approval").unwrap(),
        entry: id("Submit"),
        activities: vec![
            act("Submit", ActivityKind::Task, vec![Edge::to(id("Review"))]),
            act(
                "Review",
                ActivityKind::Decision,
                vec![
                    Edge::on(Outcome::new("ok").unwrap(), id("Checks")),
                    Edge::on(Outcome::new("reject").unwrap(), id("Done")),
                ],
            ),
            act(
                "Checks",
                ActivityKind::Fork,
                vec![Edge::to(id("Legal")), Edge::to(id("Finance"))],
            ),
            act("Legal", ActivityKind::Task, vec![Edge::to(id("Agree"))]),
            act("Finance", ActivityKind::Task, vec![Edge::to(id("Agree"))]),
            act("Agree", ActivityKind::Join, vec![Edge::to(id("Done"))]),
            act("Done", ActivityKind::Final, vec![]),
        ],
    };
    report(&approval);

    // Finance skips the join: the fork no longer closes
    let mut leaky = approval.clone();
    leaky.activities[4].successors = vec![Edge::to(id("Done"))];
    report(&leaky);

    // Review loops back to Submit
    let mut looping = approval.clone();
    looping.activities[1].successors[1] = Edge::on(Outcome::new("reject").unwrap(), id("Submit"));
    report(&looping);
}

fn report(cfg: &Configuration) {
    let violations = cfg.validate();
    if violations.is_empty() {
        println!("{}: valid", cfg.id);
    }
    for v in violations {
        println!("{}: {v}", cfg.id);
    }
}
