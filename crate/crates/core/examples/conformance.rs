//! Replays traces through the token game of both case-study configurations.

use wfreconf::{casestudy, Trace};

fn main() {
    let (c1, c2) = (casestudy::config1(), casestudy::config2());
    let candidates = [
        vec!["OrderReceipt", "Evaluation", "Close"],
        vec![
            "OrderReceipt",
            "Evaluation",
            "Shipping",
            "Billing",
            "Archiving",
            "Close",
        ],
        vec![
            "OrderReceipt",
            "Evaluation",
            "Billing",
            "Shipping",
            "NotifyCustomer",
            "Archiving",
            "Close",
        ],
        vec![
            "OrderReceipt",
            "Evaluation",
            "Billing",
            "NotifyCustomer",
            "Shipping",
            "Archiving",
            "Close",
        ],
        // the fork and join are silent, so naming them never conforms
        vec![
            "OrderReceipt",
            "Evaluation",
            "Billing",
            "PayAndShip",
            "Shipping",
            "NotifyCustomer",
            "Sync",
            "Archiving",
            "Close",
        ],
        vec!["OrderReceipt", "Evaluation", "Billing"],
    ];
    for names in candidates {
        let t = Trace::of(&names).unwrap();
        println!("{:<5} {:<5} {t}", c1.conforms(&t), c2.conforms(&t));
    }

    for cfg in [&c1, &c2] {
        println!("\n{} traces up to 10 steps:", cfg.id);
        for t in cfg.enumerate_traces(10) {
            println!("  {t}");
        }
    }
}
