use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use smallvec::SmallVec;

use crate::model::{NodeIx, Tokens};

/// Which of the two configurations an order runs on or is bound to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Slot {
    Old,
    New,
}

/// Serial number assigned in acceptance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderId(pub u32);

impl fmt::Display for OrderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

/// Ordered `RunningOld < Reconfiguring < RunningNew`; an execution only
/// moves forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Phase {
    RunningOld,
    Reconfiguring,
    RunningNew,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EngineMode {
    pub phase: Phase,
    /// Remaining reconfiguration steps; zero outside `Reconfiguring`.
    pub steps_remaining: u32,
}

/// Monotone violation flags: once set, set in every successor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flags {
    /// An accepted order was aborted by the reconfiguration.
    pub forced_rejection_seen: bool,
    /// An order accepted before the reconfiguration started completed with
    /// a trace outside the old configuration's language.
    pub old_conformance_violation: bool,
    /// An order accepted after the reconfiguration started completed with a
    /// trace outside the new configuration's language.
    pub new_conformance_violation: bool,
}

impl Flags {
    pub fn conformance_violation_seen(&self) -> bool {
        self.old_conformance_violation || self.new_conformance_violation
    }

    pub(crate) fn bits(&self) -> u8 {
        self.forced_rejection_seen as u8
            | (self.old_conformance_violation as u8) << 1
            | (self.new_conformance_violation as u8) << 2
    }

    /// Whether `self` keeps every flag already set in `earlier`.
    pub fn includes(&self, earlier: &Flags) -> bool {
        self.bits() & earlier.bits() == earlier.bits()
    }
}

pub(crate) type Path = SmallVec<[NodeIx; 12]>;

/// An in-flight order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order {
    pub(crate) id: OrderId,
    pub(crate) accepted_under: Slot,
    pub(crate) bound_to: Slot,
    pub(crate) tokens: Tokens,
    pub(crate) trace: Path,
    pub(crate) suspended: bool,
}

impl Order {
    pub fn id(&self) -> OrderId {
        self.id
    }

    /// The configuration whose graph the order executes.
    pub fn accepted_under(&self) -> Slot {
        self.accepted_under
    }

    /// The configuration whose requirements the order must meet: old if it
    /// was accepted before the reconfiguration started, new otherwise.
    pub fn bound_to(&self) -> Slot {
        self.bound_to
    }

    pub fn suspended(&self) -> bool {
        self.suspended
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn trace_len(&self) -> usize {
        self.trace.len()
    }
}

/// One global state of the interleaving semantics. Orders are kept sorted by
/// id and token multisets sorted by position, so structural equality is
/// equality of states.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlobalState {
    pub(crate) mode: EngineMode,
    pub(crate) orders: Vec<Order>,
    pub(crate) arrivals_remaining: u32,
    pub(crate) next_order_serial: u32,
    pub(crate) flags: Flags,
}

impl GlobalState {
    pub fn mode(&self) -> EngineMode {
        self.mode
    }

    pub fn phase(&self) -> Phase {
        self.mode.phase
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn order(&self, id: OrderId) -> Option<&Order> {
        self.orders
            .binary_search_by_key(&id, |o| o.id)
            .ok()
            .map(|i| &self.orders[i])
    }

    pub fn arrivals_remaining(&self) -> u32 {
        self.arrivals_remaining
    }

    pub fn next_order_serial(&self) -> u32 {
        self.next_order_serial
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    /// Whether some in-flight order executes the given configuration.
    pub fn runs_on(&self, slot: Slot) -> bool {
        self.orders.iter().any(|o| o.accepted_under == slot)
    }

    pub fn is_idle(&self) -> bool {
        self.orders.is_empty() && self.arrivals_remaining == 0
    }

    fn encode(&self) -> Vec<u8> {
        let mut b = Vec::with_capacity(32 + self.orders.len() * 32);
        b.push(self.mode.phase as u8);
        b.extend(self.mode.steps_remaining.to_le_bytes());
        b.extend(self.arrivals_remaining.to_le_bytes());
        b.extend(self.next_order_serial.to_le_bytes());
        b.push(self.flags.bits());
        b.extend((self.orders.len() as u32).to_le_bytes());
        for o in &self.orders {
            b.extend(o.id.0.to_le_bytes());
            b.push(o.accepted_under as u8);
            b.push(o.bound_to as u8);
            b.push(o.suspended as u8);
            b.extend((o.tokens.len() as u16).to_le_bytes());
            for t in &o.tokens {
                b.extend(t.to_le_bytes());
            }
            b.extend((o.trace.len() as u16).to_le_bytes());
            for t in &o.trace {
                b.extend(t.to_le_bytes());
            }
        }
        b
    }

    /// Stable 64-bit digest of the canonical encoding.
    pub fn digest(&self) -> StateDigest {
        let h = Sha256::digest(self.encode());
        let mut first = [0u8; 8];
        first.copy_from_slice(&h[..8]);
        StateDigest(u64::from_be_bytes(first))
    }
}

/// Printed as 16 lowercase hex digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateDigest(pub u64);

impl fmt::Display for StateDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl Serialize for StateDigest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
