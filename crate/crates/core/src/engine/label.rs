use super::state::{OrderId, Slot};
use crate::model::NodeIx;

/// An activity of one of the two configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActivityRef {
    pub slot: Slot,
    pub(crate) node: NodeIx,
}

/// One atomic interleaved action. The derived order is the exploration order.
///
/// `AbortOrder`, `Suspend` and `Resume` are never enabled on their own: they
/// are emitted by `StartReconfig` and `CompleteReconfig` as part of the same
/// atomic step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransitionLabel {
    Accept(OrderId, Slot),
    /// Completes a task or decision; `outcome` indexes the decision's edges.
    Step {
        order: OrderId,
        activity: ActivityRef,
        outcome: Option<u8>,
    },
    /// The order's last token completes its final activity.
    Complete(OrderId),
    /// The `reject` outcome of a decision.
    BusinessReject {
        order: OrderId,
        activity: ActivityRef,
    },
    StartReconfig,
    ReconfigStep,
    CompleteReconfig,
    AbortOrder(OrderId),
    Suspend(OrderId),
    Resume(OrderId),
}

impl TransitionLabel {
    /// The order whose tokens this label moves, if any.
    pub fn order(&self) -> Option<OrderId> {
        match *self {
            Self::Step { order, .. } | Self::BusinessReject { order, .. } => Some(order),
            Self::Complete(o) => Some(o),
            _ => None,
        }
    }

    pub fn is_step(&self) -> bool {
        matches!(self, Self::Step { .. })
    }

    pub fn is_reconfiguration(&self) -> bool {
        matches!(
            self,
            Self::StartReconfig | Self::ReconfigStep | Self::CompleteReconfig
        )
    }
}
