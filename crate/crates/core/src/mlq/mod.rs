//! Ball systems, multiline queues, their weights and exhaustive enumeration.

mod composition;
mod enumerate;
mod pass;
mod queue;

pub use composition::{partitions_inside, Composition};
pub use enumerate::{ball_systems, count_mlq, enumerate_mlq, subsets};
pub use pass::PairingEvent;
pub(crate) use pass::enumerate_pass;
pub use queue::{event_weight, label_and_audit, Audit, BallSystem, MultilineQueue, QueueJson};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MlqError {
    #[error("composition has no parts")]
    EmptyComposition,
    #[error("invalid ball system: {0}")]
    InvalidSystem(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
