//! Multiline queues and Macdonald polynomials in exact arithmetic.

pub mod ansatz;
pub mod asep;
pub mod macdonald;
pub mod mlq;
pub mod ring;
pub mod tableaux;
