//! Weight-generating polynomials of multiline queues and the operators that characterise them.

mod ops;
mod poly;
mod qkz;
mod twoline;

pub use ops::{cherednik_eigenvalue, cherednik_y, hecke_t, hecke_t_inverse, shift_omega, specialize_qt};
pub use poly::{e_nonsymmetric, fmu, is_eigenvector, schur_oracle, weight_sum, zlambda, QkzFamily};
pub use qkz::{check_family, check_qkz, QkzCheck, QkzReport, Relation};
pub use twoline::{lemma_checks, recursion_holds, recursion_sum, top_rows, two_line_f, LemmaCheck};

use crate::mlq::Composition;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MacdonaldError {
    #[error("{0} is not weakly decreasing")]
    NotPartition(Composition),
    #[error("characterisation failed: {0}")]
    CharacterizationFailed(String),
}
