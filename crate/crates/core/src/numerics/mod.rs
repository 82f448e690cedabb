//! Dense complex linear algebra.

pub mod eig;
pub mod matrix;
pub mod tolerance;

pub use eig::{
    hermitian_eig, operator_norm, schatten_norm, singular_values, trace_norm, HermitianEig,
    SchattenKind,
};
pub use matrix::{kron, partial_trace, partial_transpose, ComplexMatrix, C64};
pub use tolerance::Tolerances;
