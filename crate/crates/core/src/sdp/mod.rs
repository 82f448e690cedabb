//! Dense semidefinite programming with complex Hermitian modeling.

pub mod embed;
pub mod model;
pub mod problem;
pub mod solver;

pub use embed::{compress, embed_hermitian, herm_basis, hmat, hvec};
pub use model::{Expr, HermMap, LmiModel, ModelSolution, PrimalModel, VarId};
pub use problem::{
    BlockKind, BlockSpec, BlockValue, Certificate, Functional, SdpProblem, SdpSolution,
    SolveStatus,
};
pub use solver::{certify, solve, solve_with, DEFAULT_TOL, MAX_ITER};
