//! Choi-operator model of channels, instruments, measurements and preparations.

pub mod basis;
pub mod choi;
pub mod constructions;
pub mod decompose;
pub mod random;
pub mod stinespring;

pub use basis::{conjugate_basis, Basis};
pub use choi::{compose, link, ChoiOperator, Device, Instrument, Wire};
pub use constructions::{
    classical_identity, ideal_measurement, ideal_preparation, mz_apparatus, pinching,
};
pub use decompose::{decompose_joint, JointDecomposition};
pub use random::{random_basis, random_channel, random_instrument, random_isometry, random_unitary};
pub use stinespring::{kraus_operators, stinespring, Isometry};
