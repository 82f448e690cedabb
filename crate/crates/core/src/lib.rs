//! Error and disturbance measures for quantum measurement devices, computed as
//! semidefinite programs over Choi operators.

pub mod bounds;
pub mod channels;
pub mod error;
pub mod gallery;
pub mod measures;
pub mod numerics;
pub mod sdp;

pub use error::{Error, Result};
