//! Pre-operads, their derived operations, and a randomized checker for the
//! identities relating them.

pub mod calculus;
pub mod cli;
pub mod coeff;
pub mod endo;
pub mod error;
pub mod expr;
pub mod free;
pub mod laws;
pub mod operad;

pub use calculus::{GammaKind, Mutation, PreOperadContext};
pub use coeff::{Coefficient, CoefficientRing};
pub use endo::MultilinearMap;
pub use error::{Error, Result};
pub use free::{FreeElement, PlanarTree, Signature};
pub use operad::{Backend, BackendKind, EndoOperad, FreeOperad, GradedElement, PreOperad};
