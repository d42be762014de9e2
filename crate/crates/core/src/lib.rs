//! Exact computations with combinatorial divisorial polytopes (CDPs): a base
//! lattice polytope carrying concave piecewise-affine functions with integral
//! graph vertices.

pub mod cdp;
pub mod enumerate;
pub mod equiv;
pub mod error;
pub mod fano;
pub mod fixtures;
pub mod lattice;
pub mod plfunction;
pub mod rat;

pub use cdp::{check_positivity, Cdp, CdpJson};
pub use error::{CdpError, Result};
pub use plfunction::{AffinePiece, PlFunction, PlFunctionJson};
pub use rat::Rat;
