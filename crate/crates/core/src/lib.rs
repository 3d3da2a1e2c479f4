//! Position vectors of slant helices from their intrinsic equations.

// `!(x > 0.0)` is used on purpose so NaN lands in the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curve;
pub mod error;
pub mod exec;
pub mod figures;
pub mod frame;
pub mod interp;
pub mod io;
pub mod oracle;
pub mod profiles;
pub mod quadrature;
pub mod stencil;
pub mod synthesis;
pub mod verify;

pub use error::{Error, Result};
