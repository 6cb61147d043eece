//! Exact Haar state computations on `O(SL_q(3))`, plus order-one values for
//! general `n`.

pub mod error;
pub mod algebra;
pub mod coalgebra;
pub mod haar3;
pub mod oracle;
pub mod qfield;
pub mod wg;

pub use error::{Error, Result};
pub use qfield::{IntPoly, RationalFunction};
