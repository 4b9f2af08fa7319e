//! Counting D4, C4 and V4 quartic fields through towers of quadratic fields.

pub mod analytic;
pub mod arith;
pub mod census;
pub mod classgroup;
pub mod error;
pub mod galclass;
pub mod oracle;
pub mod quad;
pub mod relquad;

pub use error::{Error, Result};
