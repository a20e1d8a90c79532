// Negated float comparisons below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod control;
pub mod error;
pub mod model;
pub mod objective;
pub mod ode;
pub mod optimizer;
pub mod quadrature;
pub mod series;
pub mod special;

pub use error::{Error, Result};
