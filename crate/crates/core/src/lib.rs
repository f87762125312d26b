#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod scenario;
pub mod special;
pub mod transform;

pub use error::{Error, Result};
