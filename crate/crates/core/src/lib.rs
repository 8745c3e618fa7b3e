// `!(a < b)` is used on purpose so that NaN fails every guard; matrix
// kernels index several arrays in one loop.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::suspicious_arithmetic_impl)]

pub mod classical;
pub mod cli;
pub mod error;
pub mod moments;
pub mod numeric;
pub mod partition;
pub mod poly;
pub mod skewlinalg;
pub mod sop;

pub use error::{Error, Result};
