// `!(a >= b)` is used on purpose so NaN falls into the error branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod kernel;
pub mod sum;
pub mod moebius;
pub mod zeros;
pub mod explicit;
pub mod report;
pub mod analytics;
