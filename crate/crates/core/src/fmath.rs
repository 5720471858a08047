//! Float math routed through `libm` so `std` and `no_std` builds (and all
//! platforms) produce bit-identical results.

#![allow(unused_imports)]

pub(crate) use libm::log as ln;
pub(crate) use libm::{cos, erfc, exp, exp2, expm1, floor, hypot, log2, sin, sqrt};
