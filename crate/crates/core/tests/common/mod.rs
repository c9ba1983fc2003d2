//! Helpers shared by the integration tests; each test binary uses a part.

#![allow(dead_code)]

pub mod differential;
pub mod golden;

#[allow(unused_imports)]
pub use differential::*;
