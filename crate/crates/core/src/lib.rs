//! Exact arithmetic for Nielsen periodic point theory on closed
//! semi-simple models: Lefschetz sequences, Dold coefficient expansions,
//! smooth realizability of periodic expressions, Reidemeister orbit
//! graphs with Jiang indices, the minimal periodic-point count NF_n, and
//! a certificate-producing decision of NF_n = NJD_n.
//!
//! All computation is exact: integer matrices, big integers, rationals
//! only where coefficients may genuinely be non-integral. No floating
//! point anywhere.

pub mod arith;
pub mod decision;
pub mod dold;
pub mod error;
pub mod exact_linalg;
pub mod export;
pub mod fund_group;
pub mod model;
pub mod reid_graph;
pub mod smooth_real;

pub use error::{Error, Result};
