//! Codes on the projective line.

pub mod basis;
pub mod codes;
pub mod params;
pub mod partition;
pub mod subgroup;

pub use codes::{build_rational, Coordinate, RationalCode, RationalPlan};
pub use params::{validate_params, SubgroupCase};
