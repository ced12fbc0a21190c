//! Codes from elliptic function fields.

pub mod aut;
pub mod codes;
pub mod curve;
pub mod curvefn;
pub mod divisor;
pub mod rr;

pub use aut::{make_subgroup, CurveAut, CurveGroup, Descriptor, FnSpec, MapSpec, Recipe};
pub use codes::{build_elliptic, elliptic_claims, elliptic_index, zeta3_curves, ECoordinate, EllipticCode, EllipticPlan};
pub use curve::{Curve, Pt};
pub use curvefn::CurveFn;
pub use divisor::Divisor;
pub use rr::rr_basis;
