use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::distance::{DistanceReport, Method};
use crate::code::{singleton_bound, EvaluatedCode};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Classification {
    /// Exact distance equals the Singleton-type bound.
    Optimal { d: usize, bound: i64 },
    /// Exact distance below the bound.
    Gap { d: usize, bound: i64, gap: i64 },
    /// Bounded search: a word meeting the bound exists, nothing lighter found.
    OptimalConsistent { upper: usize, bound: i64 },
    /// Bounded search: lightest word found is heavier than the bound.
    Inconclusive { lower: i64, upper: usize, bound: i64 },
    /// Bounded search found a word lighter than the bound.
    Suboptimal { upper: usize, bound: i64 },
}

impl Classification {
    pub fn exit_code(&self) -> i32 {
        match self {
            Classification::Optimal { .. } => 0,
            Classification::Gap { .. } | Classification::Suboptimal { .. } => 1,
            Classification::OptimalConsistent { .. } | Classification::Inconclusive { .. } => 2,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, Classification::Optimal { .. })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Optimal { d, bound } => write!(f, "optimal, d = {d} = bound {bound}"),
            Classification::Gap { d, bound, gap } => write!(f, "suboptimal, d = {d}, bound {bound}, gap {gap}"),
            Classification::OptimalConsistent { upper, bound } => {
                write!(f, "inconclusive (bounded), optimal-consistent: upper {upper} = bound {bound}")
            }
            Classification::Inconclusive { lower, upper, bound } => {
                write!(f, "inconclusive (bounded), {lower} <= d <= {upper}, bound {bound}")
            }
            Classification::Suboptimal { upper, bound } => {
                write!(f, "suboptimal (bounded witness), d <= {upper} < bound {bound}")
            }
        }
    }
}

/// Bound used for classification; `r` is capped at `k`.
pub fn code_bound(code: &EvaluatedCode) -> Result<i64> {
    singleton_bound(code.n, code.k, code.claims.r.min(code.k).max(1), code.claims.delta.max(2))
}

pub fn classify_code(code: &EvaluatedCode, report: &DistanceReport) -> Result<Classification> {
    let bound = code_bound(code)?;
    Ok(match (report.method, report.d_exact) {
        (Method::Exhaustive, Some(d)) => {
            if d as i64 >= bound {
                Classification::Optimal { d, bound }
            } else {
                Classification::Gap { d, bound, gap: bound - d as i64 }
            }
        }
        _ => {
            let upper = report.upper;
            if (upper as i64) < bound {
                Classification::Suboptimal { upper, bound }
            } else if upper as i64 == bound {
                Classification::OptimalConsistent { upper, bound }
            } else {
                Classification::Inconclusive { lower: report.lower, upper, bound }
            }
        }
    })
}
