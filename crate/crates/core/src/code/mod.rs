//! Family-agnostic linear code machinery: generator matrices, repair groups,
//! encoding, repair, minimum distance and optimality classification.

pub mod bounds;
pub mod classify;
pub mod distance;
pub mod locality;
pub mod repair;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};
use crate::linalg::{self, Matrix};

pub use bounds::singleton_bound;
pub use classify::{classify_code, Classification};
pub use distance::{min_distance_bounded, min_distance_exhaustive, DistanceReport, DEFAULT_BUDGET};
pub use locality::{verify_locality, LocalityReport};
pub use repair::repair;

/// How the claimed distance relates to the true minimum distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimKind {
    /// The family is claimed to reach exactly this distance.
    Exact,
    /// Only `d ≥ design_d` is claimed.
    AtLeast,
    /// Only `d ≤ design_d` is claimed.
    AtMost,
}

impl ClaimKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ClaimKind::Exact => "=",
            ClaimKind::AtLeast => ">=",
            ClaimKind::AtMost => "<=",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "=" | "exact" => Ok(ClaimKind::Exact),
            ">=" | "at_least" => Ok(ClaimKind::AtLeast),
            "<=" | "at_most" => Ok(ClaimKind::AtMost),
            _ => Err(LrcError::Parse(format!("unknown claim kind {s}"))),
        }
    }
}

/// Parameters asserted by the construction that produced a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub family: String,
    pub r: usize,
    pub delta: usize,
    pub design_d: i64,
    pub kind: ClaimKind,
    /// Set for families known never to meet the Singleton-type bound.
    pub never_optimal: bool,
    pub formula: String,
}

/// A set of coordinates whose symbols satisfy `symbols = L · c` for some
/// local coefficient vector `c` of length `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairGroup {
    pub positions: Vec<usize>,
    /// `positions.len() × r` local matrix.
    pub local: Matrix,
    /// `r × k` map from message to local coefficients, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_map: Option<Matrix>,
}

impl RepairGroup {
    pub fn r(&self) -> usize {
        self.local.first().map_or(0, |row| row.len())
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }
}

/// A linear code together with its repair structure and claimed parameters.
#[derive(Clone, PartialEq, Eq)]
pub struct EvaluatedCode {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub generator: Matrix,
    pub groups: Vec<RepairGroup>,
    pub claims: Claims,
}

impl fmt::Debug for EvaluatedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] {} code over GF({}), {} groups",
            self.n,
            self.k,
            self.claims.family,
            self.field.q(),
            self.groups.len()
        )
    }
}

impl EvaluatedCode {
    /// Validates dimensions, the group partition, full rank, and (where
    /// supplied) the local factorisation `G|_group = (L · coeff_map)^T`.
    pub fn new(field: Field, generator: Matrix, groups: Vec<RepairGroup>, claims: Claims) -> Result<Self> {
        let k = generator.len();
        let n = generator.first().map_or(0, |r| r.len());
        if generator.iter().any(|r| r.len() != n) {
            return Err(LrcError::DimensionMismatch { expected: n, got: 0 });
        }
        let q = field.q();
        if generator.iter().flatten().any(|e| e.0 >= q) {
            return Err(LrcError::Parse("generator entry out of range".into()));
        }
        let mut owner = vec![None; n];
        for (gi, g) in groups.iter().enumerate() {
            if g.local.len() != g.positions.len() {
                return Err(LrcError::DimensionMismatch { expected: g.positions.len(), got: g.local.len() });
            }
            let r = g.r();
            if g.local.iter().any(|row| row.len() != r) {
                return Err(LrcError::Internal(format!("ragged local matrix in group {gi}")));
            }
            for &p in &g.positions {
                if p >= n {
                    return Err(LrcError::Internal(format!("group {gi} position {p} out of range")));
                }
                if owner[p].replace(gi).is_some() {
                    return Err(LrcError::Internal(format!("position {p} in two groups")));
                }
            }
        }
        if let Some(p) = owner.iter().position(|o| o.is_none()) {
            return Err(LrcError::Internal(format!("position {p} belongs to no repair group")));
        }
        let rk = linalg::rank(&field, &generator);
        if rk != k {
            return Err(LrcError::DimensionMismatch { expected: k, got: rk });
        }
        let code = EvaluatedCode { field, n, k, generator, groups, claims };
        for gi in 0..code.groups.len() {
            code.check_factorisation(gi)?;
        }
        Ok(code)
    }

    fn check_factorisation(&self, gi: usize) -> Result<()> {
        let g = &self.groups[gi];
        let Some(cm) = &g.coeff_map else { return Ok(()) };
        let prod = linalg::mat_mul(&self.field, &g.local, cm);
        for (row, &pos) in prod.iter().zip(&g.positions) {
            for (a, row_g) in self.generator.iter().enumerate() {
                if row[a] != row_g[pos] {
                    return Err(LrcError::Internal(format!(
                        "group {gi}: generator column {pos} is not L · coeff_map"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn group_of(&self, pos: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.positions.contains(&pos))
    }

    /// `a · G`.
    pub fn encode(&self, a: &[Fe]) -> Result<Vec<Fe>> {
        if a.len() != self.k {
            return Err(LrcError::DimensionMismatch { expected: self.k, got: a.len() });
        }
        Ok(linalg::vec_mat(&self.field, a, &self.generator))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, &self.generator)
    }

    /// For every group, the first `r`-row subset of its local matrix that is
    /// singular. An empty result means every group is block-MDS.
    pub fn singular_minors(&self) -> Vec<(usize, Vec<usize>)> {
        self.groups
            .iter()
            .enumerate()
            .filter_map(|(gi, g)| linalg::first_singular_minor(&self.field, &g.local, g.r()).map(|rows| (gi, rows)))
            .collect()
    }
}

pub fn weight(v: &[Fe]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}


#[cfg(test)]
mod tests {
    use super::testutil::two_block_code;
    use super::*;

    #[test]
    fn encode_basics() {
        let c = two_block_code();
        assert_eq!(c.encode(&[Fe::ZERO; 4]).unwrap(), vec![Fe::ZERO; 6]);
        for i in 0..4 {
            let mut e = vec![Fe::ZERO; 4];
            e[i] = Fe::ONE;
            assert_eq!(c.encode(&e).unwrap(), c.generator[i]);
        }
        assert!(matches!(c.encode(&[Fe::ONE]), Err(LrcError::DimensionMismatch { .. })));
        assert!(c.singular_minors().is_empty());
    }

    #[test]
    fn rejects_bad_partition() {
        let c = two_block_code();
        let mut groups = c.groups.clone();
        groups[1].positions[0] = 0;
        assert!(EvaluatedCode::new(c.field.clone(), c.generator.clone(), groups, c.claims.clone()).is_err());
    }

    #[test]
    fn rejects_wrong_factorisation() {
        let c = two_block_code();
        let mut groups = c.groups.clone();
        groups[0].local[0][1] = Fe(3);
        assert!(EvaluatedCode::new(c.field.clone(), c.generator.clone(), groups, c.claims.clone()).is_err());
    }
}
