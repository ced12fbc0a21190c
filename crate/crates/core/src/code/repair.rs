use crate::code::EvaluatedCode;
use crate::error::{LrcError, Result};
use crate::field::Fe;
use crate::linalg::{self, combinations};

/// A restored codeword and the positions it was rebuilt from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairOutcome {
    pub restored: Vec<Fe>,
    pub group: usize,
    pub recovery_set: Vec<usize>,
}

/// Restores erased symbols from `r` intact symbols of their repair group.
/// Values at erased positions in `word` are ignored.
pub fn repair(code: &EvaluatedCode, word: &[Fe], erased: &[usize]) -> Result<RepairOutcome> {
    if word.len() != code.n {
        return Err(LrcError::DimensionMismatch { expected: code.n, got: word.len() });
    }
    let mut erased: Vec<usize> = erased.to_vec();
    erased.sort_unstable();
    erased.dedup();
    let Some(&first) = erased.first() else {
        return Ok(RepairOutcome { restored: word.to_vec(), group: 0, recovery_set: Vec::new() });
    };
    let tolerated = code.claims.delta.saturating_sub(1);
    if erased.len() > tolerated {
        return Err(LrcError::TooManyErasures { erased: erased.len(), tolerated });
    }
    let gi = code
        .group_of(first)
        .ok_or_else(|| LrcError::Internal(format!("position {first} has no group")))?;
    let g = &code.groups[gi];
    if erased.iter().any(|p| !g.positions.contains(p)) {
        return Err(LrcError::CrossBlockErasure);
    }
    let f = &code.field;
    let r = g.r();
    let intact: Vec<usize> = (0..g.size()).filter(|&i| !erased.contains(&g.positions[i])).collect();
    let choice = combinations(intact.len(), r)
        .into_iter()
        .map(|sel| sel.iter().map(|&i| intact[i]).collect::<Vec<_>>())
        .find(|rows| !linalg::det(f, &linalg::submatrix(&g.local, rows)).is_zero())
        .ok_or_else(|| LrcError::SubmatrixSingular { block: gi, rows: intact.clone() })?;
    let sub = linalg::submatrix(&g.local, &choice);
    let rhs: Vec<Fe> = choice.iter().map(|&i| word[g.positions[i]]).collect();
    let c = linalg::solve(f, &sub, &rhs)?;
    let mut restored = word.to_vec();
    for (i, &pos) in g.positions.iter().enumerate() {
        if erased.contains(&pos) {
            restored[pos] = f.sum(g.local[i].iter().zip(&c).map(|(&l, &x)| f.mul(l, x)));
        }
    }
    Ok(RepairOutcome {
        restored,
        group: gi,
        recovery_set: choice.iter().map(|&i| g.positions[i]).collect(),
    })
}
