use crate::error::{LrcError, Result};

/// Singleton-type bound `n − k − (⌈k/r⌉ − 1)(δ − 1) + 1`.
pub fn singleton_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<i64> {
    if r == 0 || r > k {
        return Err(LrcError::ParamViolation(format!("need 1 ≤ r ≤ k, got r = {r}, k = {k}")));
    }
    if delta < 2 {
        return Err(LrcError::ParamViolation(format!("need δ ≥ 2, got {delta}")));
    }
    let blocks = k.div_ceil(r) as i64;
    Ok(n as i64 - k as i64 - (blocks - 1) * (delta as i64 - 1) + 1)
}
