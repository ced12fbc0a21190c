//! Per-group locality audit: local rank, local distance, and erasure coverage.

use serde::{Deserialize, Serialize};

use crate::code::{weight, EvaluatedCode};
use crate::field::{Fe, Field};
use crate::linalg::{self, combinations, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLocality {
    pub group: usize,
    pub size: usize,
    /// Dimension of the local code.
    pub rank: usize,
    /// Minimum distance of the code punctured to this group.
    pub local_distance: usize,
    /// The local matrix spans the generator restricted to the group.
    pub consistent: bool,
    pub rank_ok: bool,
    pub distance_ok: bool,
    /// `size ≤ r + d_local − 1`, so every position sits in a sub-block of at
    /// most `r + δ − 1` symbols with distance at least `δ`.
    pub size_ok: bool,
    /// Every position lies in some subset of at most `r + δ − 1` group
    /// symbols whose punctured code has distance at least `δ`.
    pub covered: bool,
}

impl GroupLocality {
    pub fn ok(&self) -> bool {
        self.consistent && self.rank_ok && self.covered
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub r: usize,
    pub delta: usize,
    pub groups: Vec<GroupLocality>,
    /// Number of symbols each position is rebuilt from, `None` if it cannot be.
    pub recovery_size: Vec<Option<usize>>,
    pub ok: bool,
}

/// Minimum weight of a nonzero combination of the rows of `gen`.
pub fn code_distance(f: &Field, gen: &Matrix) -> usize {
    let mut basis = gen.clone();
    let piv = linalg::rref(f, &mut basis);
    basis.truncate(piv.len());
    let k = basis.len();
    let len = gen.first().map_or(0, |r| r.len());
    if k == 0 {
        return len + 1;
    }
    let q = f.q();
    let mut best = usize::MAX;
    for lead in 0..k {
        let tail = k - 1 - lead;
        let total = (q as u64).pow(tail as u32);
        for mut e in 0..total {
            let mut c = vec![Fe::ZERO; k];
            c[lead] = Fe::ONE;
            for slot in c[lead + 1..].iter_mut().rev() {
                *slot = Fe((e % q as u64) as u32);
                e /= q as u64;
            }
            best = best.min(weight(&linalg::vec_mat(f, &c, &basis)));
        }
    }
    best
}

pub fn verify_locality(code: &EvaluatedCode) -> LocalityReport {
    let f = &code.field;
    let r = code.claims.r;
    let delta = code.claims.delta;
    let mut recovery_size = vec![None; code.n];
    let groups: Vec<GroupLocality> = code
        .groups
        .iter()
        .enumerate()
        .map(|(gi, g)| {
            let rank = linalg::rank(f, &g.local);
            let augmented: Matrix = g
                .local
                .iter()
                .zip(&g.positions)
                .map(|(row, &p)| row.iter().copied().chain(code.generator.iter().map(|gr| gr[p])).collect())
                .collect();
            let consistent = linalg::rank(f, &augmented) == rank;
            let local_distance = code_distance(f, &linalg::transpose(&g.local));
            for (i, &pos) in g.positions.iter().enumerate() {
                let others: Vec<usize> = (0..g.size()).filter(|&j| j != i).collect();
                if linalg::rank(f, &linalg::submatrix(&g.local, &others)) == rank {
                    recovery_size[pos] = Some(rank);
                }
            }
            let distance_ok = local_distance >= delta;
            let size_ok = g.size() + 1 <= r + local_distance;
            let covered = (distance_ok && size_ok) || covered_by_subsets(f, &g.local, r + delta - 1, delta);
            GroupLocality {
                group: gi,
                size: g.size(),
                rank,
                local_distance,
                consistent,
                rank_ok: rank <= r,
                distance_ok,
                size_ok,
                covered,
            }
        })
        .collect();
    let ok = groups.iter().all(GroupLocality::ok) && recovery_size.iter().all(|s| s.is_some_and(|v| v <= r));
    LocalityReport { r, delta, groups, recovery_size, ok }
}

/// Each row index of `local` belongs to a subset of at most `max_size` rows
/// whose punctured code has distance at least `delta`.
fn covered_by_subsets(f: &Field, local: &Matrix, max_size: usize, delta: usize) -> bool {
    let size = local.len();
    let m = max_size.min(size);
    let mut covered = vec![false; size];
    for subset in combinations(size, m) {
        if subset.iter().all(|&i| covered[i]) {
            continue;
        }
        let sub = linalg::submatrix(local, &subset);
        if code_distance(f, &linalg::transpose(&sub)) >= delta {
            for &i in &subset {
                covered[i] = true;
            }
            if covered.iter().all(|&c| c) {
                return true;
            }
        }
    }
    covered.iter().all(|&c| c)
}

/// Every erasure pattern of size `1..=δ−1` inside each group leaves a row set
/// of full local rank. Returns the first failing `(group, pattern)`.
pub fn first_unrepairable_pattern(code: &EvaluatedCode) -> Option<(usize, Vec<usize>)> {
    let f = &code.field;
    for (gi, g) in code.groups.iter().enumerate() {
        let rank = linalg::rank(f, &g.local);
        for e in 1..code.claims.delta.min(g.size() + 1) {
            for pat in combinations(g.size(), e) {
                let rest: Vec<usize> = (0..g.size()).filter(|i| !pat.contains(i)).collect();
                if linalg::rank(f, &linalg::submatrix(&g.local, &rest)) < rank {
                    return Some((gi, pat.iter().map(|&i| g.positions[i]).collect()));
                }
            }
        }
    }
    None
}
