//! Repair blocks as free orbits of an automorphism subgroup.

use crate::error::{LrcError, Result};
use crate::field::Field;
use crate::rational::subgroup::AutSubgroup;
use crate::ratfn::{Eval, PlaceP1, RatFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    /// Each block sorted by place encoding; blocks in canonical orbit order.
    pub blocks: Vec<Vec<PlaceP1>>,
    /// Value of the invariant function on each block (`Pole` for its pole orbit).
    pub labels: Vec<Eval>,
    /// Block on which the invariant function has its pole, if any.
    pub pole_block_index: Option<usize>,
}

/// All orbits of the group on the projective line, in order of their
/// smallest member.
pub fn orbits(f: &Field, g: &AutSubgroup) -> Vec<Vec<PlaceP1>> {
    let places = PlaceP1::all(f);
    let mut seen = vec![false; places.len()];
    let q = f.q();
    let mut out = Vec::new();
    for &p in &places {
        if seen[p.encode(q) as usize] {
            continue;
        }
        let mut orb: Vec<PlaceP1> = g.elements.iter().map(|s| s.act(f, p)).collect();
        orb.sort();
        orb.dedup();
        for x in &orb {
            seen[x.encode(q) as usize] = true;
        }
        out.push(orb);
    }
    out
}

/// Free orbits usable as evaluation blocks. Orbits containing Infinity are
/// skipped unless `modified` is set.
pub fn free_orbits(f: &Field, g: &AutSubgroup, modified: bool) -> Vec<Vec<PlaceP1>> {
    orbits(f, g)
        .into_iter()
        .filter(|o| o.len() == g.order())
        .filter(|o| modified || !o.contains(&PlaceP1::Infinity))
        .collect()
}

pub fn orbit_partition(f: &Field, g: &AutSubgroup, w: &RatFn, s: usize, modified: bool) -> Result<BlockPartition> {
    let free = free_orbits(f, g, modified);
    if free.len() < s {
        return Err(LrcError::NotEnoughFreeOrbits { needed: s, found: free.len() });
    }
    let blocks: Vec<Vec<PlaceP1>> = free.into_iter().take(s).collect();
    let mut labels = Vec::with_capacity(s);
    for (u, b) in blocks.iter().enumerate() {
        let label = w.eval(f, b[0]);
        if b.iter().any(|&p| w.eval(f, p) != label) {
            return Err(LrcError::Internal(format!("invariant function not constant on block {u}")));
        }
        if labels.contains(&label) {
            return Err(LrcError::Internal(format!("block {u} repeats an invariant value")));
        }
        labels.push(label);
    }
    let pole_block_index = labels.iter().position(|l| *l == Eval::Pole);
    Ok(BlockPartition { blocks, labels, pole_block_index })
}
