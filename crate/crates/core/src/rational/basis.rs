//! Fixed-field function bases `f_1, …, f_t`.

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};
use crate::linalg;
use crate::rational::partition::BlockPartition;
use crate::rational::subgroup::AutSubgroup;
use crate::ratfn::{Eval, PlaceP1, RatFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `f_j = w^{j−1}`.
    Powers,
    /// `f_j = (w − β)w^{j−1}` for `j < t`, `f_t = 1`.
    Vanishing,
    /// `f_j = (w − β)w^{j−1}` for `j ≤ t−2`, `f_{t−1} = 1`, `f_t = w^{t−1}`:
    /// every fixed-field degree but the last is at most `t−2`.
    Strict,
    /// `f_j = x_1^{j−1}` where `x_1` has its only pole on block 1.
    PoleAtFirstBlock,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionBasis {
    pub kind: BasisKind,
    pub f_list: Vec<RatFn>,
    /// Block on which `f_1, …, f_{t−1}` vanish.
    pub vanishing_block: Option<usize>,
    /// Pole order of each `f_j` as a function of the fixed field, measured at
    /// the fixed field's reference pole.
    pub degree_profile: Vec<usize>,
    /// `x_1` for [`BasisKind::PoleAtFirstBlock`].
    pub x1: Option<RatFn>,
}

fn block_label(part: &BlockPartition, u: usize) -> Result<Fe> {
    match part.labels[u] {
        Eval::Value(b) => Ok(b),
        Eval::Pole => Err(LrcError::Internal(format!("block {u} lies over the pole of w"))),
    }
}

/// `x_1 = 1/(w − β_1)`, or `w` itself when block 1 lies over the pole of `w`.
pub fn first_block_generator(f: &Field, w: &RatFn, part: &BlockPartition) -> Result<RatFn> {
    match part.labels[0] {
        Eval::Pole => Ok(w.clone()),
        Eval::Value(b) => w.sub(f, &RatFn::constant(b)).inv(f),
    }
}

pub fn build_basis(f: &Field, w: &RatFn, part: &BlockPartition, t: usize, kind: BasisKind) -> Result<FunctionBasis> {
    if t == 0 || t > part.blocks.len() {
        return Err(LrcError::ParamViolation(format!("1 ≤ t ≤ s (t = {t})")));
    }
    let powers = |base: &RatFn, n: usize| -> Vec<RatFn> {
        let mut out = Vec::with_capacity(n);
        let mut cur = RatFn::one();
        for _ in 0..n {
            out.push(cur.clone());
            cur = cur.mul(f, base);
        }
        out
    };
    let mut x1 = None;
    let (f_list, degree_profile, vanishing_block) = match kind {
        BasisKind::Powers => (powers(w, t), (0..t).collect(), None),
        BasisKind::Vanishing => {
            let lin = w.sub(f, &RatFn::constant(block_label(part, 0)?));
            let mut list: Vec<RatFn> = powers(w, t - 1).iter().map(|p| lin.mul(f, p)).collect();
            list.push(RatFn::one());
            let mut deg: Vec<usize> = (1..t).collect();
            deg.push(0);
            (list, deg, Some(0))
        }
        BasisKind::Strict => {
            if t == 1 {
                (vec![RatFn::one()], vec![0], None)
            } else {
                let lin = w.sub(f, &RatFn::constant(block_label(part, 0)?));
                let pw = powers(w, t);
                let mut list: Vec<RatFn> = pw[..t - 2].iter().map(|p| lin.mul(f, p)).collect();
                list.push(RatFn::one());
                list.push(pw[t - 1].clone());
                let mut deg: Vec<usize> = (1..t - 1).collect();
                deg.push(0);
                deg.push(t - 1);
                (list, deg, None)
            }
        }
        BasisKind::PoleAtFirstBlock => {
            let g = first_block_generator(f, w, part)?;
            let list = powers(&g, t);
            x1 = Some(g);
            (list, (0..t).collect(), None)
        }
    };
    Ok(FunctionBasis { kind, f_list, vanishing_block, degree_profile, x1 })
}

impl FunctionBasis {
    pub fn t(&self) -> usize {
        self.f_list.len()
    }

    /// Invariance under every group element, linear independence, and the
    /// vanishing pattern.
    pub fn verify(&self, f: &Field, g: &AutSubgroup, part: &BlockPartition) -> Result<()> {
        for (j, fj) in self.f_list.iter().enumerate() {
            for s in &g.elements {
                if s.pullback(f, fj) != *fj {
                    return Err(LrcError::Internal(format!("f_{} is not invariant", j + 1)));
                }
            }
        }
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for p in PlaceP1::all(f) {
            let vals: Option<Vec<Fe>> = self.f_list.iter().map(|fj| fj.eval(f, p).value()).collect();
            if let Some(v) = vals {
                rows.push(v);
            }
        }
        // Evaluation alone can miss independence when few places are pole-free;
        // pairwise distinct valuations at one place also settle it.
        let distinct_valuations = || {
            PlaceP1::all(f).into_iter().any(|p| {
                let mut v: Vec<i64> = self.f_list.iter().filter_map(|fj| fj.valuation(f, p).ok()).collect();
                v.sort_unstable();
                v.dedup();
                v.len() == self.t()
            })
        };
        if linalg::rank(f, &rows) != self.t() && !distinct_valuations() {
            return Err(LrcError::Internal("basis functions are linearly dependent".into()));
        }
        if let Some(u) = self.vanishing_block {
            let place = part.blocks[u][0];
            let t = self.t();
            for (j, fj) in self.f_list.iter().enumerate() {
                let v = fj.eval(f, place);
                let ok = if j + 1 < t { v == Eval::Value(Fe::ZERO) } else { matches!(v, Eval::Value(c) if !c.is_zero()) };
                if !ok {
                    return Err(LrcError::Internal(format!("f_{} has the wrong value on block {}", j + 1, u + 1)));
                }
            }
        }
        Ok(())
    }
}
