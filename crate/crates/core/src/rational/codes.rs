//! Builders for the rational code families.

use serde::{Deserialize, Serialize};

use crate::code::{ClaimKind, Claims, EvaluatedCode, RepairGroup};
use crate::error::{LrcError, Result};
use crate::family::Family;
use crate::field::{Fe, Field};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::rational::basis::{build_basis, BasisKind, FunctionBasis};
use crate::rational::params::{additive_exponent, affine_condition, max_s, case_condition_holds, validate_params, SubgroupCase};
use crate::rational::partition::{orbit_partition, BlockPartition};
use crate::rational::subgroup::{find_subgroup, invariant_function, AutSubgroup};
use crate::ratfn::{Eval, PlaceP1, RatFn};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPlan {
    pub family: Family,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    /// Defaults to the first admissible case.
    #[serde(default)]
    pub case: Option<SubgroupCase>,
    /// ExtendOne only: use the strict basis.
    #[serde(default)]
    pub strict: bool,
}

impl RationalPlan {
    pub fn new(family: Family, r: usize, s: usize, t: usize) -> Self {
        RationalPlan { family, r, s, t, case: None, strict: false }
    }
}

/// What a codeword coordinate carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coordinate {
    /// The (possibly modified) message function evaluated at a place.
    Eval { block: usize, place: PlaceP1 },
    /// The raw message symbol `a_{i,j}` (`j` is 1-based).
    Raw { block: usize, i: usize, j: usize },
    /// `Σ_j a_{i,j} f_j(Q_block)`.
    LocalSum { block: usize, i: usize },
}

impl Coordinate {
    pub fn block(&self) -> usize {
        match *self {
            Coordinate::Eval { block, .. } | Coordinate::Raw { block, .. } | Coordinate::LocalSum { block, .. } => block,
        }
    }
}

/// Position `position` evaluates `multiplier^exponent · f_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modifier {
    pub position: usize,
    pub multiplier: RatFn,
    pub exponent: u32,
}

#[derive(Clone, Debug)]
pub struct RationalCode {
    pub plan: RationalPlan,
    pub case: SubgroupCase,
    pub subgroup: AutSubgroup,
    pub w: RatFn,
    pub partition: BlockPartition,
    pub z: RatFn,
    pub basis: FunctionBasis,
    pub modifiers: Vec<Modifier>,
    pub coordinates: Vec<Coordinate>,
    pub code: EvaluatedCode,
    /// Two-symbol extension only: an `(r−1)`-subset of block-1 coordinates
    /// summing to zero, if one exists.
    pub zero_sum_subset: Option<Option<Vec<Fe>>>,
    /// Human-readable record of the checks that passed.
    pub checks: Vec<String>,
}

/// Flat message index of `a_{i,j}` with 0-based `j`.
pub fn message_index(t: usize, i: usize, j: usize) -> usize {
    i * t + j
}

fn default_case(family: Family, q: u64, r: usize, s: usize) -> Result<SubgroupCase> {
    if family.is_modified() {
        return Ok(SubgroupCase::CyclicQPlus1);
    }
    if s as i64 > max_s(family, q, r) && additive_exponent(q, r).is_some() {
        return Ok(SubgroupCase::Additive);
    }
    affine_condition(q, r).ok_or_else(|| LrcError::ParamViolation(format!("no subgroup case applies to r = {r}")))
}

pub fn claims_for(family: Family, n: usize, k: usize, r: usize, s: usize, t: usize) -> Claims {
    let (n, k, r, s, t) = (n as i64, k as i64, r as i64, s as i64, t as i64);
    let (design_d, kind, formula, never_optimal) = match family {
        Family::Base | Family::ExtendOne | Family::ModExtendOne => (n - r * t - t + 2, ClaimKind::Exact, "n-rt-t+2", false),
        Family::ExtendAll | Family::ModExtendAll => {
            let kind = if t == s { ClaimKind::Exact } else { ClaimKind::AtLeast };
            (n - t * (r + 1) - s + 3, kind, "n-t(r+1)-s+3", false)
        }
        Family::RlOne => (n - r * t - t + 1, ClaimKind::AtLeast, "n-rt-t+1", false),
        Family::RlAll => (n - k - (k / r - 1) * 2 + 1 - s, ClaimKind::AtMost, "n-k-2(k/r-1)+1-s", true),
        Family::EBase | Family::EExtendOne | Family::EExtendAll => unreachable!("elliptic claims are built elsewhere"),
    };
    Claims {
        family: family.name().to_string(),
        r: r as usize,
        delta: family.delta(),
        design_d,
        kind,
        never_optimal,
        formula: formula.to_string(),
    }
}

fn unit_row(r: usize, i: usize, c: Fe) -> Vec<Fe> {
    let mut row = vec![Fe::ZERO; r];
    row[i] = c;
    row
}

/// `(r−1)`-subset of block-1 affine coordinates summing to zero.
pub fn zero_sum_subset(f: &Field, block: &[PlaceP1], size: usize) -> Option<Vec<Fe>> {
    let coords: Vec<Fe> = block.iter().filter_map(|p| p.coordinate()).collect();
    linalg::combinations(coords.len(), size).into_iter().find_map(|idx| {
        let pick: Vec<Fe> = idx.iter().map(|&i| coords[i]).collect();
        f.sum(pick.iter().copied()).is_zero().then_some(pick)
    })
}

pub fn build_rational(f: &Field, plan: &RationalPlan) -> Result<RationalCode> {
    let RationalPlan { family, r, s, t, strict, .. } = *plan;
    let q = f.q() as u64;
    validate_params(family, q, r, s, t)?;
    if strict && family != Family::ExtendOne {
        return Err(LrcError::ParamViolation("the strict basis applies to ExtendOne only".into()));
    }
    let modified = family.is_modified();
    let case = match plan.case {
        Some(c) => c,
        None => default_case(family, q, r, s)?,
    };
    if modified != (case == SubgroupCase::CyclicQPlus1) {
        return Err(LrcError::ParamViolation(format!("{family} cannot use the {} subgroup", case.name())));
    }
    if !case_condition_holds(case, q, r) {
        return Err(LrcError::ParamViolation(format!("r = {r} does not satisfy the {} condition", case.name())));
    }
    let mut checks = Vec::new();

    let subgroup = find_subgroup(case, f, r)?;
    checks.push(format!("subgroup: {} of order {} closed under composition and inverse", case.name(), r + 1));
    let w = invariant_function(f, &subgroup)?;
    if !modified && w.as_poly().is_none() {
        return Err(LrcError::Internal("invariant of an affine group should be a polynomial".into()));
    }
    checks.push(format!("invariant w = {w} of degree {}", w.degree()));

    let partition = orbit_partition(f, &subgroup, &w, s, modified)?;
    checks.push(format!("{s} free orbits of size {} with distinct w-values", r + 1));

    let z = if modified {
        match partition.blocks[1][0] {
            PlaceP1::Finite(alpha) => RatFn::from_poly(Poly::linear_root(f, alpha)).inv(f)?,
            PlaceP1::Infinity => RatFn::x(),
        }
    } else {
        RatFn::x()
    };
    for (u, b) in partition.blocks.iter().enumerate() {
        let mut vals: Vec<Eval> = b.iter().map(|&p| z.eval(f, p)).collect();
        vals.sort_by_key(|v| v.value().map_or(u32::MAX, |x| x.0));
        vals.dedup();
        if vals.len() != b.len() {
            return Err(LrcError::SeparationFailure(u));
        }
    }
    checks.push(format!("z = {z} separates every block"));

    let kind = if modified {
        BasisKind::PoleAtFirstBlock
    } else if family.uses_vanishing_block() {
        if strict {
            BasisKind::Strict
        } else {
            BasisKind::Vanishing
        }
    } else {
        BasisKind::Powers
    };
    let basis = build_basis(f, &w, &partition, t, kind)?;
    basis.verify(f, &subgroup, &partition)?;
    checks.push(format!("basis {kind:?}: {} invariant, independent functions", t));

    // evaluation positions
    let mut coordinates = Vec::new();
    let mut modifier_of: Vec<Option<RatFn>> = Vec::new();
    let mut modifiers = Vec::new();
    let pi1 = match &basis.x1 {
        Some(x1) if modified => Some(x1.inv(f)?),
        _ => None,
    };
    let pi2 = if modified { Some(z.inv(f)?) } else { None };
    for (u, b) in partition.blocks.iter().enumerate() {
        for (v, &place) in b.iter().enumerate() {
            let pos = coordinates.len();
            coordinates.push(Coordinate::Eval { block: u, place });
            let m = match (u, v) {
                (0, _) if modified && t > 1 => Some((pi1.clone().unwrap(), (t - 1) as u32)),
                (1, 0) if modified && r > 1 => Some((pi2.clone().unwrap(), (r - 1) as u32)),
                _ => None,
            };
            modifier_of.push(match &m {
                Some((base, e)) => Some(base.pow(f, *e as i64)?),
                None => None,
            });
            if let Some((multiplier, exponent)) = m {
                modifiers.push(Modifier { position: pos, multiplier, exponent });
            }
        }
    }
    let n_eval = coordinates.len();

    // value of (block multiplier)·f_j on each block
    let block_multiplier = |u: usize| -> Option<&RatFn> { if u == 0 { modifier_of[0].as_ref() } else { None } };
    let mut phi = vec![vec![Fe::ZERO; t]; s];
    for u in 0..s {
        let place = partition.blocks[u][partition.blocks[u].len() - 1];
        for j in 0..t {
            let fj = match block_multiplier(u) {
                Some(m) => m.mul(f, &basis.f_list[j]),
                None => basis.f_list[j].clone(),
            };
            phi[u][j] = fj
                .eval(f, place)
                .value()
                .ok_or_else(|| LrcError::Internal(format!("f_{} has a pole on block {}", j + 1, u + 1)))?;
        }
    }

    let k = r * t;
    let mut generator: Matrix = vec![Vec::with_capacity(n_eval + 2 * s); k];
    let mut local_rows: Vec<Vec<Fe>> = Vec::with_capacity(n_eval);
    for pos in 0..n_eval {
        let Coordinate::Eval { block: u, place } = coordinates[pos] else { unreachable!() };
        match &modifier_of[pos] {
            None => {
                let zv = z
                    .eval(f, place)
                    .value()
                    .ok_or_else(|| LrcError::Internal(format!("z has a pole at unmodified position {pos}")))?;
                let fv: Vec<Fe> = basis
                    .f_list
                    .iter()
                    .map(|fj| fj.eval(f, place).value().ok_or(LrcError::PoleCancellationFailure(pos)))
                    .collect::<Result<_>>()?;
                let mut zi = Fe::ONE;
                let mut row = Vec::with_capacity(r);
                for i in 0..r {
                    for j in 0..t {
                        generator[message_index(t, i, j)].push(f.mul(fv[j], zi));
                    }
                    row.push(zi);
                    zi = f.mul(zi, zv);
                }
                local_rows.push(row);
            }
            Some(m) => {
                let ratio = match block_multiplier(u) {
                    Some(bm) => m.div(f, bm)?,
                    None => m.clone(),
                };
                let mut zi = RatFn::one();
                let mut row = Vec::with_capacity(r);
                for i in 0..r {
                    for j in 0..t {
                        let e = m.mul(f, &basis.f_list[j]).mul(f, &zi);
                        let v = e.eval(f, place).value().ok_or(LrcError::PoleCancellationFailure(pos))?;
                        generator[message_index(t, i, j)].push(v);
                    }
                    let lv = ratio.mul(f, &zi).eval(f, place).value().ok_or(LrcError::PoleCancellationFailure(pos))?;
                    row.push(lv);
                    zi = zi.mul(f, &z);
                }
                local_rows.push(row);
            }
        }
    }
    if !modifiers.is_empty() {
        checks.push(format!("{} modified positions evaluate to finite values", modifiers.len()));
    }

    // appended coordinates, in block order
    let mut appended: Vec<Coordinate> = Vec::new();
    match family {
        Family::Base => {}
        Family::ExtendOne | Family::ModExtendOne => appended.push(Coordinate::Raw { block: 0, i: r - 1, j: t }),
        Family::ExtendAll => appended.extend((0..s).map(|u| Coordinate::LocalSum { block: u, i: r - 1 })),
        Family::ModExtendAll => {
            appended.push(Coordinate::Raw { block: 0, i: r - 1, j: t });
            appended.push(Coordinate::LocalSum { block: 1, i: r - 2 });
            appended.extend((2..s).map(|u| Coordinate::LocalSum { block: u, i: r - 1 }));
        }
        Family::RlOne => {
            appended.push(Coordinate::Raw { block: 0, i: r - 2, j: t });
            appended.push(Coordinate::Raw { block: 0, i: r - 1, j: t });
        }
        Family::RlAll => {
            for u in 0..s {
                appended.push(Coordinate::LocalSum { block: u, i: r - 2 });
                appended.push(Coordinate::LocalSum { block: u, i: r - 1 });
            }
        }
        _ => unreachable!(),
    }
    let mut appended_rows = Vec::new();
    for c in &appended {
        match *c {
            Coordinate::Raw { block, i, j } => {
                for (a, row) in generator.iter_mut().enumerate() {
                    row.push(if a == message_index(t, i, j - 1) { Fe::ONE } else { Fe::ZERO });
                }
                let scale = f.inv(phi[block][j - 1]).unwrap_or(Fe::ZERO);
                appended_rows.push(unit_row(r, i, scale));
            }
            Coordinate::LocalSum { block, i } => {
                for (a, row) in generator.iter_mut().enumerate() {
                    let (ai, aj) = (a / t, a % t);
                    row.push(if ai == i { phi[block][aj] } else { Fe::ZERO });
                }
                appended_rows.push(unit_row(r, i, Fe::ONE));
            }
            Coordinate::Eval { .. } => unreachable!(),
        }
    }
    coordinates.extend(appended.iter().cloned());
    local_rows.extend(appended_rows);

    // repair groups
    let coeff_map = |u: usize| -> Matrix {
        let mut m = vec![vec![Fe::ZERO; k]; r];
        for (i, row) in m.iter_mut().enumerate() {
            for j in 0..t {
                row[message_index(t, i, j)] = phi[u][j];
            }
        }
        m
    };
    let standalone = |c: &Coordinate| strict && matches!(c, Coordinate::Raw { .. });
    let mut groups = Vec::with_capacity(s + 1);
    for u in 0..s {
        let positions: Vec<usize> =
            (0..coordinates.len()).filter(|&p| coordinates[p].block() == u && !standalone(&coordinates[p])).collect();
        let local = positions.iter().map(|&p| local_rows[p].clone()).collect();
        groups.push(RepairGroup { positions, local, coeff_map: Some(coeff_map(u)) });
    }
    for p in 0..coordinates.len() {
        if standalone(&coordinates[p]) {
            let unit = generator.iter().map(|row| row[p]).collect();
            groups.push(RepairGroup { positions: vec![p], local: vec![vec![Fe::ONE]], coeff_map: Some(vec![unit]) });
            checks.push(format!("strict basis: position {p} cannot be repaired inside block 1 and forms its own group"));
        }
    }

    let n = coordinates.len();
    let claims = claims_for(family, n, k, r, s, t);
    let code = EvaluatedCode::new(f.clone(), generator, groups, claims)?;
    checks.push(format!("generator rank {k}; every block factors through its local matrix"));

    let zero_sum = if family == Family::RlOne {
        Some(zero_sum_subset(f, &partition.blocks[0], r - 1))
    } else {
        None
    };

    Ok(RationalCode {
        plan: RationalPlan { case: Some(case), ..plan.clone() },
        case,
        subgroup,
        w,
        partition,
        z,
        basis,
        modifiers,
        coordinates,
        code,
        zero_sum_subset: zero_sum,
        checks,
    })
}
