//! Builders for the elliptic code families.

use serde::{Deserialize, Serialize};

use crate::code::{ClaimKind, Claims, EvaluatedCode, RepairGroup};
use crate::elliptic::aut::{make_subgroup, CurveGroup, Recipe};
use crate::elliptic::curve::{Curve, Pt};
use crate::elliptic::curvefn::CurveFn;
use crate::elliptic::divisor::Divisor;
use crate::elliptic::rr::rr_basis;
use crate::error::{LrcError, Result};
use crate::family::Family;
use crate::field::{Fe, Field};
use crate::linalg::{self, Matrix};
use crate::ratfn::Eval;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticPlan {
    pub family: Family,
    /// `[a1, a2, a3, a4, a6]`.
    pub curve: [u32; 5],
    pub recipe: Recipe,
    pub s: usize,
    pub t: usize,
}

/// What a codeword coordinate carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ECoordinate {
    Eval { block: usize, point: Pt },
    /// The raw symbol `a_{0,t}`.
    Raw { block: usize },
    /// `Σ_j a_{0,j} z^{j−1}(Q_block)`.
    LocalSum { block: usize },
}

impl ECoordinate {
    pub fn block(&self) -> usize {
        match *self {
            ECoordinate::Eval { block, .. } | ECoordinate::Raw { block } | ECoordinate::LocalSum { block } => block,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EllipticCode {
    pub plan: EllipticPlan,
    pub curve: Curve,
    pub group: CurveGroup,
    /// Points of `Q_∞`; excluded from evaluation.
    pub pole_block: Vec<Pt>,
    pub blocks: Vec<Vec<Pt>>,
    pub free_orbits: usize,
    /// `⌊(N − 2r − 4)/(r + 1)⌋`.
    pub s_bound: i64,
    pub z: CurveFn,
    /// `z(Q_u)` per evaluation block.
    pub z_values: Vec<Fe>,
    pub zhat: Option<CurveFn>,
    pub omegas: Vec<CurveFn>,
    pub coordinates: Vec<ECoordinate>,
    pub code: EvaluatedCode,
    pub checks: Vec<String>,
}

/// Flat index of `a_{i,j}` (0-based `j`): row 0 has `t` entries, the others `t − 1`.
pub fn elliptic_index(t: usize, i: usize, j: usize) -> usize {
    if i == 0 {
        j
    } else {
        t + (i - 1) * (t - 1) + j
    }
}

pub fn elliptic_claims(family: Family, n: usize, r: usize, s: usize, t: usize) -> Claims {
    let (n, r, s, t) = (n as i64, r as i64, s as i64, t as i64);
    let (design_d, kind, formula) = match family {
        Family::EBase | Family::EExtendOne => (n - (t - 1) * (r + 1), ClaimKind::Exact, "n-(t-1)(r+1)"),
        Family::EExtendAll if t == s => (n - (t - 1) * (r + 2), ClaimKind::Exact, "n-(t-1)(r+2)"),
        Family::EExtendAll => (n - (t - 1) * (r + 1) - s + 1, ClaimKind::AtLeast, "n-(t-1)(r+1)-s+1"),
        _ => unreachable!("rational claims are built elsewhere"),
    };
    Claims {
        family: family.name().to_string(),
        r: r as usize,
        delta: family.delta(),
        design_d,
        kind,
        never_optimal: false,
        formula: formula.to_string(),
    }
}

fn value(e: &Curve, g: &CurveFn, p: Pt) -> Result<Fe> {
    g.eval(e, p).value().ok_or_else(|| LrcError::Internal(format!("{g} has a pole at {p}")))
}

fn combine(e: &Curve, basis: &[CurveFn], c: &[Fe]) -> CurveFn {
    basis.iter().zip(c).fold(CurveFn::zero(), |acc, (b, &k)| acc.add(e, &b.scale(e, k)))
}

fn has_exact_poles(e: &Curve, g: &CurveFn, poles: &[Pt]) -> bool {
    !g.is_zero() && poles.iter().all(|&p| g.valuation(e, p) == Ok(-1))
}

const SCAN_LIMIT: u64 = 1 << 20;

/// First nonzero coefficient vector, in lexicographic order, whose combination
/// satisfies `accept`.
fn first_combination(
    e: &Curve,
    basis: &[CurveFn],
    accept: impl Fn(&CurveFn) -> bool,
) -> Option<(Vec<Fe>, CurveFn)> {
    let q = e.field.q() as u64;
    let dim = basis.len() as u32;
    let total = q.checked_pow(dim).unwrap_or(u64::MAX).min(SCAN_LIMIT);
    for code in 1..total {
        let mut c = vec![Fe::ZERO; basis.len()];
        let mut rest = code;
        for slot in c.iter_mut().rev() {
            *slot = Fe((rest % q) as u32);
            rest /= q;
        }
        let g = combine(e, basis, &c);
        if accept(&g) {
            return Some((c, g));
        }
    }
    None
}


/// `z`: invariant, poles exactly the pole block, `z(Q_1) = 1`, `z(Q_2) = 0`.
fn find_z(e: &Curve, group: &CurveGroup, pole: &[Pt], blocks: &[Vec<Pt>]) -> Result<CurveFn> {
    let f = &e.field;
    let basis = rr_basis(e, &Divisor::from_points(pole.iter().copied()))?;
    let mut rows: Matrix = Vec::new();
    for &p in &group.points {
        if pole.contains(&p) {
            continue;
        }
        let at_p: Vec<Fe> = basis.iter().map(|b| value(e, b, p)).collect::<Result<_>>()?;
        for g in group.elements.iter().skip(1) {
            let img = group.apply(g, p);
            let at_img: Vec<Fe> = basis.iter().map(|b| value(e, b, img)).collect::<Result<_>>()?;
            rows.push(at_img.iter().zip(&at_p).map(|(&a, &b)| f.sub(a, b)).collect());
        }
    }
    let inv: Vec<CurveFn> =
        linalg::nullspace(f, &rows, basis.len()).iter().map(|c| combine(e, &basis, c)).collect();
    let (_, z) = first_combination(e, &inv, |g| !g.is_constant() && has_exact_poles(e, g, pole))
        .ok_or(LrcError::NoInvariantZ)?;
    let z1 = value(e, &z, blocks[0][0])?;
    let z2 = value(e, &z, blocks[1][0])?;
    let scale = f.inv(f.sub(z1, z2)).map_err(|_| LrcError::SeparationFailure(1))?;
    Ok(z.sub(e, &CurveFn::constant(z2)).scale(e, scale))
}

fn find_omegas(e: &Curve, pole: &[Pt], r: usize) -> Result<Vec<CurveFn>> {
    let mut out = vec![CurveFn::one()];
    for i in 1..r {
        let support = &pole[..=i];
        let basis = rr_basis(e, &Divisor::from_points(support.iter().copied()))?;
        let (_, w) = first_combination(e, &basis, |g| has_exact_poles(e, g, support))
            .ok_or_else(|| LrcError::ExactPoleUnreachable(format!("ω_{i}")))?;
        out.push(w);
    }
    Ok(out)
}

/// Invariant, zeros exactly on block 1, poles exactly on the pole block.
fn check_zhat(e: &Curve, zhat: &CurveFn, pole: &[Pt], blocks: &[Vec<Pt>]) -> Result<()> {
    for p in e.enumerate_points() {
        let want = if pole.contains(&p) {
            -1
        } else if blocks[0].contains(&p) {
            1
        } else {
            0
        };
        if zhat.valuation(e, p)? != want {
            return Err(LrcError::NoSuchFunction(format!("ẑ has the wrong order at {p}")));
        }
    }
    Ok(())
}

pub fn build_elliptic(f: &Field, plan: &EllipticPlan) -> Result<EllipticCode> {
    let EllipticPlan { family, s, t, .. } = *plan;
    if !family.is_elliptic() {
        return Err(LrcError::ParamViolation(format!("{family} is not an elliptic family")));
    }
    let coeffs = plan.curve.map(Fe);
    let e = Curve::new(f.clone(), coeffs)?;
    let group = make_subgroup(&e, &plan.recipe)?;
    let r = group.r();
    if s < 2 || t == 0 || t > s {
        return Err(LrcError::ParamViolation(format!("2 ≤ s and 1 ≤ t ≤ s (s = {s}, t = {t})")));
    }
    if r == 0 || (family == Family::EExtendAll && r < 2) {
        return Err(LrcError::ParamViolation(format!("r = {r} too small for {family}")));
    }
    let mut checks = vec![format!("subgroup of order {} closed, ramified at {} points", r + 1, group.fixed_points().len())];

    let free: Vec<Vec<Pt>> = group.orbits().into_iter().filter(|o| o.len() == r + 1).collect();
    if free.len() < s + 1 {
        return Err(LrcError::NotEnoughFreeOrbits { needed: s + 1, found: free.len() });
    }
    let n_pts = group.points.len() as i64;
    let s_bound = (n_pts - 2 * r as i64 - 4).div_euclid(r as i64 + 1);
    if s as i64 > s_bound {
        checks.push(format!("s = {s} exceeds ⌊(N−2r−4)/(r+1)⌋ = {s_bound} but {} free orbits exist", free.len()));
    }
    let pole_block = free[0].clone();
    let blocks: Vec<Vec<Pt>> = free[1..=s].to_vec();

    let z = find_z(&e, &group, &pole_block, &blocks)?;
    let mut z_values = Vec::with_capacity(s);
    for (u, b) in blocks.iter().enumerate() {
        let zu = value(&e, &z, b[0])?;
        if b.iter().any(|&p| z.eval(&e, p) != Eval::Value(zu)) {
            return Err(LrcError::Internal(format!("z is not constant on block {}", u + 1)));
        }
        z_values.push(zu);
    }
    checks.push("z is invariant with poles exactly on the pole block".into());

    let zhat = if family == Family::EExtendOne {
        let zh = CurveFn::one().sub(&e, &z);
        check_zhat(&e, &zh, &pole_block, &blocks)?;
        checks.push("ẑ = 1 − z vanishes exactly on block 1".into());
        Some(zh)
    } else {
        None
    };

    let omegas = find_omegas(&e, &pole_block, r)?;
    let m_u: Vec<Matrix> = blocks
        .iter()
        .map(|b| b.iter().map(|&p| omegas.iter().map(|w| value(&e, w, p)).collect()).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    for (u, m) in m_u.iter().enumerate() {
        if let Some(rows) = linalg::first_singular_minor(f, m, r) {
            return Err(LrcError::SubmatrixSingular { block: u, rows });
        }
    }
    checks.push(format!("every {r}×{r} submatrix of each M_u is invertible"));
    if family == Family::EExtendAll {
        for (u, m) in m_u.iter().enumerate() {
            let m_prime: Matrix = m.iter().map(|row| row[1..].to_vec()).collect();
            if let Some(rows) = linalg::first_singular_minor(f, &m_prime, r - 1) {
                return Err(LrcError::SubmatrixSingular { block: u, rows });
            }
        }
        checks.push(format!("every {0}×{0} submatrix of each M'_u is invertible", r - 1));
    }

    // c_0 coefficients of a_{0,j} on block u
    let phi0: Vec<Vec<Fe>> = z_values
        .iter()
        .map(|&zu| {
            let zh = f.sub(Fe::ONE, zu);
            (0..t)
                .map(|j| {
                    let pw = f.pow(zu, j as u64);
                    match family {
                        Family::EExtendOne if j + 1 < t => f.mul(zh, pw),
                        _ => pw,
                    }
                })
                .collect()
        })
        .collect();

    let k = r * t - r + 1;
    let mut generator: Matrix = vec![Vec::new(); k];
    let mut coordinates = Vec::new();
    let mut local_rows: Matrix = Vec::new();
    for (u, b) in blocks.iter().enumerate() {
        for (v, &p) in b.iter().enumerate() {
            let w = &m_u[u][v];
            for (a, row) in generator.iter_mut().enumerate() {
                let entry = if a < t {
                    phi0[u][a]
                } else {
                    let i = 1 + (a - t) / (t - 1);
                    let j = (a - t) % (t - 1);
                    f.mul(f.pow(z_values[u], j as u64), w[i])
                };
                row.push(entry);
            }
            coordinates.push(ECoordinate::Eval { block: u, point: p });
            local_rows.push(w.clone());
        }
    }
    let unit0 = |c: Fe| {
        let mut row = vec![Fe::ZERO; r];
        row[0] = c;
        row
    };
    match family {
        Family::EBase => {}
        Family::EExtendOne => {
            for (a, row) in generator.iter_mut().enumerate() {
                row.push(if a == t - 1 { Fe::ONE } else { Fe::ZERO });
            }
            coordinates.push(ECoordinate::Raw { block: 0 });
            let scale = f.inv(phi0[0][t - 1]).map_err(|_| LrcError::Internal("z^{t−1}(Q_1) = 0".into()))?;
            local_rows.push(unit0(scale));
        }
        Family::EExtendAll => {
            for u in 0..s {
                for (a, row) in generator.iter_mut().enumerate() {
                    row.push(if a < t { phi0[u][a] } else { Fe::ZERO });
                }
                coordinates.push(ECoordinate::LocalSum { block: u });
                local_rows.push(unit0(Fe::ONE));
            }
        }
        _ => unreachable!(),
    }

    let coeff_map = |u: usize| -> Matrix {
        let mut m = vec![vec![Fe::ZERO; k]; r];
        m[0][..t].copy_from_slice(&phi0[u]);
        for i in 1..r {
            for j in 0..t - 1 {
                m[i][elliptic_index(t, i, j)] = f.pow(z_values[u], j as u64);
            }
        }
        m
    };
    let groups: Vec<RepairGroup> = (0..s)
        .map(|u| {
            let positions: Vec<usize> = (0..coordinates.len()).filter(|&p| coordinates[p].block() == u).collect();
            let local = positions.iter().map(|&p| local_rows[p].clone()).collect();
            RepairGroup { positions, local, coeff_map: Some(coeff_map(u)) }
        })
        .collect();
    let claims = elliptic_claims(family, coordinates.len(), r, s, t);
    let code = EvaluatedCode::new(f.clone(), generator, groups, claims)?;
    checks.push(format!("generator rank {k}; every block factors through its local matrix"));

    Ok(EllipticCode {
        plan: plan.clone(),
        curve: e,
        free_orbits: free.len(),
        group,
        pole_block,
        blocks,
        s_bound,
        z,
        z_values,
        zhat,
        omegas,
        coordinates,
        code,
        checks,
    })
}

/// Curves `y² = x³ + a6` over `f` with at least `min_orbits` free orbits under
/// the cube-root twist, in increasing `a6`.
pub fn zeta3_curves(f: &Field, min_orbits: usize) -> Vec<Curve> {
    f.elements()
        .filter_map(|a6| Curve::short(f.clone(), Fe::ZERO, a6).ok())
        .filter(|e| {
            make_subgroup(e, &Recipe::Zeta3 { zeta: None })
                .map(|g| g.orbits().iter().filter(|o| o.len() == 3).count() >= min_orbits)
                .unwrap_or(false)
        })
        .collect()
}
