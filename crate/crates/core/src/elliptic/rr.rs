//! Riemann–Roch spaces `L(D)` by linear algebra on local expansions.

use std::collections::BTreeMap;

use crate::elliptic::curve::{Curve, Pt};
use crate::elliptic::curvefn::{local_parameter_series, CurveFn};
use crate::elliptic::divisor::Divisor;
use crate::error::{LrcError, Result};
use crate::field::Fe;
use crate::linalg;
use crate::poly::Poly;
use crate::ratfn::Eval;

fn ser_mul(e: &Curve, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let f = &e.field;
    let n = a.len();
    let mut out = vec![Fe::ZERO; n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
    out
}

/// A basis of `L(D) = {f : div f + D ≥ 0} ∪ {0}`.
///
/// Every element is written `(a + b·y)/h` with `h = Π (x − x0)^{m(x0)}`
/// covering the affine poles allowed by `D`. The pole order at `O` bounds the
/// degrees of `a` and `b`; zero conditions become linear equations on the
/// coefficients of the local expansions. The result is audited point by point.
pub fn rr_basis(e: &Curve, d: &Divisor) -> Result<Vec<CurveFn>> {
    let f = &e.field;
    let mut mult: BTreeMap<Fe, i64> = BTreeMap::new();
    for (p, m) in d.iter() {
        if let (Pt::Affine(x, _), true) = (p, m > 0) {
            let e = mult.entry(x).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let mut h = Poly::one();
    for (&x0, &m) in &mult {
        h = h.mul(f, &Poly::linear_root(f, x0).pow(f, m as usize));
    }
    let deg_h = h.deg_i();
    let budget = 2 * deg_h + d.get(Pt::O);
    let na = if budget >= 0 { (budget / 2 + 1) as usize } else { 0 };
    let nb = if budget >= 3 { ((budget - 3) / 2 + 1) as usize } else { 0 };
    let ncols = na + nb;
    if ncols == 0 {
        return Ok(Vec::new());
    }

    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for p in e.enumerate_points() {
        let Pt::Affine(x0, _) = p else { continue };
        let m = mult.get(&x0).copied().unwrap_or(0);
        let ram = if e.is_two_torsion(p) { 2 } else { 1 };
        let need = m * ram - d.get(p);
        if need <= 0 {
            continue;
        }
        let prec = need as usize;
        let (xs, ys) = local_parameter_series(e, p, prec);
        let mut mono = vec![Fe::ZERO; prec];
        mono[0] = Fe::ONE;
        let mut cols: Vec<Vec<Fe>> = Vec::with_capacity(ncols);
        let mut xp = mono.clone();
        for _ in 0..na.max(nb) {
            cols.push(xp.clone());
            xp = ser_mul(e, &xp, &xs);
        }
        let xcols = cols;
        let mut all: Vec<Vec<Fe>> = xcols[..na].to_vec();
        for c in xcols.iter().take(nb) {
            all.push(ser_mul(e, c, &ys));
        }
        for k in 0..prec {
            rows.push(all.iter().map(|c| c[k]).collect());
        }
    }

    let null = linalg::nullspace(f, &rows, ncols);
    let mut basis = Vec::with_capacity(null.len());
    for v in null {
        let a = Poly::new(v[..na].to_vec());
        let b = Poly::new(v[na..].to_vec());
        basis.push(CurveFn::new(f, a, b, h.clone())?);
    }
    audit(e, d, &basis)?;
    let deg = d.degree();
    if deg >= 1 && basis.len() as i64 != deg {
        return Err(LrcError::DegenerateSystem(format!("dim L(D) = {}, expected {deg}", basis.len())));
    }
    Ok(basis)
}

/// `v_P(f) ≥ −D(P)` at every rational point.
pub fn audit(e: &Curve, d: &Divisor, basis: &[CurveFn]) -> Result<()> {
    for g in basis {
        if g.is_zero() {
            return Err(LrcError::DegenerateSystem("zero vector in basis".into()));
        }
        for p in e.enumerate_points() {
            let allowed = d.get(p);
            let fast = matches!(g.eval(e, p), Eval::Value(_));
            if fast && allowed >= 0 {
                continue;
            }
            if g.valuation(e, p)? < -allowed {
                return Err(LrcError::DegenerateSystem(format!("{g} violates D at {p}")));
            }
        }
    }
    Ok(())
}

/// `L(D)` membership test for one function.
pub fn in_space(e: &Curve, d: &Divisor, g: &CurveFn) -> bool {
    g.is_zero() || audit(e, d, std::slice::from_ref(g)).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn curve13() -> Curve {
        Curve::short(Field::from_order(13).unwrap(), Fe(0), Fe(1)).unwrap()
    }

    #[test]
    fn multiples_of_infinity() {
        let e = curve13();
        assert_eq!(rr_basis(&e, &Divisor::new().with(Pt::O, 1)).unwrap(), vec![CurveFn::one()]);
        assert_eq!(rr_basis(&e, &Divisor::new().with(Pt::O, 2)).unwrap().len(), 2);
        let b3 = rr_basis(&e, &Divisor::new().with(Pt::O, 3)).unwrap();
        assert_eq!(b3.len(), 3);
        assert!(b3.contains(&CurveFn::y()));
        assert_eq!(rr_basis(&e, &Divisor::new().with(Pt::O, 7)).unwrap().len(), 7);
    }

    #[test]
    fn affine_poles_have_full_dimension() {
        let e = curve13();
        let pts = e.enumerate_points();
        for &p in pts.iter().filter(|p| **p != Pt::O) {
            for m in 1..4 {
                let d = Divisor::new().with(p, m);
                let b = rr_basis(&e, &d).unwrap();
                assert_eq!(b.len() as i64, m, "at {p}");
            }
        }
        let d = Divisor::from_points(pts.iter().copied().take(5));
        assert_eq!(rr_basis(&e, &d).unwrap().len(), 5);
    }

    #[test]
    fn negative_parts_force_zeros() {
        let e = curve13();
        let pts = e.enumerate_points();
        let p = pts[0];
        let d = Divisor::new().with(Pt::O, 4).with(p, -1);
        let b = rr_basis(&e, &d).unwrap();
        assert_eq!(b.len(), 3);
        for g in &b {
            assert_eq!(g.eval(&e, p), Eval::Value(Fe::ZERO));
        }
    }

    #[test]
    fn degree_zero_principal() {
        // P − O is not principal for P ≠ O; L(P − O) = 0.
        let e = curve13();
        let p = e.enumerate_points()[0];
        let d = Divisor::new().with(p, 1).with(Pt::O, -1);
        assert!(rr_basis(&e, &d).unwrap().is_empty());
        assert_eq!(rr_basis(&e, &Divisor::new()).unwrap(), vec![CurveFn::one()]);
    }
}
