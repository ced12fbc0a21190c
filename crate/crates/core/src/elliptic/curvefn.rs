//! Functions on a Weierstrass curve, `(a(x) + b(x)·y) / c(x)`.

use std::fmt;

use crate::elliptic::curve::{Curve, Pt};
use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;
use crate::ratfn::Eval;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveFn {
    a: Poly,
    b: Poly,
    c: Poly,
}

/// `y² = g(x) − h(x)·y` with `h = a1·x + a3`, `g = x³ + a2·x² + a4·x + a6`.
fn h_poly(e: &Curve) -> Poly {
    Poly::new(vec![e.a3, e.a1])
}

fn g_poly(e: &Curve) -> Poly {
    Poly::new(vec![e.a6, e.a4, e.a2, Fe::ONE])
}

impl CurveFn {
    /// Reduces by the common factor of `a`, `b`, `c` and makes `c` monic.
    pub fn new(f: &Field, a: Poly, b: Poly, c: Poly) -> Result<Self> {
        if c.is_zero() {
            return Err(LrcError::DivisionByZero);
        }
        if a.is_zero() && b.is_zero() {
            return Ok(CurveFn::zero());
        }
        let g = a.gcd(f, &b).gcd(f, &c);
        let div = |p: &Poly| p.divrem(f, &g).map(|(q, _)| q);
        let (a, b, c) = (div(&a)?, div(&b)?, div(&c)?);
        let s = f.inv(c.lead())?;
        Ok(CurveFn { a: a.scale(f, s), b: b.scale(f, s), c: c.scale(f, s) })
    }

    pub fn zero() -> Self {
        CurveFn { a: Poly::zero(), b: Poly::zero(), c: Poly::one() }
    }

    pub fn constant(v: Fe) -> Self {
        CurveFn { a: Poly::constant(v), b: Poly::zero(), c: Poly::one() }
    }

    pub fn one() -> Self {
        CurveFn::constant(Fe::ONE)
    }

    pub fn x() -> Self {
        CurveFn { a: Poly::x(), b: Poly::zero(), c: Poly::one() }
    }

    pub fn y() -> Self {
        CurveFn { a: Poly::zero(), b: Poly::one(), c: Poly::one() }
    }

    pub fn from_parts(f: &Field, a: Poly, b: Poly) -> Self {
        CurveFn::new(f, a, b, Poly::one()).expect("denominator is one")
    }

    pub fn parts(&self) -> (&Poly, &Poly, &Poly) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_constant() && self.c.is_constant()
    }

    pub fn add(&self, e: &Curve, o: &CurveFn) -> CurveFn {
        let f = &e.field;
        let a = self.a.mul(f, &o.c).add(f, &o.a.mul(f, &self.c));
        let b = self.b.mul(f, &o.c).add(f, &o.b.mul(f, &self.c));
        CurveFn::new(f, a, b, self.c.mul(f, &o.c)).expect("nonzero denominator")
    }

    pub fn neg(&self, e: &Curve) -> CurveFn {
        let f = &e.field;
        CurveFn { a: self.a.neg(f), b: self.b.neg(f), c: self.c.clone() }
    }

    pub fn sub(&self, e: &Curve, o: &CurveFn) -> CurveFn {
        self.add(e, &o.neg(e))
    }

    pub fn scale(&self, e: &Curve, k: Fe) -> CurveFn {
        let f = &e.field;
        if k.is_zero() {
            return CurveFn::zero();
        }
        CurveFn { a: self.a.scale(f, k), b: self.b.scale(f, k), c: self.c.clone() }
    }

    pub fn mul(&self, e: &Curve, o: &CurveFn) -> CurveFn {
        let f = &e.field;
        let bb = self.b.mul(f, &o.b);
        let a = self.a.mul(f, &o.a).add(f, &bb.mul(f, &g_poly(e)));
        let b = self.a.mul(f, &o.b).add(f, &o.a.mul(f, &self.b)).sub(f, &bb.mul(f, &h_poly(e)));
        CurveFn::new(f, a, b, self.c.mul(f, &o.c)).expect("nonzero denominator")
    }

    /// `(a + by)(a − bh − by) = a² − abh − b²g`.
    pub fn norm_numerator(&self, e: &Curve) -> Poly {
        let f = &e.field;
        let (a, b) = (&self.a, &self.b);
        a.mul(f, a).sub(f, &a.mul(f, b).mul(f, &h_poly(e))).sub(f, &b.mul(f, b).mul(f, &g_poly(e)))
    }

    pub fn inv(&self, e: &Curve) -> Result<CurveFn> {
        if self.is_zero() {
            return Err(LrcError::DivisionByZero);
        }
        let f = &e.field;
        let norm = self.norm_numerator(e);
        let a = self.c.mul(f, &self.a.sub(f, &self.b.mul(f, &h_poly(e))));
        let b = self.c.mul(f, &self.b).neg(f);
        CurveFn::new(f, a, b, norm)
    }

    pub fn div(&self, e: &Curve, o: &CurveFn) -> Result<CurveFn> {
        Ok(self.mul(e, &o.inv(e)?))
    }

    pub fn pow(&self, e: &Curve, n: u32) -> CurveFn {
        let mut acc = CurveFn::one();
        for _ in 0..n {
            acc = acc.mul(e, self);
        }
        acc
    }

    pub fn valuation(&self, e: &Curve, p: Pt) -> Result<i64> {
        if self.is_zero() {
            return Err(LrcError::ZeroFunction);
        }
        match p {
            Pt::O => {
                let da = if self.a.is_zero() { i64::MIN } else { 2 * self.a.deg_i() };
                let db = if self.b.is_zero() { i64::MIN } else { 2 * self.b.deg_i() + 3 };
                Ok(-da.max(db) + 2 * self.c.deg_i())
            }
            Pt::Affine(..) => {
                let (num, den) = self.local_series(e, p);
                Ok(leading(&num).0 as i64 - leading(&den).0 as i64)
            }
        }
    }

    /// Value at `p`, or `Pole`.
    pub fn eval(&self, e: &Curve, p: Pt) -> Eval {
        let f = &e.field;
        if self.is_zero() {
            return Eval::Value(Fe::ZERO);
        }
        match p {
            Pt::O => {
                let v = self.valuation(e, p).expect("nonzero");
                if v < 0 {
                    Eval::Pole
                } else if v > 0 {
                    Eval::Value(Fe::ZERO)
                } else {
                    Eval::Value(f.div(self.a.lead(), self.c.lead()).expect("monic"))
                }
            }
            Pt::Affine(x, y) => {
                let cv = self.c.eval(f, x);
                if !cv.is_zero() {
                    let nv = f.add(self.a.eval(f, x), f.mul(self.b.eval(f, x), y));
                    return Eval::Value(f.div(nv, cv).expect("nonzero"));
                }
                let (num, den) = self.local_series(e, p);
                let (vn, ln) = leading(&num);
                let (vd, ld) = leading(&den);
                match vn.cmp(&vd) {
                    std::cmp::Ordering::Less => Eval::Pole,
                    std::cmp::Ordering::Greater => Eval::Value(Fe::ZERO),
                    std::cmp::Ordering::Equal => Eval::Value(f.div(ln, ld).expect("nonzero")),
                }
            }
        }
    }

    /// Power series of numerator and denominator in a local parameter at the
    /// affine point `p`, long enough to contain their leading terms.
    fn local_series(&self, e: &Curve, p: Pt) -> (Vec<Fe>, Vec<Fe>) {
        let f = &e.field;
        let deg_norm = self.norm_numerator(e).deg_i().max(0) as usize;
        let prec = 2 * deg_norm.max(self.c.deg_i().max(0) as usize) + 3;
        let (xs, ys) = local_parameter_series(e, p, prec);
        let a = poly_at_series(f, &self.a, &xs, prec);
        let b = poly_at_series(f, &self.b, &xs, prec);
        let num = ser_add(f, &a, &ser_mul(f, &b, &ys, prec));
        let den = poly_at_series(f, &self.c, &xs, prec);
        (num, den)
    }
}

impl fmt::Display for CurveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => format!("{}", self.a),
            (true, false) => format!("({})y", self.b),
            (false, false) => format!("{} + ({})y", self.a, self.b),
        };
        if self.c == Poly::one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.c)
        }
    }
}

fn leading(s: &[Fe]) -> (usize, Fe) {
    s.iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (i, c))
        .expect("series precision too short for a nonzero function")
}

fn ser_add(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn ser_mul(f: &Field, a: &[Fe], b: &[Fe], prec: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; prec];
    for (i, &x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(prec - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn poly_at_series(f: &Field, p: &Poly, s: &[Fe], prec: usize) -> Vec<Fe> {
    let mut acc = vec![Fe::ZERO; prec];
    for &c in p.coeffs().iter().rev() {
        acc = ser_mul(f, &acc, s, prec);
        acc[0] = f.add(acc[0], c);
    }
    acc
}

/// The curve equation `y² + h·y − g` on series.
fn curve_equation_series(e: &Curve, xs: &[Fe], ys: &[Fe], prec: usize) -> Vec<Fe> {
    let f = &e.field;
    let y2 = ser_mul(f, ys, ys, prec);
    let hy = ser_mul(f, &poly_at_series(f, &h_poly(e), xs, prec), ys, prec);
    let g = poly_at_series(f, &g_poly(e), xs, prec);
    y2.iter().zip(&hy).zip(&g).map(|((&a, &b), &c)| f.sub(f.add(a, b), c)).collect()
}

/// Series `(x(t), y(t))` at an affine point, with `t = x − x0` unless the
/// tangent there is vertical, in which case `t = y − y0`.
pub fn local_parameter_series(e: &Curve, p: Pt, prec: usize) -> (Vec<Fe>, Vec<Fe>) {
    let f = &e.field;
    let Pt::Affine(x0, y0) = p else { panic!("local series at O") };
    let mut xs = vec![Fe::ZERO; prec];
    let mut ys = vec![Fe::ZERO; prec];
    xs[0] = x0;
    ys[0] = y0;
    let fy = f.add(f.add(y0, y0), e.h_at(x0));
    let vertical = fy.is_zero();
    // partial derivative of the equation with respect to the solved coordinate
    let d = if vertical {
        let two = f.from_int(2);
        let three = f.from_int(3);
        let gx = f.sum([f.mul(three, f.mul(x0, x0)), f.mul(f.mul(two, e.a2), x0), e.a4]);
        f.sub(f.mul(e.a1, y0), gx)
    } else {
        fy
    };
    let dinv = f.inv(d).expect("nonsingular curve");
    if prec > 1 {
        if vertical {
            ys[1] = Fe::ONE;
        } else {
            xs[1] = Fe::ONE;
        }
    }
    for k in 1..prec {
        let w = curve_equation_series(e, &xs, &ys, k + 1);
        let ck = f.neg(f.mul(w[k], dinv));
        if vertical {
            xs[k] = f.add(xs[k], ck);
        } else {
            ys[k] = f.add(ys[k], ck);
        }
    }
    (xs, ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve13() -> Curve {
        Curve::short(Field::from_order(13).unwrap(), Fe(0), Fe(1)).unwrap()
    }

    #[test]
    fn textbook_pole_orders() {
        let e = curve13();
        assert_eq!(CurveFn::x().valuation(&e, Pt::O).unwrap(), -2);
        assert_eq!(CurveFn::y().valuation(&e, Pt::O).unwrap(), -3);
        assert_eq!(CurveFn::one().valuation(&e, Pt::O).unwrap(), 0);
    }

    #[test]
    fn vertical_line_valuations() {
        let e = curve13();
        let f = &e.field;
        for p in e.enumerate_points() {
            let Pt::Affine(x0, _) = p else { continue };
            let g = CurveFn::from_parts(f, Poly::linear_root(f, x0), Poly::zero());
            let expect = if e.is_two_torsion(p) { 2 } else { 1 };
            assert_eq!(g.valuation(&e, p).unwrap(), expect, "at {p}");
            assert_eq!(g.valuation(&e, e.neg(p)).unwrap(), expect);
        }
    }

    #[test]
    fn principal_divisors_have_degree_zero() {
        let e = curve13();
        let f = &e.field;
        let pts = e.enumerate_points();
        let samples = [
            CurveFn::from_parts(f, Poly::constant(f.neg(Fe(3))), Poly::one()),
            CurveFn::from_parts(f, Poly::from_u32s(&[2, 5]), Poly::one()),
            CurveFn::x().div(&e, &CurveFn::from_parts(f, Poly::from_u32s(&[12]), Poly::one())).unwrap(),
        ];
        for g in &samples {
            let deg: i64 = pts.iter().map(|&p| g.valuation(&e, p).unwrap()).sum();
            // split functions: all zeros and poles are rational
            let n = g.norm_numerator(&e);
            if n.roots(f).len() == n.degree().unwrap_or(0) {
                assert_eq!(deg, 0, "{g}");
            }
        }
    }

    #[test]
    fn inverse_and_eval() {
        let e = curve13();
        let f = &e.field;
        let g = CurveFn::from_parts(f, Poly::from_u32s(&[1, 1]), Poly::one());
        let gi = g.inv(&e).unwrap();
        assert_eq!(g.mul(&e, &gi), CurveFn::one());
        for p in e.enumerate_points() {
            match (g.eval(&e, p), gi.eval(&e, p)) {
                (Eval::Value(a), Eval::Value(b)) => assert_eq!(f.mul(a, b), Fe::ONE),
                (Eval::Value(a), Eval::Pole) => assert!(a.is_zero()),
                (Eval::Pole, Eval::Value(b)) => assert!(b.is_zero()),
                (Eval::Pole, Eval::Pole) => panic!("both poles at {p}"),
            }
        }
    }

    #[test]
    fn removable_singularity() {
        // (y − y0)/(x − x0) at a non-vertical point equals the tangent slope
        let e = curve13();
        let f = &e.field;
        let p = e.enumerate_points().into_iter().find(|&p| p != Pt::O && !e.is_two_torsion(p)).unwrap();
        let Pt::Affine(x0, y0) = p else { unreachable!() };
        let g = CurveFn::new(f, Poly::constant(f.neg(y0)), Poly::one(), Poly::linear_root(f, x0)).unwrap();
        let slope = f.div(f.mul(f.from_int(3), f.mul(x0, x0)), f.add(y0, y0)).unwrap();
        assert_eq!(g.eval(&e, p), Eval::Value(slope));
        assert_eq!(g.eval(&e, e.neg(p)), Eval::Pole);
    }
}
