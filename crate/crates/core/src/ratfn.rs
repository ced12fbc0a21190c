//! Rational functions on the projective line and its rational places.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

/// A rational place of the projective line.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum PlaceP1 {
    Finite(Fe),
    Infinity,
}

impl PlaceP1 {
    /// Finite places encode as their element, Infinity as `q`.
    pub fn encode(self, q: u32) -> u32 {
        match self {
            PlaceP1::Finite(a) => a.0,
            PlaceP1::Infinity => q,
        }
    }

    pub fn decode(e: u32, q: u32) -> Result<Self> {
        match e.cmp(&q) {
            std::cmp::Ordering::Less => Ok(PlaceP1::Finite(Fe(e))),
            std::cmp::Ordering::Equal => Ok(PlaceP1::Infinity),
            std::cmp::Ordering::Greater => Err(LrcError::Parse(format!("place {e} out of range"))),
        }
    }

    pub fn coordinate(self) -> Option<Fe> {
        match self {
            PlaceP1::Finite(a) => Some(a),
            PlaceP1::Infinity => None,
        }
    }

    /// All `q + 1` places, finite ones first in encoding order.
    pub fn all(f: &Field) -> Vec<PlaceP1> {
        f.elements().map(PlaceP1::Finite).chain([PlaceP1::Infinity]).collect()
    }
}

impl fmt::Display for PlaceP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceP1::Finite(a) => write!(f, "{a}"),
            PlaceP1::Infinity => write!(f, "inf"),
        }
    }
}

/// Result of evaluating a function at a place.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Eval {
    Value(Fe),
    Pole,
}

impl Eval {
    pub fn value(self) -> Option<Fe> {
        match self {
            Eval::Value(v) => Some(v),
            Eval::Pole => None,
        }
    }
}

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(f: &Field, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(LrcError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn { num, den: Poly::one() });
        }
        let g = num.gcd(f, &den);
        let (num, _) = num.divrem(f, &g)?;
        let (den, _) = den.divrem(f, &g)?;
        let lc = f.inv(den.lead())?;
        Ok(RatFn { num: num.scale(f, lc), den: den.scale(f, lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: Fe) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFn::constant(Fe::ONE)
    }

    pub fn x() -> Self {
        RatFn::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_constant().then_some(&self.num)
    }

    pub fn add(&self, f: &Field, o: &RatFn) -> RatFn {
        let num = self.num.mul(f, &o.den).add(f, &o.num.mul(f, &self.den));
        RatFn::new(f, num, self.den.mul(f, &o.den)).expect("nonzero denominators")
    }

    pub fn sub(&self, f: &Field, o: &RatFn) -> RatFn {
        self.add(f, &o.neg(f))
    }

    pub fn neg(&self, f: &Field) -> RatFn {
        RatFn { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn mul(&self, f: &Field, o: &RatFn) -> RatFn {
        RatFn::new(f, self.num.mul(f, &o.num), self.den.mul(f, &o.den)).expect("nonzero denominators")
    }

    pub fn scale(&self, f: &Field, c: Fe) -> RatFn {
        RatFn::new(f, self.num.scale(f, c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn inv(&self, f: &Field) -> Result<RatFn> {
        if self.is_zero() {
            return Err(LrcError::DivisionByZero);
        }
        RatFn::new(f, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, f: &Field, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul(f, &o.inv(f)?))
    }

    pub fn pow(&self, f: &Field, n: i64) -> Result<RatFn> {
        let base = if n < 0 { self.inv(f)? } else { self.clone() };
        Ok(RatFn::new(
            f,
            base.num.pow(f, n.unsigned_abs() as usize),
            base.den.pow(f, n.unsigned_abs() as usize),
        )?)
    }

    pub fn eval(&self, f: &Field, place: PlaceP1) -> Eval {
        match place {
            PlaceP1::Finite(a) => {
                let d = self.den.eval(f, a);
                if d.is_zero() {
                    Eval::Pole
                } else {
                    Eval::Value(f.div(self.num.eval(f, a), d).expect("nonzero"))
                }
            }
            PlaceP1::Infinity => {
                let (dn, dd) = (self.num.deg_i(), self.den.deg_i());
                if dn < dd {
                    Eval::Value(Fe::ZERO)
                } else if dn == dd {
                    Eval::Value(f.div(self.num.lead(), self.den.lead()).expect("nonzero"))
                } else {
                    Eval::Pole
                }
            }
        }
    }

    pub fn valuation(&self, f: &Field, place: PlaceP1) -> Result<i64> {
        if self.is_zero() {
            return Err(LrcError::ZeroFunction);
        }
        Ok(match place {
            PlaceP1::Finite(a) => {
                self.num.root_multiplicity(f, a) as i64 - self.den.root_multiplicity(f, a) as i64
            }
            PlaceP1::Infinity => self.den.deg_i() - self.num.deg_i(),
        })
    }

    /// Composition `self(g)` for a rational function `g`.
    pub fn compose(&self, f: &Field, g: &RatFn) -> RatFn {
        let e = self.degree();
        let homog = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for (i, &c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = g.num.pow(f, i).mul(f, &g.den.pow(f, e - i)).scale(f, c);
                acc = acc.add(f, &term);
            }
            acc
        };
        RatFn::new(f, homog(&self.num), homog(&self.den)).expect("composition with a nonconstant map")
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf13() -> Field {
        Field::from_order(13).unwrap()
    }

    #[test]
    fn evaluation_cases() {
        let f = gf13();
        assert_eq!(RatFn::x().eval(&f, PlaceP1::Infinity), Eval::Pole);
        let inv = RatFn::new(&f, Poly::one(), Poly::linear_root(&f, Fe(3))).unwrap();
        assert_eq!(inv.eval(&f, PlaceP1::Finite(Fe(3))), Eval::Pole);
        assert_eq!(inv.eval(&f, PlaceP1::Finite(Fe(4))), Eval::Value(Fe(1)));
        let g = RatFn::new(&f, Poly::from_u32s(&[1, 0, 1]), Poly::from_u32s(&[0, 0, 1])).unwrap();
        assert_eq!(g.eval(&f, PlaceP1::Infinity), Eval::Value(Fe(1)));
    }

    #[test]
    fn valuation_cases() {
        let f = gf13();
        let g = RatFn::new(
            &f,
            Poly::from_roots(&f, &[Fe(3), Fe(3)]),
            Poly::linear_root(&f, Fe(4)),
        )
        .unwrap();
        assert_eq!(g.valuation(&f, PlaceP1::Finite(Fe(3))).unwrap(), 2);
        assert_eq!(g.valuation(&f, PlaceP1::Finite(Fe(4))).unwrap(), -1);
        assert_eq!(g.valuation(&f, PlaceP1::Infinity).unwrap(), -1);
        for p in PlaceP1::all(&f) {
            assert_eq!(RatFn::constant(Fe(5)).valuation(&f, p).unwrap(), 0);
        }
        assert_eq!(RatFn::zero().valuation(&f, PlaceP1::Infinity), Err(LrcError::ZeroFunction));
        // 1/x has valuation 1 at the pole of x
        let pi = RatFn::x().inv(&f).unwrap();
        assert_eq!(pi.valuation(&f, PlaceP1::Infinity).unwrap(), 1);
    }

    #[test]
    fn reduction_cancels_common_roots() {
        let f = gf13();
        let num = Poly::from_roots(&f, &[Fe(2), Fe(5)]);
        let den = Poly::from_roots(&f, &[Fe(2), Fe(7)]).scale(&f, Fe(3));
        let g = RatFn::new(&f, num, den).unwrap();
        assert_eq!(g.den(), &Poly::linear_root(&f, Fe(7)));
        assert_eq!(g.eval(&f, PlaceP1::Finite(Fe(2))), Eval::Value(f.div(Fe(10), Fe(11)).unwrap()));
    }

    fn split_ratfn(f: &Field, num_roots: &[u32], den_roots: &[u32], c: u32) -> RatFn {
        let n: Vec<Fe> = num_roots.iter().map(|&x| Fe(x)).collect();
        let d: Vec<Fe> = den_roots.iter().map(|&x| Fe(x)).collect();
        RatFn::new(f, Poly::from_roots(f, &n).scale(f, Fe(c)), Poly::from_roots(f, &d)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn valuations_sum_to_zero(
            nr in proptest::collection::vec(0u32..13, 0..6),
            dr in proptest::collection::vec(0u32..13, 0..6),
            c in 1u32..13,
        ) {
            let f = gf13();
            let g = split_ratfn(&f, &nr, &dr, c);
            let total: i64 = PlaceP1::all(&f).into_iter().map(|p| g.valuation(&f, p).unwrap()).sum();
            prop_assert_eq!(total, 0);
            for p in PlaceP1::all(&f) {
                let v = g.valuation(&f, p).unwrap();
                match g.eval(&f, p) {
                    Eval::Pole => prop_assert!(v < 0),
                    Eval::Value(x) => prop_assert_eq!(x.is_zero(), v > 0),
                }
            }
        }
    }
}
