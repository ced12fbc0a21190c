//! Fractional-linear maps `x ↦ (ax + b)/(cx + d)` acting on the projective line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;
use crate::ratfn::{PlaceP1, RatFn};

/// An invertible Möbius map, scaled so the first nonzero entry is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mobius {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

impl Mobius {
    pub fn new(f: &Field, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Self> {
        if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
            return Err(LrcError::ParamViolation("Möbius determinant is zero".into()));
        }
        let lead = [a, b, c, d].into_iter().find(|x| !x.is_zero()).expect("nonzero entry");
        let s = f.inv(lead)?;
        Ok(Mobius { a: f.mul(a, s), b: f.mul(b, s), c: f.mul(c, s), d: f.mul(d, s) })
    }

    pub fn identity() -> Self {
        Mobius { a: Fe::ONE, b: Fe::ZERO, c: Fe::ZERO, d: Fe::ONE }
    }

    /// `x ↦ ζx + h`.
    pub fn affine(f: &Field, zeta: Fe, h: Fe) -> Result<Self> {
        Mobius::new(f, zeta, h, Fe::ZERO, Fe::ONE)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mobius::identity()
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    /// Matrix product: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, f: &Field, o: &Mobius) -> Mobius {
        let m = |x: Fe, y: Fe, z: Fe, w: Fe| f.add(f.mul(x, y), f.mul(z, w));
        Mobius::new(
            f,
            m(self.a, o.a, self.b, o.c),
            m(self.a, o.b, self.b, o.d),
            m(self.c, o.a, self.d, o.c),
            m(self.c, o.b, self.d, o.d),
        )
        .expect("product of invertible maps")
    }

    pub fn inverse(&self, f: &Field) -> Mobius {
        Mobius::new(f, self.d, f.neg(self.b), f.neg(self.c), self.a).expect("invertible")
    }

    pub fn act(&self, f: &Field, p: PlaceP1) -> PlaceP1 {
        match p {
            PlaceP1::Infinity => {
                if self.c.is_zero() {
                    PlaceP1::Infinity
                } else {
                    PlaceP1::Finite(f.div(self.a, self.c).expect("nonzero"))
                }
            }
            PlaceP1::Finite(x) => {
                let num = f.add(f.mul(self.a, x), self.b);
                let den = f.add(f.mul(self.c, x), self.d);
                if den.is_zero() {
                    PlaceP1::Infinity
                } else {
                    PlaceP1::Finite(f.div(num, den).expect("nonzero"))
                }
            }
        }
    }

    /// Least `n ≥ 1` with `self^n` the identity.
    pub fn order(&self, f: &Field) -> u64 {
        let mut cur = *self;
        let mut n = 1;
        while !cur.is_identity() {
            cur = cur.compose(f, self);
            n += 1;
        }
        n
    }

    pub fn pow(&self, f: &Field, n: u64) -> Mobius {
        (0..n).fold(Mobius::identity(), |acc, _| acc.compose(f, self))
    }

    /// The map as a rational function of `x`.
    pub fn as_ratfn(&self, f: &Field) -> RatFn {
        RatFn::new(
            f,
            Poly::new(vec![self.b, self.a]),
            Poly::new(vec![self.d, self.c]),
        )
        .expect("nonzero denominator")
    }

    /// `g ∘ self`, in reduced form.
    pub fn pullback(&self, f: &Field, g: &RatFn) -> RatFn {
        g.compose(f, &self.as_ratfn(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_zero_and_infinity() {
        let f = Field::from_order(7).unwrap();
        let s = Mobius::new(&f, Fe(0), f.neg(Fe(1)), Fe(1), Fe(0)).unwrap();
        assert_eq!(s.act(&f, PlaceP1::Finite(Fe(0))), PlaceP1::Infinity);
        assert_eq!(s.act(&f, PlaceP1::Infinity), PlaceP1::Finite(Fe(0)));
        assert_eq!(s.order(&f), 2);
        assert_eq!(Mobius::identity().order(&f), 1);
        for p in PlaceP1::all(&f) {
            assert_eq!(Mobius::identity().act(&f, p), p);
        }
    }

    #[test]
    fn pullback_examples() {
        let f = Field::from_order(13).unwrap();
        let cube = RatFn::from_poly(Poly::monomial(Fe::ONE, 3));
        let s = Mobius::affine(&f, Fe(3), Fe(0)).unwrap();
        assert_eq!(s.pullback(&f, &cube), cube);
        let t = Mobius::affine(&f, Fe(1), Fe(1)).unwrap();
        assert_eq!(t.pullback(&f, &RatFn::x()), RatFn::from_poly(Poly::from_u32s(&[1, 1])));
        assert_eq!(Mobius::identity().pullback(&f, &cube), cube);
    }

    #[test]
    fn pullback_agrees_pointwise() {
        let f = Field::from_order(7).unwrap();
        let g = RatFn::new(&f, Poly::from_u32s(&[3, 0, 1]), Poly::from_u32s(&[1, 2])).unwrap();
        let s = Mobius::new(&f, Fe(2), Fe(1), Fe(1), Fe(3)).unwrap();
        let h = s.pullback(&f, &g);
        for p in PlaceP1::all(&f) {
            assert_eq!(h.eval(&f, p), g.eval(&f, s.act(&f, p)));
        }
    }

    #[test]
    fn action_is_a_homomorphism_exhaustively() {
        for q in [5u64, 7] {
            let f = Field::from_order(q).unwrap();
            let mut maps = Vec::new();
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    for c in 0..q as u32 {
                        for d in 0..q as u32 {
                            if let Ok(m) = Mobius::new(&f, Fe(a), Fe(b), Fe(c), Fe(d)) {
                                maps.push(m);
                            }
                        }
                    }
                }
            }
            maps.sort();
            maps.dedup();
            assert_eq!(maps.len() as u64, (q * q - 1) * (q * q - q) / (q - 1));
            let places = PlaceP1::all(&f);
            for s in maps.iter().step_by(3) {
                for t in maps.iter().step_by(5) {
                    let st = s.compose(&f, t);
                    for &p in &places {
                        assert_eq!(st.act(&f, p), s.act(&f, t.act(&f, p)));
                    }
                }
            }
        }
    }
}
