//! Weierstrass curves and their rational points.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};

/// A rational point. Affine points order by `(x, y)` encodings; `O` is last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pt {
    Affine(Fe, Fe),
    O,
}

impl Pt {
    pub fn x(self) -> Option<Fe> {
        match self {
            Pt::Affine(x, _) => Some(x),
            Pt::O => None,
        }
    }

    pub fn y(self) -> Option<Fe> {
        match self {
            Pt::Affine(_, y) => Some(y),
            Pt::O => None,
        }
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pt::Affine(x, y) => write!(f, "({x},{y})"),
            Pt::O => write!(f, "O"),
        }
    }
}

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub field: Field,
    pub a1: Fe,
    pub a2: Fe,
    pub a3: Fe,
    pub a4: Fe,
    pub a6: Fe,
}

impl Curve {
    pub fn new(field: Field, [a1, a2, a3, a4, a6]: [Fe; 5]) -> Result<Self> {
        let q = field.q();
        if [a1, a2, a3, a4, a6].iter().any(|c| c.0 >= q) {
            return Err(LrcError::Parse("curve coefficient out of range".into()));
        }
        let c = Curve { field, a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(LrcError::ParamViolation("singular curve (zero discriminant)".into()));
        }
        Ok(c)
    }

    /// `y² = x³ + a4·x + a6`.
    pub fn short(field: Field, a4: Fe, a6: Fe) -> Result<Self> {
        Curve::new(field, [Fe::ZERO, Fe::ZERO, Fe::ZERO, a4, a6])
    }

    pub fn coefficients(&self) -> [Fe; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn discriminant(&self) -> Fe {
        let f = &self.field;
        let n = |k: i64| f.from_int(k);
        let m = |a: Fe, b: Fe| f.mul(a, b);
        let (a1, a2, a3, a4, a6) = (self.a1, self.a2, self.a3, self.a4, self.a6);
        let b2 = f.add(m(a1, a1), m(n(4), a2));
        let b4 = f.add(m(n(2), a4), m(a1, a3));
        let b6 = f.add(m(a3, a3), m(n(4), a6));
        let b8 = f.sum([
            m(m(a1, a1), a6),
            m(m(n(4), a2), a6),
            f.neg(m(m(a1, a3), a4)),
            m(m(a2, a3), a3),
            f.neg(m(a4, a4)),
        ]);
        f.sum([
            f.neg(m(m(b2, b2), b8)),
            f.neg(m(n(8), m(b4, m(b4, b4)))),
            f.neg(m(n(27), m(b6, b6))),
            m(n(9), m(b2, m(b4, b6))),
        ])
    }

    /// `a1·x + a3`.
    pub fn h_at(&self, x: Fe) -> Fe {
        self.field.add(self.field.mul(self.a1, x), self.a3)
    }

    /// `x³ + a2·x² + a4·x + a6`.
    pub fn g_at(&self, x: Fe) -> Fe {
        let f = &self.field;
        let x2 = f.mul(x, x);
        f.sum([f.mul(x2, x), f.mul(self.a2, x2), f.mul(self.a4, x), self.a6])
    }

    pub fn contains(&self, p: Pt) -> bool {
        match p {
            Pt::O => true,
            Pt::Affine(x, y) => {
                let f = &self.field;
                f.add(f.mul(y, y), f.mul(self.h_at(x), y)) == self.g_at(x)
            }
        }
    }

    /// All rational points: affine ones by `(x, y)` encoding, then `O`.
    pub fn enumerate_points(&self) -> Vec<Pt> {
        let f = &self.field;
        let mut pts = Vec::new();
        for x in f.elements() {
            for y in f.elements() {
                if self.contains(Pt::Affine(x, y)) {
                    pts.push(Pt::Affine(x, y));
                }
            }
        }
        pts.push(Pt::O);
        pts
    }

    pub fn neg(&self, p: Pt) -> Pt {
        match p {
            Pt::O => Pt::O,
            Pt::Affine(x, y) => {
                let f = &self.field;
                Pt::Affine(x, f.neg(f.add(y, self.h_at(x))))
            }
        }
    }

    pub fn add(&self, p: Pt, q: Pt) -> Pt {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Pt::O, _) => return q,
            (_, Pt::O) => return p,
            (Pt::Affine(x1, y1), Pt::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        if x1 == x2 && f.add(f.add(y1, y2), self.h_at(x2)).is_zero() {
            return Pt::O;
        }
        let (lambda, nu) = if x1 != x2 {
            let dx = f.sub(x2, x1);
            let lambda = f.div(f.sub(y2, y1), dx).expect("dx ≠ 0");
            let nu = f.div(f.sub(f.mul(y1, x2), f.mul(y2, x1)), dx).expect("dx ≠ 0");
            (lambda, nu)
        } else {
            let den = f.add(f.add(y1, y1), self.h_at(x1));
            let three = f.from_int(3);
            let two = f.from_int(2);
            let x1sq = f.mul(x1, x1);
            let num_l = f.sum([f.mul(three, x1sq), f.mul(f.mul(two, self.a2), x1), self.a4, f.neg(f.mul(self.a1, y1))]);
            let num_n = f.sum([
                f.neg(f.mul(x1sq, x1)),
                f.mul(self.a4, x1),
                f.mul(two, self.a6),
                f.neg(f.mul(self.a3, y1)),
            ]);
            (f.div(num_l, den).expect("den ≠ 0"), f.div(num_n, den).expect("den ≠ 0"))
        };
        let x3 = f.sum([f.mul(lambda, lambda), f.mul(self.a1, lambda), f.neg(self.a2), f.neg(x1), f.neg(x2)]);
        let y3 = f.sum([f.neg(f.mul(f.add(lambda, self.a1), x3)), f.neg(nu), f.neg(self.a3)]);
        Pt::Affine(x3, y3)
    }

    pub fn sub(&self, p: Pt, q: Pt) -> Pt {
        self.add(p, self.neg(q))
    }

    /// `n·P` by double-and-add; negative `n` negates.
    pub fn smul(&self, n: i64, p: Pt) -> Pt {
        let mut base = if n < 0 { self.neg(p) } else { p };
        let mut k = n.unsigned_abs();
        let mut acc = Pt::O;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn point_order(&self, p: Pt) -> u64 {
        let mut acc = p;
        let mut n = 1;
        while acc != Pt::O {
            acc = self.add(acc, p);
            n += 1;
        }
        n
    }

    /// `2y + a1·x + a3 = 0`, i.e. `P = −P`.
    pub fn is_two_torsion(&self, p: Pt) -> bool {
        p == self.neg(p)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 + {}xy + {}y = x^3 + {}x^2 + {}x + {} over GF({})",
            self.a1,
            self.a3,
            self.a2,
            self.a4,
            self.a6,
            self.field.q()
        )
    }
}
