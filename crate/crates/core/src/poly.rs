//! Univariate polynomials over a [`Field`], coefficients low-to-high.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Fe::ONE)
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Self {
        Poly::new(vec![c])
    }

    /// `X - a`.
    pub fn linear_root(f: &Field, a: Fe) -> Self {
        Poly { coeffs: vec![f.neg(a), Fe::ONE] }
    }

    /// `c * X^n`.
    pub fn monomial(c: Fe, n: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_u32s(v: &[u32]) -> Self {
        Poly::new(v.iter().map(|&c| Fe(c)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, f: &Field, n: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Quotient and remainder.
    pub fn divrem(&self, f: &Field, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(LrcError::DivisionByZero)?;
        let inv_lead = f.inv(d.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], inv_lead);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(f, inv)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, f: &Field, a: Fe) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(f, a);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.divrem(f, &lin).expect("nonzero divisor");
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    /// Composition `self(g)`.
    pub fn compose(&self, f: &Field, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(f, g).add(f, &Poly::constant(c)))
    }

    /// Distinct roots in the field, ascending by encoding.
    pub fn roots(&self, f: &Field) -> Vec<Fe> {
        f.elements().filter(|&a| self.eval(f, a).is_zero()).collect()
    }

    /// Product of `(X - a)` over the given roots.
    pub fn from_roots(f: &Field, roots: &[Fe]) -> Poly {
        roots
            .iter()
            .fold(Poly::one(), |acc, &a| acc.mul(f, &Poly::linear_root(f, a)))
    }
}

/// The unique polynomial of degree below `points.len()` through all points.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 if c.0 == 1 => "x".into(),
                1 => format!("{c}x"),
                _ if c.0 == 1 => format!("x^{i}"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn lagrange_interpolate(f: &Field, points: &[(Fe, Fe)]) -> Result<Poly> {
    if points.is_empty() {
        return Err(LrcError::ParamViolation("interpolation needs at least one point".into()));
    }
    for i in 0..points.len() {
        for j in 0..i {
            if points[i].0 == points[j].0 {
                return Err(LrcError::DuplicateAbscissa);
            }
        }
    }
    let mut out = Poly::zero();
    for (i, &(xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Fe::ONE;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul(f, &Poly::linear_root(f, xj));
                denom = f.mul(denom, f.sub(xi, xj));
            }
        }
        out = out.add(f, &basis.scale(f, f.div(yi, denom)?));
    }
    Ok(out)
}
