//! Exact arithmetic in GF(p^m).
//!
//! Elements are stored by their canonical integer encoding `e = Σ d_i p^i`,
//! where `d_i` are the coordinates in the power basis of the modulus. All
//! arithmetic goes through a [`Field`], which owns log/exp tables built once
//! from the lexicographically smallest primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{LrcError, Result};

/// Largest field order accepted.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

/// A field element in canonical integer encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn encoding(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut m = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

/// Distinct prime factors of `n`.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Description of GF(p^m): characteristic, degree and the defining modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Monic irreducible polynomial over GF(p), low-to-high, length `m + 1`.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// Validates `p`, `m` and the modulus. Without a modulus the smallest
    /// monic irreducible of degree `m` is used.
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(LrcError::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(LrcError::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(LrcError::InvalidField(format!(
                "field order {p}^{m} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        let modulus = match modulus {
            Some(md) => {
                if md.len() != m as usize + 1 || md[m as usize] != 1 {
                    return Err(LrcError::InvalidField(format!(
                        "modulus must be monic of degree {m}"
                    )));
                }
                if md.iter().any(|&c| c >= p) {
                    return Err(LrcError::InvalidField("modulus coefficient out of range".into()));
                }
                if !is_irreducible_mod_p(&md, p) {
                    return Err(LrcError::InvalidField("modulus is reducible".into()));
                }
                md
            }
            None => default_modulus(p, m),
        };
        Ok(FieldSpec { p, m, modulus })
    }

    pub fn from_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| LrcError::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, m, None)
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }
}

fn trim_mod_p(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic `b`, coefficients in GF(p).
fn rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    trim_mod_p(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (lead as u64 * bc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim_mod_p(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if rem_mod_p(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `m`, reading the lower coefficients
/// low-to-high as a base-p integer.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if is_irreducible_mod_p(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

struct Tables {
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    primitive: u32,
}

/// Arithmetic context for one finite field.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    tables: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.spec.p, self.spec.m, self.spec.modulus)
    }
}

/// The binary and unary operations exposed through [`Field::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Inv,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.q();
        let p = spec.p;
        let m = spec.m as usize;
        let to_digits = |e: u32| -> Vec<u32> {
            let mut d = Vec::with_capacity(m);
            let mut x = e;
            for _ in 0..m {
                d.push(x % p);
                x /= p;
            }
            d
        };
        let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = to_digits(a);
            let db = to_digits(b);
            let mut prod = vec![0u32; 2 * m];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let mut r = rem_mod_p(&prod, &spec.modulus, p);
            r.resize(m, 0);
            from_digits(&r)
        };
        let slow_pow = |a: u32, mut n: u64| -> u32 {
            let mut base = a;
            let mut acc = 1;
            while n > 0 {
                if n & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                n >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&l| slow_pow(g, order / l) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..(q - 1) {
            exp.push(cur);
            log[cur as usize] = i;
            cur = slow_mul(cur, primitive);
        }
        let neg: Vec<u32> = (0..q)
            .map(|e| {
                let d: Vec<u32> = to_digits(e).iter().map(|&x| (p - x) % p).collect();
                from_digits(&d)
            })
            .collect();
        let digit_add = |a: u32, b: u32| -> u32 {
            let (da, db) = (to_digits(a), to_digits(b));
            let d: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
            from_digits(&d)
        };
        let add = (m > 1 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b);
                }
            }
            t
        });
        Field {
            spec,
            tables: Arc::new(Tables { q, exp, log, neg, add, primitive }),
        }
    }

    pub fn from_order(q: u64) -> Result<Self> {
        Ok(Self::new(FieldSpec::from_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.tables.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn primitive_element(&self) -> Fe {
        Fe(self.tables.primitive)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q()).map(Fe)
    }

    pub fn element(&self, e: u32) -> Result<Fe> {
        if e < self.q() {
            Ok(Fe(e))
        } else {
            Err(LrcError::InvalidField(format!("{e} is not an element of GF({})", self.q())))
        }
    }

    pub fn digits(&self, x: Fe) -> Vec<u32> {
        let p = self.p();
        let mut e = x.0;
        (0..self.m())
            .map(|_| {
                let d = e % p;
                e /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Fe> {
        if digits.len() != self.m() as usize || digits.iter().any(|&d| d >= self.p()) {
            return Err(LrcError::InvalidField("digit vector out of range".into()));
        }
        Ok(Fe(digits.iter().rev().fold(0, |acc, &d| acc * self.p() + d)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p() as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.spec.m == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.spec.p { s - self.spec.p } else { s });
        }
        if let Some(t) = &self.tables.add {
            return Fe(t[(a.0 * self.tables.q + b.0) as usize]);
        }
        let p = self.spec.p;
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.spec.m {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.tables.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let t = &self.tables;
        let n = t.q - 1;
        let s = t.log[a.0 as usize] + t.log[b.0 as usize];
        Fe(t.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(LrcError::DivisionByZero);
        }
        let t = &self.tables;
        let n = t.q - 1;
        Ok(Fe(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let t = &self.tables;
        let ord = (t.q - 1) as u64;
        Fe(t.exp[((t.log[a.0 as usize] as u64 * (n % ord)) % ord) as usize])
    }

    /// Discrete logarithm to the primitive element, `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (!a.is_zero()).then(|| self.tables.log[a.0 as usize])
    }

    pub fn exp(&self, i: u64) -> Fe {
        Fe(self.tables.exp[(i % (self.q() as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.q() as u64 - 1;
        Some(n / gcd(n, l))
    }

    pub fn apply(&self, op: FieldOp, x: Fe, y: Fe) -> Result<Fe> {
        Ok(match op {
            FieldOp::Add => self.add(x, y),
            FieldOp::Sub => self.sub(x, y),
            FieldOp::Mul => self.mul(x, y),
            FieldOp::Div => self.div(x, y)?,
            FieldOp::Pow(n) => self.pow(x, n),
            FieldOp::Inv => self.inv(x)?,
        })
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
