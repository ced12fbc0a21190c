//! Automorphism subgroups of the rational function field and their invariants.

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};
use crate::mobius::Mobius;
use crate::poly::Poly;
use crate::rational::params::{additive_exponent, semidirect_split, SubgroupCase};
use crate::ratfn::RatFn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutSubgroup {
    pub case: SubgroupCase,
    /// Identity first.
    pub elements: Vec<Mobius>,
}

impl AutSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Exhaustive closure and inverse check.
    pub fn verify(&self, f: &Field) -> Result<()> {
        if !self.elements.contains(&Mobius::identity()) {
            return Err(LrcError::NoSubgroupFound("identity missing".into()));
        }
        let mut sorted = self.elements.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.elements.len() {
            return Err(LrcError::NoSubgroupFound("repeated element".into()));
        }
        for a in &self.elements {
            if sorted.binary_search(&a.inverse(f)).is_err() {
                return Err(LrcError::NoSubgroupFound(format!("inverse of {a:?} missing")));
            }
            for b in &self.elements {
                if sorted.binary_search(&a.compose(f, b)).is_err() {
                    return Err(LrcError::NoSubgroupFound(format!("{a:?} ∘ {b:?} escapes")));
                }
            }
        }
        Ok(())
    }
}

/// Smallest `(a, b)` such that `X² + aX + b` is irreducible and
/// `x ↦ 1/(−bx − a)` has order exactly `q + 1`.
pub fn irreducible_quadratic(f: &Field) -> (Fe, Fe) {
    let target = f.q() as u64 + 1;
    for a in f.elements() {
        for b in f.elements() {
            let quad = Poly::new(vec![b, a, Fe::ONE]);
            if !quad.roots(f).is_empty() {
                continue;
            }
            let sigma = quadratic_map(f, a, b);
            if sigma.order(f) == target {
                return (a, b);
            }
        }
    }
    unreachable!("a primitive quadratic exists over every finite field")
}

/// `x ↦ 1/(−bx − a)`.
pub fn quadratic_map(f: &Field, a: Fe, b: Fe) -> Mobius {
    Mobius::new(f, Fe::ZERO, Fe::ONE, f.neg(b), f.neg(a)).expect("b ≠ 0 for an irreducible quadratic")
}

fn element_of_order(f: &Field, order: u64) -> Fe {
    f.exp((f.q() as u64 - 1) / order)
}

/// The span of `1, u, …, u^{v−1}`: exactly the encodings below `p^v`.
fn additive_subgroup(f: &Field, v: u32) -> Vec<Fe> {
    (0..f.p().pow(v)).map(Fe).collect()
}

/// Additive subgroup of size `p^v` closed under multiplication by `ζ`.
fn zeta_stable_subgroup(f: &Field, zeta: Fe, v: u32) -> Result<Vec<Fe>> {
    // prime-field span of the powers of ζ, i.e. the subfield F_p(ζ)
    let mut sub = vec![Fe::ZERO];
    let mut pw = Fe::ONE;
    loop {
        if !sub.contains(&pw) {
            sub = span_with(f, &sub, pw);
        }
        pw = f.mul(pw, zeta);
        if pw == Fe::ONE {
            break;
        }
    }
    let target = f.p().pow(v) as usize;
    if target % sub.len() != 0 {
        return Err(LrcError::NoSubgroupFound(format!(
            "F_p(ζ) of size {} does not divide p^v = {target}",
            sub.len()
        )));
    }
    let mut h = vec![Fe::ZERO];
    for x in f.elements() {
        if h.len() >= target {
            break;
        }
        if h.contains(&x) {
            continue;
        }
        // add the line K·x
        let line: Vec<Fe> = sub.iter().map(|&c| f.mul(c, x)).collect();
        let mut next = Vec::with_capacity(h.len() * line.len());
        for &a in &h {
            for &b in &line {
                next.push(f.add(a, b));
            }
        }
        next.sort();
        next.dedup();
        h = next;
    }
    if h.len() != target {
        return Err(LrcError::NoSubgroupFound(format!("closure produced {} elements, wanted {target}", h.len())));
    }
    Ok(h)
}

/// Additive closure of `set ∪ {x}` (set must already be an additive group).
fn span_with(f: &Field, set: &[Fe], x: Fe) -> Vec<Fe> {
    let mut out = Vec::new();
    for k in 0..f.p() {
        let kx = f.mul(f.from_int(k as i64), x);
        for &s in set {
            out.push(f.add(s, kx));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn find_subgroup(case: SubgroupCase, f: &Field, r: usize) -> Result<AutSubgroup> {
    let q = f.q() as u64;
    let order = r as u64 + 1;
    let elements = match case {
        SubgroupCase::Multiplicative => {
            if (q - 1) % order != 0 {
                return Err(LrcError::NoSubgroupFound(format!("(r+1) = {order} ∤ q−1 = {}", q - 1)));
            }
            let zeta = element_of_order(f, order);
            (0..order).map(|i| Mobius::affine(f, f.pow(zeta, i), Fe::ZERO)).collect::<Result<Vec<_>>>()?
        }
        SubgroupCase::Additive => {
            let v = additive_exponent(q, r)
                .ok_or_else(|| LrcError::NoSubgroupFound(format!("r+1 = {order} is not a power of p")))?;
            additive_subgroup(f, v)
                .into_iter()
                .map(|h| Mobius::affine(f, Fe::ONE, h))
                .collect::<Result<Vec<_>>>()?
        }
        SubgroupCase::Semidirect => {
            let (u, v) = semidirect_split(q, r)
                .ok_or_else(|| LrcError::NoSubgroupFound(format!("r+1 = {order} has no admissible u·p^v split")))?;
            let zeta = element_of_order(f, u);
            let h = zeta_stable_subgroup(f, zeta, v)?;
            let mut els = Vec::new();
            for i in 0..u {
                for &hh in &h {
                    els.push(Mobius::affine(f, f.pow(zeta, i), hh)?);
                }
            }
            els
        }
        SubgroupCase::CyclicQPlus1 => {
            if (q + 1) % order != 0 {
                return Err(LrcError::NoSubgroupFound(format!("(r+1) = {order} ∤ q+1 = {}", q + 1)));
            }
            let (a, b) = irreducible_quadratic(f);
            let gen = quadratic_map(f, a, b).pow(f, (q + 1) / order);
            (0..order).map(|i| gen.pow(f, i)).collect()
        }
    };
    let g = AutSubgroup { case, elements };
    g.verify(f)?;
    if g.order() as u64 != order {
        return Err(LrcError::NoSubgroupFound(format!("order {} ≠ r+1 = {order}", g.order())));
    }
    Ok(g)
}

/// First nonconstant symmetric function of `{σ(x)}` of degree `|G|`:
/// product, then sum, then `e_2, …, e_{|G|−1}`.
pub fn invariant_function(f: &Field, g: &AutSubgroup) -> Result<RatFn> {
    let images: Vec<RatFn> = g.elements.iter().map(|s| s.as_ratfn(f)).collect();
    let n = images.len();
    // e[j] = j-th elementary symmetric function
    let mut e = vec![RatFn::zero(); n + 1];
    e[0] = RatFn::one();
    for img in &images {
        for j in (1..=n).rev() {
            let term = e[j - 1].mul(f, img);
            e[j] = e[j].add(f, &term);
        }
    }
    let order: Vec<usize> = std::iter::once(n).chain(std::iter::once(1)).chain(2..n).collect();
    for j in order {
        let w = &e[j];
        if !w.is_constant() && w.degree() == n {
            if g.elements.iter().all(|s| s.pullback(f, w) == *w) {
                return Ok(w.clone());
            }
            return Err(LrcError::Internal("symmetric function is not invariant".into()));
        }
    }
    Err(LrcError::NoInvariantFound(format!("all symmetric functions of a group of order {n} degenerate")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfn::PlaceP1;

    #[test]
    fn multiplicative_gf13() {
        let f = Field::from_order(13).unwrap();
        let g = find_subgroup(SubgroupCase::Multiplicative, &f, 2).unwrap();
        let zs: Vec<PlaceP1> = g.elements.iter().map(|m| m.act(&f, PlaceP1::Finite(Fe::ONE))).collect();
        assert_eq!(zs, [1, 3, 9].map(|v| PlaceP1::Finite(Fe(v))));
        let w = invariant_function(&f, &g).unwrap();
        assert_eq!(w, RatFn::from_poly(Poly::monomial(Fe::ONE, 3)));
    }

    #[test]
    fn additive_gf9() {
        let f = Field::from_order(9).unwrap();
        let g = find_subgroup(SubgroupCase::Additive, &f, 2).unwrap();
        let hs: Vec<PlaceP1> = g.elements.iter().map(|m| m.act(&f, PlaceP1::Finite(Fe::ZERO))).collect();
        assert_eq!(hs, [0, 1, 2].map(|v| PlaceP1::Finite(Fe(v))));
        let w = invariant_function(&f, &g).unwrap();
        // x³ − x
        assert_eq!(w, RatFn::from_poly(Poly::new(vec![Fe(0), f.neg(Fe(1)), Fe(0), Fe(1)])));
    }

    #[test]
    fn cyclic_gf7() {
        let f = Field::from_order(7).unwrap();
        let (a, b) = irreducible_quadratic(&f);
        assert_ne!((a, b), (Fe(0), Fe(1)));
        let sigma = quadratic_map(&f, a, b);
        assert_eq!(sigma.order(&f), 8);
        let mut p = PlaceP1::Finite(Fe(0));
        let mut seen = vec![p];
        for _ in 0..7 {
            p = sigma.act(&f, p);
            seen.push(p);
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
        let g = find_subgroup(SubgroupCase::CyclicQPlus1, &f, 3).unwrap();
        assert_eq!(g.elements[1], sigma.pow(&f, 2));
        let w = invariant_function(&f, &g).unwrap();
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn cyclic_gf13_order() {
        let f = Field::from_order(13).unwrap();
        let (a, b) = irreducible_quadratic(&f);
        assert_eq!(quadratic_map(&f, a, b).order(&f), 14);
    }

    #[test]
    fn semidirect_gf64() {
        let f = Field::from_order(64).unwrap();
        let g = find_subgroup(SubgroupCase::Semidirect, &f, 11).unwrap();
        assert_eq!(g.order(), 12);
        let w = invariant_function(&f, &g).unwrap();
        for s in &g.elements {
            assert_eq!(s.pullback(&f, &w), w);
        }
    }

    #[test]
    fn rejects_inadmissible() {
        let f = Field::from_order(13).unwrap();
        assert!(find_subgroup(SubgroupCase::Multiplicative, &f, 4).is_err());
        assert!(find_subgroup(SubgroupCase::Semidirect, &f, 2).is_err());
    }
}
