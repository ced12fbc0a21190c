//! Parameter admissibility for the rational families.

use serde::{Deserialize, Serialize};

use crate::error::{LrcError, Result};
use crate::family::Family;
use crate::field::{gcd, prime_power};

/// Which automorphism subgroup realises the repair blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupCase {
    /// `x ↦ ζx`, `ζ` of order `r+1`; needs `(r+1) | (q−1)`.
    Multiplicative,
    /// `x ↦ x + h` over an additive subgroup of size `r+1 = p^v`.
    Additive,
    /// `x ↦ ζx + h` with `r+1 = u·p^v`.
    Semidirect,
    /// Powers of a Möbius map of order `q+1`; needs `(r+1) | (q+1)`.
    CyclicQPlus1,
}

impl SubgroupCase {
    pub fn name(self) -> &'static str {
        match self {
            SubgroupCase::Multiplicative => "multiplicative",
            SubgroupCase::Additive => "additive",
            SubgroupCase::Semidirect => "semidirect",
            SubgroupCase::CyclicQPlus1 => "cyclic_q_plus_1",
        }
    }
}

fn split_q(q: u64) -> Result<(u64, u32)> {
    prime_power(q)
        .map(|(p, m)| (p as u64, m))
        .ok_or_else(|| LrcError::InvalidField(format!("{q} is not a prime power")))
}

/// `r + 1 = p^v` with `1 ≤ v ≤ m`; returns `v`.
pub fn additive_exponent(q: u64, r: usize) -> Option<u32> {
    let (p, m) = split_q(q).ok()?;
    let mut pv = 1u64;
    for v in 1..=m {
        pv *= p;
        if pv == r as u64 + 1 {
            return Some(v);
        }
    }
    None
}

pub fn multiplicative_ok(q: u64, r: usize) -> bool {
    r >= 1 && (q - 1) % (r as u64 + 1) == 0
}

/// `r + 1 = u·p^v` with `u > 1`, `1 ≤ v ≤ m` and `u | gcd(q−1, p^v−1)`;
/// returns `(u, v)`.
pub fn semidirect_split(q: u64, r: usize) -> Option<(u64, u32)> {
    let (p, m) = split_q(q).ok()?;
    let order = r as u64 + 1;
    let mut pv = 1u64;
    for v in 1..=m {
        pv *= p;
        if order % pv != 0 {
            break;
        }
        let u = order / pv;
        if u > 1 && gcd(q - 1, pv - 1) % u == 0 {
            return Some((u, v));
        }
    }
    None
}

pub fn cyclic_ok(q: u64, r: usize) -> bool {
    r >= 1 && (q + 1) % (r as u64 + 1) == 0
}

/// Dihedral subgroups of the projective linear group: `r + 1 = 2u`, `u > 1`,
/// `u | q−1` or `u | q+1`. Listed only; no construction uses them.
pub fn dihedral_ok(q: u64, r: usize) -> bool {
    let order = r as u64 + 1;
    if order % 2 != 0 || order < 4 {
        return false;
    }
    let u = order / 2;
    (q - 1) % u == 0 || (q + 1) % u == 0
}

/// One of the three conditions under which the affine constructions apply.
pub fn affine_condition(q: u64, r: usize) -> Option<SubgroupCase> {
    if multiplicative_ok(q, r) {
        Some(SubgroupCase::Multiplicative)
    } else if additive_exponent(q, r).is_some() {
        Some(SubgroupCase::Additive)
    } else if semidirect_split(q, r).is_some() {
        Some(SubgroupCase::Semidirect)
    } else {
        None
    }
}

pub fn case_condition_holds(case: SubgroupCase, q: u64, r: usize) -> bool {
    match case {
        SubgroupCase::Multiplicative => multiplicative_ok(q, r),
        SubgroupCase::Additive => additive_exponent(q, r).is_some(),
        SubgroupCase::Semidirect => semidirect_split(q, r).is_some(),
        SubgroupCase::CyclicQPlus1 => cyclic_ok(q, r),
    }
}

/// Largest admissible `s` for the family, as a signed value (may be < 2).
pub fn max_s(family: Family, q: u64, r: usize) -> i64 {
    let (q, r) = (q as i64, r as i64);
    if family.is_modified() {
        (q + 1) / (r + 1)
    } else {
        (q + 1 - 2 * r).div_euclid(r + 1)
    }
}

pub fn validate_params(family: Family, q: u64, r: usize, s: usize, t: usize) -> Result<()> {
    split_q(q)?;
    if family.is_elliptic() {
        return Err(LrcError::ParamViolation(format!("{family} is not a rational family")));
    }
    if r < 1 {
        return Err(LrcError::ParamViolation("r ≥ 1".into()));
    }
    if matches!(family, Family::RlOne | Family::RlAll | Family::ModExtendAll) && r < 2 {
        return Err(LrcError::ParamViolation("r ≥ 2 for this family".into()));
    }
    if t < 1 || t > s {
        return Err(LrcError::ParamViolation(format!("1 ≤ t ≤ s (t = {t}, s = {s})")));
    }
    if s < 2 {
        return Err(LrcError::ParamViolation(format!("s ≥ 2 (s = {s})")));
    }
    let smax = max_s(family, q, r);
    if family.is_modified() {
        if !cyclic_ok(q, r) {
            return Err(LrcError::ParamViolation(format!("(r+1) | (q+1) fails: {} ∤ {}", r + 1, q + 1)));
        }
        if s as i64 > smax {
            return Err(LrcError::ParamViolation(format!("s ≤ (q+1)/(r+1) = {smax} fails (s = {s})")));
        }
    } else {
        if affine_condition(q, r).is_none() {
            return Err(LrcError::ParamViolation(format!(
                "r = {r} satisfies none of r+1 = p^v, (r+1) | (q−1), r+1 = u·p^v"
            )));
        }
        // translations fix only Infinity, so all q affine points split into blocks
        let additive_max = additive_exponent(q, r).map(|_| (q / (r as u64 + 1)) as i64);
        if s as i64 > smax.max(additive_max.unwrap_or(0)) {
            return Err(LrcError::ParamViolation(format!("s ≤ ⌊(q+1−2r)/(r+1)⌋ = {smax} fails (s = {s})")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extend_one_examples() {
        let err = validate_params(Family::ExtendOne, 13, 2, 4, 2).unwrap_err();
        assert!(err.to_string().contains("s ≤ ⌊(q+1−2r)/(r+1)⌋"));
        assert!(validate_params(Family::ExtendOne, 13, 2, 3, 2).is_ok());
        assert!(validate_params(Family::ModExtendOne, 7, 3, 2, 2).is_ok());
        assert!(validate_params(Family::ModExtendOne, 7, 2, 2, 2).is_err());
        assert!(validate_params(Family::Base, 13, 2, 3, 4).is_err());
        assert!(validate_params(Family::ExtendOne, 64, 3, 16, 2).is_ok());
        assert!(validate_params(Family::ExtendOne, 64, 3, 17, 2).is_err());
    }

    #[test]
    fn conditions() {
        assert_eq!(additive_exponent(9, 2), Some(1));
        assert_eq!(additive_exponent(64, 15), Some(4));
        assert!(multiplicative_ok(13, 2));
        assert_eq!(semidirect_split(64, 11), Some((3, 2)));
        assert_eq!(semidirect_split(13, 2), None);
        assert!(cyclic_ok(7, 3));
        assert!(dihedral_ok(64, 5));
        assert!(!dihedral_ok(64, 21));
    }
}
