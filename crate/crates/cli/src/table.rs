//! Parameter tables: formula arithmetic only, no construction.

use std::fmt::Write as _;

use lrc_core::family::Family;
use lrc_core::field::prime_power;
use lrc_core::rational::params::{additive_exponent, cyclic_ok, dihedral_ok, multiplicative_ok, semidirect_split};

/// `c0 + c1·t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lin {
    pub c0: i64,
    pub c1: i64,
}

impl Lin {
    pub fn at(self, t: i64) -> i64 {
        self.c0 + self.c1 * t
    }

    fn shift(self, by: i64) -> Lin {
        Lin { c0: self.c0 + self.c1 * by, c1: self.c1 }
    }

    /// `3t-2`, `2t+1`, `4t`.
    pub fn t_first(self) -> String {
        let mut s = term(self.c1);
        if self.c0 > 0 {
            let _ = write!(s, "+{}", self.c0);
        } else if self.c0 < 0 {
            let _ = write!(s, "-{}", -self.c0);
        }
        s
    }

    /// `59-4t`.
    pub fn const_first(self) -> String {
        if self.c0 == 0 {
            return self.t_first();
        }
        let mut s = self.c0.to_string();
        if self.c1 > 0 {
            let _ = write!(s, "+{}", term(self.c1));
        } else if self.c1 < 0 {
            let _ = write!(s, "-{}", term(-self.c1));
        }
        s
    }
}

fn term(c: i64) -> String {
    match c {
        0 => String::new(),
        1 => "t".into(),
        -1 => "-t".into(),
        _ => format!("{c}t"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub family: Family,
    pub r: usize,
    pub delta: usize,
    pub s: usize,
    pub n: i64,
    pub k: Lin,
    /// Singleton-type bound as a function of `t`.
    pub bound: Lin,
    pub t_max: usize,
    pub claim: &'static str,
    /// Values of `t` for which the claim meets the bound.
    pub optimal_for: &'static str,
    pub condition: String,
}

impl TableRow {
    pub fn code(&self) -> String {
        format!("[{},{},{}]", self.n, self.k.t_first(), self.bound.const_first())
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// `n − k − (⌈k/r⌉ − 1)(δ − 1) + 1` for `k = r·t + b`.
fn bound_lin(n: i64, r: i64, b: i64, delta: i64) -> Lin {
    let ceil_const = ceil_div(b, r);
    Lin { c0: n - b - (ceil_const - 1) * (delta - 1) + 1, c1: -r - (delta - 1) }
}

/// The subgroup conditions that hold for `r`.
pub fn conditions(q: u64, r: usize) -> Vec<String> {
    let mut out = Vec::new();
    if multiplicative_ok(q, r) {
        out.push("(r+1)|(q-1)".to_string());
    }
    if let Some(v) = additive_exponent(q, r) {
        out.push(format!("r+1=p^{v}"));
    }
    if let Some((u, v)) = semidirect_split(q, r) {
        out.push(format!("r+1={u}*p^{v}"));
    }
    if cyclic_ok(q, r) {
        out.push("(r+1)|(q+1)".to_string());
    }
    if dihedral_ok(q, r) {
        out.push("dihedral".to_string());
    }
    out
}

fn affine_s(q: u64, r: usize) -> i64 {
    (q as i64 + 1 - 2 * r as i64).div_euclid(r as i64 + 1)
}

/// `r` with some subgroup of order `r + 1` and at least one free block.
pub fn extend_one_r_list(q: u64) -> Vec<usize> {
    (1..=q as usize).filter(|&r| !conditions(q, r).is_empty() && affine_s(q, r) >= 1).collect()
}

/// Largest point count allowed by the Hasse bound.
pub fn max_curve_points(q: u64) -> u64 {
    let mut root = (q as f64).sqrt() as u64;
    while (root + 1) * (root + 1) <= 4 * q {
        root += 1;
    }
    while root * root > 4 * q {
        root -= 1;
    }
    q + 1 + root
}

fn elliptic_r_list(p: u32) -> &'static [usize] {
    match p {
        2 => &[2, 3, 5, 7, 11, 23],
        3 => &[2, 3, 5, 11],
        _ => &[2, 3, 5],
    }
}

/// Free orbits on a curve with `n_pts` points: three fixed points for the
/// order-3 twist, `r + 3` otherwise.
fn elliptic_s(n_pts: i64, r: usize) -> i64 {
    let r = r as i64;
    if r == 2 {
        (n_pts - 3) / (r + 1)
    } else {
        (n_pts - 3 - r).div_euclid(r + 1)
    }
}

pub fn table_rows(q: u64) -> Vec<TableRow> {
    let Some((p, _)) = prime_power(q) else { return Vec::new() };
    let mut rows = Vec::new();
    let r_list = extend_one_r_list(q);
    let mut push = |family: Family, r: usize, s: i64, n: i64, kb: i64, t_shift: i64, claim, optimal_for, condition: String| {
        if s < 2 {
            return;
        }
        let delta = family.delta();
        let (ri, d) = (r as i64, delta as i64);
        let k = Lin { c0: kb, c1: ri };
        let bound = bound_lin(n, ri, kb, d);
        let mut t_max = s;
        let (k, bound) = if t_shift != 0 {
            t_max -= t_shift;
            (k.shift(t_shift), bound.shift(t_shift))
        } else {
            (k, bound)
        };
        rows.push(TableRow {
            family,
            r,
            delta,
            s: s as usize,
            n,
            k,
            bound,
            t_max: t_max as usize,
            claim,
            optimal_for,
            condition,
        });
    };
    let cond = |r: usize| conditions(q, r).join(",");
    for &r in &r_list {
        let s = affine_s(q, r);
        let ri = r as i64;
        push(Family::Base, r, s, s * (ri + 1), 0, 0, "n-rt-t+2", "all t", cond(r));
        push(Family::ExtendOne, r, s, s * (ri + 1) + 1, 0, 0, "n-rt-t+2", "all t", cond(r));
        if let Some(v) = additive_exponent(q, r) {
            let sa = (q / (r as u64 + 1)) as i64;
            if sa > s {
                push(Family::ExtendOne, r, sa, sa * (ri + 1) + 1, 0, 0, "n-rt-t+2", "all t", format!("r+1=p^{v},translations"));
            }
        }
    }
    for r in 1..=q as usize {
        if cyclic_ok(q, r) {
            let s = (q as i64 + 1) / (r as i64 + 1);
            push(Family::ModExtendOne, r, s, s * (r as i64 + 1) + 1, 0, 0, "n-rt-t+2", "all t", cond(r));
        }
    }
    for &r in r_list.iter().filter(|&&r| r >= 2) {
        let s = affine_s(q, r);
        push(Family::ExtendAll, r, s, s * (r as i64 + 2), 0, 0, "n-t(r+1)-s+3", "t=s", cond(r));
    }
    let mut mod_all: Vec<usize> = r_list.iter().copied().filter(|&r| r >= 2).collect();
    mod_all.extend((2..=q as usize).filter(|&r| cyclic_ok(q, r)));
    mod_all.sort_unstable();
    mod_all.dedup();
    for r in mod_all {
        let s = (q as i64 + 1) / (r as i64 + 1);
        let c = if cyclic_ok(q, r) { cond(r) } else { "(r+1)∤(q+1)".to_string() };
        push(Family::ModExtendAll, r, s, (s + 1) * (r as i64 + 1), 0, 0, "n-t(r+1)-s+3", "t=s", c);
    }
    for &r in r_list.iter().filter(|&&r| r >= 2) {
        let s = affine_s(q, r);
        push(Family::RlOne, r, s, s * (r as i64 + 1) + 2, 0, 0, ">= n-rt-t+1", "case-4 predicate", cond(r));
        push(Family::RlAll, r, s, s * (r as i64 + 3), 0, 0, "<= n-k-2(k/r-1)+1-s", "never", cond(r));
    }
    let n_pts = max_curve_points(q) as i64;
    for &r in elliptic_r_list(p) {
        let s = elliptic_s(n_pts, r);
        let ri = r as i64;
        let kb = 1 - ri;
        // k = 2t − 1 is listed as 2t + 1 with t counted from 1
        let shift = if r == 2 { 1 } else { 0 };
        let c = format!("N={n_pts}");
        push(Family::EBase, r, s, s * (ri + 1), kb, shift, "n-(t-1)(r+1)", "all t", c.clone());
        push(Family::EExtendOne, r, s, s * (ri + 1) + 1, kb, shift, "n-(t-1)(r+1)", "all t", c.clone());
        push(Family::EExtendAll, r, s, s * (ri + 2), kb, shift, "n-(t-1)(r+2)", "t=s", c);
    }
    rows
}

pub fn render_table(q: u64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# parameter table for q = {q}");
    let _ = writeln!(out, "# family        r  delta   s  code                t-range    claim                     optimal   condition");
    for row in table_rows(q) {
        let _ = writeln!(
            out,
            "{:<14} {:>3} {:>6} {:>3}  {:<18}  t=1..{:<5} {:<25} {:<9} {}",
            row.family.name(),
            row.r,
            row.delta,
            row.s,
            row.code(),
            row.t_max,
            row.claim,
            row.optimal_for,
            row.condition
        );
    }
    out
}

pub fn render_params(q: u64) -> String {
    let mut out = String::new();
    if prime_power(q).is_none() {
        let _ = writeln!(out, "q = {q} is not a prime power");
        return out;
    }
    let _ = writeln!(out, "# admissible r for q = {q}");
    let _ = writeln!(out, "# r  conditions                           max_s(affine)  max_s(modified)  families");
    for r in 1..=q as usize {
        let conds = conditions(q, r);
        if conds.is_empty() {
            continue;
        }
        let affine = lrc_core::rational::params::affine_condition(q, r).is_some();
        let sa = affine_s(q, r);
        let additive_s = additive_exponent(q, r).map(|_| (q / (r as u64 + 1)) as i64).unwrap_or(0);
        let sa = sa.max(additive_s);
        let sm = if cyclic_ok(q, r) { (q as i64 + 1) / (r as i64 + 1) } else { 0 };
        let mut fams: Vec<&str> = Vec::new();
        if affine && sa >= 2 {
            fams.extend(["Base", "ExtendOne"]);
            if r >= 2 {
                fams.extend(["ExtendAll", "RLOne", "RLAll"]);
            }
        }
        if sm >= 2 {
            fams.push("ModExtendOne");
            if r >= 2 {
                fams.push("ModExtendAll");
            }
        }
        let fam = if fams.is_empty() { "-".to_string() } else { fams.join(",") };
        let show = |s: i64, ok: bool| if ok { s.to_string() } else { "-".to_string() };
        let _ = writeln!(
            out,
            "{:>3}  {:<36} {:>13}  {:>15}  {}",
            r,
            conds.join(" "),
            show(sa, sa >= 1),
            show(sm, sm >= 1),
            fam
        );
    }
    let list: Vec<String> = extend_one_r_list(q).iter().map(|r| r.to_string()).collect();
    let _ = writeln!(out, "extend-one r list: {{{}}}", list.join(","));
    let modified: Vec<String> = (1..=q as usize).filter(|&r| cyclic_ok(q, r)).map(|r| r.to_string()).collect();
    let _ = writeln!(out, "modified r list: {{{}}}", modified.join(","));
    let multiplicative: Vec<String> = (1..=q as usize).filter(|&r| multiplicative_ok(q, r)).map(|r| r.to_string()).collect();
    let _ = writeln!(out, "multiplicative r list: {{{}}}", multiplicative.join(","));
    out
}
