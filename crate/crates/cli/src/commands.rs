//! Command implementations. Each returns its full stdout text and exit code so
//! runs can be compared byte for byte.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use lrc_core::code::classify::code_bound;
use lrc_core::code::distance::Method;
use lrc_core::code::locality::first_unrepairable_pattern;
use lrc_core::code::{
    classify_code, min_distance_bounded, min_distance_exhaustive, repair, verify_locality, ClaimKind, Classification,
    DistanceReport, EvaluatedCode, LocalityReport,
};
use lrc_core::elliptic::build_elliptic;
use lrc_core::family::Family;
use lrc_core::rational::build_rational;
use lrc_core::{Fe, LrcError, Result};

use crate::formats::{MatrixFile, Plan, PlanFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUBOPTIMAL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const BOUNDED_TRIALS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub exit: i32,
}

impl Output {
    fn invalid(err: &LrcError) -> Self {
        Output { stdout: format!("error: {err}\n"), exit: EXIT_INVALID }
    }
}

/// A constructed code with the checks that passed on the way.
pub struct Built {
    pub matrix: MatrixFile,
    pub checks: Vec<String>,
}

pub fn build_plan(plan: &PlanFile) -> Result<Built> {
    let f = plan.field()?;
    match plan.plan()? {
        Plan::Rational(rp) => {
            let rc = build_rational(&f, &rp)?;
            let mut notes = vec![
                ("plan".to_string(), format!("{} case={} r={} s={} t={}", rp.family, rc.case.name(), rp.r, rp.s, rp.t)),
                ("w".to_string(), rc.w.to_string()),
                ("z".to_string(), rc.z.to_string()),
            ];
            if let Some(zs) = &rc.zero_sum_subset {
                let v = match zs {
                    Some(sub) => sub.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" "),
                    None => "none".to_string(),
                };
                notes.push(("case4_zero_sum".to_string(), v));
            }
            Ok(Built { matrix: MatrixFile { code: rc.code, notes }, checks: rc.checks })
        }
        Plan::Elliptic(ep) => {
            let ec = build_elliptic(&f, &ep)?;
            if let Some(r) = plan.r {
                if r != ec.group.r() {
                    return Err(LrcError::ParamViolation(format!("plan says r = {r}, the subgroup gives r = {}", ec.group.r())));
                }
            }
            let pts = |v: &[lrc_core::elliptic::Pt]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
            let mut notes = vec![
                ("plan".to_string(), format!("{} r={} s={} t={}", ep.family, ec.group.r(), ep.s, ep.t)),
                ("curve".to_string(), ec.curve.to_string()),
                ("pole_block".to_string(), pts(&ec.pole_block)),
                ("z".to_string(), ec.z.to_string()),
            ];
            if let Some(zh) = &ec.zhat {
                notes.push(("zhat".to_string(), zh.to_string()));
            }
            for (i, w) in ec.omegas.iter().enumerate().skip(1) {
                notes.push((format!("omega_{i}"), w.to_string()));
            }
            Ok(Built { matrix: MatrixFile { code: ec.code, notes }, checks: ec.checks })
        }
    }
}

/// Builds the plan; returns the matrix file text (if any) and the log.
pub fn construct(plan_text: &str) -> (Option<String>, Output) {
    let plan = match PlanFile::parse(plan_text) {
        Ok(p) => p,
        Err(e) => return (None, Output::invalid(&e)),
    };
    let built = match build_plan(&plan) {
        Ok(b) => b,
        Err(e) => {
            let mut s = String::new();
            let _ = writeln!(s, "FAIL construction: {e}");
            return (None, Output { stdout: s, exit: EXIT_INVALID });
        }
    };
    let code = &built.matrix.code;
    let mut log = String::new();
    let _ = writeln!(log, "constructed [{}, {}] {} code over GF({})", code.n, code.k, code.claims.family, code.q());
    for c in &built.checks {
        let _ = writeln!(log, "PASS {c}");
    }
    let loc = verify_locality(code);
    for g in &loc.groups {
        let _ = writeln!(
            log,
            "{} group {}: size {}, rank {}, local distance {}",
            if g.ok() { "PASS" } else { "FAIL" },
            g.group,
            g.size,
            g.rank,
            g.local_distance
        );
    }
    let exit = if loc.ok { EXIT_OK } else { EXIT_SUBOPTIMAL };
    (Some(built.matrix.to_text()), Output { stdout: log, exit })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Bounded,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    q: u32,
    n: usize,
    k: usize,
    rank: usize,
    family: &'a str,
    claimed: String,
    claim_status: &'a str,
    bound: i64,
    locality: &'a LocalityReport,
    unrepairable: Option<(usize, Vec<usize>)>,
    distance: &'a DistanceReport,
    classification: &'a Classification,
    notes: Vec<(&'a str, &'a str)>,
}

/// Does the measured distance agree with the family claim?
pub fn claim_status(code: &EvaluatedCode, report: &DistanceReport) -> &'static str {
    let cl = &code.claims;
    match (report.method, report.d_exact) {
        (Method::Exhaustive, Some(d)) => {
            let d = d as i64;
            let holds = match cl.kind {
                ClaimKind::Exact => d == cl.design_d,
                ClaimKind::AtLeast => d >= cl.design_d,
                ClaimKind::AtMost => d <= cl.design_d,
            };
            if holds {
                "holds"
            } else {
                "refuted"
            }
        }
        _ => {
            if report.claim_refuted || (cl.kind == ClaimKind::Exact && (report.upper as i64) < cl.design_d) {
                "refuted"
            } else {
                "unresolved"
            }
        }
    }
}

pub fn distance(code: &EvaluatedCode, mode: Mode, budget: u128, seed: u64) -> Result<DistanceReport> {
    match mode {
        Mode::Bounded => min_distance_bounded(code, BOUNDED_TRIALS, seed),
        Mode::Exhaustive => match min_distance_exhaustive(code, budget) {
            Err(LrcError::BudgetExceeded { .. }) => min_distance_bounded(code, BOUNDED_TRIALS, seed),
            other => other,
        },
    }
}

pub fn verify(matrix_text: &str, mode: Mode, budget: u128, seed: u64) -> Output {
    let mf = match MatrixFile::parse(matrix_text) {
        Ok(m) => m,
        Err(e) => return Output::invalid(&e),
    };
    let code = &mf.code;
    let run = || -> Result<Output> {
        let loc = verify_locality(code);
        let unrepairable = first_unrepairable_pattern(code);
        let report = distance(code, mode, budget, seed)?;
        let mut class = classify_code(code, &report)?;
        if code.claims.never_optimal {
            if let Classification::Optimal { d, bound } = class {
                // a never-optimal family cannot meet the bound; report it as a zero gap
                class = Classification::Gap { d, bound, gap: 0 };
            }
        }
        let bound = code_bound(code)?;
        let status = claim_status(code, &report);
        let cl = &code.claims;
        let mut s = String::new();
        let _ = writeln!(s, "code: [{}, {}] {} over GF({})", code.n, code.k, cl.family, code.q());
        let _ = writeln!(s, "rank: {} (expected {})", code.rank(), code.k);
        let _ = writeln!(s, "locality: r = {}, delta = {}, {}", loc.r, loc.delta, if loc.ok { "ok" } else { "FAILED" });
        for g in &loc.groups {
            let _ = writeln!(
                s,
                "  group {}: size {}, rank {}, local distance {}, {}",
                g.group,
                g.size,
                g.rank,
                g.local_distance,
                if g.ok() { "ok" } else { "fails" }
            );
        }
        match &unrepairable {
            None => {
                let _ = writeln!(s, "erasures: every pattern of up to {} erasures per group is repairable", loc.delta - 1);
            }
            Some((g, pat)) => {
                let _ = writeln!(s, "erasures: group {g} cannot repair {pat:?}");
            }
        }
        match (report.method, report.d_exact) {
            (Method::Exhaustive, Some(d)) => {
                let _ = writeln!(s, "distance: d = {d} (exhaustive, {} message classes)", report.enumerated);
            }
            _ => {
                let _ = writeln!(s, "distance: {} <= d <= {} (bounded, seed {seed})", report.lower, report.upper);
            }
        }
        let _ = writeln!(s, "claimed: d {} {} ({}) -> {status}", cl.kind.symbol(), cl.design_d, cl.formula);
        let _ = writeln!(s, "bound: {bound}");
        let _ = writeln!(s, "classification: {class}");
        for (k, v) in &mf.notes {
            if k == "case4_zero_sum" {
                let _ = writeln!(
                    s,
                    "case-4 predicate: {}",
                    if v == "none" { "no (r-1)-subset of block-1 coordinates sums to zero".to_string() } else { format!("zero-sum subset {{{v}}}") }
                );
            }
        }
        let json = VerifyJson {
            q: code.q(),
            n: code.n,
            k: code.k,
            rank: code.rank(),
            family: &cl.family,
            claimed: format!("{} {}", cl.kind.symbol(), cl.design_d),
            claim_status: status,
            bound,
            locality: &loc,
            unrepairable: unrepairable.clone(),
            distance: &report,
            classification: &class,
            notes: mf.notes.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect(),
        };
        let _ = writeln!(s, "{}", serde_json::to_string(&json).expect("report serializes"));
        let exit = if !loc.ok || unrepairable.is_some() { EXIT_SUBOPTIMAL } else { class.exit_code() };
        Ok(Output { stdout: s, exit })
    };
    run().unwrap_or_else(|e| Output::invalid(&e))
}

/// Seeded random message of length `k`.
pub fn seeded_message(k: usize, q: u32, seed: u64) -> Vec<Fe> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| Fe(rng.gen_range(0..q))).collect()
}

pub fn repair_demo(matrix_text: &str, erase: &[usize], seed: u64) -> Output {
    let mf = match MatrixFile::parse(matrix_text) {
        Ok(m) => m,
        Err(e) => return Output::invalid(&e),
    };
    let code = &mf.code;
    if let Some(&p) = erase.iter().find(|&&p| p >= code.n) {
        return Output::invalid(&LrcError::Parse(format!("position {p} out of range (n = {})", code.n)));
    }
    let msg = seeded_message(code.k, code.q(), seed);
    let word = match code.encode(&msg) {
        Ok(w) => w,
        Err(e) => return Output::invalid(&e),
    };
    let show = |v: &[Fe]| v.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "message:  {}", show(&msg));
    let _ = writeln!(s, "codeword: {}", show(&word));
    let mut damaged = word.clone();
    for &p in erase {
        damaged[p] = Fe::ZERO;
    }
    let shown: Vec<String> =
        (0..code.n).map(|i| if erase.contains(&i) { "_".to_string() } else { damaged[i].0.to_string() }).collect();
    let _ = writeln!(s, "erased:   {}", shown.join(" "));
    match repair(code, &damaged, erase) {
        Ok(out) => {
            let _ = writeln!(s, "group {}: recovered from positions {:?} ({} symbols)", out.group, out.recovery_set, out.recovery_set.len());
            let _ = writeln!(s, "restored: {}", show(&out.restored));
            if out.restored == word {
                let _ = writeln!(s, "round trip: exact");
                Output { stdout: s, exit: EXIT_OK }
            } else {
                let _ = writeln!(s, "round trip: MISMATCH");
                Output { stdout: s, exit: EXIT_SUBOPTIMAL }
            }
        }
        Err(e) => {
            let why = match e {
                LrcError::CrossBlockErasure => "erasures must lie in one repair group".to_string(),
                other => other.to_string(),
            };
            let _ = writeln!(s, "refused: {why}");
            Output { stdout: s, exit: EXIT_INVALID }
        }
    }
}

/// The family a matrix file claims to be, if recognised.
pub fn family_of(mf: &MatrixFile) -> Option<Family> {
    mf.code.claims.family.parse().ok()
}
