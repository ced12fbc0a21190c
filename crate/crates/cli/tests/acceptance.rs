//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lrc_cli::commands::Mode;
use lrc_cli::table::table_rows;
use lrc_core::code::classify::code_bound;
use lrc_core::code::distance::DEFAULT_BUDGET;
use lrc_core::code::{
    classify_code, min_distance_exhaustive, repair, verify_locality, Classification,
    EvaluatedCode,
};
use lrc_core::elliptic::{build_elliptic, rr_basis, zeta3_curves, Curve, CurveFn, Divisor, EllipticCode, EllipticPlan, Pt, Recipe};
use lrc_core::family::Family;
use lrc_core::linalg::{combinations, det, rank, submatrix, Matrix};
use lrc_core::rational::{build_rational, RationalCode, RationalPlan};
use lrc_core::{Fe, Field, Mobius, PlaceP1, Poly, RatFn};

const BASE_TIME_LIMIT: Duration = Duration::from_secs(5);
const MODIFIED_TIME_LIMIT: Duration = Duration::from_secs(30);
const REPAIR_MESSAGES: usize = 100;
const RR_DIVISORS: usize = 50;
const RR_MAX_DEGREE: i64 = 8;
const FIELD_TRIPLES: usize = 10_000;
const SPLIT_RATFNS: usize = 100;
const MOBIUS_MAX_Q: u64 = 13;
const SEED: u64 = 20240607;

type Outcome = std::result::Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gf(q: u64) -> Field {
    Field::from_order(q).unwrap()
}

fn rational(q: u64, family: Family, r: usize, s: usize, t: usize, strict: bool) -> Result<RationalCode, String> {
    let plan = RationalPlan { family, r, s, t, case: None, strict };
    build_rational(&gf(q), &plan).map_err(|e| format!("{family} r={r} s={s} t={t}: {e}"))
}

fn exact_distance(code: &EvaluatedCode) -> Result<usize, String> {
    let rep = min_distance_exhaustive(code, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    rep.d_exact.ok_or_else(|| "exhaustive search gave no exact distance".into())
}

fn classify(code: &EvaluatedCode) -> Result<(usize, i64, Classification), String> {
    let rep = min_distance_exhaustive(code, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let class = classify_code(code, &rep).map_err(|e| e.to_string())?;
    let bound = code_bound(code).map_err(|e| e.to_string())?;
    Ok((rep.d_exact.unwrap_or(0), bound, class))
}

/// Repairs every within-group erasure pattern of `size` positions for
/// `REPAIR_MESSAGES` random messages. Returns (attempts, failures).
fn repair_sweep(code: &EvaluatedCode, size: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = code.q();
    let mut attempts = 0;
    let mut failures = 0;
    for _ in 0..REPAIR_MESSAGES {
        let msg: Vec<Fe> = (0..code.k).map(|_| Fe(rng.gen_range(0..q))).collect();
        let word = code.encode(&msg).unwrap();
        for g in &code.groups {
            for pat in combinations(g.positions.len(), size) {
                let erased: Vec<usize> = pat.iter().map(|&i| g.positions[i]).collect();
                let mut damaged = word.clone();
                for &p in &erased {
                    damaged[p] = Fe(rng.gen_range(0..q));
                }
                attempts += 1;
                match repair(code, &damaged, &erased) {
                    Ok(out) if out.restored == word && out.recovery_set.len() <= g.r() + size => {}
                    _ => failures += 1,
                }
            }
        }
    }
    (attempts, failures)
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for t in [1, 2] {
        let start = Instant::now();
        let c = rational(13, Family::Base, 2, 3, t, false)?;
        let d = exact_distance(&c.code)?;
        let took = start.elapsed();
        let want = c.code.n as i64 - 2 * t as i64 - t as i64 + 2;
        check(d as i64 == want, format!("t={t}: d = {d}, expected {want}"))?;
        check(took < BASE_TIME_LIMIT, format!("t={t}: took {took:?}"))?;
        notes.push(format!("[{},{},{d}] in {:.2?}", c.code.n, c.code.k, took));
    }
    Ok(notes.join(", "))
}

fn optimal_extend_one(strict: bool) -> Result<String, String> {
    let c = rational(13, Family::ExtendOne, 2, 3, 2, strict)?;
    let code = &c.code;
    check((code.n, code.k) == (10, 4), format!("shape [{},{}]", code.n, code.k))?;
    let bound = code.n as i64 - code.k as i64 - (code.k as i64 + 1) / 2 + 2;
    let (d, cb, class) = classify(code)?;
    let loc = verify_locality(code);
    let label = if strict { "strict" } else { "default" };
    check(
        d as i64 == 6 && bound == 6 && cb == 6 && class.is_optimal() && loc.ok,
        format!("{label} basis: d = {d}, bound {bound}, {class}, locality {}", if loc.ok { "ok" } else { "fails" }),
    )?;
    Ok(format!("{label} basis: d = 6 = bound, {class}"))
}

fn criterion_2() -> Outcome {
    match optimal_extend_one(false) {
        Ok(s) => Ok(s),
        Err(default) => optimal_extend_one(true)
            .map(|s| format!("{default}; {s}"))
            .map_err(|strict| format!("{default}; {strict}")),
    }
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for t in [1, 2] {
        let start = Instant::now();
        let c = rational(7, Family::ModExtendOne, 3, 2, t, false)?;
        let code = &c.code;
        check(code.n == 9, format!("t={t}: length {}", code.n))?;
        check(!c.modifiers.is_empty(), format!("t={t}: no modified positions"))?;
        for m in &c.modifiers {
            check(
                (0..code.k).any(|row| code.generator[row][m.position] != Fe::ZERO),
                format!("t={t}: modified position {} is identically zero", m.position),
            )?;
        }
        let d = exact_distance(code)?;
        let took = start.elapsed();
        let want = code.n as i64 - 3 * t as i64 - t as i64 + 2;
        check(took < MODIFIED_TIME_LIMIT, format!("t={t}: took {took:?}"))?;
        if d as i64 != want {
            bad.push(format!("t={t}: [{},{}] d = {d}, expected {want}", code.n, code.k));
        }
        notes.push(format!("[{},{},{d}]", code.n, code.k));
    }
    if bad.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_4() -> Outcome {
    let c = rational(13, Family::ExtendAll, 2, 2, 2, false)?;
    let code = &c.code;
    check((code.n, code.k) == (8, 4), format!("shape [{},{}]", code.n, code.k))?;
    let (d, bound, class) = classify(code)?;
    check(d == 3 && bound == 3, format!("d = {d}, bound {bound}"))?;
    let loc = verify_locality(code);
    for g in &loc.groups {
        check(g.local_distance >= 3, format!("group {} has local distance {}", g.group, g.local_distance))?;
    }
    let (tries, fails) = repair_sweep(code, 2, SEED);
    check(fails == 0, format!("{fails}/{tries} double-erasure repairs failed"))?;
    Ok(format!("[8,4,3], {class}, {tries} double-erasure repairs"))
}

fn criterion_5() -> Outcome {
    let c = rational(13, Family::RlOne, 2, 3, 2, false)?;
    let code = &c.code;
    let want = code.n as i64 - 2 * 2 - 2 + 1;
    let (d, _, class) = classify(code)?;
    check(c.zero_sum_subset.is_some(), "no case-4 predicate in the report")?;
    let plan = r#"{"field":{"p":13,"m":1},"family":"RLOne","r":2,"s":3,"t":2}"#;
    let (matrix, _) = lrc_cli::commands::construct(plan);
    let matrix = matrix.ok_or("construct refused the RLOne plan")?;
    let verify = lrc_cli::commands::verify(&matrix, Mode::Exhaustive, DEFAULT_BUDGET, SEED);
    check(verify.stdout.contains("case-4 predicate"), "verify output lacks the case-4 predicate")?;
    let rl = rational(13, Family::RlAll, 2, 2, 2, false)?;
    check(rl.code.claims.never_optimal, "RLAll not marked never-optimal")?;
    let rl_verify = lrc_cli::commands::verify(&matrix_text(&rl.code), Mode::Exhaustive, DEFAULT_BUDGET, SEED);
    for out in [&verify.stdout, &rl_verify.stdout] {
        check(!out.contains("classification: optimal"), "a two-symbol code was classified optimal")?;
    }
    check(d as i64 >= want, format!("[{},{}] d = {d} < {want} ({class})", code.n, code.k))?;
    Ok(format!("[{},{},{d}] >= {want}, {class}", code.n, code.k))
}

fn matrix_text(code: &EvaluatedCode) -> String {
    lrc_cli::formats::MatrixFile { code: code.clone(), notes: Vec::new() }.to_text()
}

fn elliptic(f: &Field, family: Family, a6: u32, s: usize, t: usize) -> lrc_core::Result<EllipticCode> {
    let plan = EllipticPlan { family, curve: [0, 0, 0, 0, a6], recipe: Recipe::Zeta3 { zeta: None }, s, t };
    build_elliptic(f, &plan)
}

fn elliptic_trio(f: &Field) -> Option<(u32, [EllipticCode; 3])> {
    zeta3_curves(f, 4).iter().find_map(|e| {
        let a6 = e.a6.0;
        let base = elliptic(f, Family::EBase, a6, 3, 2).ok()?;
        let one = elliptic(f, Family::EExtendOne, a6, 3, 2).ok()?;
        let all = elliptic(f, Family::EExtendAll, a6, 2, 2).ok()?;
        Some((a6, [base, one, all]))
    })
}

fn all_minors_invertible(f: &Field, m: &Matrix, size: usize) -> bool {
    combinations(m.len(), size).iter().all(|rows| det(f, &submatrix(m, rows)) != Fe::ZERO)
}

fn criterion_6() -> Outcome {
    let f = gf(13);
    let (a6, codes) = elliptic_trio(&f).ok_or("no zeta3 curve over GF(13) supports all three codes")?;
    let mut notes = vec![format!("y^2 = x^3 + {a6}")];
    let mut failures = Vec::new();
    for (c, shape) in codes.iter().zip([(9, 3), (10, 3), (8, 3)]) {
        let code = &c.code;
        let name = &code.claims.family;
        check((code.n, code.k) == shape, format!("{name}: shape [{},{}]", code.n, code.k))?;
        let r = c.group.r();
        for block in &c.blocks {
            let m: Matrix = block
                .iter()
                .map(|&p| c.omegas.iter().map(|w| w.eval(&c.curve, p).value().ok_or("pole in M_u")).collect())
                .collect::<Result<_, _>>()?;
            check(all_minors_invertible(&f, &m, r), format!("{name}: singular M_u minor"))?;
            let mp: Matrix = m.iter().map(|row| row[1..].to_vec()).collect();
            check(all_minors_invertible(&f, &mp, r - 1), format!("{name}: singular M'_u minor"))?;
        }
        let d = exact_distance(code)?;
        let want = match code.claims.family.parse::<Family>().unwrap() {
            Family::EExtendAll => 4,
            _ => code.n as i64 - (2 - 1) * (r as i64 + 1),
        };
        let loc = verify_locality(code);
        let (t1, f1) = repair_sweep(code, 1, SEED);
        let (t2, f2) = if loc.delta >= 3 { repair_sweep(code, 2, SEED) } else { (0, 0) };
        if !loc.ok || f1 + f2 > 0 {
            failures.push(format!("{name}: locality {}, {}/{} repairs failed", loc.ok, f1 + f2, t1 + t2));
        }
        if d as i64 != want {
            failures.push(format!("{name} [{},{}]: d = {d}, expected {want}", code.n, code.k));
        }
        notes.push(format!("{name} [{},{},{d}]", code.n, code.k));
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(format!("{}; {}", failures.join("; "), notes.join(", ")))
    }
}

fn random_divisor(rng: &mut ChaCha8Rng, pts: &[Pt]) -> Divisor {
    let deg = rng.gen_range(1..=RR_MAX_DEGREE);
    let mut d = Divisor::new();
    for _ in 0..deg {
        d.add_point(pts[rng.gen_range(0..pts.len())], 1);
    }
    d
}

/// Independent audit: valuations at every rational point, no poles at
/// non-rational places, and linear independence via evaluations.
fn audit_basis(e: &Curve, d: &Divisor, basis: &[CurveFn], pts: &[Pt]) -> Result<(), String> {
    let f = &e.field;
    for g in basis {
        for &p in pts {
            let v = g.valuation(e, p).map_err(|err| err.to_string())?;
            check(v >= -d.get(p), format!("{g} has valuation {v} at {p}, divisor allows {}", -d.get(p)))?;
        }
        let (_, _, c) = g.parts();
        let rational_roots: usize = c.roots(f).iter().map(|&x| c.root_multiplicity(f, x)).sum();
        check(c.degree().unwrap_or(0) == rational_roots, format!("{g} has a pole off the rational points"))?;
    }
    let off: Vec<Pt> = pts.iter().copied().filter(|&p| d.get(p) == 0).collect();
    if off.len() as i64 > d.degree() {
        let m: Matrix =
            basis.iter().map(|g| off.iter().map(|&p| g.eval(e, p).value().unwrap_or(Fe::ZERO)).collect()).collect();
        check(rank(f, &m) == basis.len(), "basis is linearly dependent")?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let f = gf(13);
    let curves = [
        Curve::short(f.clone(), Fe(0), Fe(2)).map_err(|e| e.to_string())?,
        Curve::short(f.clone(), Fe(1), Fe(1)).map_err(|e| e.to_string())?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total = 0;
    for e in &curves {
        let pts = e.enumerate_points();
        for _ in 0..RR_DIVISORS {
            let d = random_divisor(&mut rng, &pts);
            let basis = rr_basis(e, &d).map_err(|err| format!("{e}: {err}"))?;
            check(basis.len() as i64 == d.degree(), format!("{e}: dim L(D) = {} for degree {}", basis.len(), d.degree()))?;
            audit_basis(e, &d, &basis, &pts).map_err(|err| format!("{e}: {err}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} divisors on 2 curves, dim L(D) = deg D"))
}

fn criterion_8() -> Outcome {
    let rows = table_rows(64);
    let wanted = [
        ("[57,3t,59-4t]", 3, 2, Some(14)),
        ("[66,4t,68-5t]", 4, 2, Some(13)),
        ("[68,3t,71-5t]", 3, 3, Some(16)),
        ("[79,2t+1,79-3t]", 2, 2, None),
        ("[73,3t-2,77-4t]", 3, 2, None),
    ];
    let mut found = Vec::new();
    for (code, r, delta, t_max) in wanted {
        let row = rows
            .iter()
            .find(|row| row.code() == code && row.r == r && row.delta == delta)
            .ok_or_else(|| format!("{code} (r={r}, delta={delta}) missing"))?;
        if let Some(tm) = t_max {
            check(row.t_max == tm, format!("{code}: t ≤ {}, expected {tm}", row.t_max))?;
        }
        found.push(format!("{code} t≤{}", row.t_max));
    }
    let text = lrc_cli::table::render_table(64);
    for (code, ..) in wanted {
        check(text.contains(code), format!("rendered table lacks {code}"))?;
    }
    Ok(found.join(", "))
}

fn field_axioms(q: u64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let f = gf(q);
    let qq = f.q();
    for _ in 0..FIELD_TRIPLES {
        let [a, b, c] = [0; 3].map(|_| Fe(rng.gen_range(0..qq)));
        let ok = f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            && f.add(a, b) == f.add(b, a)
            && f.mul(a, b) == f.mul(b, a)
            && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            && f.add(a, Fe::ZERO) == a
            && f.mul(a, Fe::ONE) == a
            && f.add(a, f.neg(a)) == Fe::ZERO
            && f.sub(a, b) == f.add(a, f.neg(b))
            && (a == Fe::ZERO || f.mul(a, f.inv(a).unwrap()) == Fe::ONE)
            && (f.m() > 1 || f.mul(a, b).0 as u64 == (a.0 as u64 * b.0 as u64) % q);
        check(ok, format!("GF({q}) fails on ({a}, {b}, {c})"))?;
    }
    Ok(())
}

fn split_ratfn(f: &Field, rng: &mut ChaCha8Rng) -> RatFn {
    let q = f.q();
    let roots = |rng: &mut ChaCha8Rng| -> Vec<Fe> { (0..rng.gen_range(0..6)).map(|_| Fe(rng.gen_range(0..q))).collect() };
    let lead = Fe(rng.gen_range(1..q));
    let num = Poly::from_roots(f, &roots(rng)).scale(f, lead);
    let den = Poly::from_roots(f, &roots(rng));
    RatFn::new(f, num, den).unwrap()
}

fn pgl2(f: &Field) -> Vec<Mobius> {
    let mut out = Vec::new();
    let el: Vec<Fe> = f.elements().collect();
    for &a in &el {
        for &b in &el {
            if a != Fe::ZERO {
                out.push(Mobius::new(f, a, b, Fe::ZERO, Fe::ONE).unwrap());
            }
            for &d in &el {
                if let Ok(m) = Mobius::new(f, a, b, Fe::ONE, d) {
                    out.push(m);
                }
            }
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let fields = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81, 125, 128, 256];
    for q in fields {
        field_axioms(q, &mut rng)?;
    }

    let f13 = gf(13);
    let places = PlaceP1::all(&f13);
    for _ in 0..SPLIT_RATFNS {
        let g = split_ratfn(&f13, &mut rng);
        if g.is_zero() {
            continue;
        }
        let sum: i64 = places.iter().map(|&p| g.valuation(&f13, p).unwrap()).sum();
        check(sum == 0, format!("valuations of {g} sum to {sum}"))?;
    }

    let mut mobius_pairs = 0usize;
    for q in (2..=MOBIUS_MAX_Q).filter(|&q| Field::from_order(q).is_ok()) {
        let f = gf(q);
        let group = pgl2(&f);
        let order = q * (q * q - 1);
        check(group.len() as u64 == order, format!("|PGL(2,{q})| = {}, expected {order}", group.len()))?;
        let places = PlaceP1::all(&f);
        let images: Vec<Vec<PlaceP1>> = group.iter().map(|g| places.iter().map(|&p| g.act(&f, p)).collect()).collect();
        let index = |p: PlaceP1| places.iter().position(|&x| x == p).unwrap();
        for (gi, g) in group.iter().enumerate() {
            for (hi, h) in group.iter().enumerate() {
                let gh = g.compose(&f, h);
                for (pi, &p) in places.iter().enumerate() {
                    let direct = gh.act(&f, p);
                    let stepwise = images[gi][index(images[hi][pi])];
                    if direct != stepwise {
                        return Err(format!("GF({q}): (g∘h)(P) ≠ g(h(P)) for g = {g:?}, h = {h:?}, P = {p:?}"));
                    }
                }
                mobius_pairs += 1;
            }
        }
    }

    let mut repairs = 0;
    let c2 = rational(13, Family::ExtendOne, 2, 3, 2, false)?;
    let c4 = rational(13, Family::ExtendAll, 2, 2, 2, false)?;
    let mut sweeps = vec![(c2.code, 1), (c4.code.clone(), 1), (c4.code, 2)];
    if let Some((_, trio)) = elliptic_trio(&gf(13)) {
        for c in trio {
            let delta = c.code.claims.delta;
            sweeps.push((c.code.clone(), 1));
            if delta >= 3 {
                sweeps.push((c.code, 2));
            }
        }
    } else {
        return Err("no elliptic codes to repair".into());
    }
    for (code, size) in &sweeps {
        let (t, fails) = repair_sweep(code, *size, SEED + 1);
        check(fails == 0, format!("{} repair of size {size}: {fails}/{t} failed", code.claims.family))?;
        repairs += t;
    }
    Ok(format!(
        "{} fields × {FIELD_TRIPLES} triples, {SPLIT_RATFNS} split functions, {mobius_pairs} Möbius pairs, {repairs} repairs",
        fields.len()
    ))
}

struct TempDir(PathBuf);

impl TempDir {
    fn new() -> Self {
        let p = std::env::temp_dir().join(format!("lrc-acceptance-{}", std::process::id()));
        fs::create_dir_all(&p).unwrap();
        TempDir(p)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn run_lrc(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_lrc")).args(args).output().expect("lrc runs");
    (out.stdout, out.status.code())
}

fn criterion_10() -> Outcome {
    let dir = TempDir::new();
    let f = gf(13);
    let a6 = elliptic_trio(&f).map(|(a, _)| a).unwrap_or(2);
    let plans = vec![
        r#"{"field":{"p":13,"m":1},"family":"Base","r":2,"s":3,"t":2}"#.to_string(),
        r#"{"field":{"p":13,"m":1},"family":"ExtendOne","r":2,"s":3,"t":2}"#.to_string(),
        r#"{"field":{"p":7,"m":1},"family":"ModExtendOne","r":3,"s":2,"t":2}"#.to_string(),
        r#"{"field":{"p":13,"m":1},"family":"ExtendAll","r":2,"s":2,"t":2}"#.to_string(),
        r#"{"field":{"p":13,"m":1},"family":"RLOne","r":2,"s":3,"t":2}"#.to_string(),
        format!(r#"{{"field":{{"p":13,"m":1}},"family":"EBase","curve":[0,0,0,0,{a6}],"recipe":{{"kind":"zeta3"}},"s":3,"t":2}}"#),
        format!(r#"{{"field":{{"p":13,"m":1}},"family":"EExtendAll","curve":[0,0,0,0,{a6}],"recipe":{{"kind":"zeta3"}},"s":2,"t":2}}"#),
    ];
    let mut runs = 0;
    for (i, plan) in plans.iter().enumerate() {
        let plan_path = dir.0.join(format!("plan{i}.json"));
        fs::write(&plan_path, plan).unwrap();
        let mut seen = BTreeSet::new();
        for rep in 0..2 {
            let out_path = dir.0.join(format!("m{i}_{rep}.txt"));
            let (log, code) = run_lrc(&["construct", "--plan", plan_path.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
            check(code == Some(0) || code == Some(1), format!("plan {i}: construct exit {code:?}"))?;
            let log = String::from_utf8_lossy(&log).replace(out_path.to_str().unwrap(), "<out>");
            let matrix = fs::read(&out_path).map_err(|e| format!("plan {i}: {e}"))?;
            let p = out_path.to_str().unwrap();
            let (v1, _) = run_lrc(&["verify", p, "--seed", "7"]);
            let (v2, _) = run_lrc(&["verify", p, "--mode", "bounded", "--seed", "7"]);
            let (v3, _) = run_lrc(&["repair-demo", p, "--erase", "0", "--seed", "7"]);
            seen.insert((log, matrix, v1, v2, v3));
            runs += 1;
        }
        check(seen.len() == 1, format!("plan {i}: two runs differ"))?;
    }
    Ok(format!("{} plans, {runs} construct/verify/repair runs, byte-identical", plans.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("base family exact distance on GF(13)", criterion_1),
        ("extend-one [10,4] optimal", criterion_2),
        ("modified extend-one on GF(7)", criterion_3),
        ("extend-all [8,4,3] with double repair", criterion_4),
        ("two-symbol extension distance and diagnostics", criterion_5),
        ("elliptic families on a zeta3 curve", criterion_6),
        ("Riemann-Roch spaces", criterion_7),
        ("q = 64 parameter table", criterion_8),
        ("property suite", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
