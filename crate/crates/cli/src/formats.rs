//! Plan files (JSON) and matrix files (plain text).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use lrc_core::code::{ClaimKind, Claims, EvaluatedCode, RepairGroup};
use lrc_core::elliptic::{EllipticPlan, Recipe};
use lrc_core::family::Family;
use lrc_core::rational::{RationalPlan, SubgroupCase};
use lrc_core::{Fe, Field, FieldSpec, LrcError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanField {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// A construction request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub field: PlanField,
    pub family: Family,
    /// Rational families: subgroup case, first admissible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<SubgroupCase>,
    /// ExtendOne: use the strict basis.
    #[serde(default, skip_serializing_if = "is_false")]
    pub strict: bool,
    /// Elliptic families: `[a1, a2, a3, a4, a6]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<[u32; 5]>,
    /// Elliptic families: automorphism recipe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<Recipe>,
    /// Required for rational families; checked against the group for elliptic ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub s: usize,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

pub enum Plan {
    Rational(RationalPlan),
    Elliptic(EllipticPlan),
}

impl PlanFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LrcError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plan serializes");
        s.push('\n');
        s
    }

    pub fn field(&self) -> Result<Field> {
        Ok(Field::new(FieldSpec::new(self.field.p, self.field.m, self.field.modulus.clone())?))
    }

    pub fn plan(&self) -> Result<Plan> {
        if self.family.is_elliptic() {
            if self.case.is_some() || self.strict {
                return Err(LrcError::Parse("case/strict apply to rational families only".into()));
            }
            let curve = self.curve.ok_or_else(|| LrcError::Parse("elliptic plan needs \"curve\"".into()))?;
            let recipe = self.recipe.clone().ok_or_else(|| LrcError::Parse("elliptic plan needs \"recipe\"".into()))?;
            Ok(Plan::Elliptic(EllipticPlan { family: self.family, curve, recipe, s: self.s, t: self.t }))
        } else {
            if self.curve.is_some() || self.recipe.is_some() {
                return Err(LrcError::Parse("curve/recipe apply to elliptic families only".into()));
            }
            let r = self.r.ok_or_else(|| LrcError::Parse("rational plan needs \"r\"".into()))?;
            Ok(Plan::Rational(RationalPlan { family: self.family, r, s: self.s, t: self.t, case: self.case, strict: self.strict }))
        }
    }
}

/// A generator matrix with its repair structure, claims and diagnostic notes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub code: EvaluatedCode,
    /// `(key, value)` lines; values are free text without newlines.
    pub notes: Vec<(String, String)>,
}

fn join(v: &[Fe]) -> String {
    v.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" ")
}

impl MatrixFile {
    pub fn to_text(&self) -> String {
        let c = &self.code;
        let spec = c.field.spec();
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", c.q(), c.n, c.k);
        for row in &c.generator {
            let _ = writeln!(out, "{}", join(row));
        }
        let md: Vec<String> = spec.modulus.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "FIELD {} {} {}", spec.p, spec.m, md.join(" "));
        let _ = writeln!(out, "BLOCKS {}", c.groups.len());
        for g in &c.groups {
            let pos: Vec<String> = g.positions.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "GROUP {} {}", g.size(), g.r());
            let _ = writeln!(out, "POSITIONS {}", pos.join(" "));
            for row in &g.local {
                let _ = writeln!(out, "{}", join(row));
            }
            match &g.coeff_map {
                None => {
                    let _ = writeln!(out, "COEFF none");
                }
                Some(m) => {
                    let _ = writeln!(out, "COEFF {}", m.len());
                    for row in m {
                        let _ = writeln!(out, "{}", join(row));
                    }
                }
            }
        }
        let cl = &c.claims;
        let _ = writeln!(out, "CLAIMS");
        let _ = writeln!(out, "family {}", cl.family);
        let _ = writeln!(out, "r {}", cl.r);
        let _ = writeln!(out, "delta {}", cl.delta);
        let _ = writeln!(out, "d {} {}", cl.kind.symbol(), cl.design_d);
        let _ = writeln!(out, "formula {}", cl.formula);
        let _ = writeln!(out, "never_optimal {}", cl.never_optimal);
        let _ = writeln!(out, "NOTES {}", self.notes.len());
        for (k, v) in &self.notes {
            let _ = writeln!(out, "{k} {v}");
        }
        let _ = writeln!(out, "END");
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut next = |what: &str| -> Result<(usize, Vec<String>)> {
            let (i, l) = lines.next().ok_or_else(|| LrcError::Parse(format!("unexpected end of file, expected {what}")))?;
            Ok((i + 1, l.split_whitespace().map(str::to_string).collect()))
        };
        let perr = |line: usize, msg: &str| LrcError::Parse(format!("line {line}: {msg}"));
        let num = |line: usize, s: &str| -> Result<u64> { s.parse().map_err(|_| perr(line, &format!("bad integer {s}"))) };
        let expect = |line: usize, toks: &[String], key: &str, count: Option<usize>| -> Result<()> {
            if toks.first().map(String::as_str) != Some(key) {
                return Err(perr(line, &format!("expected {key}")));
            }
            if let Some(c) = count {
                if toks.len() != c + 1 {
                    return Err(perr(line, &format!("{key} takes {c} values")));
                }
            }
            Ok(())
        };

        let (l, head) = next("header")?;
        if head.len() != 3 {
            return Err(perr(l, "header must be \"q n k\""));
        }
        let (q, n, k) = (num(l, &head[0])?, num(l, &head[1])? as usize, num(l, &head[2])? as usize);
        let fe_row = |line: usize, toks: &[String], len: usize| -> Result<Vec<Fe>> {
            if toks.len() != len {
                return Err(perr(line, &format!("expected {len} entries, found {}", toks.len())));
            }
            toks.iter()
                .map(|t| {
                    let v = num(line, t)?;
                    if v >= q {
                        return Err(perr(line, &format!("entry {v} not in [0, {q})")));
                    }
                    Ok(Fe(v as u32))
                })
                .collect()
        };
        let mut generator = Vec::with_capacity(k);
        for _ in 0..k {
            let (l, toks) = next("generator row")?;
            generator.push(fe_row(l, &toks, n)?);
        }
        let (l, ft) = next("FIELD")?;
        expect(l, &ft, "FIELD", None)?;
        if ft.len() < 3 {
            return Err(perr(l, "FIELD p m modulus…"));
        }
        let p = num(l, &ft[1])? as u32;
        let m = num(l, &ft[2])? as u32;
        let modulus: Vec<u32> = ft[3..].iter().map(|t| num(l, t).map(|v| v as u32)).collect::<Result<_>>()?;
        let field = Field::new(FieldSpec::new(p, m, Some(modulus))?);
        if field.q() as u64 != q {
            return Err(perr(l, "FIELD does not match q"));
        }

        let (l, bt) = next("BLOCKS")?;
        expect(l, &bt, "BLOCKS", Some(1))?;
        let nb = num(l, &bt[1])? as usize;
        let mut groups = Vec::with_capacity(nb);
        for _ in 0..nb {
            let (l, gt) = next("GROUP")?;
            expect(l, &gt, "GROUP", Some(2))?;
            let (size, r) = (num(l, &gt[1])? as usize, num(l, &gt[2])? as usize);
            let (l, pt) = next("POSITIONS")?;
            expect(l, &pt, "POSITIONS", Some(size))?;
            let positions: Vec<usize> = pt[1..].iter().map(|t| num(l, t).map(|v| v as usize)).collect::<Result<_>>()?;
            let mut local = Vec::with_capacity(size);
            for _ in 0..size {
                let (l, row) = next("local row")?;
                local.push(fe_row(l, &row, r)?);
            }
            let (l, ct) = next("COEFF")?;
            expect(l, &ct, "COEFF", Some(1))?;
            let coeff_map = if ct[1] == "none" {
                None
            } else {
                let rows = num(l, &ct[1])? as usize;
                let mut m = Vec::with_capacity(rows);
                for _ in 0..rows {
                    let (l, row) = next("coefficient row")?;
                    m.push(fe_row(l, &row, k)?);
                }
                Some(m)
            };
            groups.push(RepairGroup { positions, local, coeff_map });
        }

        let (l, ct) = next("CLAIMS")?;
        expect(l, &ct, "CLAIMS", Some(0))?;
        let mut kv = |key: &str| -> Result<(usize, Vec<String>)> {
            let (l, t) = next(key)?;
            expect(l, &t, key, None)?;
            Ok((l, t[1..].to_vec()))
        };
        let (l, fam) = kv("family")?;
        let family = fam.first().cloned().ok_or_else(|| perr(l, "missing family"))?;
        let (l, r) = kv("r")?;
        let r = num(l, r.first().ok_or_else(|| perr(l, "missing r"))?)? as usize;
        let (l, dl) = kv("delta")?;
        let delta = num(l, dl.first().ok_or_else(|| perr(l, "missing delta"))?)? as usize;
        let (l, d) = kv("d")?;
        if d.len() != 2 {
            return Err(perr(l, "d <kind> <value>"));
        }
        let kind = ClaimKind::parse(&d[0])?;
        let design_d: i64 = d[1].parse().map_err(|_| perr(l, "bad claimed distance"))?;
        let (_, fm) = kv("formula")?;
        let formula = fm.join(" ");
        let (l, no) = kv("never_optimal")?;
        let never_optimal = match no.first().map(String::as_str) {
            Some("true") => true,
            Some("false") => false,
            _ => return Err(perr(l, "never_optimal true|false")),
        };
        let (l, nt) = next("NOTES")?;
        expect(l, &nt, "NOTES", Some(1))?;
        let nn = num(l, &nt[1])? as usize;
        let mut notes = Vec::with_capacity(nn);
        for _ in 0..nn {
            let (l, t) = next("note")?;
            let key = t.first().cloned().ok_or_else(|| perr(l, "empty note"))?;
            notes.push((key, t[1..].join(" ")));
        }
        let (l, end) = next("END")?;
        expect(l, &end, "END", Some(0))?;
        if let Some((i, _)) = lines.next() {
            return Err(perr(i + 1, "content after END"));
        }

        let claims = Claims { family, r, delta, design_d, kind, never_optimal, formula };
        let code = EvaluatedCode::new(field, generator, groups, claims)?;
        Ok(MatrixFile { code, notes })
    }
}
