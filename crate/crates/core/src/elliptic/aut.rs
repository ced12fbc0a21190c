//! Curve automorphism subgroups, carried as permutations of the rational points.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::elliptic::curve::{Curve, Pt};
use crate::elliptic::curvefn::CurveFn;
use crate::error::{LrcError, Result};
use crate::field::Fe;
use crate::poly::Poly;
use crate::ratfn::Eval;

/// `(a + b·y)/c` with coefficient lists low-to-high, as written in plan files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnSpec {
    #[serde(default)]
    pub a: Vec<u32>,
    #[serde(default)]
    pub b: Vec<u32>,
    #[serde(default = "one")]
    pub c: Vec<u32>,
}

fn one() -> Vec<u32> {
    vec![1]
}

impl FnSpec {
    pub fn to_fn(&self, e: &Curve) -> Result<CurveFn> {
        let q = e.field.q();
        let poly = |v: &[u32]| -> Result<Poly> {
            if v.iter().any(|&c| c >= q) {
                return Err(LrcError::Parse("map coefficient out of range".into()));
            }
            Ok(Poly::from_u32s(v))
        };
        CurveFn::new(&e.field, poly(&self.a)?, poly(&self.b)?, poly(&self.c)?)
    }
}

/// `(x, y) ↦ (x_map, y_map)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub x: FnSpec,
    pub y: FnSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Recipe {
    Negation,
    /// `ζ` defaults to the smallest element of multiplicative order 3.
    Zeta3 {
        #[serde(default)]
        zeta: Option<u32>,
    },
    Dihedral { m: usize },
    Explicit { generators: Vec<MapSpec> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Descriptor {
    Identity,
    Negation,
    TranslationBy(Pt),
    TwistZeta3(Fe),
    /// Apply left to right.
    Composite(Vec<Descriptor>),
    /// Index into the recipe's generator list.
    ExplicitMaps(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveAut {
    /// `perm[i]` is the index of the image of `points[i]`.
    pub perm: Vec<usize>,
    pub descriptor: Descriptor,
}

#[derive(Clone, Debug)]
pub struct CurveGroup {
    pub points: Vec<Pt>,
    index: HashMap<Pt, usize>,
    /// Identity first.
    pub elements: Vec<CurveAut>,
}

impl CurveGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn r(&self) -> usize {
        self.order() - 1
    }

    pub fn index_of(&self, p: Pt) -> usize {
        self.index[&p]
    }

    pub fn apply(&self, g: &CurveAut, p: Pt) -> Pt {
        self.points[g.perm[self.index[&p]]]
    }

    /// Orbits as sorted point lists, ordered by their smallest member.
    pub fn orbits(&self) -> Vec<Vec<Pt>> {
        let mut seen = vec![false; self.points.len()];
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            if seen[i] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements.iter().map(|g| g.perm[i]).collect();
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit.into_iter().map(|j| self.points[j]).collect());
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<Pt> {
        (0..self.points.len())
            .filter(|&i| self.elements.iter().skip(1).any(|g| g.perm[i] == i))
            .map(|i| self.points[i])
            .collect()
    }

    /// Closure, bijectivity and a ramified point.
    pub fn verify(&self) -> Result<()> {
        let n = self.points.len();
        let perms: BTreeSet<&Vec<usize>> = self.elements.iter().map(|g| &g.perm).collect();
        if perms.len() != self.elements.len() {
            return Err(LrcError::RecipeInapplicable("repeated group element".into()));
        }
        for g in &self.elements {
            let img: BTreeSet<usize> = g.perm.iter().copied().collect();
            if g.perm.len() != n || img.len() != n {
                return Err(LrcError::RecipeInapplicable("map is not a bijection on points".into()));
            }
        }
        for a in &self.elements {
            for b in &self.elements {
                let c: Vec<usize> = (0..n).map(|i| b.perm[a.perm[i]]).collect();
                if !perms.contains(&c) {
                    return Err(LrcError::RecipeInapplicable("maps are not closed under composition".into()));
                }
            }
        }
        if self.fixed_points().is_empty() {
            return Err(LrcError::RecipeInapplicable("no fixed point, the quotient would not be rational".into()));
        }
        Ok(())
    }
}

fn perm_of(points: &[Pt], index: &HashMap<Pt, usize>, map: impl Fn(Pt) -> Result<Pt>) -> Result<Vec<usize>> {
    points
        .iter()
        .map(|&p| {
            let img = map(p)?;
            index.get(&img).copied().ok_or_else(|| LrcError::RecipeInapplicable(format!("image of {p} is off the curve")))
        })
        .collect()
}

/// Closes a generator set under composition; identity first, then in
/// discovery order.
fn close(n: usize, gens: Vec<CurveAut>) -> Vec<CurveAut> {
    let id = CurveAut { perm: (0..n).collect(), descriptor: Descriptor::Identity };
    let mut elems = vec![id];
    let mut seen: BTreeSet<Vec<usize>> = elems.iter().map(|g| g.perm.clone()).collect();
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let p: Vec<usize> = (0..n).map(|k| g.perm[elems[i].perm[k]]).collect();
            if seen.insert(p.clone()) {
                let descriptor = match &elems[i].descriptor {
                    Descriptor::Identity => g.descriptor.clone(),
                    Descriptor::Composite(v) => {
                        let mut v = v.clone();
                        v.push(g.descriptor.clone());
                        Descriptor::Composite(v)
                    }
                    d => Descriptor::Composite(vec![d.clone(), g.descriptor.clone()]),
                };
                elems.push(CurveAut { perm: p, descriptor });
            }
        }
        i += 1;
    }
    elems
}

fn order_three_root(e: &Curve) -> Option<Fe> {
    let f = &e.field;
    f.elements().find(|&z| z != Fe::ONE && !z.is_zero() && f.mul(f.mul(z, z), z) == Fe::ONE)
}

pub fn make_subgroup(e: &Curve, recipe: &Recipe) -> Result<CurveGroup> {
    let f = &e.field;
    let points = e.enumerate_points();
    let index: HashMap<Pt, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = points.len();
    let elements = match recipe {
        Recipe::Negation => {
            let perm = perm_of(&points, &index, |p| Ok(e.neg(p)))?;
            close(n, vec![CurveAut { perm, descriptor: Descriptor::Negation }])
        }
        Recipe::Zeta3 { zeta } => {
            if [e.a1, e.a2, e.a3, e.a4].iter().any(|c| !c.is_zero()) {
                return Err(LrcError::RecipeInapplicable("zeta3 needs a curve y² = x³ + a6".into()));
            }
            let z = match zeta {
                Some(z) if *z < f.q() => Fe(*z),
                Some(_) => return Err(LrcError::RecipeInapplicable("ζ out of range".into())),
                None => order_three_root(e).ok_or_else(|| LrcError::RecipeInapplicable("no cube root of unity".into()))?,
            };
            if z == Fe::ONE || f.mul(f.mul(z, z), z) != Fe::ONE {
                return Err(LrcError::RecipeInapplicable(format!("{z} is not a primitive cube root of unity")));
            }
            let perm = perm_of(&points, &index, |p| {
                Ok(match p {
                    Pt::O => Pt::O,
                    Pt::Affine(x, y) => Pt::Affine(f.mul(z, x), y),
                })
            })?;
            close(n, vec![CurveAut { perm, descriptor: Descriptor::TwistZeta3(z) }])
        }
        Recipe::Dihedral { m } => {
            let m = *m as u64;
            let t = points
                .iter()
                .copied()
                .find(|&p| e.point_order(p) == m)
                .ok_or_else(|| LrcError::RecipeInapplicable(format!("no point of order {m}")))?;
            let tr = perm_of(&points, &index, |p| Ok(e.add(p, t)))?;
            let neg = perm_of(&points, &index, |p| Ok(e.neg(p)))?;
            close(
                n,
                vec![
                    CurveAut { perm: tr, descriptor: Descriptor::TranslationBy(t) },
                    CurveAut { perm: neg, descriptor: Descriptor::Negation },
                ],
            )
        }
        Recipe::Explicit { generators } => {
            if generators.is_empty() {
                return Err(LrcError::RecipeInapplicable("empty generator list".into()));
            }
            let mut gens = Vec::with_capacity(generators.len());
            for (gi, g) in generators.iter().enumerate() {
                let xm = g.x.to_fn(e)?;
                let ym = g.y.to_fn(e)?;
                let perm = perm_of(&points, &index, |p| match (xm.eval(e, p), ym.eval(e, p)) {
                    (Eval::Pole, Eval::Pole) => Ok(Pt::O),
                    (Eval::Value(x), Eval::Value(y)) => Ok(Pt::Affine(x, y)),
                    _ => Err(LrcError::RecipeInapplicable(format!("generator {gi} is inconsistent at {p}"))),
                })?;
                gens.push(CurveAut { perm, descriptor: Descriptor::ExplicitMaps(gi) });
            }
            close(n, gens)
        }
    };
    let g = CurveGroup { points, index, elements };
    g.verify()?;
    Ok(g)
}
