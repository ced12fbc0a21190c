use proptest::prelude::*;

use lrc_core::code::classify::code_bound;
use lrc_core::code::{min_distance_exhaustive, repair, verify_locality};
use lrc_core::family::Family;
use lrc_core::rational::{build_rational, RationalCode, RationalPlan};
use lrc_core::{Fe, Field, Mobius, PlaceP1};

fn gf13() -> Field {
    Field::from_order(13).unwrap()
}

fn build(family: Family, s: usize, t: usize) -> RationalCode {
    build_rational(&gf13(), &RationalPlan { family, r: 2, s, t, case: None, strict: false }).unwrap()
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Base), Just(Family::ExtendOne), Just(Family::ExtendAll)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encoding_is_linear(fam in family(), a in prop::collection::vec(0u32..13, 4), b in prop::collection::vec(0u32..13, 4)) {
        let c = build(fam, 2, 2).code;
        let f = gf13();
        let a: Vec<Fe> = a[..c.k].iter().map(|&x| Fe(x)).collect();
        let b: Vec<Fe> = b[..c.k].iter().map(|&x| Fe(x)).collect();
        let sum: Vec<Fe> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
        let ca = c.encode(&a).unwrap();
        let cb = c.encode(&b).unwrap();
        let expect: Vec<Fe> = ca.iter().zip(&cb).map(|(&x, &y)| f.add(x, y)).collect();
        prop_assert_eq!(c.encode(&sum).unwrap(), expect);
    }

    #[test]
    fn single_erasures_repair(fam in family(), msg in prop::collection::vec(0u32..13, 4), pos in 0usize..64, junk in 0u32..13) {
        let c = build(fam, 3, 2).code;
        let msg: Vec<Fe> = msg[..c.k].iter().map(|&x| Fe(x)).collect();
        let word = c.encode(&msg).unwrap();
        let p = pos % c.n;
        let mut damaged = word.clone();
        damaged[p] = Fe(junk);
        let out = repair(&c, &damaged, &[p]).unwrap();
        prop_assert_eq!(out.restored, word);
        prop_assert!(out.recovery_set.len() <= c.groups[out.group].r() + 1);
        prop_assert!(!out.recovery_set.contains(&p));
    }

    #[test]
    fn mobius_inverse_undoes_action(a in 0u32..13, b in 0u32..13, c in 0u32..13, d in 0u32..13) {
        let f = gf13();
        if let Ok(m) = Mobius::new(&f, Fe(a), Fe(b), Fe(c), Fe(d)) {
            let inv = m.inverse(&f);
            prop_assert!(m.compose(&f, &inv).is_identity());
            for p in PlaceP1::all(&f) {
                prop_assert_eq!(inv.act(&f, m.act(&f, p)), p);
            }
        }
    }
}

#[test]
fn measured_distance_never_beats_the_bound() {
    for fam in [Family::Base, Family::ExtendOne, Family::ExtendAll, Family::RlOne] {
        for (s, t) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let Ok(c) = build_rational(&gf13(), &RationalPlan { family: fam, r: 2, s, t, case: None, strict: false }) else {
                continue;
            };
            if !verify_locality(&c.code).ok {
                continue;
            }
            let d = min_distance_exhaustive(&c.code, 1 << 24).unwrap().d_exact.unwrap();
            assert!(d as i64 <= code_bound(&c.code).unwrap(), "{fam} s={s} t={t}: d = {d}");
        }
    }
}
