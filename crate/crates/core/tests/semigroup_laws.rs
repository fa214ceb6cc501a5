mod common;

use bds_core::presets::examples::{s1, s2, s3};
use bds_core::semigroup::{complete_expansion, leq, leq_lemma, mul, refine_cover, CoverResult, SemiElem};
use bds_core::System;
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn small_systems() -> Vec<System> {
    let mut out = vec![s1(), s2(), s3()];
    let mut r = rng(42);
    out.extend((0..5).map(|_| random_system_of(&mut r, 3, 2)));
    out
}

#[test]
fn e_star_unitary_exhaustive() {
    for sys in small_systems() {
        let elems = all_elements(&sys, 3);
        let idem: Vec<&SemiElem> = elems.iter().filter(|e| e.is_idempotent()).collect();
        for s in elems.iter().filter(|s| !s.is_idempotent()) {
            for e in &idem {
                assert!(!leq(&sys, e, s), "{} ≤ {}", e.show(&sys), s.show(&sys));
            }
        }
    }
}

/// The two orders agree except where `p_A` has a single path `β` of length
/// `|β|`: the case characterization then puts `p_A` under `s_β p_B s_β*`, while
/// the products in normal form keep them apart.
#[test]
fn order_coherence_exhaustive() {
    for sys in small_systems() {
        let idem = idempotents(&sys, 3);
        for e in &idem {
            for f in &idem {
                let natural = leq(&sys, e, f);
                let lemma = leq_lemma(&sys, e, f).unwrap();
                if natural {
                    assert!(lemma);
                }
                if lemma && !natural {
                    let (SemiElem::Triple(a, x, _), SemiElem::Triple(b, _, _)) = (e, f) else { unreachable!() };
                    assert!(a.is_empty() && !b.is_empty());
                    assert_eq!(sys.delta_n(x, b.len()).unwrap(), vec![b.clone()]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complete_expansions_partition(seed in any::<u64>(), k in 0usize..=3) {
        let mut r = rng(seed);
        let sys = random_system(&mut r, 3, 3);
        let a = random_elem(&mut r, &sys, 0);
        let Ok(ws) = complete_expansion(&sys, &a, k) else { return Ok(()) };
        let pieces: Vec<SemiElem> = ws.iter().map(|g| SemiElem::e(&sys, g.clone(), &sys.apply_word(g, &a))).collect();
        for (i, p) in pieces.iter().enumerate() {
            prop_assert!(!p.is_zero());
            for q in &pieces[i + 1..] {
                prop_assert!(mul(&sys, p, q).is_zero());
            }
        }
        let pa = SemiElem::p(&sys, &a);
        for e in idempotents(&sys, k).iter().filter(|e| below(&sys, e, &pa)) {
            let meets = pieces.iter().filter(|p| !mul(&sys, e, p).is_zero()).count();
            prop_assert!(meets >= 1);
            if e.depth() == k {
                prop_assert_eq!(meets, 1);
            }
        }
    }

    #[test]
    fn conjugation_preserves_covers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sys = random_system(&mut r, 3, 2);
        let a = random_elem(&mut r, &sys, 0);
        let Ok(ws) = complete_expansion(&sys, &a, r.gen_range(1..=2)) else { return Ok(()) };
        let x = SemiElem::p(&sys, &a);
        let z: Vec<SemiElem> = ws.iter().map(|g| SemiElem::e(&sys, g.clone(), &sys.apply_word(g, &a))).collect();
        prop_assert!(uncovered(&sys, &x, &z, 4).is_none());
        let s = random_semi(&mut r, &sys, 2);
        let conj = |e: &SemiElem| mul(&sys, &mul(&sys, &s, e), &s.star());
        let y = conj(&x);
        let zc: Vec<SemiElem> = z.iter().map(conj).collect();
        prop_assert!(y.is_idempotent());
        prop_assert!(uncovered(&sys, &y, &zc, 4).is_none());
        prop_assert!(matches!(refine_cover(&sys, &y, &zc).unwrap(), CoverResult::OrthogonalCover(_)));
    }
}
