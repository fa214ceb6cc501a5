use std::collections::BTreeSet;

use bds_core::boolean::{boolean_ops, quotient, ultrafilters, BoolElem, BoolOp, OpResult, Ultrafilter};
use bds_core::{Backend, Height, IdealDesc, Universe};
use proptest::prelude::*;

fn finite_backend(n: usize) -> Backend {
    Backend::finite_atoms((0..n).map(|i| format!("x{i}"))).unwrap()
}

fn atoms_elem(n: usize) -> impl Strategy<Value = BoolElem> {
    proptest::collection::btree_set(0..n, 0..=n).prop_map(BoolElem::Atoms)
}

fn index_elem(u: Universe) -> impl Strategy<Value = BoolElem> {
    let lo = if u == Universe::Naturals { 0 } else { -8 };
    (proptest::collection::btree_set(lo..=8i64, 0..6), any::<bool>()).prop_map(|(s, co)| {
        if co {
            BoolElem::Cofinite(s)
        } else {
            BoolElem::Finite(s)
        }
    })
}

fn elem(backend: &Backend) -> BoxedStrategy<BoolElem> {
    match backend {
        Backend::FiniteAtoms(v) => atoms_elem(v.len()).boxed(),
        Backend::FiniteCofinite(u) => index_elem(*u).boxed(),
    }
}

fn backends() -> impl Strategy<Value = Backend> {
    prop_oneof![
        (1usize..=6).prop_map(finite_backend),
        Just(Backend::FiniteCofinite(Universe::Naturals)),
        Just(Backend::FiniteCofinite(Universe::Integers)),
    ]
}

fn triple() -> impl Strategy<Value = (Backend, BoolElem, BoolElem, BoolElem)> {
    backends().prop_flat_map(|b| {
        let e = elem(&b);
        (Just(b), e.clone(), e.clone(), e)
    })
}

fn op(a: &BoolElem, b: &BoolElem, o: BoolOp) -> BoolElem {
    match boolean_ops(a, b, o).unwrap() {
        OpResult::Elem(e) => e,
        OpResult::Bool(_) => panic!("expected an element"),
    }
}

fn holds(a: &BoolElem, b: &BoolElem) -> bool {
    matches!(boolean_ops(a, b, BoolOp::Leq).unwrap(), OpResult::Bool(true))
}

/// An ideal of the backend; cofinite supports sometimes only carry their finite subsets.
fn ideal() -> impl Strategy<Value = (Backend, IdealDesc)> {
    backends().prop_flat_map(|b| {
        let e = elem(&b);
        (Just(b), e, any::<bool>()).prop_map(|(b, s, low)| {
            let i = if b.is_cofinite() {
                IdealDesc::definable(s, if low { Height::FiniteOnly } else { Height::Full })
            } else {
                IdealDesc::principal(s)
            };
            (b, i)
        })
    })
}

fn ideal_case() -> impl Strategy<Value = (Backend, IdealDesc, BoolElem, BoolElem)> {
    ideal().prop_flat_map(|(b, i)| {
        let e = elem(&b);
        (Just(b), Just(i), e.clone(), e)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn de_morgan_and_distributivity((b, x, y, z) in triple()) {
        let meet = |p: &BoolElem, q: &BoolElem| op(p, q, BoolOp::Meet);
        let join = |p: &BoolElem, q: &BoolElem| op(p, q, BoolOp::Join);
        let not = |p: &BoolElem| b.complement(p);
        prop_assert_eq!(not(&join(&x, &y)), meet(&not(&x), &not(&y)));
        prop_assert_eq!(not(&meet(&x, &y)), join(&not(&x), &not(&y)));
        prop_assert_eq!(meet(&x, &join(&y, &z)), join(&meet(&x, &y), &meet(&x, &z)));
        prop_assert_eq!(join(&x, &meet(&y, &z)), meet(&join(&x, &y), &join(&x, &z)));
        prop_assert_eq!(op(&x, &y, BoolOp::Diff), meet(&x, &not(&y)));
        prop_assert_eq!(holds(&x, &y), meet(&x, &y) == x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn stone_separation(n in 1usize..=7, m in any::<u32>()) {
        let b = finite_backend(n);
        let xs: Vec<Ultrafilter> = ultrafilters(&b).collect();
        prop_assert_eq!(xs.len(), n);
        let a = BoolElem::atoms((0..n).filter(|i| m >> i & 1 == 1));
        prop_assert_eq!(a.is_empty(), !xs.iter().any(|x| x.contains(&a)));
    }

    #[test]
    fn stone_separation_on_indices(a in index_elem(Universe::Integers)) {
        let b = Backend::FiniteCofinite(Universe::Integers);
        // the first 40 points of the stream reach every index in [-19, 19]
        let found = ultrafilters(&b).take(40).any(|x| x.contains(&a));
        prop_assert_eq!(found, !a.is_empty());
    }

    #[test]
    fn ideals_are_down_closed_and_join_closed((_b, i, x, y) in ideal_case()) {
        for y in [y.clone(), y.meet(&x)] {
            if i.contains(&x) && holds(&y, &x) {
                prop_assert!(i.contains(&y));
            }
        }
        if i.contains(&x) && i.contains(&y) {
            prop_assert!(i.contains(&x.join(&y)));
        }
        let under = x.meet(i.support());
        if !under.is_cofinite() || !i.finite_only() {
            prop_assert!(i.contains(&under));
        }
    }

    #[test]
    fn class_map_respects_operations((b, x, y, _z) in triple(), s in proptest::collection::btree_set(-8i64..=8, 0..5), low in any::<bool>()) {
        let i = match &b {
            Backend::FiniteAtoms(_) => IdealDesc::principal(BoolElem::Atoms(s.iter().filter(|&&k| k >= 0).map(|&k| k as usize % b.atom_count()).collect())),
            // only cofinite supports give finite quotients
            Backend::FiniteCofinite(u) => IdealDesc::definable(
                BoolElem::Cofinite(s.iter().copied().filter(|&k| u.contains(k)).collect::<BTreeSet<i64>>()),
                if low { Height::FiniteOnly } else { Height::Full },
            ),
        };
        let q = quotient(&b, &i).unwrap();
        let c = |e: &BoolElem| q.class_of(e);
        prop_assert_eq!(c(&x.meet(&y)), c(&x).meet(&c(&y)));
        prop_assert_eq!(c(&x.join(&y)), c(&x).join(&c(&y)));
        prop_assert_eq!(c(&x.diff(&y)), c(&x).diff(&c(&y)));
        // the ideal is exactly the kernel of the class map
        prop_assert_eq!(c(&x).is_empty(), i.contains(&x));
    }
}

#[test]
fn mixed_backends_are_rejected() {
    let a = BoolElem::atoms([0]);
    let f = BoolElem::finite([0]);
    assert!(boolean_ops(&a, &f, BoolOp::Meet).is_err());
}
