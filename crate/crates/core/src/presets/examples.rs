//! The four reference systems used throughout the docs and tests.

use alloc::vec;

use crate::boolean::{Backend, BoolElem, Universe};
use crate::dynamics::{window, System, Tail};

/// Atoms `{u,v}`, `θ_a: u↦{u}`, `θ_b: u↦{v}`; `v` is a sink.
pub fn s1() -> System {
    System::finite(&["u", "v"], &[("a", &[("u", &["u"])]), ("b", &[("u", &["v"])])]).expect("valid")
}

/// One atom `w`, labels `b`, `c` acting as the identity.
pub fn s2() -> System {
    System::finite(&["w"], &[("b", &[("w", &["w"])]), ("c", &[("w", &["w"])])]).expect("valid")
}

/// One atom `x`, one identity label `a`.
pub fn s3() -> System {
    System::finite(&["x"], &[("a", &[("x", &["x"])])]).expect("valid")
}

/// Integers; `a` fixes 0 and kills the rest, `b` shifts up, `c` shifts down.
pub fn s4() -> System {
    let f = |i: i64| BoolElem::finite([i]);
    System::new(
        Backend::FiniteCofinite(Universe::Integers),
        vec![
            ("a".into(), window(&[(0, f(0))], Tail::Kill, 1)),
            ("b".into(), window(&[(-1, f(0)), (0, f(1)), (1, f(2))], Tail::Shift(1), 1)),
            ("c".into(), window(&[(-1, f(-2)), (0, f(-1)), (1, f(0))], Tail::Shift(-1), 1)),
        ],
    )
    .expect("valid")
}

/// `{w} ∪ N` with `w` as index 0: `θ_α({w}) = N` and `θ_α` kills every other point.
///
/// Every edge of the topological graph ends at `w`.
pub fn into_one_vertex() -> System {
    System::new(
        Backend::FiniteCofinite(Universe::Naturals),
        vec![("α".into(), window(&[(0, BoolElem::cofinite([0]))], Tail::Kill, 0))],
    )
    .expect("valid")
}
