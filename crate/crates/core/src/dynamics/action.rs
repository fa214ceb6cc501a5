use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::boolean::{AtomSet, BoolElem, Universe};

/// Behaviour of a cofinite-backend action outside its window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    /// `{i} ↦ {i + t}`.
    Shift(i64),
    /// `{i} ↦ ∅`.
    Kill,
}

/// The action of one label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ActionSpec {
    /// Finite backend: the image of each atom, indexed by atom position.
    Atoms(Vec<AtomSet>),
    /// Cofinite backend. For `|i| ≤ bound` the image of `{i}` is
    /// `exceptions[i]` (empty when absent); beyond it the tail rule applies.
    Window {
        /// Images of the window indices.
        exceptions: BTreeMap<i64, BoolElem>,
        /// Rule outside the window.
        tail: Tail,
        /// Window half-width `N`.
        bound: i64,
    },
}

/// `{i + t : i ∈ U, |i| > n}`.
pub(crate) fn tail_range(u: Universe, n: i64, t: i64) -> BoolElem {
    match u {
        Universe::Integers => BoolElem::cofinite((t - n)..=(t + n)),
        Universe::Naturals => BoolElem::cofinite(0..=(n + t)),
    }
}

impl ActionSpec {
    pub(crate) fn apply_atoms(&self, a: &AtomSet) -> BoolElem {
        match self {
            ActionSpec::Atoms(img) => {
                let mut out = AtomSet::new();
                for &i in a {
                    out.extend(img[i].iter().copied());
                }
                BoolElem::Atoms(out)
            }
            ActionSpec::Window { .. } => panic!("window action applied to an atom set"),
        }
    }

    /// Image of the singleton `{i}` on the cofinite backend.
    pub fn index_image(&self, i: i64) -> BoolElem {
        match self {
            ActionSpec::Window { exceptions, tail, bound } => {
                if i.abs() <= *bound {
                    exceptions.get(&i).cloned().unwrap_or_else(|| BoolElem::finite([]))
                } else {
                    match tail {
                        Tail::Shift(t) => BoolElem::finite([i + t]),
                        Tail::Kill => BoolElem::finite([]),
                    }
                }
            }
            ActionSpec::Atoms(_) => panic!("index image needs a window action"),
        }
    }

    pub(crate) fn apply_indices(&self, u: Universe, a: &BoolElem) -> BoolElem {
        let ActionSpec::Window { exceptions, tail, bound } = self else {
            panic!("atom action applied to an index set")
        };
        match a {
            BoolElem::Finite(s) => {
                let mut out = BoolElem::finite([]);
                for &i in s {
                    out = out.join(&self.index_image(i));
                }
                out
            }
            BoolElem::Cofinite(e) => {
                let mut out = BoolElem::finite([]);
                for i in u.range(-bound, *bound) {
                    if !e.contains(&i) {
                        if let Some(img) = exceptions.get(&i) {
                            out = out.join(img);
                        }
                    }
                }
                if let Tail::Shift(t) = tail {
                    let removed: BTreeSet<i64> = e.iter().filter(|i| i.abs() > *bound).map(|i| i + t).collect();
                    out = out.join(&tail_range(u, *bound, *t).diff(&BoolElem::Finite(removed)));
                }
                out
            }
            BoolElem::Atoms(_) => panic!("atom set on the cofinite backend"),
        }
    }

    /// The composite action "`self` first, then `next`", normalised to a window action.
    pub fn then(&self, next: &ActionSpec, u: Universe) -> ActionSpec {
        let (ActionSpec::Window { tail: t1, bound: n1, .. }, ActionSpec::Window { tail: t2, bound: n2, .. }) =
            (self, next)
        else {
            panic!("composition of window actions only")
        };
        let (bound, tail) = match (t1, t2) {
            (Tail::Shift(a), Tail::Shift(b)) => ((*n1).max(n2 + a.abs()), Tail::Shift(a + b)),
            (Tail::Shift(a), Tail::Kill) => ((*n1).max(n2 + a.abs()), Tail::Kill),
            (Tail::Kill, _) => (*n1, Tail::Kill),
        };
        let mut exceptions = BTreeMap::new();
        for i in u.range(-bound, bound) {
            let img = next.apply_indices(u, &self.index_image(i));
            if !img.is_empty() {
                exceptions.insert(i, img);
            }
        }
        ActionSpec::Window { exceptions, tail, bound }
    }
}
