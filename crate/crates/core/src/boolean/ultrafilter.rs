use super::{Backend, BoolElem, Universe};

/// An ultrafilter of one of the two backends.
///
/// On the finite backend every ultrafilter is principal. On the
/// finite/cofinite backend there is additionally the ultrafilter of cofinite
/// sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ultrafilter {
    /// Principal ultrafilter at an atom position.
    Atom(usize),
    /// Principal ultrafilter at an index.
    Index(i64),
    /// The cofinite sets.
    AtInfinity,
}

impl Ultrafilter {
    /// Membership `A ∈ ξ`.
    pub fn contains(&self, a: &BoolElem) -> bool {
        match (self, a) {
            (Ultrafilter::Atom(i), BoolElem::Atoms(s)) => s.contains(i),
            (Ultrafilter::Index(i), BoolElem::Finite(_) | BoolElem::Cofinite(_)) => a.contains_index(*i),
            (Ultrafilter::AtInfinity, BoolElem::Finite(_)) => false,
            (Ultrafilter::AtInfinity, BoolElem::Cofinite(_)) => true,
            _ => false,
        }
    }

    /// The smallest element of the ultrafilter, if it is principal.
    pub fn generator(&self) -> Option<BoolElem> {
        match self {
            Ultrafilter::Atom(i) => Some(BoolElem::atoms([*i])),
            Ultrafilter::Index(i) => Some(BoolElem::finite([*i])),
            Ultrafilter::AtInfinity => None,
        }
    }
}

/// Restartable, deterministic stream of the ultrafilters of a backend.
///
/// The finite backend yields one principal ultrafilter per atom in atom order.
/// The cofinite backend yields `AtInfinity` first, then the principal
/// ultrafilters in the universe's streaming order.
#[derive(Clone, Debug)]
pub struct UltrafilterStream {
    kind: StreamKind,
    pos: u64,
}

#[derive(Clone, Debug)]
enum StreamKind {
    Atoms(usize),
    Indices(Universe),
}

/// Stream of all ultrafilters of `backend`.
pub fn ultrafilters(backend: &Backend) -> UltrafilterStream {
    let kind = match backend {
        Backend::FiniteAtoms(v) => StreamKind::Atoms(v.len()),
        Backend::FiniteCofinite(u) => StreamKind::Indices(*u),
    };
    UltrafilterStream { kind, pos: 0 }
}

impl Iterator for UltrafilterStream {
    type Item = Ultrafilter;

    fn next(&mut self) -> Option<Ultrafilter> {
        let k = self.pos;
        match self.kind {
            StreamKind::Atoms(n) => {
                if (k as usize) < n {
                    self.pos += 1;
                    Some(Ultrafilter::Atom(k as usize))
                } else {
                    None
                }
            }
            StreamKind::Indices(u) => {
                self.pos += 1;
                if k == 0 {
                    Some(Ultrafilter::AtInfinity)
                } else {
                    Some(Ultrafilter::Index(u.nth(k - 1)))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn finite_backend_has_one_per_atom() {
        let b = Backend::finite_atoms(["u", "v"]).unwrap();
        let v: Vec<_> = ultrafilters(&b).collect();
        assert_eq!(v, [Ultrafilter::Atom(0), Ultrafilter::Atom(1)]);
    }

    #[test]
    fn point_at_infinity_membership() {
        assert!(!Ultrafilter::AtInfinity.contains(&BoolElem::finite([3, 5])));
        assert!(Ultrafilter::AtInfinity.contains(&BoolElem::cofinite([0])));
        assert!(!Ultrafilter::Index(0).contains(&BoolElem::cofinite([0])));
    }
}
