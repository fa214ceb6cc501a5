use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Backend, BoolElem, BoolError, Universe};

/// Height of a definable ideal on the finite/cofinite backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    /// Only the finite subsets of the support.
    FiniteOnly,
    /// Every element below the support.
    Full,
}

/// A representable ideal.
///
/// `Principal(A)` is `I_A = {B : B ⊆ A}`. On the cofinite backend ideals are
/// `Definable(S, h)`: with `h = Full` this is `I_S`, with `h = FiniteOnly` it
/// is the set of finite subsets of `S`. Use [`IdealDesc::principal`] and
/// [`IdealDesc::definable`] to get canonical descriptions; the cofinite
/// backend always uses `Definable`, and a finite support always has height
/// `Full`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealDesc {
    /// `I_A` on the finite backend.
    Principal(BoolElem),
    /// Definable ideal on the cofinite backend.
    Definable {
        /// Union of the ideal's atoms.
        support: BoolElem,
        /// Whether infinite members are allowed.
        height: Height,
    },
}

impl IdealDesc {
    /// Canonical `I_A`.
    pub fn principal(a: BoolElem) -> IdealDesc {
        match a {
            BoolElem::Atoms(_) => IdealDesc::Principal(a),
            _ => IdealDesc::Definable { support: a, height: Height::Full },
        }
    }

    /// Canonical definable ideal.
    pub fn definable(support: BoolElem, height: Height) -> IdealDesc {
        match support {
            BoolElem::Atoms(_) => IdealDesc::Principal(support),
            BoolElem::Finite(_) => IdealDesc::Definable { support, height: Height::Full },
            BoolElem::Cofinite(_) => IdealDesc::Definable { support, height },
        }
    }

    /// The zero ideal of a backend.
    pub fn trivial(backend: &Backend) -> IdealDesc {
        IdealDesc::principal(backend.bottom())
    }

    /// The whole algebra.
    pub fn whole(backend: &Backend) -> IdealDesc {
        IdealDesc::principal(backend.top())
    }

    /// Union of all members.
    pub fn support(&self) -> &BoolElem {
        match self {
            IdealDesc::Principal(a) => a,
            IdealDesc::Definable { support, .. } => support,
        }
    }

    /// Whether infinite members are excluded.
    pub fn finite_only(&self) -> bool {
        matches!(self, IdealDesc::Definable { height: Height::FiniteOnly, .. })
    }

    /// Membership `A ∈ I`.
    pub fn contains(&self, a: &BoolElem) -> bool {
        if self.finite_only() && a.is_cofinite() {
            return false;
        }
        a.leq(self.support())
    }

    /// Whether this is the zero ideal.
    pub fn is_trivial(&self) -> bool {
        self.support().is_empty()
    }

    /// Whether this is the whole algebra.
    pub fn is_whole(&self, backend: &Backend) -> bool {
        !self.finite_only() && backend.top().leq(self.support())
    }

    /// Inclusion of ideals.
    pub fn included_in(&self, other: &IdealDesc) -> bool {
        let (s, t) = (self.support(), other.support());
        match (self.finite_only(), other.finite_only()) {
            (false, true) => !s.is_cofinite() && s.leq(t),
            _ => s.leq(t),
        }
    }

    /// Smallest ideal containing both.
    pub fn join(&self, other: &IdealDesc) -> IdealDesc {
        let s = self.support().join(other.support());
        let fin_a = self.finite_only();
        let fin_b = other.finite_only();
        let full_cof = |d: &IdealDesc| !d.finite_only() && d.support().is_cofinite();
        // a full ideal with cofinite support absorbs the finite part of the other
        let height =
            if (!fin_a && !fin_b) || full_cof(self) || full_cof(other) { Height::Full } else { Height::FiniteOnly };
        IdealDesc::definable(s, height)
    }

    /// Check that the description is an ideal of `backend`.
    pub fn check(&self, backend: &Backend) -> Result<(), BoolError> {
        match (self, backend) {
            (IdealDesc::Principal(a), Backend::FiniteAtoms(_)) => backend.check(a),
            (IdealDesc::Definable { support, .. }, Backend::FiniteCofinite(_)) => backend.check(support),
            (IdealDesc::Principal(_), _) => {
                Err(BoolError::NotAnIdeal(String::from("principal description on the cofinite backend")))
            }
            (IdealDesc::Definable { .. }, _) => {
                Err(BoolError::NotAnIdeal(String::from("definable description on the finite backend")))
            }
        }
    }
}

/// A finite quotient algebra `B/I` with its class map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// The quotient algebra, always a finite backend.
    pub backend: Backend,
    source: Backend,
    kind: QuotientKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum QuotientKind {
    /// Surviving atom positions of the source, in quotient order.
    Atoms(Vec<usize>),
    /// Surviving indices, plus the position of the class of the support if it survives.
    Indices { points: Vec<(i64, usize)>, tail: Option<usize>, support: BoolElem },
}

fn bracket(s: &str) -> String {
    format!("[{s}]")
}

/// Quotient of a backend by an ideal.
///
/// On the finite backend the atoms not under the generator survive. On the
/// cofinite backend the quotient is finite exactly when the support is
/// cofinite; for `FiniteOnly` height the support itself survives as one extra
/// atom.
pub fn quotient(backend: &Backend, ideal: &IdealDesc) -> Result<Quotient, BoolError> {
    ideal.check(backend)?;
    match backend {
        Backend::FiniteAtoms(names) => {
            let g = ideal.support().atom_set();
            let keep: Vec<usize> = (0..names.len()).filter(|i| !g.contains(i)).collect();
            let new = Backend::finite_atoms(keep.iter().map(|&i| bracket(&names[i])))?;
            let order: Vec<usize> = new
                .atoms()
                .iter()
                .map(|n| keep[keep.iter().position(|&i| bracket(&names[i]) == *n).unwrap()])
                .collect();
            Ok(Quotient { backend: new, source: backend.clone(), kind: QuotientKind::Atoms(order) })
        }
        Backend::FiniteCofinite(u) => {
            let support = ideal.support().clone();
            let outside = match &support {
                BoolElem::Cofinite(f) => f.clone(),
                _ => {
                    return Err(BoolError::UnsupportedQuotient(String::from(
                        "the support is finite, so infinitely many atoms survive",
                    )))
                }
            };
            let mut names: Vec<(String, Option<i64>)> =
                outside.iter().map(|&i| (bracket(&format!("{i}")), Some(i))).collect();
            if ideal.finite_only() {
                names.push((tail_name(*u, &outside), None));
            }
            names.sort();
            let new = Backend::finite_atoms(names.iter().map(|(n, _)| n.clone()))?;
            let points = names.iter().enumerate().filter_map(|(k, (_, i))| i.map(|i| (i, k))).collect();
            let tail = names.iter().position(|(_, i)| i.is_none());
            Ok(Quotient {
                backend: new,
                source: backend.clone(),
                kind: QuotientKind::Indices { points, tail, support },
            })
        }
    }
}

fn tail_name(u: Universe, outside: &BTreeSet<i64>) -> String {
    if outside.is_empty() {
        bracket(u.name())
    } else {
        let inner: Vec<String> = outside.iter().map(|i| format!("{i}")).collect();
        format!("[{}\\{{{}}}]", u.name(), inner.join(","))
    }
}

impl Quotient {
    /// The backend that was divided.
    pub fn source(&self) -> &Backend {
        &self.source
    }

    /// Canonical representative of the class `[A]`.
    pub fn class_of(&self, a: &BoolElem) -> BoolElem {
        match &self.kind {
            QuotientKind::Atoms(order) => {
                let s = a.atom_set();
                BoolElem::atoms(order.iter().enumerate().filter(|(_, i)| s.contains(i)).map(|(k, _)| k))
            }
            QuotientKind::Indices { points, tail, support } => {
                let mut out: BTreeSet<usize> =
                    points.iter().filter(|(i, _)| a.contains_index(*i)).map(|&(_, k)| k).collect();
                if let Some(t) = tail {
                    // a cofinite A differs from the support by finitely many points of it
                    if a.is_cofinite() && support.is_cofinite() {
                        out.insert(*t);
                    }
                }
                BoolElem::Atoms(out)
            }
        }
    }

    /// Source element representing a quotient atom.
    pub fn representative(&self, atom: usize) -> BoolElem {
        match &self.kind {
            QuotientKind::Atoms(order) => BoolElem::atoms([order[atom]]),
            QuotientKind::Indices { points, tail, support } => {
                if *tail == Some(atom) {
                    support.clone()
                } else {
                    let i = points.iter().find(|(_, k)| *k == atom).map(|(i, _)| *i).unwrap();
                    BoolElem::finite([i])
                }
            }
        }
    }
}
