//! Boolean algebras as computable fields of sets.
//!
//! Two backends are supported. [`Backend::FiniteAtoms`] is the powerset of a
//! finite, lexicographically ordered atom list; elements are sets of atom
//! positions. [`Backend::FiniteCofinite`] is the algebra of finite and
//! cofinite subsets of `N` or `Z`; an element is stored by its finite
//! exception set.

mod ideal;
mod ultrafilter;

pub use ideal::{quotient, Height, IdealDesc, Quotient};
pub use ultrafilter::{ultrafilters, Ultrafilter, UltrafilterStream};

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A set of atom positions for the finite backend.
pub type AtomSet = BTreeSet<usize>;

/// Errors raised by the Boolean layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoolError {
    /// The two operands live in different backends.
    #[error("backend mismatch between operands")]
    BackendMismatch,
    /// Atom identifiers were repeated.
    #[error("duplicate atom identifier `{0}`")]
    DuplicateAtom(String),
    /// An element does not belong to the backend (unknown atom or index outside the universe).
    #[error("element is not valid in this backend")]
    InvalidElement,
    /// The ideal description is not an ideal of this backend.
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    /// The quotient is not a finite algebra.
    #[error("unsupported quotient: {0}")]
    UnsupportedQuotient(String),
}

/// Index universe of the finite/cofinite backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Universe {
    /// `{0, 1, 2, ...}`
    Naturals,
    /// All integers.
    Integers,
}

impl Universe {
    /// Whether `i` is an index of the universe.
    pub fn contains(self, i: i64) -> bool {
        match self {
            Universe::Naturals => i >= 0,
            Universe::Integers => true,
        }
    }

    /// Short name, `N` or `Z`.
    pub fn name(self) -> &'static str {
        match self {
            Universe::Naturals => "N",
            Universe::Integers => "Z",
        }
    }

    /// The `k`-th index in streaming order: `0,1,2,...` on `N` and
    /// `0,1,-1,2,-2,...` on `Z`.
    pub fn nth(self, k: u64) -> i64 {
        match self {
            Universe::Naturals => k as i64,
            Universe::Integers => {
                let h = k.div_ceil(2) as i64;
                if k % 2 == 1 {
                    h
                } else {
                    -h
                }
            }
        }
    }

    /// Indices of the universe in `[lo, hi]`.
    pub fn range(self, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
        let lo = match self {
            Universe::Naturals => lo.max(0),
            Universe::Integers => lo,
        };
        lo..=hi
    }
}

/// An algebra backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Powerset of a finite atom set, atoms sorted by identifier.
    FiniteAtoms(Vec<String>),
    /// Finite/cofinite subsets of a countable universe.
    FiniteCofinite(Universe),
}

/// An element of a Boolean algebra in canonical form.
///
/// `Finite({})` is the empty element of the cofinite backend and
/// `Cofinite({})` its top. For the finite backend the top is the full atom set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolElem {
    /// Subset of atom positions (finite backend).
    Atoms(AtomSet),
    /// Finite set of indices.
    Finite(BTreeSet<i64>),
    /// Complement of a finite set of indices.
    Cofinite(BTreeSet<i64>),
}

/// Binary operation selector for [`boolean_ops`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    /// Intersection.
    Meet,
    /// Union.
    Join,
    /// Relative complement.
    Diff,
    /// Inclusion test.
    Leq,
}

/// Result of [`boolean_ops`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpResult {
    /// An element.
    Elem(BoolElem),
    /// A truth value (for [`BoolOp::Leq`]).
    Bool(bool),
}

/// Checked binary operation.
pub fn boolean_ops(a: &BoolElem, b: &BoolElem, op: BoolOp) -> Result<OpResult, BoolError> {
    if a.is_atoms() != b.is_atoms() {
        return Err(BoolError::BackendMismatch);
    }
    Ok(match op {
        BoolOp::Meet => OpResult::Elem(a.meet(b)),
        BoolOp::Join => OpResult::Elem(a.join(b)),
        BoolOp::Diff => OpResult::Elem(a.diff(b)),
        BoolOp::Leq => OpResult::Bool(a.leq(b)),
    })
}

fn mismatch() -> ! {
    panic!("backend mismatch between Boolean operands")
}

impl BoolElem {
    /// Finite-backend element from atom positions.
    pub fn atoms<I: IntoIterator<Item = usize>>(it: I) -> Self {
        BoolElem::Atoms(it.into_iter().collect())
    }

    /// Finite set of indices.
    pub fn finite<I: IntoIterator<Item = i64>>(it: I) -> Self {
        BoolElem::Finite(it.into_iter().collect())
    }

    /// Complement of a finite set of indices.
    pub fn cofinite<I: IntoIterator<Item = i64>>(it: I) -> Self {
        BoolElem::Cofinite(it.into_iter().collect())
    }

    fn is_atoms(&self) -> bool {
        matches!(self, BoolElem::Atoms(_))
    }

    /// Whether this is the empty element.
    pub fn is_empty(&self) -> bool {
        match self {
            BoolElem::Atoms(s) => s.is_empty(),
            BoolElem::Finite(s) => s.is_empty(),
            BoolElem::Cofinite(_) => false,
        }
    }

    /// Whether the element is cofinite.
    pub fn is_cofinite(&self) -> bool {
        matches!(self, BoolElem::Cofinite(_))
    }

    /// The empty element of the same backend kind.
    pub fn empty_like(&self) -> BoolElem {
        match self {
            BoolElem::Atoms(_) => BoolElem::Atoms(AtomSet::new()),
            _ => BoolElem::Finite(BTreeSet::new()),
        }
    }

    /// Intersection.
    pub fn meet(&self, other: &BoolElem) -> BoolElem {
        use BoolElem::*;
        match (self, other) {
            (Atoms(a), Atoms(b)) => Atoms(a.intersection(b).copied().collect()),
            (Finite(a), Finite(b)) => Finite(a.intersection(b).copied().collect()),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Finite(a.difference(b).copied().collect()),
            (Cofinite(a), Cofinite(b)) => Cofinite(a.union(b).copied().collect()),
            _ => mismatch(),
        }
    }

    /// Union.
    pub fn join(&self, other: &BoolElem) -> BoolElem {
        use BoolElem::*;
        match (self, other) {
            (Atoms(a), Atoms(b)) => Atoms(a.union(b).copied().collect()),
            (Finite(a), Finite(b)) => Finite(a.union(b).copied().collect()),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(b.difference(a).copied().collect()),
            (Cofinite(a), Cofinite(b)) => Cofinite(a.intersection(b).copied().collect()),
            _ => mismatch(),
        }
    }

    /// Relative complement `self ∖ other`.
    pub fn diff(&self, other: &BoolElem) -> BoolElem {
        use BoolElem::*;
        match (self, other) {
            (Atoms(a), Atoms(b)) => Atoms(a.difference(b).copied().collect()),
            (Finite(a), Finite(b)) => Finite(a.difference(b).copied().collect()),
            (Finite(a), Cofinite(b)) => Finite(a.intersection(b).copied().collect()),
            (Cofinite(a), Finite(b)) => Cofinite(a.union(b).copied().collect()),
            (Cofinite(a), Cofinite(b)) => Finite(b.difference(a).copied().collect()),
            _ => mismatch(),
        }
    }

    /// Inclusion `self ⊆ other`.
    pub fn leq(&self, other: &BoolElem) -> bool {
        use BoolElem::*;
        match (self, other) {
            (Atoms(a), Atoms(b)) => a.is_subset(b),
            (Finite(a), Finite(b)) => a.is_subset(b),
            (Finite(a), Cofinite(b)) => a.is_disjoint(b),
            (Cofinite(_), Finite(_)) => false,
            (Cofinite(a), Cofinite(b)) => b.is_subset(a),
            _ => mismatch(),
        }
    }

    /// Whether `self ∩ other ≠ ∅`.
    pub fn meets(&self, other: &BoolElem) -> bool {
        !self.meet(other).is_empty()
    }

    /// Membership of a single index (cofinite backend).
    pub fn contains_index(&self, i: i64) -> bool {
        match self {
            BoolElem::Finite(s) => s.contains(&i),
            BoolElem::Cofinite(s) => !s.contains(&i),
            BoolElem::Atoms(_) => mismatch(),
        }
    }

    /// Membership of a single atom position (finite backend).
    pub fn contains_atom(&self, a: usize) -> bool {
        match self {
            BoolElem::Atoms(s) => s.contains(&a),
            _ => mismatch(),
        }
    }

    /// Atom positions of a finite-backend element.
    pub fn atom_set(&self) -> &AtomSet {
        match self {
            BoolElem::Atoms(s) => s,
            _ => mismatch(),
        }
    }

    /// Largest absolute value among the explicitly stored indices.
    pub fn radius(&self) -> i64 {
        match self {
            BoolElem::Atoms(_) => 0,
            BoolElem::Finite(s) | BoolElem::Cofinite(s) => s.iter().map(|i| i.abs()).max().unwrap_or(0),
        }
    }
}

impl Backend {
    /// Finite backend on the given identifiers, sorted lexicographically.
    pub fn finite_atoms<I, S>(atoms: I) -> Result<Backend, BoolError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = atoms.into_iter().map(Into::into).collect();
        v.sort();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(BoolError::DuplicateAtom(w[0].clone()));
            }
        }
        Ok(Backend::FiniteAtoms(v))
    }

    /// Atom identifiers (empty for the cofinite backend).
    pub fn atoms(&self) -> &[String] {
        match self {
            Backend::FiniteAtoms(v) => v,
            Backend::FiniteCofinite(_) => &[],
        }
    }

    /// Number of atoms of the finite backend.
    pub fn atom_count(&self) -> usize {
        self.atoms().len()
    }

    /// Position of an atom identifier.
    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms().binary_search_by(|a| a.as_str().cmp(name)).ok()
    }

    /// Whether this is the finite/cofinite backend.
    pub fn is_cofinite(&self) -> bool {
        matches!(self, Backend::FiniteCofinite(_))
    }

    /// The universe of the cofinite backend.
    pub fn universe(&self) -> Option<Universe> {
        match self {
            Backend::FiniteCofinite(u) => Some(*u),
            Backend::FiniteAtoms(_) => None,
        }
    }

    /// Top element.
    pub fn top(&self) -> BoolElem {
        match self {
            Backend::FiniteAtoms(v) => BoolElem::Atoms((0..v.len()).collect()),
            Backend::FiniteCofinite(_) => BoolElem::Cofinite(BTreeSet::new()),
        }
    }

    /// Empty element.
    pub fn bottom(&self) -> BoolElem {
        match self {
            Backend::FiniteAtoms(_) => BoolElem::Atoms(AtomSet::new()),
            Backend::FiniteCofinite(_) => BoolElem::Finite(BTreeSet::new()),
        }
    }

    /// Complement relative to the top.
    pub fn complement(&self, a: &BoolElem) -> BoolElem {
        self.top().diff(a)
    }

    /// Whether `a` is a canonical element of this backend.
    pub fn is_valid(&self, a: &BoolElem) -> bool {
        match (self, a) {
            (Backend::FiniteAtoms(v), BoolElem::Atoms(s)) => s.iter().all(|&i| i < v.len()),
            (Backend::FiniteCofinite(u), BoolElem::Finite(s) | BoolElem::Cofinite(s)) => {
                s.iter().all(|&i| u.contains(i))
            }
            _ => false,
        }
    }

    /// Checked variant of [`Backend::is_valid`].
    pub fn check(&self, a: &BoolElem) -> Result<(), BoolError> {
        if self.is_valid(a) {
            Ok(())
        } else if self.is_cofinite() == a.is_atoms() {
            Err(BoolError::BackendMismatch)
        } else {
            Err(BoolError::InvalidElement)
        }
    }

    /// The singleton element of an atom position.
    pub fn atom(&self, a: usize) -> BoolElem {
        BoolElem::Atoms(core::iter::once(a).collect())
    }

    /// Elements of the finite backend, all `2^n` of them, in binary counting order.
    pub fn all_elements(&self) -> Vec<BoolElem> {
        let n = self.atom_count();
        assert!(n < 24, "too many atoms to enumerate");
        (0u32..(1u32 << n)).map(|mask| BoolElem::Atoms((0..n).filter(|i| mask >> i & 1 == 1).collect())).collect()
    }

    /// Render an element with atom identifiers.
    pub fn show<'a>(&'a self, a: &'a BoolElem) -> ShowElem<'a> {
        ShowElem { backend: self, elem: a }
    }
}

/// Display adapter returned by [`Backend::show`].
pub struct ShowElem<'a> {
    backend: &'a Backend,
    elem: &'a BoolElem,
}

impl fmt::Display for ShowElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, it: impl Iterator<Item = T>) -> fmt::Result {
            f.write_str("{")?;
            for (k, x) in it.enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")
        }
        match self.elem {
            BoolElem::Atoms(s) => {
                let names = self.backend.atoms();
                list(f, s.iter().map(|&i| names.get(i).map(String::as_str).unwrap_or("?")))
            }
            BoolElem::Finite(s) => list(f, s.iter()),
            BoolElem::Cofinite(s) => {
                f.write_str("~")?;
                list(f, s.iter())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_subset() {
        let b = Backend::finite_atoms(["u", "v"]).unwrap();
        let u = b.atom(0);
        assert_eq!(u.meet(&b.top()), u);
    }

    #[test]
    fn cofinite_canonical_forms() {
        let top = BoolElem::cofinite([]);
        assert_eq!(top.diff(&BoolElem::finite([0])), BoolElem::cofinite([0]));
        assert_eq!(BoolElem::finite([1]).join(&BoolElem::cofinite([1, 2])), BoolElem::cofinite([2]));
        assert!(BoolElem::finite([]).is_empty());
        assert!(!BoolElem::cofinite([]).is_empty());
    }

    #[test]
    fn checked_ops_reject_mixed_backends() {
        let r = boolean_ops(&BoolElem::atoms([0]), &BoolElem::finite([0]), BoolOp::Meet);
        assert_eq!(r, Err(BoolError::BackendMismatch));
        let r = boolean_ops(&BoolElem::finite([0]), &BoolElem::cofinite([]), BoolOp::Leq);
        assert_eq!(r, Ok(OpResult::Bool(true)));
    }

    #[test]
    fn integers_stream_order() {
        let v: Vec<i64> = (0..5).map(|k| Universe::Integers.nth(k)).collect();
        assert_eq!(v, [0, 1, -1, 2, -2]);
    }

    #[test]
    fn atoms_sorted_and_unique() {
        let b = Backend::finite_atoms(["w", "u", "v"]).unwrap();
        assert_eq!(b.atoms(), ["u", "v", "w"]);
        assert!(Backend::finite_atoms(["u", "u"]).is_err());
    }
}
