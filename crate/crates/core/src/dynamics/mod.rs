//! Boolean dynamical systems: one Boolean homomorphism per label.
//!
//! Words are sequences of label positions and are applied left to right: the
//! first letter acts first. The empty word acts as the identity.

mod action;
mod validate;

pub use action::{ActionSpec, Tail};
pub use validate::{validate_system, ValidationReport, Violation};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::boolean::{AtomSet, Backend, BoolElem, BoolError, Ultrafilter, Universe};

/// A finite word of label positions.
pub type Word = Vec<usize>;

/// Per-label table for [`System::finite`]: each source atom with its image atoms.
pub type AtomTable<'a> = &'a [(&'a str, &'a [&'a str])];

/// Errors raised while building or querying a system.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DynError {
    /// Boolean-layer error.
    #[error(transparent)]
    Bool(#[from] BoolError),
    /// A label identifier was repeated.
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    /// A referenced label does not exist.
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    /// A referenced atom does not exist.
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    /// The action kind does not fit the backend.
    #[error("action for `{0}` does not match the backend")]
    ActionKind(String),
    /// The system failed validation.
    #[error("invalid system: {0}")]
    Invalid(ValidationReport),
    /// Δ of the empty set was requested.
    #[error("Δ is only defined for nonempty elements")]
    EmptyArgument,
}

/// A Boolean dynamical system `(B, L, θ)` with finitely many labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    backend: Backend,
    labels: Vec<String>,
    actions: Vec<ActionSpec>,
}

impl System {
    /// Build and validate a system. Labels are sorted lexicographically.
    pub fn new(backend: Backend, actions: Vec<(String, ActionSpec)>) -> Result<System, DynError> {
        let sys = System::new_unchecked(backend, actions)?;
        let report = validate_system(&sys);
        if report.is_valid() {
            Ok(sys)
        } else {
            Err(DynError::Invalid(report))
        }
    }

    /// Build a system, checking only its shape. Run [`validate_system`] for the semantic laws.
    pub fn new_unchecked(backend: Backend, mut actions: Vec<(String, ActionSpec)>) -> Result<System, DynError> {
        actions.sort_by(|a, b| a.0.cmp(&b.0));
        for w in actions.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(DynError::DuplicateLabel(w[0].0.clone()));
            }
        }
        for (name, spec) in &actions {
            let ok = match (&backend, spec) {
                (Backend::FiniteAtoms(v), ActionSpec::Atoms(img)) => img.len() == v.len(),
                (Backend::FiniteCofinite(_), ActionSpec::Window { .. }) => true,
                _ => false,
            };
            if !ok {
                return Err(DynError::ActionKind(name.clone()));
            }
        }
        let (labels, actions) = actions.into_iter().unzip();
        Ok(System { backend, labels, actions })
    }

    /// Finite-backend system from identifier tables.
    ///
    /// `actions` lists, per label, the nonempty atom images; missing atoms map to `∅`.
    pub fn finite(atoms: &[&str], actions: &[(&str, AtomTable<'_>)]) -> Result<System, DynError> {
        let backend = Backend::finite_atoms(atoms.iter().copied())?;
        let mut specs = Vec::new();
        for (label, table) in actions {
            let mut img = alloc::vec![AtomSet::new(); backend.atom_count()];
            for (src, targets) in table.iter() {
                let s = backend.atom_index(src).ok_or_else(|| DynError::UnknownAtom((*src).into()))?;
                for t in targets.iter() {
                    let t = backend.atom_index(t).ok_or_else(|| DynError::UnknownAtom((*t).into()))?;
                    img[s].insert(t);
                }
            }
            specs.push((String::from(*label), ActionSpec::Atoms(img)));
        }
        System::new(backend, specs)
    }

    /// The algebra backend.
    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    /// Sorted label identifiers.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of labels.
    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    /// Action of a label position.
    pub fn action(&self, label: usize) -> &ActionSpec {
        &self.actions[label]
    }

    /// Position of a label identifier.
    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(name)).ok()
    }

    /// Number of atoms (finite backend).
    pub fn atom_count(&self) -> usize {
        self.backend.atom_count()
    }

    /// Top element.
    pub fn top(&self) -> BoolElem {
        self.backend.top()
    }

    /// Empty element.
    pub fn bottom(&self) -> BoolElem {
        self.backend.bottom()
    }

    /// Whether this is a finite-backend system.
    pub fn is_finite(&self) -> bool {
        !self.backend.is_cofinite()
    }

    fn universe(&self) -> Universe {
        self.backend.universe().expect("cofinite backend")
    }

    /// `θ_label(A)`.
    pub fn apply(&self, label: usize, a: &BoolElem) -> BoolElem {
        match &self.backend {
            Backend::FiniteCofinite(u) => self.actions[label].apply_indices(*u, a),
            Backend::FiniteAtoms(_) => self.actions[label].apply_atoms(a.atom_set()),
        }
    }

    /// `θ_α(A)`, first letter first.
    pub fn apply_word(&self, word: &[usize], a: &BoolElem) -> BoolElem {
        let mut cur = a.clone();
        for &l in word {
            if cur.is_empty() {
                break;
            }
            cur = self.apply(l, &cur);
        }
        cur
    }

    /// Image of the atom at position `a` (finite backend).
    pub fn atom_image(&self, label: usize, a: usize) -> &AtomSet {
        match &self.actions[label] {
            ActionSpec::Atoms(img) => &img[a],
            ActionSpec::Window { .. } => panic!("atom images need the finite backend"),
        }
    }

    /// Image of the singleton `{i}` (cofinite backend).
    pub fn index_image(&self, label: usize, i: i64) -> BoolElem {
        self.actions[label].index_image(i)
    }

    /// Range `R_α = θ_α(top)`. `R_∅` is the top.
    pub fn range(&self, word: &[usize]) -> BoolElem {
        self.apply_word(word, &self.top())
    }

    /// Domain `D_α`: the join of the atoms with a nonempty image.
    pub fn domain(&self, label: usize) -> BoolElem {
        match &self.actions[label] {
            ActionSpec::Atoms(img) => BoolElem::atoms((0..img.len()).filter(|&i| !img[i].is_empty())),
            ActionSpec::Window { exceptions, tail, bound } => {
                let u = self.universe();
                let live = |i: &i64| exceptions.get(i).is_some_and(|e| !e.is_empty());
                match tail {
                    Tail::Shift(_) => BoolElem::cofinite(u.range(-bound, *bound).filter(|i| !live(i))),
                    Tail::Kill => BoolElem::finite(u.range(-bound, *bound).filter(live)),
                }
            }
        }
    }

    /// `Δ_A`: labels with a nonempty image of `A`.
    pub fn delta(&self, a: &BoolElem) -> Result<Vec<usize>, DynError> {
        if a.is_empty() {
            return Err(DynError::EmptyArgument);
        }
        Ok(self.delta_unchecked(a))
    }

    fn delta_unchecked(&self, a: &BoolElem) -> Vec<usize> {
        (0..self.labels.len()).filter(|&l| !self.apply(l, a).is_empty()).collect()
    }

    /// `Δ^n_A`: words of length `n` with a nonempty image of `A`, in lexicographic order.
    pub fn delta_n(&self, a: &BoolElem, n: usize) -> Result<Vec<Word>, DynError> {
        if a.is_empty() {
            return Err(DynError::EmptyArgument);
        }
        let mut level: Vec<(Word, BoolElem)> = alloc::vec![(Word::new(), a.clone())];
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, b) in &level {
                for l in 0..self.labels.len() {
                    let img = self.apply(l, b);
                    if !img.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(l);
                        next.push((w2, img));
                    }
                }
            }
            level = next;
        }
        Ok(level.into_iter().map(|(w, _)| w).collect())
    }

    /// `λ_A = |Δ_A|`.
    pub fn lambda(&self, a: &BoolElem) -> Result<usize, DynError> {
        Ok(self.delta(a)?.len())
    }

    /// Largest absolute index mentioned by any action (cofinite backend).
    /// Beyond it every label acts through its tail rule.
    pub fn explicit_radius(&self) -> i64 {
        self.actions
            .iter()
            .map(|a| match a {
                ActionSpec::Window { exceptions, bound, .. } => {
                    exceptions.iter().map(|(k, v)| k.abs().max(v.radius())).max().unwrap_or(0).max(*bound)
                }
                ActionSpec::Atoms(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Largest absolute shift among the tail rules.
    pub fn max_shift(&self) -> i64 {
        self.actions
            .iter()
            .map(|a| match a {
                ActionSpec::Window { tail: Tail::Shift(t), .. } => t.abs(),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Labels with a shift tail; these are exactly `Δ` of any far atom.
    pub fn shift_labels(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&l| matches!(self.actions[l], ActionSpec::Window { tail: Tail::Shift(_), .. }))
            .collect()
    }

    /// Indices that represent every distinct one-step behaviour of atoms:
    /// all of `[-(r+1), r+1]` where `r = max(explicit radius, extra) + max shift`.
    pub fn probe_indices(&self, extra: i64) -> Vec<i64> {
        let r = self.explicit_radius().max(extra) + self.max_shift() + 1;
        self.universe().range(-r, r).collect()
    }

    /// Whether `A` is regular: every atom under `A` has `λ ≥ 1`.
    pub fn is_regular(&self, a: &BoolElem) -> bool {
        self.singular_part(a).is_empty()
    }

    /// Join of the atoms under `A` with `λ = 0`.
    pub fn singular_part(&self, a: &BoolElem) -> BoolElem {
        match a {
            BoolElem::Atoms(s) => BoolElem::atoms(
                s.iter().copied().filter(|&i| (0..self.labels.len()).all(|l| self.atom_image(l, i).is_empty())),
            ),
            BoolElem::Finite(s) => BoolElem::finite(s.iter().copied().filter(|&i| self.index_lambda(i) == 0)),
            BoolElem::Cofinite(e) => {
                let k = self.explicit_radius();
                let u = self.universe();
                let inner = u.range(-k, k).filter(|i| !e.contains(i));
                if self.shift_labels().is_empty() {
                    // far atoms are singular
                    let regular = inner.filter(|&i| self.index_lambda(i) > 0);
                    a.diff(&BoolElem::finite(regular))
                } else {
                    BoolElem::finite(inner.filter(|&i| self.index_lambda(i) == 0))
                }
            }
        }
    }

    fn index_lambda(&self, i: i64) -> usize {
        (0..self.labels.len()).filter(|&l| !self.index_image(l, i).is_empty()).count()
    }

    /// Join of all regular atoms.
    pub fn regular_atoms(&self) -> BoolElem {
        let top = self.top();
        top.diff(&self.singular_part(&top))
    }

    /// Local finiteness. Always true: label sets are finite.
    pub fn is_locally_finite(&self) -> bool {
        true
    }

    /// Atoms of a finite-backend element.
    pub fn atoms_of<'a>(&self, a: &'a BoolElem) -> impl Iterator<Item = usize> + 'a {
        a.atom_set().iter().copied()
    }

    /// The ultrafilter `θ̂_label(ξ) = {A : θ_label(A) ∈ ξ}`, when `ξ` lies over `R_label`.
    pub fn pullback(&self, label: usize, xi: Ultrafilter) -> Option<Ultrafilter> {
        match (&self.actions[label], xi) {
            (ActionSpec::Atoms(img), Ultrafilter::Atom(b)) => {
                img.iter().position(|s| s.contains(&b)).map(Ultrafilter::Atom)
            }
            (ActionSpec::Window { exceptions, tail, bound }, Ultrafilter::Index(j)) => {
                if let Some((&i, _)) = exceptions.iter().find(|(_, e)| e.contains_index(j)) {
                    return Some(Ultrafilter::Index(i));
                }
                match tail {
                    Tail::Shift(t) => {
                        let i = j - t;
                        (i.abs() > *bound && self.universe().contains(i)).then_some(Ultrafilter::Index(i))
                    }
                    Tail::Kill => None,
                }
            }
            (ActionSpec::Window { exceptions, tail, .. }, Ultrafilter::AtInfinity) => {
                if let Some((&i, _)) = exceptions.iter().find(|(_, e)| e.is_cofinite()) {
                    return Some(Ultrafilter::Index(i));
                }
                match tail {
                    Tail::Shift(_) => Some(Ultrafilter::AtInfinity),
                    Tail::Kill => None,
                }
            }
            _ => None,
        }
    }

    /// Out-edges of an atom in the atom graph: `(label, b)` with `b ⊆ θ_label(a)`.
    pub fn successors(&self, a: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for l in 0..self.labels.len() {
            for &b in self.atom_image(l, a) {
                out.push((l, b));
            }
        }
        out
    }

    /// Word as text: letters concatenated when all labels are one character, comma-separated otherwise.
    pub fn word_str(&self, word: &[usize]) -> String {
        let single = self.labels.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&l| self.labels[l].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Parse a word: comma or space separated labels, or a run of labels matched greedily.
    pub fn parse_word(&self, text: &str) -> Result<Word, DynError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::new());
        }
        if text.contains(|c: char| c == ',' || c.is_whitespace()) {
            return text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| self.label_index(s).ok_or_else(|| DynError::UnknownLabel(s.into())))
                .collect();
        }
        let mut rest = text;
        let mut out = Word::new();
        while !rest.is_empty() {
            let best = (0..self.labels.len())
                .filter(|&l| rest.starts_with(self.labels[l].as_str()))
                .max_by_key(|&l| self.labels[l].len());
            match best {
                Some(l) => {
                    out.push(l);
                    rest = &rest[self.labels[l].len()..];
                }
                None => return Err(DynError::UnknownLabel(rest.into())),
            }
        }
        Ok(out)
    }
}

/// Cofinite-backend action table builder helper: `(index, image)` pairs.
pub fn window(entries: &[(i64, BoolElem)], tail: Tail, bound: i64) -> ActionSpec {
    let exceptions: BTreeMap<i64, BoolElem> = entries.iter().cloned().collect();
    ActionSpec::Window { exceptions, tail, bound }
}

/// Set of atoms from identifier names; unknown names are an error.
pub fn atoms_named(backend: &Backend, names: &[&str]) -> Result<BoolElem, DynError> {
    let mut s = BTreeSet::new();
    for n in names {
        s.insert(backend.atom_index(n).ok_or_else(|| DynError::UnknownAtom((*n).into()))?);
    }
    Ok(BoolElem::Atoms(s))
}
