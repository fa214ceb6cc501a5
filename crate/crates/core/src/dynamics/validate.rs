use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::action::tail_range;
use super::{ActionSpec, System, Tail};
use crate::boolean::{Backend, BoolElem};

/// One failed law, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An image is not a canonical element of the backend.
    InvalidImage {
        /// Label identifier.
        label: String,
        /// Source atom or index.
        source: String,
    },
    /// Two distinct atoms have intersecting images.
    OverlappingImages {
        /// Label identifier.
        label: String,
        /// First source.
        first: String,
        /// Second source.
        second: String,
        /// Common part of the images.
        common: String,
    },
    /// An exception is listed outside the window `[-N, N]`.
    ExceptionOutsideWindow {
        /// Label identifier.
        label: String,
        /// Offending index.
        index: i64,
    },
    /// The window bound is negative.
    NegativeBound {
        /// Label identifier.
        label: String,
    },
    /// The shift tail sends indices outside the universe.
    TailLeavesUniverse {
        /// Label identifier.
        label: String,
    },
    /// A window image meets the range of the tail rule.
    TailCollision {
        /// Label identifier.
        label: String,
        /// Window index whose image collides.
        index: i64,
        /// Common part.
        common: String,
    },
    /// `θ_α(D_α) ≠ R_α`.
    DomainRange {
        /// Label identifier.
        label: String,
    },
    /// The normalised composite of two actions disagrees with applying them in turn.
    Composition {
        /// Label applied first.
        first: String,
        /// Label applied second.
        second: String,
        /// Index where they differ.
        index: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidImage { label, source } => {
                write!(f, "label {label}: image of {source} is not a valid element")
            }
            Violation::OverlappingImages { label, first, second, common } => {
                write!(f, "label {label}: images of {first} and {second} intersect in {common}")
            }
            Violation::ExceptionOutsideWindow { label, index } => {
                write!(f, "label {label}: exception at {index} lies outside the window")
            }
            Violation::NegativeBound { label } => write!(f, "label {label}: negative window bound"),
            Violation::TailLeavesUniverse { label } => {
                write!(f, "label {label}: shift tail leaves the universe")
            }
            Violation::TailCollision { label, index, common } => {
                write!(f, "label {label}: image of {index} meets the tail range in {common}")
            }
            Violation::DomainRange { label } => write!(f, "label {label}: θ(D) differs from R"),
            Violation::Composition { first, second, index } => {
                write!(f, "labels {first},{second}: composite disagrees at {index}")
            }
        }
    }
}

/// Outcome of [`validate_system`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Every violated law, in label order.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Whether no law failed.
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Check the homomorphism laws of every action.
///
/// Finite backend: atom images are valid and pairwise disjoint. Cofinite
/// backend: exceptions sit inside the window, images are valid and pairwise
/// disjoint, no image meets the tail range, shifts stay in the universe, and
/// composites of label pairs normalise correctly. Both: `θ_α(D_α) = R_α`.
pub fn validate_system(sys: &System) -> ValidationReport {
    let mut out = Vec::new();
    let backend = sys.backend();
    for (l, name) in sys.labels().iter().enumerate() {
        match (backend, sys.action(l)) {
            (Backend::FiniteAtoms(names), ActionSpec::Atoms(img)) => {
                for (i, s) in img.iter().enumerate() {
                    if s.iter().any(|&t| t >= names.len()) {
                        out.push(Violation::InvalidImage { label: name.clone(), source: names[i].clone() });
                    }
                }
                for i in 0..img.len() {
                    for j in (i + 1)..img.len() {
                        let common: Vec<usize> = img[i].intersection(&img[j]).copied().collect();
                        if !common.is_empty() {
                            out.push(Violation::OverlappingImages {
                                label: name.clone(),
                                first: names[i].clone(),
                                second: names[j].clone(),
                                common: format!("{}", backend.show(&BoolElem::atoms(common))),
                            });
                        }
                    }
                }
            }
            (Backend::FiniteCofinite(u), ActionSpec::Window { exceptions, tail, bound }) => {
                if *bound < 0 {
                    out.push(Violation::NegativeBound { label: name.clone() });
                    continue;
                }
                for (&i, img) in exceptions {
                    if i.abs() > *bound || !u.contains(i) {
                        out.push(Violation::ExceptionOutsideWindow { label: name.clone(), index: i });
                    }
                    if !backend.is_valid(img) {
                        out.push(Violation::InvalidImage { label: name.clone(), source: format!("{i}") });
                    }
                }
                let entries: Vec<(&i64, &BoolElem)> = exceptions.iter().collect();
                for x in 0..entries.len() {
                    for y in (x + 1)..entries.len() {
                        let common = entries[x].1.meet(entries[y].1);
                        if !common.is_empty() {
                            out.push(Violation::OverlappingImages {
                                label: name.clone(),
                                first: format!("{}", entries[x].0),
                                second: format!("{}", entries[y].0),
                                common: format!("{}", backend.show(&common)),
                            });
                        }
                    }
                }
                if let Tail::Shift(t) = tail {
                    if !u.contains(bound + 1 + t) {
                        out.push(Violation::TailLeavesUniverse { label: name.clone() });
                    } else {
                        let range = tail_range(*u, *bound, *t);
                        for (&i, img) in exceptions {
                            let common = img.meet(&range);
                            if !common.is_empty() {
                                out.push(Violation::TailCollision {
                                    label: name.clone(),
                                    index: i,
                                    common: format!("{}", backend.show(&common)),
                                });
                            }
                        }
                    }
                }
            }
            _ => out.push(Violation::InvalidImage { label: name.clone(), source: String::from("*") }),
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }
    for (l, name) in sys.labels().iter().enumerate() {
        if sys.apply(l, &sys.domain(l)) != sys.range(&[l]) {
            out.push(Violation::DomainRange { label: name.clone() });
        }
    }
    if let Backend::FiniteCofinite(u) = backend {
        let probes = sys.probe_indices(0);
        let labels = sys.labels();
        for a in 0..labels.len() {
            for b in 0..labels.len() {
                let comp = sys.action(a).then(sys.action(b), *u);
                let far = probes.iter().map(|i| i.abs()).max().unwrap_or(0) * 2 + 2;
                let bad = probes
                    .iter()
                    .chain([far, -far].iter())
                    .copied()
                    .filter(|&i| u.contains(i))
                    .find(|&i| comp.index_image(i) != sys.apply_word(&[a, b], &BoolElem::finite([i])));
                let top_ok = comp.apply_indices(*u, &sys.top()) == sys.apply_word(&[a, b], &sys.top());
                if let Some(i) = bad.or(if top_ok { None } else { Some(i64::MAX) }) {
                    out.push(Violation::Composition { first: labels[a].clone(), second: labels[b].clone(), index: i });
                }
            }
        }
    }
    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::Universe;
    use crate::dynamics::{fixtures, window, DynError};
    use alloc::vec;

    #[test]
    fn identity_actions_are_valid() {
        assert!(validate_system(&fixtures::s2()).is_valid());
        assert!(validate_system(&fixtures::s4()).is_valid());
    }

    #[test]
    fn overlapping_images_rejected() {
        let r = System::finite(&["u", "v"], &[("l", &[("u", &["u", "v"]), ("v", &["v"])])]);
        let Err(DynError::Invalid(rep)) = r else { panic!("expected a validation error") };
        assert!(
            matches!(&rep.violations[0], Violation::OverlappingImages { first, second, .. } if first == "u" && second == "v")
        );
    }

    #[test]
    fn tail_collision_rejected() {
        let b = Backend::FiniteCofinite(Universe::Integers);
        let spec = window(&[(0, BoolElem::finite([5]))], Tail::Shift(1), 1);
        let r = System::new(b, vec![("b".into(), spec)]);
        assert!(
            matches!(r, Err(DynError::Invalid(rep)) if matches!(rep.violations[0], Violation::TailCollision { .. }))
        );
    }

    #[test]
    fn shift_off_naturals_rejected() {
        let b = Backend::FiniteCofinite(Universe::Naturals);
        let spec = window(&[], Tail::Shift(-3), 1);
        let r = System::new(b, vec![("c".into(), spec)]);
        assert!(
            matches!(r, Err(DynError::Invalid(rep)) if rep.violations[0] == Violation::TailLeavesUniverse { label: "c".into() })
        );
    }
}
