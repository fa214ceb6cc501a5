use alloc::vec::Vec;

use super::{hereditary_violation, InvError};
use crate::boolean::{quotient, IdealDesc, Quotient};
use crate::dynamics::{ActionSpec, System};

/// The quotient system `(B/I, L, [θ])` for a hereditary ideal `I`, with the
/// class map. `[θ_α]([A]) = [θ_α(A)]` is well defined exactly because `I` is
/// hereditary.
pub fn quotient_system(sys: &System, ideal: &IdealDesc) -> Result<(System, Quotient), InvError> {
    if let Some(v) = hereditary_violation(sys, ideal) {
        return Err(InvError::NotHereditary {
            element: v.element,
            label: v.label.unwrap_or(0),
            image: v.image.unwrap_or_else(|| sys.bottom()),
        });
    }
    let q = quotient(sys.backend(), ideal)?;
    let n = q.backend.atom_count();
    let actions = (0..sys.label_count())
        .map(|l| {
            let images: Vec<_> =
                (0..n).map(|k| q.class_of(&sys.apply(l, &q.representative(k))).atom_set().clone()).collect();
            (sys.labels()[l].clone(), ActionSpec::Atoms(images))
        })
        .collect();
    let out = System::new(q.backend.clone(), actions)?;
    Ok((out, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{BoolElem, Height};
    use crate::dynamics::fixtures::*;

    #[test]
    fn s1_quotient_is_a_loop() {
        let s = s1();
        let (qs, q) = quotient_system(&s, &IdealDesc::principal(BoolElem::atoms([1]))).unwrap();
        assert_eq!(q.backend.atoms(), ["[u]"]);
        assert_eq!(qs.apply(0, &qs.top()), qs.top());
    }

    #[test]
    fn non_hereditary_rejected() {
        let s = s1();
        let r = quotient_system(&s, &IdealDesc::principal(BoolElem::atoms([0])));
        assert!(matches!(r, Err(InvError::NotHereditary { .. })));
    }

    #[test]
    fn s4_modulo_finite_sets() {
        let s = s4();
        let i = IdealDesc::definable(BoolElem::cofinite([]), Height::FiniteOnly);
        let (qs, q) = quotient_system(&s, &i).unwrap();
        assert_eq!(q.backend.atoms(), ["[Z]"]);
        let a = qs.label_index("a").unwrap();
        let b = qs.label_index("b").unwrap();
        assert!(qs.apply(a, &qs.top()).is_empty());
        assert_eq!(qs.apply(b, &qs.top()), qs.top());
    }
}
