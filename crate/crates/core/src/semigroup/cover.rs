use alloc::vec::Vec;

use super::{concat, mul, SemiElem, SemiError};
use crate::boolean::BoolElem;
use crate::dynamics::{System, Word};

/// Outcome of [`refine_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverResult {
    /// A pairwise orthogonal cover of `Σ_x`, each member below some member of `Z`.
    OrthogonalCover(Vec<SemiElem>),
    /// A nonzero idempotent below `x` orthogonal to every member of `Z`.
    NotACover(SemiElem),
    /// The recursion went past this depth.
    Inconclusive(usize),
}

enum Step {
    Pieces(Vec<(Word, BoolElem)>),
    Witness(Word, BoolElem),
    TooDeep,
}

/// Decide whether the idempotents `z` cover `Σ_x` and refine them.
///
/// Members are first cut down below `x`, then conjugated to base form `p_A`.
/// Plain projections are merged; the rest `R = A∖B` must be regular, and each
/// branch `ℓ ∈ Δ_R` is settled recursively on `θ_ℓ(R)` with the members whose
/// word starts with `ℓ`. Default depth bound is `3·|atoms|·|L|`, counting probe
/// atoms on the cofinite backend.
pub fn refine_cover(sys: &System, x: &SemiElem, z: &[SemiElem]) -> Result<CoverResult, SemiError> {
    let atoms = if sys.is_finite() { sys.atom_count() } else { sys.probe_indices(0).len() };
    refine_cover_with(sys, x, z, 3 * atoms * sys.label_count())
}

/// [`refine_cover`] with an explicit recursion bound.
pub fn refine_cover_with(sys: &System, x: &SemiElem, z: &[SemiElem], bound: usize) -> Result<CoverResult, SemiError> {
    if !x.is_idempotent() || z.iter().any(|e| !e.is_idempotent()) {
        return Err(SemiError::NotIdempotent);
    }
    let SemiElem::Triple(alpha, a, _) = x else {
        // Σ_0 = {0} is covered by anything
        return Ok(CoverResult::OrthogonalCover(Vec::new()));
    };
    let mut members = Vec::new();
    for e in z {
        if let SemiElem::Triple(w, c, _) = mul(sys, e, x) {
            members.push((w[alpha.len()..].to_vec(), c));
        }
    }
    let back = |w: Word, c: BoolElem| SemiElem::Triple(concat(alpha, &w), c.clone(), concat(alpha, &w));
    Ok(match refine(sys, a, &members, 0, bound) {
        Step::Pieces(p) => {
            let mut out: Vec<SemiElem> = p.into_iter().map(|(w, c)| back(w, c)).collect();
            out.sort();
            CoverResult::OrthogonalCover(out)
        }
        Step::Witness(w, c) => CoverResult::NotACover(back(w, c)),
        Step::TooDeep => CoverResult::Inconclusive(bound),
    })
}

fn refine(sys: &System, a: &BoolElem, members: &[(Word, BoolElem)], depth: usize, bound: usize) -> Step {
    if depth > bound {
        return Step::TooDeep;
    }
    let mut pieces = Vec::new();
    let mut covered = a.empty_like();
    for (w, c) in members.iter().filter(|(w, _)| w.is_empty()) {
        let piece = c.meet(a).diff(&covered);
        if !piece.is_empty() {
            covered = covered.join(&piece);
            pieces.push((w.clone(), piece));
        }
    }
    let rest = a.diff(&covered);
    if rest.is_empty() {
        return Step::Pieces(pieces);
    }
    let sing = sys.singular_part(&rest);
    if !sing.is_empty() {
        return Step::Witness(Word::new(), sing);
    }
    if members.iter().all(|(w, _)| w.is_empty()) {
        return Step::Witness(Word::new(), rest);
    }
    for l in 0..sys.label_count() {
        let img = sys.apply(l, &rest);
        if img.is_empty() {
            continue;
        }
        let sub: Vec<(Word, BoolElem)> = members
            .iter()
            .filter(|(w, _)| w.first() == Some(&l))
            .filter_map(|(w, c)| {
                let c = c.meet(&sys.apply_word(&w[1..], &img));
                (!c.is_empty()).then(|| (w[1..].to_vec(), c))
            })
            .collect();
        match refine(sys, &img, &sub, depth + 1, bound) {
            Step::Pieces(p) => pieces.extend(p.into_iter().map(|(w, c)| (concat(&[l], &w), c))),
            Step::Witness(w, c) => return Step::Witness(concat(&[l], &w), c),
            Step::TooDeep => return Step::TooDeep,
        }
    }
    Step::Pieces(pieces)
}
