//! The inverse semigroup `T = {s_α p_A s_β*} ∪ {0}` of a system, its
//! idempotents, natural order and covers, and path filters with germs.

mod cover;
mod filter;

pub use cover::{refine_cover, refine_cover_with, CoverResult};
pub use filter::{beta, germ_eq, small_filters, Extension, Germ, PathFilter, Tri};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::boolean::BoolElem;
use crate::dynamics::{System, Word};

/// Errors of the semigroup layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemiError {
    /// An expansion or cover step met a set with a singular part.
    #[error("set is not regular")]
    NotRegular(BoolElem),
    /// An idempotent was required.
    #[error("element is not idempotent")]
    NotIdempotent,
    /// The source idempotent is not in the filter.
    #[error("source idempotent is not in the filter")]
    NotInDomain,
    /// A filter needed beyond its represented depth.
    #[error("filter depth exhausted")]
    DepthExhausted,
    /// A malformed path filter.
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    /// The set argument is empty.
    #[error("set must be nonempty")]
    EmptySet,
}

/// An element of `T`: `0` or `s_α p_A s_β*` with `∅ ≠ A ⊆ R_α ∩ R_β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemiElem {
    /// The zero.
    Zero,
    /// `s_α p_A s_β*`, normalized.
    Triple(Word, BoolElem, Word),
}

impl Ord for SemiElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SemiElem::Zero, SemiElem::Zero) => Ordering::Equal,
            (SemiElem::Zero, _) => Ordering::Less,
            (_, SemiElem::Zero) => Ordering::Greater,
            (SemiElem::Triple(a, x, b), SemiElem::Triple(c, y, d)) => {
                (a.len(), a, b.len(), b, x).cmp(&(c.len(), c, d.len(), d, y))
            }
        }
    }
}

impl PartialOrd for SemiElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Whether `p` is a prefix of `w`.
pub(crate) fn is_prefix(p: &[usize], w: &[usize]) -> bool {
    w.len() >= p.len() && &w[..p.len()] == p
}

fn concat(a: &[usize], b: &[usize]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

impl SemiElem {
    /// `s_α p_A s_β*`, intersecting `A` with `R_α ∩ R_β`; `Zero` if that is empty.
    pub fn triple(sys: &System, alpha: Word, a: &BoolElem, beta: Word) -> SemiElem {
        let a = a.meet(&sys.range(&alpha)).meet(&sys.range(&beta));
        if a.is_empty() {
            SemiElem::Zero
        } else {
            SemiElem::Triple(alpha, a, beta)
        }
    }

    /// `p_A`.
    pub fn p(sys: &System, a: &BoolElem) -> SemiElem {
        SemiElem::triple(sys, Word::new(), a, Word::new())
    }

    /// `s_α p_A s_α*`.
    pub fn e(sys: &System, alpha: Word, a: &BoolElem) -> SemiElem {
        SemiElem::triple(sys, alpha.clone(), a, alpha)
    }

    /// `s_α = s_α p_{R_α}`.
    pub fn s(sys: &System, alpha: Word) -> SemiElem {
        let r = sys.range(&alpha);
        SemiElem::triple(sys, alpha, &r, Word::new())
    }

    /// Whether this is `0`.
    pub fn is_zero(&self) -> bool {
        matches!(self, SemiElem::Zero)
    }

    /// `0` or `α = β`.
    pub fn is_idempotent(&self) -> bool {
        match self {
            SemiElem::Zero => true,
            SemiElem::Triple(a, _, b) => a == b,
        }
    }

    /// `s*`.
    pub fn star(&self) -> SemiElem {
        match self {
            SemiElem::Zero => SemiElem::Zero,
            SemiElem::Triple(a, x, b) => SemiElem::Triple(b.clone(), x.clone(), a.clone()),
        }
    }

    /// Length of the longer word, `0` for zero.
    pub fn depth(&self) -> usize {
        match self {
            SemiElem::Zero => 0,
            SemiElem::Triple(a, _, b) => a.len().max(b.len()),
        }
    }

    /// Text form such as `s(ab) p{u,v} s(c)*`.
    pub fn show(&self, sys: &System) -> String {
        match self {
            SemiElem::Zero => String::from("0"),
            SemiElem::Triple(a, x, b) => {
                format!("s({}) p{} s({})*", sys.word_str(a), sys.backend().show(x), sys.word_str(b))
            }
        }
    }
}

/// Product in `T`.
///
/// For `s = s_α p_A s_β*` and `t = s_γ p_B s_δ*`: if `γ = βγ'` the product is
/// `s_{αγ'} p_{θ_γ'(A) ∩ B} s_δ*`; if `β = γβ'` it is `s_α p_{A ∩ θ_β'(B)} s_{δβ'}*`;
/// otherwise `0`. The result is normalized.
pub fn mul(sys: &System, s: &SemiElem, t: &SemiElem) -> SemiElem {
    let (SemiElem::Triple(alpha, a, beta), SemiElem::Triple(gamma, b, delta)) = (s, t) else {
        return SemiElem::Zero;
    };
    if is_prefix(beta, gamma) {
        let g = &gamma[beta.len()..];
        let set = sys.apply_word(g, a).meet(b);
        SemiElem::triple(sys, concat(alpha, g), &set, delta.clone())
    } else if is_prefix(gamma, beta) {
        let bp = &beta[gamma.len()..];
        let set = a.meet(&sys.apply_word(bp, b));
        SemiElem::triple(sys, alpha.clone(), &set, concat(delta, bp))
    } else {
        SemiElem::Zero
    }
}

/// `s*`.
pub fn star(s: &SemiElem) -> SemiElem {
    s.star()
}

/// Natural order: `s ≤ t` iff `s = t s*s` and `s = s s* t`.
pub fn leq(sys: &System, s: &SemiElem, t: &SemiElem) -> bool {
    let ss = s.star();
    *s == mul(sys, t, &mul(sys, &ss, s)) && *s == mul(sys, &mul(sys, s, &ss), t)
}

/// Order on idempotents by its case characterization.
///
/// `s_α p_A s_α* ≤ s_β p_B s_β*` iff `α = βα'` and `A ⊆ θ_α'(B)`, when `α ≠ ∅`
/// or both words are empty. For `α = ∅ ≠ β` it holds iff `Δ^{|β|}_A = {β}` and
/// `θ_β(A) ⊆ B`. The second case reflects the relation `p_A = s_β p_{θ_β(A)} s_β*`
/// of the algebra and is only visible in the order when some `A` has a single
/// path of length `|β|`; elsewhere it agrees with [`leq`]. Returns `None` on
/// non-idempotents.
pub fn leq_lemma(sys: &System, e: &SemiElem, f: &SemiElem) -> Option<bool> {
    if !e.is_idempotent() || !f.is_idempotent() {
        return None;
    }
    let (SemiElem::Triple(alpha, a, _), SemiElem::Triple(beta, b, _)) = (e, f) else {
        return Some(e.is_zero());
    };
    if !alpha.is_empty() || beta.is_empty() {
        return Some(is_prefix(beta, alpha) && a.leq(&sys.apply_word(&alpha[beta.len()..], b)));
    }
    let paths = sys.delta_n(a, beta.len()).ok()?;
    Some(paths.len() == 1 && paths[0] == *beta && sys.apply_word(beta, a).leq(b))
}

/// `e ⊥ f` iff `ef = 0`.
pub fn orthogonal(sys: &System, e: &SemiElem, f: &SemiElem) -> bool {
    mul(sys, e, f).is_zero()
}

/// Depth-`k` complete expansion of `A`: `k` rounds of replacing each word `γ`
/// by `{γℓ : ℓ ∈ Δ_{θ_γ(A)}}`. Every set expanded must be regular.
pub fn complete_expansion(sys: &System, a: &BoolElem, k: usize) -> Result<Vec<Word>, SemiError> {
    if a.is_empty() {
        return Err(SemiError::EmptySet);
    }
    let mut level: Vec<(Word, BoolElem)> = alloc::vec![(Word::new(), a.clone())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (w, b) in &level {
            let sing = sys.singular_part(b);
            if !sing.is_empty() {
                return Err(SemiError::NotRegular(sing));
            }
            for l in 0..sys.label_count() {
                let img = sys.apply(l, b);
                if !img.is_empty() {
                    next.push((concat(w, &[l]), img));
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|(w, _)| w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fixtures::*;
    use alloc::vec;

    #[test]
    fn s2_products() {
        let s = s2();
        let w = s.top();
        let eb = SemiElem::e(&s, vec![0], &w);
        let sbc = SemiElem::triple(&s, vec![0, 1], &w, vec![]);
        assert_eq!(mul(&s, &eb, &sbc), sbc);
        let ec = SemiElem::e(&s, vec![1], &w);
        assert_eq!(mul(&s, &eb, &ec), SemiElem::Zero);
        assert_eq!(mul(&s, &eb, &eb), eb);
    }

    #[test]
    fn s2_order() {
        let s = s2();
        let w = s.top();
        let pw = SemiElem::p(&s, &w);
        let eb = SemiElem::e(&s, vec![0], &w);
        let ebb = SemiElem::e(&s, vec![0, 0], &w);
        assert!(!leq(&s, &pw, &eb));
        assert_eq!(leq_lemma(&s, &pw, &eb), Some(false));
        assert!(leq(&s, &ebb, &eb));
        assert_eq!(leq_lemma(&s, &ebb, &eb), Some(true));
        assert!(leq(&s, &eb, &eb));
        assert!(leq(&s, &eb, &pw));
    }

    #[test]
    fn single_path_case_of_the_lemma() {
        // in S3, p_X = s_a p_X s_a* in the algebra
        let s = s3();
        let x = s.top();
        let px = SemiElem::p(&s, &x);
        let ea = SemiElem::e(&s, vec![0], &x);
        assert_eq!(leq_lemma(&s, &px, &ea), Some(true));
        assert!(!leq(&s, &px, &ea));
    }

    #[test]
    fn expansions() {
        let s = s2();
        let w = s.top();
        assert_eq!(complete_expansion(&s, &w, 1).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(complete_expansion(&s, &w, 2).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let s = s1();
        assert_eq!(complete_expansion(&s, &s.top(), 1), Err(SemiError::NotRegular(BoolElem::atoms([1]))));
    }

    #[test]
    fn display() {
        let s = s1();
        let t = SemiElem::triple(&s, vec![0], &BoolElem::atoms([0]), vec![]);
        assert_eq!(t.show(&s), "s(a) p{u} s()*");
        assert_eq!(SemiElem::Zero.show(&s), "0");
    }
}
