use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{concat, is_prefix, mul, SemiElem, SemiError};
use crate::boolean::Ultrafilter;
use crate::dynamics::{System, Word};

/// Three-valued answer for questions a truncated filter may not settle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    /// Yes.
    True,
    /// No.
    False,
    /// Not decidable at the represented depth.
    Unknown,
}

/// How a path filter continues past its word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extension {
    /// The path stops at a singular ultrafilter.
    Closed,
    /// The path continues as `period^∞`, with the same ultrafilter every period.
    Periodic(Word),
    /// A depth-bounded approximation; nothing is known past the word.
    Truncated,
}

/// A filter on the idempotents given by a path.
///
/// The path is `word` (followed by `period^∞` when periodic) and `terminal` is
/// the ultrafilter reached after `word`. The ultrafilters at earlier positions
/// are obtained by pulling back, so `s_γ p_C s_γ*` is in the filter iff `γ` is a
/// prefix of the path and `C` belongs to the ultrafilter at position `|γ|`.
/// Periodic filters are kept with the shortest word and a primitive period.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathFilter {
    word: Word,
    terminal: Ultrafilter,
    ext: Extension,
}

fn invalid(msg: &str) -> SemiError {
    SemiError::InvalidFilter(String::from(msg))
}

fn pull_along(sys: &System, word: &[usize], mut xi: Ultrafilter) -> Option<Ultrafilter> {
    for &l in word.iter().rev() {
        xi = sys.pullback(l, xi)?;
    }
    Some(xi)
}

fn is_singular(sys: &System, xi: Ultrafilter) -> bool {
    match xi.generator() {
        Some(g) => sys.lambda(&g).unwrap_or(0) == 0,
        None => sys.shift_labels().is_empty(),
    }
}

impl PathFilter {
    /// Validated filter; periodic filters are brought to canonical form.
    pub fn new(sys: &System, word: Word, terminal: Ultrafilter, ext: Extension) -> Result<PathFilter, SemiError> {
        if word.iter().any(|&l| l >= sys.label_count()) {
            return Err(invalid("unknown label"));
        }
        let fits = match (terminal, sys.is_finite()) {
            (Ultrafilter::Atom(a), true) => a < sys.atom_count(),
            (Ultrafilter::Index(i), false) => sys.backend().universe().is_some_and(|u| u.contains(i)),
            (Ultrafilter::AtInfinity, false) => true,
            _ => false,
        };
        if !fits {
            return Err(invalid("ultrafilter does not belong to the backend"));
        }
        if pull_along(sys, &word, terminal).is_none() {
            return Err(invalid("the path has no ultrafilter at some position"));
        }
        match &ext {
            Extension::Closed if !is_singular(sys, terminal) => {
                return Err(invalid("a closed path must end at a singular ultrafilter"))
            }
            Extension::Periodic(p) => {
                if p.is_empty() || p.iter().any(|&l| l >= sys.label_count()) {
                    return Err(invalid("bad period"));
                }
                if pull_along(sys, p, terminal) != Some(terminal) {
                    return Err(invalid("the period does not return to the terminal ultrafilter"));
                }
            }
            _ => {}
        }
        let mut f = PathFilter { word, terminal, ext };
        f.canonicalize(sys);
        Ok(f)
    }

    /// The word before the extension.
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Ultrafilter after the word.
    pub fn terminal(&self) -> Ultrafilter {
        self.terminal
    }

    /// The extension flag.
    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    /// Longest prefix length represented; `None` for periodic filters.
    pub fn depth(&self) -> Option<usize> {
        match self.ext {
            Extension::Periodic(_) => None,
            _ => Some(self.word.len()),
        }
    }

    fn canonicalize(&mut self, sys: &System) {
        let Extension::Periodic(period) = &mut self.ext else { return };
        while let (Some(&a), Some(&b)) = (self.word.last(), period.last()) {
            if a != b {
                break;
            }
            self.word.pop();
            period.rotate_right(1);
            self.terminal = sys.pullback(a, self.terminal).expect("validated path");
        }
        let n = period.len();
        for q in 1..n {
            if n % q == 0 && (q..n).all(|i| period[i] == period[i - q]) {
                // the ultrafilters must repeat with the shorter period too
                if pull_along(sys, &period[q..], self.terminal) == Some(self.terminal) {
                    period.truncate(q);
                    break;
                }
            }
        }
    }

    /// Letter at position `k` of the path.
    pub fn letter(&self, k: usize) -> Option<usize> {
        if k < self.word.len() {
            return Some(self.word[k]);
        }
        match &self.ext {
            Extension::Periodic(p) => Some(p[(k - self.word.len()) % p.len()]),
            _ => None,
        }
    }

    /// First `k` letters of the path.
    pub fn prefix(&self, k: usize) -> Option<Word> {
        (0..k).map(|i| self.letter(i)).collect()
    }

    /// Ultrafilter at position `k`.
    pub fn ultrafilter_at(&self, sys: &System, k: usize) -> Option<Ultrafilter> {
        let n = self.word.len();
        if k <= n {
            return pull_along(sys, &self.word[k..], self.terminal);
        }
        match &self.ext {
            Extension::Periodic(p) => {
                let j = (k - n) % p.len();
                if j == 0 {
                    Some(self.terminal)
                } else {
                    pull_along(sys, &p[j..], self.terminal)
                }
            }
            _ => None,
        }
    }

    /// Membership of an idempotent.
    pub fn contains(&self, sys: &System, e: &SemiElem) -> Tri {
        let SemiElem::Triple(g, c, d) = e else { return Tri::False };
        if g != d {
            return Tri::False;
        }
        if g.iter().enumerate().any(|(k, &l)| self.letter(k).is_some_and(|m| m != l)) {
            return Tri::False;
        }
        match self.prefix(g.len()) {
            None if self.ext == Extension::Truncated => Tri::Unknown,
            None => Tri::False,
            Some(p) if p != *g => Tri::False,
            Some(_) => match self.ultrafilter_at(sys, g.len()) {
                Some(xi) if xi.contains(c) => Tri::True,
                _ => Tri::False,
            },
        }
    }

    /// Extend the word with period letters until it has at least `k` letters.
    fn unrolled(&self, sys: &System, k: usize) -> Option<(Word, Ultrafilter)> {
        if self.word.len() >= k {
            return Some((self.word.clone(), self.terminal));
        }
        let w = self.prefix(k)?;
        let xi = self.ultrafilter_at(sys, k)?;
        Some((w, xi))
    }

    /// Text form such as `ab(c)^∞ @ {u}`.
    pub fn show(&self, sys: &System) -> String {
        let xi = match self.terminal.generator() {
            Some(g) => format!("{}", sys.backend().show(&g)),
            None => String::from("∞"),
        };
        let tail = match &self.ext {
            Extension::Closed => String::new(),
            Extension::Periodic(p) => format!("({})^∞", sys.word_str(p)),
            Extension::Truncated => String::from("…"),
        };
        format!("{}{} @ {}", sys.word_str(&self.word), tail, xi)
    }
}

/// A germ `[s, f]` with `s*s` in the filter `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    /// The semigroup element.
    pub element: SemiElem,
    /// The filter.
    pub at: PathFilter,
}

impl Germ {
    /// Checked constructor.
    pub fn new(sys: &System, element: SemiElem, at: PathFilter) -> Result<Germ, SemiError> {
        match at.contains(sys, &mul(sys, &element.star(), &element)) {
            Tri::True => Ok(Germ { element, at }),
            Tri::False => Err(SemiError::NotInDomain),
            Tri::Unknown => Err(SemiError::DepthExhausted),
        }
    }
}

/// The action `β_s` on filters: the `β`-prefix of the path of `f` is replaced
/// by `α`, for `s = s_α p_A s_β*`.
pub fn beta(sys: &System, s: &SemiElem, f: &PathFilter) -> Result<PathFilter, SemiError> {
    let SemiElem::Triple(alpha, _, b) = s else { return Err(SemiError::NotInDomain) };
    match f.contains(sys, &mul(sys, &s.star(), s)) {
        Tri::True => {}
        Tri::False => return Err(SemiError::NotInDomain),
        Tri::Unknown => return Err(SemiError::DepthExhausted),
    }
    let (word, terminal) = f.unrolled(sys, b.len()).ok_or(SemiError::DepthExhausted)?;
    debug_assert!(is_prefix(b, &word));
    let word = concat(alpha, &word[b.len()..]);
    PathFilter::new(sys, word, terminal, f.ext.clone())
}

/// Germ equality: the same filter and some idempotent `e` of it with `s₁e = s₂e`.
///
/// The idempotents `s_γ p_{C_k} s_γ*` along the path form a decreasing chain
/// below every member of the filter, and once `s₁e = s₂e` it stays so further
/// down, so it suffices to check the chain one step past the longer source word.
pub fn germ_eq(sys: &System, g1: &Germ, g2: &Germ) -> Tri {
    if g1.at != g2.at {
        return Tri::False;
    }
    if g1.element == g2.element {
        return Tri::True;
    }
    let (SemiElem::Triple(_, a1, b1), SemiElem::Triple(_, a2, b2)) = (&g1.element, &g2.element) else {
        return Tri::False;
    };
    let f = &g1.at;
    let last = b1.len().max(b2.len()) + 1;
    for k in 0..=last {
        if f.depth().is_some_and(|d| k > d) {
            return if f.ext == Extension::Truncated { Tri::Unknown } else { Tri::False };
        }
        let path = f.prefix(k).expect("within depth");
        let xi = f.ultrafilter_at(sys, k).expect("within depth");
        let c = match xi.generator() {
            Some(g) => g,
            None => {
                // the cofinite sets have no least member; use one inside both sources' images
                let mut c = sys.range(&path);
                for (a, b) in [(a1, b1), (a2, b2)] {
                    if k >= b.len() {
                        c = c.meet(&sys.apply_word(&path[b.len()..], a));
                    }
                }
                c
            }
        };
        let e = SemiElem::e(sys, path, &c);
        if mul(sys, &g1.element, &e) == mul(sys, &g2.element, &e) {
            return Tri::True;
        }
    }
    Tri::False
}

/// All eventually periodic path filters whose word and period have total length
/// at most `n`, on the finite backend. Closed filters are included.
pub fn small_filters(sys: &System, n: usize) -> Vec<PathFilter> {
    let mut out: Vec<PathFilter> = Vec::new();
    let words = |len: usize| -> Vec<Word> {
        let mut ws = alloc::vec![Word::new()];
        for _ in 0..len {
            ws = ws.into_iter().flat_map(|w| (0..sys.label_count()).map(move |l| concat(&w, &[l]))).collect();
        }
        ws
    };
    for total in 0..=n {
        for split in 0..=total {
            for w in words(split) {
                for p in words(total - split) {
                    for a in 0..sys.atom_count() {
                        let ext = if p.is_empty() { Extension::Closed } else { Extension::Periodic(p.clone()) };
                        if let Ok(f) = PathFilter::new(sys, w.clone(), Ultrafilter::Atom(a), ext) {
                            if !out.contains(&f) {
                                out.push(f);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}
