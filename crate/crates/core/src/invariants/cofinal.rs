use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{enumerate_hs_ideals, find_cycle_no_exit, hereditary_closure, CycleWitness, InvError};
use crate::boolean::{BoolElem, IdealDesc};
use crate::dynamics::{System, Word};

/// Cofinality via the HS lattice: true iff the only hereditary and saturated
/// ideals are the zero ideal and the whole algebra.
pub fn is_cofinal(sys: &System) -> Result<bool, InvError> {
    let lattice = enumerate_hs_ideals(sys)?;
    if lattice.nontrivial(sys).next().is_some() {
        return Ok(false);
    }
    if !lattice.complete {
        return Err(InvError::Unsupported(String::from(
            "the ideal search on the cofinite backend is not known to be complete",
        )));
    }
    Ok(true)
}

/// Outcome of [`check_condition2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition2 {
    /// `C` is regular (or empty), `B∖C ∈ H(A)`, and every infinite word drives `C` into `H(A)`.
    Verified {
        /// The least admissible `C`, `B∖H(A)`.
        c: BoolElem,
    },
    /// No admissible `C`: the least candidate has a singular part.
    NotRegular {
        /// The least candidate.
        c: BoolElem,
        /// Its atoms with `λ = 0`.
        singular: BoolElem,
    },
    /// An infinite word `prefix · period^∞` along which `θ(C)` never enters `H(A)`.
    Counterexample {
        /// Word before the loop.
        prefix: Word,
        /// Repeated word.
        period: Word,
    },
    /// The depth was exhausted before deciding.
    Inconclusive {
        /// Depth used.
        depth: usize,
    },
}

/// Search for `C ∈ B_reg ∪ {∅}` with `B∖C ∈ H(A)` and every infinite word
/// eventually sending `C` into `H(A)` (finite backend).
///
/// The least candidate `C₀ = B∖H(A)` is optimal: any admissible `C` contains it,
/// subsets of regular sets are regular, and images are monotone.
pub fn check_condition2(sys: &System, a: &BoolElem, b: &BoolElem, depth: usize) -> Result<Condition2, InvError> {
    if !sys.is_finite() {
        return Err(InvError::Unsupported(String::from("condition (2) is checked on the finite backend only")));
    }
    if a.is_empty() || b.is_empty() {
        return Err(InvError::EmptySeed);
    }
    let h = hereditary_closure(sys, a)?;
    let c = b.diff(h.support());
    let singular = sys.singular_part(&c);
    if !singular.is_empty() {
        return Ok(Condition2::NotRegular { c, singular });
    }
    // depth-first search over the images of C that stay outside H(A)
    let mut search =
        Escape { sys, h: &h, depth, word: Word::new(), on_path: BTreeMap::new(), done: Vec::new(), exhausted: false };
    if let Some((prefix, period)) = search.run(c.clone()) {
        return Ok(Condition2::Counterexample { prefix, period });
    }
    if search.exhausted {
        return Ok(Condition2::Inconclusive { depth });
    }
    Ok(Condition2::Verified { c })
}

/// Search for an infinite word keeping the images of `C` outside `H(A)`.
struct Escape<'a> {
    sys: &'a System,
    h: &'a IdealDesc,
    depth: usize,
    word: Word,
    on_path: BTreeMap<BoolElem, usize>,
    done: Vec<BoolElem>,
    exhausted: bool,
}

impl Escape<'_> {
    /// A loop `(prefix, period)` reached from `cur`, if any.
    fn run(&mut self, cur: BoolElem) -> Option<(Word, Word)> {
        if self.h.contains(&cur) || self.done.contains(&cur) {
            return None;
        }
        if let Some(&at) = self.on_path.get(&cur) {
            return Some((self.word[..at].to_vec(), self.word[at..].to_vec()));
        }
        if self.word.len() >= self.depth {
            self.exhausted = true;
            return None;
        }
        self.on_path.insert(cur.clone(), self.word.len());
        for l in 0..self.sys.label_count() {
            let next = self.sys.apply(l, &cur);
            self.word.push(l);
            let r = self.run(next);
            self.word.pop();
            if r.is_some() {
                return r;
            }
        }
        self.on_path.remove(&cur);
        if !self.exhausted {
            self.done.push(cur);
        }
        None
    }
}

/// Reason a system is not simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityWitness {
    /// A cycle without exits.
    Cycle(CycleWitness),
    /// A hereditary and saturated ideal other than `0` and `B`.
    Ideal(IdealDesc),
}

/// Result of [`is_simple`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    /// `lb ∧ hs_trivial`.
    pub simple: bool,
    /// Condition (L_B).
    pub lb: bool,
    /// The HS lattice is `{0, B}`.
    pub hs_trivial: bool,
    /// A witness when `simple` is false; the cycle takes precedence.
    pub witness: Option<SimplicityWitness>,
}

/// Simplicity: condition (L_B) together with a trivial HS lattice.
pub fn is_simple(sys: &System) -> Result<SimplicityReport, InvError> {
    let cycle = find_cycle_no_exit(sys)?;
    let lattice = enumerate_hs_ideals(sys)?;
    let ideal = lattice.nontrivial(sys).next().cloned();
    if ideal.is_none() && !lattice.complete {
        return Err(InvError::Unsupported(String::from(
            "the ideal search on the cofinite backend is not known to be complete",
        )));
    }
    let lb = cycle.is_none();
    let hs_trivial = ideal.is_none();
    let witness = match (cycle, ideal) {
        (Some(c), _) => Some(SimplicityWitness::Cycle(c)),
        (None, Some(i)) => Some(SimplicityWitness::Ideal(i)),
        _ => None,
    };
    Ok(SimplicityReport { simple: lb && hs_trivial, lb, hs_trivial, witness })
}
