use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{default_bound, InvError};
use crate::boolean::BoolElem;
use crate::dynamics::{ActionSpec, System, Tail, Word};

/// A cycle without exits, found from an atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// The cycle word, nonempty.
    pub word: Word,
    /// An atom with `θ_word(base) = base`.
    pub base: BoolElem,
    /// `trace[t]` is the set reached after the first `t` letters; `trace[0] = base`.
    pub trace: Vec<BoolElem>,
}

impl CycleWitness {
    /// Recheck the witness against its invariants.
    pub fn verify(&self, sys: &System) -> bool {
        if self.word.is_empty() || self.trace.len() != self.word.len() || self.trace[0] != self.base {
            return false;
        }
        if sys.apply_word(&self.word, &self.base) != self.base {
            return false;
        }
        for (t, b) in self.trace.iter().enumerate() {
            if !sys.is_regular(b) || sys.delta(b).ok().as_deref() != Some(&[self.word[t]][..]) {
                return false;
            }
            let next = sys.apply(self.word[t], b);
            let expect = self.trace.get(t + 1).unwrap_or(&self.base);
            if &next != expect {
                return false;
            }
        }
        true
    }
}

enum Walk {
    Returned(CycleWitness),
    Stopped,
}

fn forced_walk(sys: &System, base: BoolElem, bound: usize) -> Result<Walk, InvError> {
    let far = sys.explicit_radius() + sys.max_shift();
    let mut cur = base.clone();
    let mut word = Word::new();
    let mut trace = Vec::new();
    let mut seen: BTreeSet<BoolElem> = BTreeSet::new();
    seen.insert(cur.clone());
    loop {
        if cur.is_empty() || cur.is_cofinite() || !sys.is_regular(&cur) {
            return Ok(Walk::Stopped);
        }
        let d = sys.delta(&cur)?;
        if d.len() != 1 {
            return Ok(Walk::Stopped);
        }
        let l = d[0];
        if let (BoolElem::Finite(s), ActionSpec::Window { tail: Tail::Shift(t), .. }) = (&cur, sys.action(l)) {
            // far atoms drifting outward never come back
            if *t != 0 && s.iter().all(|&i| i.abs() > far && i.signum() == t.signum()) {
                return Ok(Walk::Stopped);
            }
        }
        if !sys.is_finite() && word.len() >= bound {
            return Err(InvError::SearchBoundExceeded { bound });
        }
        trace.push(cur.clone());
        word.push(l);
        cur = sys.apply(l, &cur);
        if cur == base {
            return Ok(Walk::Returned(CycleWitness { word, base, trace }));
        }
        if !seen.insert(cur.clone()) {
            return Ok(Walk::Stopped);
        }
    }
}

/// First cycle without exits, scanning atoms in canonical order.
///
/// From each atom `a` the forced path advances `B ↦ θ_ℓ(B)` while `B` is
/// regular with `Δ_B = {ℓ}`; a witness is reported when it returns to `{a}`.
/// On the cofinite backend the probe atoms stand in for the far atoms.
pub fn find_cycle_no_exit(sys: &System) -> Result<Option<CycleWitness>, InvError> {
    find_cycle_no_exit_with(sys, default_bound(sys))
}

/// [`find_cycle_no_exit`] with an explicit step bound for the cofinite backend.
pub fn find_cycle_no_exit_with(sys: &System, bound: usize) -> Result<Option<CycleWitness>, InvError> {
    let starts: Vec<BoolElem> = if sys.is_finite() {
        (0..sys.atom_count()).map(|a| BoolElem::atoms([a])).collect()
    } else {
        sys.probe_indices(0).into_iter().map(|i| BoolElem::finite([i])).collect()
    };
    for b in starts {
        if let Walk::Returned(w) = forced_walk(sys, b, bound)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Condition (L_B): no cycle without exits.
pub fn condition_lb(sys: &System) -> Result<bool, InvError> {
    Ok(find_cycle_no_exit(sys)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fixtures::*;

    #[test]
    fn identity_loop_is_a_cycle() {
        let s = s3();
        let w = find_cycle_no_exit(&s).unwrap().unwrap();
        assert_eq!(w.word, [0]);
        assert_eq!(w.base, BoolElem::atoms([0]));
        assert!(w.verify(&s));
    }

    #[test]
    fn branching_has_exits() {
        assert_eq!(find_cycle_no_exit(&s2()).unwrap(), None);
        assert!(condition_lb(&s1()).unwrap());
        assert!(condition_lb(&s4()).unwrap());
    }

    #[test]
    fn rotation_cycle_length() {
        let s = System::finite(&["p", "q", "r"], &[("t", &[("p", &["q"]), ("q", &["r"]), ("r", &["p"])])]).unwrap();
        let w = find_cycle_no_exit(&s).unwrap().unwrap();
        assert_eq!(w.word.len(), 3);
        assert!(w.verify(&s));
    }
}
