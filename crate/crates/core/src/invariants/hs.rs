use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{default_bound, InvError};
use crate::boolean::{AtomSet, BoolElem, Height, IdealDesc};
use crate::dynamics::ActionSpec;
use crate::dynamics::{System, Tail};

/// Flags of an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsReport {
    /// The ideal.
    pub ideal: IdealDesc,
    /// Closed under every `θ_α`.
    pub hereditary: bool,
    /// Contains every regular set whose images all lie in it.
    pub saturated: bool,
}

impl HsReport {
    /// Compute both flags.
    pub fn of(sys: &System, ideal: IdealDesc) -> HsReport {
        let hereditary = is_hereditary(sys, &ideal);
        let saturated = is_saturated(sys, &ideal);
        HsReport { ideal, hereditary, saturated }
    }
}

/// A failed hereditary or saturation law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    /// The element the law fails at.
    pub element: BoolElem,
    /// A label involved (for heredity, the label whose image leaves the ideal).
    pub label: Option<usize>,
    /// That image.
    pub image: Option<BoolElem>,
}

/// Witness that `I` is not hereditary: a member whose image leaves `I`.
pub fn hereditary_violation(sys: &System, ideal: &IdealDesc) -> Option<LawViolation> {
    let support = ideal.support();
    let bad = |element: BoolElem, label: usize, image: BoolElem| {
        Some(LawViolation { element, label: Some(label), image: Some(image) })
    };
    if sys.is_finite() || !ideal.finite_only() {
        for l in 0..sys.label_count() {
            let img = sys.apply(l, support);
            if !ideal.contains(&img) {
                return bad(support.clone(), l, img);
            }
        }
        return None;
    }
    for i in sys.probe_indices(support.radius()) {
        if !support.contains_index(i) {
            continue;
        }
        let a = BoolElem::finite([i]);
        for l in 0..sys.label_count() {
            let img = sys.apply(l, &a);
            if !ideal.contains(&img) {
                return bad(a, l, img);
            }
        }
    }
    None
}

/// Whether `θ_α(A) ∈ I` for every `A ∈ I` and label `α`.
pub fn is_hereditary(sys: &System, ideal: &IdealDesc) -> bool {
    hereditary_violation(sys, ideal).is_none()
}

fn atom_candidates(sys: &System, ideal: &IdealDesc) -> Vec<BoolElem> {
    if sys.is_finite() {
        (0..sys.atom_count()).map(|a| BoolElem::atoms([a])).collect()
    } else {
        sys.probe_indices(ideal.support().radius()).into_iter().map(|i| BoolElem::finite([i])).collect()
    }
}

fn saturates(sys: &System, ideal: &IdealDesc, a: &BoolElem) -> bool {
    if ideal.contains(a) {
        return false;
    }
    let mut live = false;
    for l in 0..sys.label_count() {
        let img = sys.apply(l, a);
        if !img.is_empty() {
            live = true;
            if !ideal.contains(&img) {
                return false;
            }
        }
    }
    live
}

/// Witness that `I` is not saturated: a regular atom outside `I` all of whose images lie in `I`.
///
/// Checking atoms suffices: if a regular `A ∉ I` has all images in `I`, some
/// atom of `A` lies outside `I`, is regular, and has images below those of `A`.
pub fn saturation_violation(sys: &System, ideal: &IdealDesc) -> Option<LawViolation> {
    atom_candidates(sys, ideal).into_iter().find(|a| saturates(sys, ideal, a)).map(|element| LawViolation {
        element,
        label: None,
        image: None,
    })
}

/// Whether `I` is saturated.
pub fn is_saturated(sys: &System, ideal: &IdealDesc) -> bool {
    saturation_violation(sys, ideal).is_none()
}

fn reach_atoms(sys: &System, seed: &AtomSet) -> AtomSet {
    let mut seen = seed.clone();
    let mut stack: Vec<usize> = seed.iter().copied().collect();
    while let Some(a) = stack.pop() {
        for (_, b) in sys.successors(a) {
            if seen.insert(b) {
                stack.push(b);
            }
        }
    }
    seen
}

/// The hereditary expansion `H(seed)`: the smallest hereditary ideal containing `seed`.
pub fn hereditary_closure(sys: &System, seed: &BoolElem) -> Result<IdealDesc, InvError> {
    hereditary_closure_with(sys, seed, default_bound(sys))
}

fn hereditary_closure_with(sys: &System, seed: &BoolElem, bound: usize) -> Result<IdealDesc, InvError> {
    sys.backend().check(seed)?;
    if sys.is_finite() {
        return Ok(IdealDesc::principal(BoolElem::Atoms(reach_atoms(sys, seed.atom_set()))));
    }
    if seed.is_cofinite() {
        return Ok(full_mode(sys, seed.clone()));
    }
    let r = sys.explicit_radius().max(seed.radius());
    let t = sys.max_shift();
    let u = sys.backend().universe().unwrap();
    let mut m = r + t + 1;
    let mut partial = IdealDesc::principal(seed.clone());
    loop {
        if (m as u128) > bound as u128 {
            return Err(InvError::ClosureBoundExceeded { partial, bound });
        }
        // breadth-first search inside the box [-m, m]
        let BoolElem::Finite(start) = seed else { unreachable!() };
        let mut reached: BTreeSet<i64> = start.clone();
        let mut stack: Vec<i64> = start.iter().copied().collect();
        let mut escaped = [false, false];
        while let Some(i) = stack.pop() {
            for l in 0..sys.label_count() {
                let img = sys.index_image(l, i);
                match img {
                    BoolElem::Cofinite(_) => {
                        let g = BoolElem::Finite(reached.clone()).join(&img);
                        return Ok(full_mode(sys, g));
                    }
                    BoolElem::Finite(s) => {
                        for j in s {
                            if j.abs() > m {
                                escaped[(j < 0) as usize] = true;
                            } else if reached.insert(j) {
                                stack.push(j);
                            }
                        }
                    }
                    BoolElem::Atoms(_) => unreachable!(),
                }
            }
        }
        partial = IdealDesc::principal(BoolElem::Finite(reached.clone()));
        if !escaped[0] && !escaped[1] {
            return Ok(partial);
        }
        // a side escaping the box is full when an outward shift sweeps a fully reached band
        let full = |side: usize| -> bool {
            let sign: i64 = if side == 0 { 1 } else { -1 };
            (0..sys.label_count()).any(|l| match sys.action(l) {
                ActionSpec::Window { tail: Tail::Shift(s), .. } if s * sign > 0 && m - s.abs() >= r => {
                    (m - s.abs() + 1..=m).all(|k| !u.contains(sign * k) || reached.contains(&(sign * k)))
                }
                _ => false,
            })
        };
        let full_sides = [escaped[0] && full(0), escaped[1] && full(1)];
        let settled = (0..2).all(|s| !escaped[s] || full_sides[s]);
        if settled {
            let cofinite = match u {
                crate::boolean::Universe::Naturals => full_sides[0],
                crate::boolean::Universe::Integers => full_sides[0] && full_sides[1],
            };
            if !cofinite {
                return Err(InvError::Unsupported(String::from(
                    "the hereditary closure is infinite but not cofinite, so it is not definable",
                )));
            }
            let missing = u.range(-m, m).filter(|i| !reached.contains(i));
            let cand = IdealDesc::definable(BoolElem::cofinite(missing), Height::FiniteOnly);
            if is_hereditary(sys, &cand) {
                return Ok(cand);
            }
        }
        m *= 2;
    }
}

fn full_mode(sys: &System, mut g: BoolElem) -> IdealDesc {
    loop {
        let mut next = g.clone();
        for l in 0..sys.label_count() {
            next = next.join(&sys.apply(l, &g));
        }
        if next == g {
            return IdealDesc::principal(g);
        }
        g = next;
    }
}

/// Smallest hereditary and saturated ideal containing `seed`.
pub fn hs_closure(sys: &System, seed: &BoolElem) -> Result<IdealDesc, InvError> {
    hs_closure_with(sys, seed, default_bound(sys))
}

/// [`hs_closure`] with an explicit bound for the cofinite backend.
pub fn hs_closure_with(sys: &System, seed: &BoolElem, bound: usize) -> Result<IdealDesc, InvError> {
    if seed.is_empty() {
        return Err(InvError::EmptySeed);
    }
    let mut ideal = hereditary_closure_with(sys, seed, bound)?;
    loop {
        let add: Vec<BoolElem> =
            atom_candidates(sys, &ideal).into_iter().filter(|a| saturates(sys, &ideal, a)).collect();
        if add.is_empty() {
            return Ok(ideal);
        }
        for a in add {
            ideal = ideal.join(&IdealDesc::principal(a));
        }
    }
}

/// Hereditary and saturated ideals, ordered compatibly with inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsLattice {
    /// The ideals.
    pub ideals: Vec<IdealDesc>,
    /// False when the cofinite search could have missed ideals.
    pub complete: bool,
}

impl HsLattice {
    /// Ideals other than the zero ideal and the whole algebra.
    pub fn nontrivial<'a>(&'a self, sys: &'a System) -> impl Iterator<Item = &'a IdealDesc> + 'a {
        self.ideals.iter().filter(move |i| !i.is_trivial() && !i.is_whole(sys.backend()))
    }
}

fn rank(i: &IdealDesc) -> (u8, i64) {
    match i.support() {
        BoolElem::Atoms(s) => (0, s.len() as i64),
        BoolElem::Finite(s) => (0, s.len() as i64),
        BoolElem::Cofinite(f) => (if i.finite_only() { 1 } else { 2 }, -(f.len() as i64)),
    }
}

pub(crate) fn sort_ideals(v: &mut Vec<IdealDesc>) {
    v.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cmp(b)));
    v.dedup();
}

/// All hereditary and saturated ideals.
///
/// Finite backend: every principal ideal is tested. Cofinite backend: the
/// lattice generated by the closures of the probe atoms and of the top; it is
/// flagged complete only when the closures of the two tail representatives
/// agree.
pub fn enumerate_hs_ideals(sys: &System) -> Result<HsLattice, InvError> {
    enumerate_hs_ideals_with(sys, default_bound(sys))
}

/// [`enumerate_hs_ideals`] with an explicit bound for the cofinite backend.
pub fn enumerate_hs_ideals_with(sys: &System, bound: usize) -> Result<HsLattice, InvError> {
    let backend = sys.backend();
    if sys.is_finite() {
        let mut ideals: Vec<IdealDesc> = backend
            .all_elements()
            .into_iter()
            .map(IdealDesc::principal)
            .filter(|i| is_hereditary(sys, i) && is_saturated(sys, i))
            .collect();
        sort_ideals(&mut ideals);
        return Ok(HsLattice { ideals, complete: true });
    }
    let wrap = |e: InvError| match e {
        InvError::ClosureBoundExceeded { bound, .. } => {
            InvError::Unsupported(alloc::format!("closure did not stabilise within bound {bound}"))
        }
        other => other,
    };
    let probes = sys.probe_indices(0);
    let mut found: Vec<IdealDesc> = alloc::vec![IdealDesc::trivial(backend)];
    for &i in &probes {
        found.push(hs_closure_with(sys, &BoolElem::finite([i]), bound).map_err(wrap)?);
    }
    found.push(hs_closure_with(sys, &backend.top(), bound).map_err(wrap)?);
    let lo = *probes.first().unwrap();
    let hi = *probes.last().unwrap();
    let complete = hs_closure_with(sys, &BoolElem::finite([lo]), bound).map_err(wrap)?
        == hs_closure_with(sys, &BoolElem::finite([hi]), bound).map_err(wrap)?;
    sort_ideals(&mut found);
    loop {
        let mut new = Vec::new();
        for x in 0..found.len() {
            for y in (x + 1)..found.len() {
                let j = found[x].join(&found[y]);
                if j.is_trivial() {
                    continue;
                }
                let c = close_ideal(sys, &j, bound).map_err(wrap)?;
                if !found.contains(&c) && !new.contains(&c) {
                    new.push(c);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        found.extend(new);
        sort_ideals(&mut found);
    }
    Ok(HsLattice { ideals: found, complete })
}

fn close_ideal(sys: &System, ideal: &IdealDesc, bound: usize) -> Result<IdealDesc, InvError> {
    if is_hereditary(sys, ideal) && is_saturated(sys, ideal) {
        return Ok(ideal.clone());
    }
    if ideal.finite_only() {
        // the join of two hereditary FiniteOnly ideals is hereditary; saturate it
        let mut cur = ideal.clone();
        loop {
            let add: Vec<BoolElem> =
                atom_candidates(sys, &cur).into_iter().filter(|a| saturates(sys, &cur, a)).collect();
            if add.is_empty() {
                return Ok(cur);
            }
            for a in add {
                cur = cur.join(&IdealDesc::principal(a));
            }
        }
    }
    hs_closure_with(sys, ideal.support(), bound)
}
