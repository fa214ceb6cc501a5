//! Seeded generators and brute-force helpers shared by the integration tests.
#![allow(dead_code)]

pub mod sft;

use std::collections::BTreeSet;

use bds_core::boolean::BoolElem;
use bds_core::dynamics::ActionSpec;
use bds_core::presets::{DirectedGraphInput, GraphEdge};
use bds_core::semigroup::{mul, SemiElem};
use bds_core::{Backend, System, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const LABELS: [&str; 3] = ["a", "b", "c"];

/// A random finite system. Every target atom gets at most one source per
/// label, so distinct atoms always have disjoint images.
pub fn random_system<R: Rng>(rng: &mut R, max_atoms: usize, max_labels: usize) -> System {
    let n = rng.gen_range(1..=max_atoms);
    let k = rng.gen_range(1..=max_labels);
    random_system_of(rng, n, k)
}

pub fn random_system_of<R: Rng>(rng: &mut R, n: usize, k: usize) -> System {
    let names: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
    let backend = Backend::finite_atoms(names.iter().cloned()).unwrap();
    let mut actions = Vec::new();
    for label in LABELS.iter().take(k) {
        let mut img = vec![BTreeSet::new(); n];
        for t in 0..n {
            // slightly more than half of the targets get a source
            if rng.gen_bool(0.55) {
                img[rng.gen_range(0..n)].insert(t);
            }
        }
        actions.push((label.to_string(), ActionSpec::Atoms(img)));
    }
    System::new(backend, actions).expect("disjoint images")
}

/// Deterministic corpus of small systems.
pub fn corpus(count: usize, max_atoms: usize, max_labels: usize, seed: u64) -> Vec<System> {
    let mut r = rng(seed);
    (0..count).map(|_| random_system(&mut r, max_atoms, max_labels)).collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> DirectedGraphInput {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..m)
        .map(|e| {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            GraphEdge::new(&vertices[s], &vertices[t], &format!("e{e}"))
        })
        .collect();
    DirectedGraphInput { vertices, edges }
}

/// All elements of a finite system's algebra, bottom included.
pub fn elements(sys: &System) -> Vec<BoolElem> {
    let n = sys.atom_count();
    (0u32..(1 << n)).map(|m| BoolElem::atoms((0..n).filter(|i| m >> i & 1 == 1))).collect()
}

pub fn nonempty_elements(sys: &System) -> Vec<BoolElem> {
    elements(sys).into_iter().filter(|e| !e.is_empty()).collect()
}

pub fn subsets(a: &BoolElem) -> Vec<BoolElem> {
    let atoms: Vec<usize> = a.atom_set().iter().copied().collect();
    (0u32..(1 << atoms.len()))
        .map(|m| BoolElem::atoms((0..atoms.len()).filter(|i| m >> i & 1 == 1).map(|i| atoms[i])))
        .collect()
}

/// All words up to length `n`, shortest first.
pub fn words(labels: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    let mut level = vec![Word::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &level {
            for l in 0..labels {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub fn random_word<R: Rng>(rng: &mut R, labels: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..labels)).collect()
}

/// A random element of the system's algebra; cofinite elements use indices in `[-r, r]`.
pub fn random_elem<R: Rng>(rng: &mut R, sys: &System, r: i64) -> BoolElem {
    if sys.is_finite() {
        BoolElem::atoms((0..sys.atom_count()).filter(|_| rng.gen_bool(0.5)))
    } else {
        let u = sys.backend().universe().unwrap();
        let idx: Vec<i64> = u.range(-r, r).filter(|_| rng.gen_bool(0.3)).collect();
        if rng.gen_bool(0.5) {
            BoolElem::finite(idx)
        } else {
            BoolElem::cofinite(idx)
        }
    }
}

/// A random element of `T` with words of length at most `depth`.
pub fn random_semi<R: Rng>(rng: &mut R, sys: &System, depth: usize) -> SemiElem {
    if rng.gen_ratio(1, 20) {
        return SemiElem::Zero;
    }
    let k = sys.label_count();
    let a = random_word(rng, k, depth);
    let b = random_word(rng, k, depth);
    let mut x = random_elem(rng, sys, 4);
    // bias towards nonzero elements
    if rng.gen_bool(0.5) {
        x = x.join(&sys.range(&a).meet(&sys.range(&b)));
    }
    SemiElem::triple(sys, a, &x, b)
}

pub fn random_idempotent<R: Rng>(rng: &mut R, sys: &System, depth: usize) -> SemiElem {
    let a = random_word(rng, sys.label_count(), depth);
    let x = random_elem(rng, sys, 4).join(&sys.range(&a));
    SemiElem::e(sys, a, &x)
}

/// All nonzero idempotents `s_β p_B s_β*` with `|β| ≤ depth` (finite backend).
pub fn idempotents(sys: &System, depth: usize) -> Vec<SemiElem> {
    let mut out = Vec::new();
    for w in words(sys.label_count(), depth) {
        let r = sys.range(&w);
        for b in subsets(&r) {
            if !b.is_empty() {
                out.push(SemiElem::Triple(w.clone(), b, w.clone()));
            }
        }
    }
    out
}

/// All nonzero elements `s_α p_A s_β*` with `|α|, |β| ≤ depth` (finite backend).
pub fn all_elements(sys: &System, depth: usize) -> Vec<SemiElem> {
    let ws = words(sys.label_count(), depth);
    let mut out = Vec::new();
    for a in &ws {
        for b in &ws {
            let r = sys.range(a).meet(&sys.range(b));
            for x in subsets(&r) {
                if !x.is_empty() {
                    out.push(SemiElem::Triple(a.clone(), x, b.clone()));
                }
            }
        }
    }
    out
}

/// `e ≤ f` for idempotents, as `e = ef`.
pub fn below(sys: &System, e: &SemiElem, f: &SemiElem) -> bool {
    mul(sys, e, f) == *e
}

/// Brute cover test: a nonzero idempotent of depth ≤ `depth` below `x` that
/// is orthogonal to every member of `z`, if there is one.
pub fn uncovered(sys: &System, x: &SemiElem, z: &[SemiElem], depth: usize) -> Option<SemiElem> {
    idempotents(sys, depth).into_iter().find(|e| below(sys, e, x) && z.iter().all(|m| mul(sys, e, m).is_zero()))
}

/// `λ_B > 0` for every nonempty `B ⊆ A`, checked on all subsets.
pub fn regular_brute(sys: &System, a: &BoolElem) -> bool {
    subsets(a).iter().filter(|b| !b.is_empty()).all(|b| (0..sys.label_count()).any(|l| !sys.apply(l, b).is_empty()))
}

pub fn delta_brute(sys: &System, a: &BoolElem) -> Vec<usize> {
    (0..sys.label_count()).filter(|&l| !sys.apply(l, a).is_empty()).collect()
}

/// `I_A` is hereditary: every image of every subset of `A` stays in `A`.
pub fn hereditary_brute(sys: &System, a: &BoolElem) -> bool {
    subsets(a).iter().all(|b| (0..sys.label_count()).all(|l| sys.apply(l, b).leq(a)))
}

/// `I_A` is saturated: a regular `B` whose images all lie under `A` lies under `A`.
pub fn saturated_brute(sys: &System, a: &BoolElem) -> bool {
    elements(sys).iter().all(|b| {
        let premise = regular_brute(sys, b) && (0..sys.label_count()).all(|l| sys.apply(l, b).leq(a));
        !premise || b.leq(a)
    })
}

/// Generators `A` of the hereditary and saturated ideals `I_A`.
pub fn hs_brute(sys: &System) -> BTreeSet<BoolElem> {
    elements(sys).into_iter().filter(|a| hereditary_brute(sys, a) && saturated_brute(sys, a)).collect()
}

/// `(α, A)` is a cycle without exits, straight from the definition. The
/// sequence `θ_{α^k}(A)` is eventually periodic, so `k` runs until it repeats.
pub fn is_cycle_without_exits(sys: &System, alpha: &[usize], a: &BoolElem) -> bool {
    if alpha.is_empty() || a.is_empty() || !a.leq(&sys.range(alpha)) {
        return false;
    }
    let mut seen = BTreeSet::new();
    let mut cur = a.clone();
    while seen.insert(cur.clone()) {
        if cur.is_empty() {
            return false;
        }
        if subsets(&cur).iter().any(|b| !b.is_empty() && !b.meets(&sys.apply_word(alpha, b))) {
            return false;
        }
        let mut step = cur.clone();
        for &l in alpha {
            if !regular_brute(sys, &step) || delta_brute(sys, &step) != [l] {
                return false;
            }
            step = sys.apply(l, &step);
        }
        cur = step;
    }
    true
}

/// Whether some pair `(α, A)` is a cycle without exits, over all nonempty `A`
/// and all words of length at most `n·2^n`. Words are pruned by the no-exit
/// condition at `k = 0`, which any candidate must meet.
pub fn has_cycle_brute(sys: &System) -> bool {
    let n = sys.atom_count();
    let max_len = n << n;
    fn search(sys: &System, a: &BoolElem, cur: &BoolElem, word: &mut Word, max_len: usize) -> bool {
        if !word.is_empty() && is_cycle_without_exits(sys, word, a) {
            return true;
        }
        if word.len() >= max_len || !regular_brute(sys, cur) {
            return false;
        }
        for l in 0..sys.label_count() {
            if delta_brute(sys, cur) == [l] {
                word.push(l);
                let next = sys.apply(l, cur);
                let found = search(sys, a, &next, word, max_len);
                word.pop();
                if found {
                    return true;
                }
            }
        }
        false
    }
    nonempty_elements(sys).iter().any(|a| search(sys, a, a, &mut Word::new(), max_len))
}
