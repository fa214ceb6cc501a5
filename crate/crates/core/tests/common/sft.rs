//! Simplicity of a one-sided shift of finite type by word enumeration:
//! no cyclic point isolated in past equivalence, and every past class cofinal.

use std::collections::{BTreeMap, BTreeSet};

/// Points are stood in for by live words of this length.
const POINT_LEN: usize = 10;
/// A word is live when it extends this far.
const EXTEND: usize = 12;

pub struct Shift {
    alphabet: Vec<char>,
    forbidden: Vec<String>,
    memory: usize,
}

impl Shift {
    pub fn new(alphabet: &[char], forbidden: &[&str], memory: usize) -> Shift {
        Shift { alphabet: alphabet.to_vec(), forbidden: forbidden.iter().map(|s| s.to_string()).collect(), memory }
    }

    fn allowed(&self, w: &str) -> bool {
        !self.forbidden.iter().any(|f| w.contains(f.as_str()))
    }

    fn extends(&self, w: &mut String, more: usize) -> bool {
        if !self.allowed(w) {
            return false;
        }
        if more == 0 {
            return true;
        }
        for &c in &self.alphabet {
            w.push(c);
            let ok = self.extends(w, more - 1);
            w.pop();
            if ok {
                return true;
            }
        }
        false
    }

    fn live(&self, w: &str) -> bool {
        self.extends(&mut w.to_string(), EXTEND)
    }

    fn words(&self, n: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out.iter().flat_map(|w| self.alphabet.iter().map(move |&c| format!("{w}{c}"))).collect();
        }
        out
    }

    fn short_words(&self, n: usize) -> Vec<String> {
        (0..=n).flat_map(|k| self.words(k)).collect()
    }

    /// Pasts `z` with `|z| ≤ l` that can precede `w`.
    fn past(&self, w: &str) -> BTreeSet<String> {
        self.short_words(self.memory).into_iter().filter(|z| self.live(&format!("{z}{w}"))).collect()
    }

    fn classes(&self) -> BTreeMap<BTreeSet<String>, Vec<String>> {
        let mut out: BTreeMap<_, Vec<String>> = BTreeMap::new();
        for w in self.words(POINT_LEN).into_iter().filter(|w| self.live(w)) {
            out.entry(self.past(&w)).or_default().push(w);
        }
        out
    }

    /// Some periodic point `α^∞` with `|α| ≤ 4` is alone in its past class.
    pub fn has_isolated_cyclic_point(&self) -> bool {
        let classes = self.classes();
        self.short_words(4).into_iter().filter(|a| !a.is_empty()).any(|a| {
            let point: String = a.chars().cycle().take(POINT_LEN).collect();
            let periodic: String = a.chars().cycle().take(3 * POINT_LEN).collect();
            self.allowed(&periodic) && classes.get(&self.past(&point)).is_some_and(|k| k.len() == 1)
        })
    }

    /// Every point shares a tail with some point of every past class.
    pub fn cofinal(&self) -> bool {
        let q = self.forbidden.iter().map(|f| f.chars().count()).max().unwrap_or(0).saturating_sub(1).max(1);
        let states: Vec<String> = self.words(q).into_iter().filter(|w| self.live(w)).collect();
        let succ = |s: &String| -> Vec<String> {
            self.alphabet
                .iter()
                .map(|&c| format!("{s}{c}"))
                .filter(|w| self.live(w))
                .map(|w| w.chars().skip(1).collect())
                .collect()
        };
        for class in self.classes().values() {
            let mut reach: BTreeSet<String> = class.iter().map(|w| w.chars().take(q).collect()).collect();
            let mut stack: Vec<String> = reach.iter().cloned().collect();
            while let Some(s) = stack.pop() {
                for t in succ(&s) {
                    if reach.insert(t.clone()) {
                        stack.push(t);
                    }
                }
            }
            // a cycle among the states outside the reach is a point that never merges
            let outside: Vec<&String> = states.iter().filter(|s| !reach.contains(*s)).collect();
            let mut alive: BTreeSet<&String> = outside.iter().copied().collect();
            loop {
                let keep: BTreeSet<&String> =
                    alive.iter().copied().filter(|s| succ(s).iter().any(|t| alive.contains(t))).collect();
                if keep.len() == alive.len() {
                    break;
                }
                alive = keep;
            }
            if !alive.is_empty() {
                return false;
            }
        }
        true
    }

    pub fn simple(&self) -> bool {
        !self.has_isolated_cyclic_point() && self.cofinal()
    }
}
