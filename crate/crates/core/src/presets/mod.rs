//! Builders for the standard example classes: directed graphs, labelled
//! graphs, one-sided shifts of finite type and partial homeomorphisms.

pub mod examples;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::boolean::{AtomSet, Backend, BoolElem, Universe};
use crate::dynamics::{ActionSpec, DynError, System, Tail};

/// Errors raised by the builders.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PresetError {
    /// The assembled system was rejected.
    #[error(transparent)]
    Dyn(#[from] DynError),
    /// An edge endpoint or generator member is not a vertex.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    /// Vertex names repeat.
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    /// Edge ids repeat.
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    /// Disjoint sets `a`, `b` of the generated field have overlapping `label` images.
    #[error(
        "labelling is not weakly left-resolving: r({a:?} ∩ {b:?}, {label}) ≠ r({a:?}, {label}) ∩ r({b:?}, {label})"
    )]
    NotWeaklyLeftResolving {
        /// First set, as vertex names.
        a: Vec<String>,
        /// Second set, as vertex names.
        b: Vec<String>,
        /// The offending label.
        label: String,
    },
    /// A forbidden word is empty or uses a symbol outside the alphabet.
    #[error("bad forbidden word `{0}`")]
    BadWord(String),
    /// The past classes at this memory are still refined at the next length.
    #[error("past classes do not stabilize at memory {0}")]
    MemoryTooSmall(usize),
    /// The shift space has no points.
    #[error("the shift space is empty")]
    EmptyShift,
    /// The atom map is not a bijection between `Y` and `Z`.
    #[error("map is not a bijection between the given sets")]
    NotBijective,
    /// An edge of a windowed graph starts outside the window.
    #[error("edge source {0} lies outside the window")]
    OutsideWindow(i64),
}

/// An edge `source → target` carrying a label (the edge id for plain graphs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    /// Source vertex.
    pub source: String,
    /// Target vertex.
    pub target: String,
    /// Edge id or label.
    pub label: String,
}

impl GraphEdge {
    /// Convenience constructor.
    pub fn new(source: &str, target: &str, label: &str) -> GraphEdge {
        GraphEdge { source: source.into(), target: target.into(), label: label.into() }
    }
}

/// A finite directed graph with distinct edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraphInput {
    /// Vertex names.
    pub vertices: Vec<String>,
    /// Edges; `label` is the edge id.
    pub edges: Vec<GraphEdge>,
}

/// A finite labelled graph with accommodating generator sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraphInput {
    /// Vertex names.
    pub vertices: Vec<String>,
    /// Labelled edges.
    pub edges: Vec<GraphEdge>,
    /// Vertex sets generating the field, before closing under `r(·, α)`.
    pub generators: Vec<Vec<String>>,
}

/// A one-sided shift of finite type over single-character symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftInput {
    /// The alphabet.
    pub alphabet: Vec<char>,
    /// Forbidden words.
    pub forbidden: Vec<String>,
    /// Past length `l`.
    pub memory: usize,
}

fn vertex_table(vertices: &[String]) -> Result<BTreeMap<&str, usize>, PresetError> {
    let mut idx = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if idx.insert(v.as_str(), i).is_some() {
            return Err(PresetError::DuplicateVertex(v.clone()));
        }
    }
    Ok(idx)
}

fn lookup(idx: &BTreeMap<&str, usize>, v: &str) -> Result<usize, PresetError> {
    idx.get(v).copied().ok_or_else(|| PresetError::UnknownVertex(v.into()))
}

/// Assemble a finite system from local atom indices. `images[l][a]` lists the
/// local atoms in `θ_l(a)`.
fn assemble(names: Vec<String>, labels: Vec<(String, Vec<BTreeSet<usize>>)>) -> Result<System, PresetError> {
    let backend = Backend::finite_atoms(names.iter().cloned()).map_err(DynError::from)?;
    let pos: Vec<usize> = names.iter().map(|n| backend.atom_index(n).expect("present")).collect();
    let mut specs = Vec::new();
    for (label, local) in labels {
        let mut img = vec![AtomSet::new(); names.len()];
        for (a, targets) in local.iter().enumerate() {
            img[pos[a]] = targets.iter().map(|&t| pos[t]).collect();
        }
        specs.push((label, ActionSpec::Atoms(img)));
    }
    Ok(System::new(backend, specs)?)
}

/// Atoms are vertices, labels are edge ids and `θ_e(A) = {target(e)}` when `source(e) ∈ A`.
pub fn from_directed_graph(g: &DirectedGraphInput) -> Result<System, PresetError> {
    let idx = vertex_table(&g.vertices)?;
    let mut labels = Vec::new();
    let mut seen = BTreeSet::new();
    for e in &g.edges {
        if !seen.insert(e.label.as_str()) {
            return Err(PresetError::DuplicateEdge(e.label.clone()));
        }
        let (s, t) = (lookup(&idx, &e.source)?, lookup(&idx, &e.target)?);
        let mut img = vec![BTreeSet::new(); g.vertices.len()];
        img[s].insert(t);
        labels.push((e.label.clone(), img));
    }
    assemble(g.vertices.clone(), labels)
}

/// Split every block of `blocks` along `set`. Returns whether anything changed.
fn refine(blocks: &mut Vec<BTreeSet<usize>>, set: &BTreeSet<usize>) -> bool {
    let mut out = Vec::with_capacity(blocks.len());
    let mut changed = false;
    for b in blocks.drain(..) {
        let (inside, outside): (BTreeSet<usize>, BTreeSet<usize>) = b.iter().partition(|v| set.contains(v));
        if inside.is_empty() || outside.is_empty() {
            out.push(b);
        } else {
            changed = true;
            out.push(inside);
            out.push(outside);
        }
    }
    *blocks = out;
    changed
}

/// `θ_α = r(−, α)` on the field generated by the generators and all `r(·, α)` images.
///
/// The field is closed under `r(·, α)` by refining its atoms until every image of
/// an atom is a union of atoms. Atoms are named by their vertices joined with `+`.
pub fn from_labelled_graph(g: &LabelledGraphInput) -> Result<System, PresetError> {
    let idx = vertex_table(&g.vertices)?;
    let mut by_label: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for e in &g.edges {
        let (s, t) = (lookup(&idx, &e.source)?, lookup(&idx, &e.target)?);
        by_label.entry(e.label.as_str()).or_default().push((s, t));
    }
    let r = |block: &BTreeSet<usize>, edges: &[(usize, usize)]| -> BTreeSet<usize> {
        edges.iter().filter(|(s, _)| block.contains(s)).map(|&(_, t)| t).collect()
    };

    let mut blocks: Vec<BTreeSet<usize>> = vec![(0..g.vertices.len()).collect()];
    blocks.retain(|b| !b.is_empty());
    for gen in &g.generators {
        let set = gen.iter().map(|v| lookup(&idx, v)).collect::<Result<BTreeSet<_>, _>>()?;
        refine(&mut blocks, &set);
    }
    loop {
        let images: Vec<BTreeSet<usize>> =
            by_label.values().flat_map(|edges| blocks.iter().map(|b| r(b, edges))).collect();
        let mut changed = false;
        for img in &images {
            changed |= refine(&mut blocks, img);
        }
        if !changed {
            break;
        }
    }
    blocks.sort();

    let names_of = |b: &BTreeSet<usize>| -> Vec<String> { b.iter().map(|&v| g.vertices[v].clone()).collect() };
    let block_of: BTreeMap<usize, usize> =
        blocks.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |&v| (v, i))).collect();
    let mut labels = Vec::new();
    for (label, edges) in &by_label {
        let imgs: Vec<BTreeSet<usize>> = blocks.iter().map(|b| r(b, edges)).collect();
        // disjoint atoms need disjoint images; unions then follow
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if !imgs[i].is_disjoint(&imgs[j]) {
                    return Err(PresetError::NotWeaklyLeftResolving {
                        a: names_of(&blocks[i]),
                        b: names_of(&blocks[j]),
                        label: label.to_string(),
                    });
                }
            }
        }
        let local = imgs.iter().map(|img| img.iter().map(|v| block_of[v]).collect()).collect();
        labels.push((label.to_string(), local));
    }
    let names = blocks.iter().map(|b| names_of(b).join("+")).collect();
    assemble(names, labels)
}

/// A labelled graph on `Z` or `N` given explicitly on the window `[−bound, bound]`
/// and by a tail rule per label outside it.
///
/// `θ_α({i})` is the set of `α`-targets of `i` inside the window. Every label
/// must appear in `tails`.
pub fn from_labelled_window(
    universe: Universe,
    bound: i64,
    edges: &[(i64, i64, &str)],
    tails: &[(&str, Tail)],
) -> Result<System, PresetError> {
    let mut tables: BTreeMap<&str, (BTreeMap<i64, BTreeSet<i64>>, Tail)> =
        tails.iter().map(|&(l, t)| (l, (BTreeMap::new(), t))).collect();
    for &(s, t, l) in edges {
        if s.abs() > bound || !universe.contains(s) {
            return Err(PresetError::OutsideWindow(s));
        }
        let (table, _) = tables.get_mut(l).ok_or_else(|| DynError::UnknownLabel(l.into()))?;
        table.entry(s).or_default().insert(t);
    }
    let specs = tables
        .into_iter()
        .map(|(l, (table, tail))| {
            let exceptions = table.into_iter().map(|(s, ts)| (s, BoolElem::finite(ts))).collect();
            (String::from(l), ActionSpec::Window { exceptions, tail, bound })
        })
        .collect();
    Ok(System::new(Backend::FiniteCofinite(universe), specs)?)
}

/// The single-label system of a partial bijection `φ: Y → Z` on atoms:
/// `θ_a(A) = φ⁻¹(A ∩ Z)`, so `R_a = Y` and `a` is defined exactly on `Z`.
pub fn from_partial_homeo(atoms: &[&str], y: &[&str], z: &[&str], phi: &[(&str, &str)]) -> Result<System, PresetError> {
    let ys: BTreeSet<&str> = y.iter().copied().collect();
    let zs: BTreeSet<&str> = z.iter().copied().collect();
    for n in ys.iter().chain(zs.iter()) {
        if !atoms.contains(n) {
            return Err(DynError::UnknownAtom((*n).into()).into());
        }
    }
    let src: BTreeSet<&str> = phi.iter().map(|p| p.0).collect();
    let dst: BTreeSet<&str> = phi.iter().map(|p| p.1).collect();
    if src != ys || dst != zs || src.len() != phi.len() || dst.len() != phi.len() {
        return Err(PresetError::NotBijective);
    }
    let table: Vec<(&str, Vec<&str>)> = phi.iter().map(|&(a, b)| (b, vec![a])).collect();
    let table: Vec<(&str, &[&str])> = table.iter().map(|(b, a)| (*b, a.as_slice())).collect();
    Ok(System::finite(atoms, &[("a", &table)])?)
}

/// Follower data of a shift of finite type, read off its forbidden words.
struct Shift<'a> {
    alphabet: Vec<char>,
    forbidden: &'a [Vec<char>],
}

impl Shift<'_> {
    fn allowed(&self, w: &[char]) -> bool {
        !self.forbidden.iter().any(|f| w.windows(f.len()).any(|x| x == f.as_slice()))
    }

    fn words(&self, len: usize) -> Vec<Vec<char>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| {
                    self.alphabet.iter().map(move |&c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// The set of `z` with `|z| ≤ l` and `z·w` allowed.
    fn past(&self, w: &[char], l: usize) -> BTreeSet<Vec<char>> {
        (0..=l)
            .flat_map(|n| self.words(n))
            .filter(|z| {
                let mut zw = z.clone();
                zw.extend_from_slice(w);
                self.allowed(&zw)
            })
            .collect()
    }
}

/// The system of a one-sided shift of finite type: atoms are the `l`-past
/// classes and `θ_α([x]) = {y : αy ∈ X, [αy] = [x]}`.
///
/// A point's `l`-past class only depends on its first `m − 1` symbols, where `m`
/// is the longest forbidden word, so classes are computed on the live prefixes
/// of that length. Atoms are named `[w1,w2,..]` by their prefixes.
pub fn from_sft(input: &SftInput) -> Result<System, PresetError> {
    let mut alphabet = input.alphabet.clone();
    alphabet.sort();
    alphabet.dedup();
    let mut forbidden = Vec::new();
    for f in &input.forbidden {
        if f.is_empty() || !f.chars().all(|c| alphabet.contains(&c)) {
            return Err(PresetError::BadWord(f.clone()));
        }
        forbidden.push(f.chars().collect::<Vec<char>>());
    }
    let p = forbidden.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1);
    let l = input.memory;
    if l < p {
        return Err(PresetError::MemoryTooSmall(l));
    }
    let shift = Shift { alphabet: alphabet.clone(), forbidden: &forbidden };

    // live prefixes: allowed words of length p that start an infinite allowed path
    let step = |w: &[char], c: char| -> Option<Vec<char>> {
        let mut wc = w.to_vec();
        wc.push(c);
        shift.allowed(&wc).then(|| wc[wc.len() - p..].to_vec())
    };
    let mut live: BTreeSet<Vec<char>> = shift.words(p).into_iter().filter(|w| shift.allowed(w)).collect();
    loop {
        let next: BTreeSet<Vec<char>> = live
            .iter()
            .filter(|w| alphabet.iter().any(|&c| step(w, c).is_some_and(|v| live.contains(&v))))
            .cloned()
            .collect();
        if next.len() == live.len() {
            break;
        }
        live = next;
    }
    if live.is_empty() {
        return Err(PresetError::EmptyShift);
    }

    let classes_at = |l: usize| -> BTreeMap<BTreeSet<Vec<char>>, Vec<Vec<char>>> {
        let mut m: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for w in &live {
            m.entry(shift.past(w, l)).or_default().push(w.clone());
        }
        m
    };
    let classes = classes_at(l);
    let mut blocks: Vec<Vec<Vec<char>>> = classes.into_values().collect();
    let mut finer: Vec<Vec<Vec<char>>> = classes_at(l + 1).into_values().collect();
    blocks.sort();
    finer.sort();
    if blocks != finer {
        return Err(PresetError::MemoryTooSmall(l));
    }
    let class_of: BTreeMap<&Vec<char>, usize> =
        blocks.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |w| (w, i))).collect();
    let names: Vec<String> = blocks
        .iter()
        .map(|b| {
            let parts: Vec<String> = b.iter().map(|w| w.iter().collect()).collect();
            alloc::format!("[{}]", parts.join(","))
        })
        .collect();

    // x ∈ θ_α(K) iff αx ∈ X and [αx] = K; this must not depend on the prefix within [x]
    let mut labels = Vec::new();
    for &c in &alphabet {
        let mut img = vec![BTreeSet::new(); blocks.len()];
        for (i, block) in blocks.iter().enumerate() {
            let mut seen: Option<Option<usize>> = None;
            for w in block {
                let mut cw = vec![c];
                cw.extend_from_slice(w);
                let target = shift.allowed(&cw).then(|| class_of[&cw[..p].to_vec()]);
                if seen.is_some_and(|s| s != target) {
                    return Err(PresetError::MemoryTooSmall(l));
                }
                seen = Some(target);
            }
            if let Some(Some(k)) = seen {
                img[k].insert(i);
            }
        }
        labels.push((c.to_string(), img));
    }
    // every point y = αx lies in θ_α of its class, so every class is regular
    for k in 0..names.len() {
        assert!(labels.iter().any(|(_, img)| !img[k].is_empty()), "singular class {}", names[k]);
    }
    assemble(names, labels)
}
