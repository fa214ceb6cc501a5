//! The topological graph of a system, realized as a discrete labelled graph.
//!
//! Vertices are ultrafilters. For each label `α` and each ultrafilter `ξ`
//! lying over `R_α` there is one edge `e^α_ξ` with `d(e) = ξ` and
//! `r(e) = θ̂_α(ξ) = {A : θ_α(A) ∈ ξ}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::boolean::Ultrafilter;
use crate::dynamics::{System, Word};
use crate::ktheory::{AbelianGroup, KGroups};
use crate::semigroup::{Extension, PathFilter, SemiError};

/// Errors of the graph layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TopoError {
    /// The operation needs a finite graph or the finite backend.
    #[error("needs the finite backend")]
    NotFinite,
}

/// Vertex tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexClass {
    /// No edge has this vertex as range: `λ = 0`.
    Sce,
    /// Finitely many edges nearby but in the closure of the sources.
    FinNotRg,
    /// Regular.
    Rg,
    /// Singular for another reason (infinitely many edges); never produced with finite label sets.
    Sg,
}

impl VertexClass {
    /// Short tag.
    pub fn tag(self) -> &'static str {
        match self {
            VertexClass::Sce => "sce",
            VertexClass::FinNotRg => "fin-rg",
            VertexClass::Rg => "rg",
            VertexClass::Sg => "sg",
        }
    }

    fn shape(self) -> &'static str {
        match self {
            VertexClass::Sce => "box",
            VertexClass::FinNotRg => "diamond",
            VertexClass::Rg => "circle",
            VertexClass::Sg => "octagon",
        }
    }
}

/// An edge `e^label_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    /// Label position.
    pub label: usize,
    /// `d(e)`, the ultrafilter the edge is indexed by.
    pub d: Ultrafilter,
    /// `r(e)`, the pulled-back ultrafilter.
    pub r: Ultrafilter,
}

/// The graph `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopoGraph {
    /// Vertices in canonical order.
    pub vertices: Vec<Ultrafilter>,
    /// Vertex display names, aligned with `vertices`.
    pub names: Vec<String>,
    /// Vertex tags, aligned with `vertices`.
    pub classes: Vec<VertexClass>,
    /// Label names.
    pub labels: Vec<String>,
    /// Edges sorted by `(label, d)`.
    pub edges: Vec<Edge>,
    /// Whether this is only a window of an infinite graph.
    pub truncated: bool,
}

fn vertex_name(sys: &System, v: Ultrafilter) -> String {
    match v {
        Ultrafilter::Atom(a) => sys.backend().atoms()[a].clone(),
        Ultrafilter::Index(i) => format!("{i}"),
        Ultrafilter::AtInfinity => String::from("∞"),
    }
}

/// Build `E`. On the cofinite backend the graph is the window over the probe
/// indices together with `ξ_∞`, whose edge for `α` exists iff `R_α` is cofinite.
pub fn build_graph(sys: &System) -> TopoGraph {
    let mut vertices: Vec<Ultrafilter> = if sys.is_finite() {
        (0..sys.atom_count()).map(Ultrafilter::Atom).collect()
    } else {
        let mut v: Vec<Ultrafilter> = sys.probe_indices(0).into_iter().map(Ultrafilter::Index).collect();
        v.push(Ultrafilter::AtInfinity);
        v
    };
    let mut edges = Vec::new();
    for l in 0..sys.label_count() {
        let range = sys.range(&[l]);
        for &v in &vertices {
            if !v.contains(&range) {
                continue;
            }
            if let Some(r) = sys.pullback(l, v) {
                edges.push(Edge { label: l, d: v, r });
            }
        }
    }
    for e in &edges {
        if !vertices.contains(&e.r) {
            vertices.push(e.r);
        }
    }
    vertices.sort();
    edges.sort();
    let classes = vertices.iter().map(|&v| classify(sys, v)).collect();
    TopoGraph {
        names: vertices.iter().map(|&v| vertex_name(sys, v)).collect(),
        vertices,
        classes,
        labels: sys.labels().to_vec(),
        edges,
        truncated: !sys.is_finite(),
    }
}

fn classify(sys: &System, v: Ultrafilter) -> VertexClass {
    match v.generator() {
        Some(g) => {
            if sys.lambda(&g).unwrap_or(0) == 0 {
                VertexClass::Sce
            } else {
                VertexClass::Rg
            }
        }
        None => {
            // every cofinite neighbourhood of ξ_∞ has far atoms, and those see exactly the shift labels
            if sys.shift_labels().is_empty() {
                VertexClass::Sce
            } else {
                VertexClass::Rg
            }
        }
    }
}

/// Tag every vertex of `g` from the `λ` data of `sys`.
pub fn classify_vertices(sys: &System, g: &TopoGraph) -> BTreeMap<Ultrafilter, VertexClass> {
    g.vertices.iter().map(|&v| (v, classify(sys, v))).collect()
}

/// A boundary path of the atom graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundaryPath {
    /// A finite path ending at a singular atom.
    Finite {
        /// The labels followed.
        word: Word,
        /// Final atom.
        terminal: usize,
    },
    /// `prefix · period^∞`, entering its cycle at `anchor`.
    EventuallyPeriodic {
        /// Word before the cycle.
        prefix: Word,
        /// Cycle word read from `anchor`.
        period: Word,
        /// First atom on the cycle.
        anchor: usize,
    },
}

impl BoundaryPath {
    /// The corresponding path filter.
    pub fn to_filter(&self, sys: &System) -> Result<PathFilter, SemiError> {
        match self {
            BoundaryPath::Finite { word, terminal } => {
                PathFilter::new(sys, word.clone(), Ultrafilter::Atom(*terminal), Extension::Closed)
            }
            BoundaryPath::EventuallyPeriodic { prefix, period, anchor } => {
                PathFilter::new(sys, prefix.clone(), Ultrafilter::Atom(*anchor), Extension::Periodic(period.clone()))
            }
        }
    }

    /// Text form.
    pub fn show(&self, sys: &System) -> String {
        let names = sys.backend().atoms();
        match self {
            BoundaryPath::Finite { word, terminal } => format!("{} → {}", sys.word_str(word), names[*terminal]),
            BoundaryPath::EventuallyPeriodic { prefix, period, anchor } => {
                format!("{}({})^∞ @ {}", sys.word_str(prefix), sys.word_str(period), names[*anchor])
            }
        }
    }
}

/// Result of [`boundary_paths`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryPaths {
    /// All boundary paths.
    Paths(Vec<BoundaryPath>),
    /// A cycle has an exit, so there are infinitely many boundary paths.
    InfinitePathSpace,
    /// More than `cap` paths.
    ExceedsCap(usize),
}

/// Strongly connected atoms lying on a cycle.
fn cycle_atoms(sys: &System) -> Vec<bool> {
    let n = sys.atom_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|a| sys.successors(a).into_iter().map(|(_, b)| b).collect()).collect();
    // a lies on a cycle iff a is reachable from one of its successors
    (0..n)
        .map(|a| {
            let mut seen = vec![false; n];
            let mut stack = succ[a].clone();
            while let Some(x) = stack.pop() {
                if x == a {
                    return true;
                }
                if !core::mem::replace(&mut seen[x], true) {
                    stack.extend(succ[x].iter().copied());
                }
            }
            false
        })
        .collect()
}

/// All boundary paths of the atom graph (finite backend), at most `cap` of them.
///
/// The path space is infinite exactly when some atom on a cycle has a second
/// out-edge. Otherwise every path either stops at a singular atom or falls
/// into a cycle without exits and is listed in eventually periodic form.
pub fn boundary_paths(sys: &System, cap: usize) -> Result<BoundaryPaths, TopoError> {
    if !sys.is_finite() {
        return Err(TopoError::NotFinite);
    }
    let on_cycle = cycle_atoms(sys);
    let n = sys.atom_count();
    if (0..n).any(|a| on_cycle[a] && sys.successors(a).len() >= 2) {
        return Ok(BoundaryPaths::InfinitePathSpace);
    }
    let mut out = Vec::new();
    for start in 0..n {
        let mut stack: Vec<(usize, Word)> = vec![(start, Word::new())];
        while let Some((a, w)) = stack.pop() {
            if out.len() >= cap {
                return Ok(BoundaryPaths::ExceedsCap(cap));
            }
            if on_cycle[a] {
                let mut period = Word::new();
                let mut cur = a;
                loop {
                    let (l, b) = sys.successors(cur)[0];
                    period.push(l);
                    cur = b;
                    if cur == a {
                        break;
                    }
                }
                out.push(BoundaryPath::EventuallyPeriodic { prefix: w, period, anchor: a });
            } else {
                let succ = sys.successors(a);
                if succ.is_empty() {
                    out.push(BoundaryPath::Finite { word: w, terminal: a });
                    continue;
                }
                for (l, b) in succ.into_iter().rev() {
                    let mut w2 = w.clone();
                    w2.push(l);
                    stack.push((b, w2));
                }
            }
        }
    }
    out.sort();
    Ok(BoundaryPaths::Paths(out))
}

/// Fraction-free determinant, kept separate from the K-theory module.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors by determinantal divisors: `s_k = D_k / D_{k-1}` where
/// `D_k` is the gcd of the `k × k` minors.
fn invariant_factors(m: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&bareiss(minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// K-groups of a finite graph straight from its edges.
///
/// Column for each vertex `v` receiving edges: `e_v − Σ_{r(e)=v} e_{d(e)}`.
/// The cokernel is `K₀` and the kernel is `K₁`; invariant factors come from
/// determinantal divisors.
pub fn graph_ktheory_oracle(g: &TopoGraph) -> Result<KGroups, TopoError> {
    if g.truncated {
        return Err(TopoError::NotFinite);
    }
    let n = g.vertices.len();
    let pos = |v: &Ultrafilter| g.vertices.iter().position(|w| w == v).expect("vertex");
    let receivers: Vec<usize> = (0..n).filter(|&i| g.edges.iter().any(|e| pos(&e.r) == i)).collect();
    let cols = receivers.len();
    let mut m = vec![vec![BigInt::zero(); cols]; n];
    for (c, &v) in receivers.iter().enumerate() {
        m[v][c] += 1;
        for e in g.edges.iter().filter(|e| pos(&e.r) == v) {
            m[pos(&e.d)][c] -= 1;
        }
    }
    let factors = invariant_factors(&m, n, cols);
    let rank = factors.len();
    let torsion = factors.into_iter().map(|x| x.abs()).filter(|x| *x > BigInt::one()).collect();
    Ok(KGroups {
        k0: AbelianGroup { rank: n - rank, torsion },
        k1: AbelianGroup { rank: cols - rank, torsion: Vec::new() },
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text; edges are drawn from `d(e)` to `r(e)`.
pub fn to_dot(g: &TopoGraph) -> String {
    let mut s = String::from("digraph E {\n");
    for (i, name) in g.names.iter().enumerate() {
        let _ = writeln!(s, "  {} [shape={}];", quote(name), g.classes[i].shape());
    }
    let name = |v: &Ultrafilter| &g.names[g.vertices.iter().position(|w| w == v).expect("vertex")];
    for e in &g.edges {
        let _ = writeln!(s, "  {} -> {} [label={}];", quote(name(&e.d)), quote(name(&e.r)), quote(&g.labels[e.label]));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{Backend, BoolElem, Universe};
    use crate::dynamics::fixtures::*;
    use crate::dynamics::{window, Tail};

    #[test]
    fn s1_graph() {
        let s = s1();
        let g = build_graph(&s);
        let a = Ultrafilter::Atom;
        assert_eq!(g.edges, vec![Edge { label: 0, d: a(0), r: a(0) }, Edge { label: 1, d: a(1), r: a(0) }]);
        assert_eq!(g.classes, vec![VertexClass::Rg, VertexClass::Sce]);
        assert_eq!(
            to_dot(&g),
            "digraph E {\n  \"u\" [shape=circle];\n  \"v\" [shape=box];\n  \"u\" -> \"u\" [label=\"a\"];\n  \"v\" -> \"u\" [label=\"b\"];\n}\n"
        );
    }

    #[test]
    fn s4_edges_at_infinity() {
        let s = s4();
        let g = build_graph(&s);
        let inf: Vec<_> = g.edges.iter().filter(|e| e.d == Ultrafilter::AtInfinity).collect();
        assert_eq!(inf.len(), 2);
        assert!(inf.iter().all(|e| e.r == Ultrafilter::AtInfinity && e.label != 0));
        let e = g.edges.iter().find(|e| e.label == 1 && e.d == Ultrafilter::Index(3)).unwrap();
        assert_eq!(e.r, Ultrafilter::Index(2));
        let e = g.edges.iter().find(|e| e.label == 2 && e.d == Ultrafilter::Index(3)).unwrap();
        assert_eq!(e.r, Ultrafilter::Index(4));
    }

    #[test]
    fn all_edges_into_w() {
        // X = {w} ∪ N with w as index 0 and θ({w}) = N
        let s = System::new(
            Backend::FiniteCofinite(Universe::Naturals),
            vec![("α".into(), window(&[(0, BoolElem::cofinite([0]))], Tail::Kill, 0))],
        )
        .unwrap();
        let g = build_graph(&s);
        assert!(g.edges.iter().all(|e| e.r == Ultrafilter::Index(0)));
        assert!(g.edges.iter().any(|e| e.d == Ultrafilter::AtInfinity));
        assert!(!g.edges.iter().any(|e| e.d == Ultrafilter::Index(0)));
    }

    #[test]
    fn paths() {
        assert_eq!(
            boundary_paths(&s3(), 10).unwrap(),
            BoundaryPaths::Paths(vec![BoundaryPath::EventuallyPeriodic { prefix: vec![], period: vec![0], anchor: 0 }])
        );
        assert_eq!(boundary_paths(&s2(), 100).unwrap(), BoundaryPaths::InfinitePathSpace);
        assert_eq!(boundary_paths(&s1(), 100).unwrap(), BoundaryPaths::InfinitePathSpace);
        let chain =
            System::finite(&["p", "q", "r"], &[("a", &[("p", &["q"]), ("q", &["r"])]), ("b", &[("p", &["r"])])])
                .unwrap();
        let BoundaryPaths::Paths(ps) = boundary_paths(&chain, 100).unwrap() else { panic!() };
        assert_eq!(ps.len(), 4);
        assert!(ps.contains(&BoundaryPath::Finite { word: vec![1], terminal: 2 }));
        for p in &ps {
            assert!(p.to_filter(&chain).is_ok());
        }
        assert_eq!(boundary_paths(&chain, 2).unwrap(), BoundaryPaths::ExceedsCap(2));
    }

    #[test]
    fn oracle_examples() {
        let g = build_graph(&s3());
        let k = graph_ktheory_oracle(&g).unwrap();
        assert_eq!((k.k0.rank, k.k1.rank), (1, 1));
        let k = graph_ktheory_oracle(&build_graph(&s2())).unwrap();
        assert_eq!((k.k0.rank, k.k1.rank, k.k0.torsion.len()), (0, 0, 0));
        let lone = System::finite(&["z"], &[]).unwrap();
        let k = graph_ktheory_oracle(&build_graph(&lone)).unwrap();
        assert_eq!((k.k0.rank, k.k1.rank), (1, 0));
        assert_eq!(classify_vertices(&lone, &build_graph(&lone))[&Ultrafilter::Atom(0)], VertexClass::Sce);
        assert_eq!(to_dot(&build_graph(&System::finite(&[], &[]).unwrap())), "digraph E {\n}\n");
    }
}
