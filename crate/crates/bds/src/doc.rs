//! JSON system documents: parsing, canonical serialization and digests.

use std::collections::BTreeMap;
use std::fmt;

use bds_core::boolean::{AtomSet, Backend, BoolElem, Universe};
use bds_core::dynamics::{validate_system, ActionSpec, DynError, System, Tail, ValidationReport};
use bds_core::presets::{
    from_directed_graph, from_labelled_graph, from_partial_homeo, from_sft, DirectedGraphInput, GraphEdge,
    LabelledGraphInput, PresetError, SftInput,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A system as written on disk.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    /// `"finite"` or `"cofinite"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<BackendKind>,
    /// Atom identifiers (finite backend).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    /// Universe and window (cofinite backend).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowDoc>,
    /// Label identifiers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// One action per label.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actions: Option<BTreeMap<String, ActionDoc>>,
    /// Build the system from a preset instead.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetDoc>,
}

/// Backend selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    /// Powerset of a finite atom set.
    Finite,
    /// Finite/cofinite subsets of `N` or `Z`.
    Cofinite,
}

/// Universe and window half-width of a cofinite document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowDoc {
    /// `"N"` or `"Z"`.
    pub universe: UniverseDoc,
    /// Half-width `N` of the explicit window.
    pub bound: i64,
}

/// `"N"` or `"Z"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniverseDoc {
    /// Naturals.
    N,
    /// Integers.
    Z,
}

/// Action of one label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDoc {
    /// Cofinite backend: window exceptions and tail rule.
    Window(WindowAction),
    /// Finite backend: nonempty atom images.
    Atoms(BTreeMap<String, Vec<String>>),
}

/// Cofinite action: `exceptions` keyed by index, then the tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowAction {
    /// Images of window indices; absent indices map to `∅`.
    #[serde(default)]
    pub exceptions: BTreeMap<String, ElemDoc>,
    /// Rule outside the window.
    pub tail: TailDoc,
}

/// A finite set of indices or `{"cofinite": [excluded]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemDoc {
    /// Finite set.
    Finite(Vec<i64>),
    /// Complement of a finite set.
    Cofinite {
        /// Excluded indices.
        cofinite: Vec<i64>,
    },
}

/// `"kill"` or `{"shift": t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailDoc {
    /// `{i} ↦ ∅`.
    Kill,
    /// `{i} ↦ {i + t}`.
    Shift(i64),
}

/// Preset block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum PresetDoc {
    /// Directed graph; edges are `[source, target, id]`.
    Graph {
        /// Vertex names.
        vertices: Vec<String>,
        /// Edges.
        edges: Vec<(String, String, String)>,
    },
    /// Labelled graph; edges are `[source, target, label]`.
    LabelledGraph {
        /// Vertex names.
        vertices: Vec<String>,
        /// Edges.
        edges: Vec<(String, String, String)>,
        /// Generating vertex sets.
        #[serde(default)]
        generators: Vec<Vec<String>>,
    },
    /// Shift of finite type over single-character symbols.
    Sft {
        /// Symbols.
        alphabet: Vec<String>,
        /// Forbidden words.
        #[serde(default)]
        forbidden: Vec<String>,
        /// Past length.
        memory: usize,
    },
    /// Partial bijection `Y → Z` on atoms.
    PartialHomeo {
        /// Atom identifiers.
        atoms: Vec<String>,
        /// Domain of the map.
        y: Vec<String>,
        /// Image of the map.
        z: Vec<String>,
        /// Pairs `[y, φ(y)]`.
        map: Vec<(String, String)>,
    },
}

/// Why a document was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    /// Malformed JSON or wrong shape.
    #[error("{}", fmt_schema(.line, .column, .message))]
    Schema {
        /// 1-based line, when known.
        line: Option<usize>,
        /// 1-based column, when known.
        column: Option<usize>,
        /// What is wrong.
        message: String,
    },
    /// The system breaks the homomorphism laws.
    #[error("invalid system: {0}")]
    Validation(ValidationReport),
    /// A preset builder refused its input.
    #[error("preset: {0}")]
    Preset(PresetError),
}

fn fmt_schema(line: &Option<usize>, column: &Option<usize>, message: &str) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("line {l}, column {c}: {message}"),
        _ => message.to_string(),
    }
}

fn schema(message: impl fmt::Display) -> DocError {
    DocError::Schema { line: None, column: None, message: message.to_string() }
}

impl From<DynError> for DocError {
    fn from(e: DynError) -> DocError {
        match e {
            DynError::Invalid(r) => DocError::Validation(r),
            other => schema(other),
        }
    }
}

impl From<PresetError> for DocError {
    fn from(e: PresetError) -> DocError {
        match e {
            PresetError::Dyn(d) => d.into(),
            other => DocError::Preset(other),
        }
    }
}

/// Parse and validate a document.
pub fn parse_system(text: &str) -> Result<System, DocError> {
    let sys = parse_system_unchecked(text)?;
    let report = validate_system(&sys);
    if report.is_valid() {
        Ok(sys)
    } else {
        Err(DocError::Validation(report))
    }
}

/// Parse a document, checking its shape but not the homomorphism laws.
pub fn parse_system_unchecked(text: &str) -> Result<System, DocError> {
    let doc: SystemDocument = serde_json::from_str(text).map_err(|e| DocError::Schema {
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    })?;
    build(&doc)
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn edges(v: &[(String, String, String)]) -> Vec<GraphEdge> {
    v.iter().map(|(s, t, l)| GraphEdge::new(s, t, l)).collect()
}

fn build_preset(p: &PresetDoc) -> Result<System, DocError> {
    Ok(match p {
        PresetDoc::Graph { vertices, edges: e } => {
            from_directed_graph(&DirectedGraphInput { vertices: vertices.clone(), edges: edges(e) })?
        }
        PresetDoc::LabelledGraph { vertices, edges: e, generators } => from_labelled_graph(&LabelledGraphInput {
            vertices: vertices.clone(),
            edges: edges(e),
            generators: generators.clone(),
        })?,
        PresetDoc::Sft { alphabet, forbidden, memory } => {
            let mut symbols = Vec::new();
            for s in alphabet {
                let mut it = s.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => symbols.push(c),
                    _ => return Err(schema(format!("symbol `{s}` must be a single character"))),
                }
            }
            from_sft(&SftInput { alphabet: symbols, forbidden: forbidden.clone(), memory: *memory })?
        }
        PresetDoc::PartialHomeo { atoms, y, z, map } => {
            let pairs: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            from_partial_homeo(&strs(atoms), &strs(y), &strs(z), &pairs)?
        }
    })
}

/// Build the system described by a parsed document.
pub fn build(doc: &SystemDocument) -> Result<System, DocError> {
    if let Some(p) = &doc.preset {
        if doc.backend.is_some()
            || doc.atoms.is_some()
            || doc.window.is_some()
            || doc.labels.is_some()
            || doc.actions.is_some()
        {
            return Err(schema("a preset document has no other keys"));
        }
        return build_preset(p);
    }
    let kind = doc.backend.ok_or_else(|| schema("missing `backend`"))?;
    let labels = doc.labels.clone().unwrap_or_default();
    let actions = doc.actions.clone().unwrap_or_default();
    for l in actions.keys() {
        if !labels.contains(l) {
            return Err(DynError::UnknownLabel(l.clone()).into());
        }
    }
    let mut specs = Vec::new();
    match kind {
        BackendKind::Finite => {
            if doc.window.is_some() {
                return Err(schema("`window` belongs to the cofinite backend"));
            }
            let atoms = doc.atoms.clone().ok_or_else(|| schema("missing `atoms`"))?;
            let backend = Backend::finite_atoms(atoms).map_err(DynError::from)?;
            let idx = |n: &str| backend.atom_index(n).ok_or_else(|| DocError::from(DynError::UnknownAtom(n.into())));
            for l in &labels {
                let mut img = vec![AtomSet::new(); backend.atom_count()];
                match actions.get(l) {
                    None => {}
                    Some(ActionDoc::Atoms(table)) => {
                        for (src, targets) in table {
                            let s = idx(src)?;
                            for t in targets {
                                img[s].insert(idx(t)?);
                            }
                        }
                    }
                    Some(ActionDoc::Window(_)) => return Err(schema(format!("action `{l}` is a window action"))),
                }
                specs.push((l.clone(), ActionSpec::Atoms(img)));
            }
            Ok(System::new_unchecked(backend, specs)?)
        }
        BackendKind::Cofinite => {
            if doc.atoms.is_some() {
                return Err(schema("`atoms` belongs to the finite backend"));
            }
            let w = doc.window.ok_or_else(|| schema("missing `window`"))?;
            let universe = match w.universe {
                UniverseDoc::N => Universe::Naturals,
                UniverseDoc::Z => Universe::Integers,
            };
            for l in &labels {
                let spec = match actions.get(l) {
                    None => ActionSpec::Window { exceptions: BTreeMap::new(), tail: Tail::Kill, bound: w.bound },
                    Some(ActionDoc::Window(a)) => {
                        let mut exceptions = BTreeMap::new();
                        for (k, v) in &a.exceptions {
                            let i: i64 = k.parse().map_err(|_| schema(format!("action `{l}`: bad index `{k}`")))?;
                            let e = match v {
                                ElemDoc::Finite(s) => BoolElem::finite(s.iter().copied()),
                                ElemDoc::Cofinite { cofinite } => BoolElem::cofinite(cofinite.iter().copied()),
                            };
                            exceptions.insert(i, e);
                        }
                        let tail = match a.tail {
                            TailDoc::Kill => Tail::Kill,
                            TailDoc::Shift(t) => Tail::Shift(t),
                        };
                        ActionSpec::Window { exceptions, tail, bound: w.bound }
                    }
                    Some(ActionDoc::Atoms(m)) if m.is_empty() => {
                        ActionSpec::Window { exceptions: BTreeMap::new(), tail: Tail::Kill, bound: w.bound }
                    }
                    Some(ActionDoc::Atoms(_)) => {
                        return Err(schema(format!("action `{l}` needs `exceptions` and `tail`")))
                    }
                };
                specs.push((l.clone(), spec));
            }
            Ok(System::new_unchecked(Backend::FiniteCofinite(universe), specs)?)
        }
    }
}

/// The canonical document of a system: sorted atoms and labels, nonempty
/// images only, and one common window.
pub fn to_document(sys: &System) -> SystemDocument {
    let labels = sys.labels().to_vec();
    let mut actions = BTreeMap::new();
    match sys.backend() {
        Backend::FiniteAtoms(names) => {
            for (l, name) in labels.iter().enumerate() {
                let mut table = BTreeMap::new();
                for a in 0..names.len() {
                    let img = sys.atom_image(l, a);
                    if !img.is_empty() {
                        table.insert(names[a].clone(), img.iter().map(|&b| names[b].clone()).collect());
                    }
                }
                actions.insert(name.clone(), ActionDoc::Atoms(table));
            }
            SystemDocument {
                backend: Some(BackendKind::Finite),
                atoms: Some(names.clone()),
                labels: Some(labels),
                actions: Some(actions),
                ..SystemDocument::default()
            }
        }
        Backend::FiniteCofinite(u) => {
            let bound = (0..labels.len())
                .map(|l| match sys.action(l) {
                    ActionSpec::Window { bound, .. } => *bound,
                    ActionSpec::Atoms(_) => 0,
                })
                .max()
                .unwrap_or(0);
            for (l, name) in labels.iter().enumerate() {
                let ActionSpec::Window { tail, .. } = sys.action(l) else { unreachable!() };
                let mut exceptions = BTreeMap::new();
                for i in -bound..=bound {
                    if !u.contains(i) {
                        continue;
                    }
                    let e = match sys.index_image(l, i) {
                        BoolElem::Finite(s) if s.is_empty() => continue,
                        BoolElem::Finite(s) => ElemDoc::Finite(s.into_iter().collect()),
                        BoolElem::Cofinite(s) => ElemDoc::Cofinite { cofinite: s.into_iter().collect() },
                        BoolElem::Atoms(_) => unreachable!(),
                    };
                    exceptions.insert(i.to_string(), e);
                }
                let tail = match tail {
                    Tail::Kill => TailDoc::Kill,
                    Tail::Shift(t) => TailDoc::Shift(*t),
                };
                actions.insert(name.clone(), ActionDoc::Window(WindowAction { exceptions, tail }));
            }
            let universe = match u {
                Universe::Naturals => UniverseDoc::N,
                Universe::Integers => UniverseDoc::Z,
            };
            SystemDocument {
                backend: Some(BackendKind::Cofinite),
                window: Some(WindowDoc { universe, bound }),
                labels: Some(labels),
                actions: Some(actions),
                ..SystemDocument::default()
            }
        }
    }
}

/// Compact canonical JSON of a system.
pub fn serialize_system(sys: &System) -> String {
    serde_json::to_string(&to_document(sys)).expect("documents serialize")
}

/// Hex SHA-256 of [`serialize_system`].
pub fn digest(sys: &System) -> String {
    let hash = Sha256::digest(serialize_system(sys).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: &str = r#"{"backend":"finite","atoms":["w"],"labels":["b","c"],
        "actions":{"b":{"w":["w"]},"c":{"w":["w"]}}}"#;

    #[test]
    fn s2_document() {
        let s = parse_system(S2).unwrap();
        assert_eq!(s.labels(), ["b", "c"]);
        assert_eq!(s.atom_count(), 1);
        let again = parse_system(&serialize_system(&s)).unwrap();
        assert_eq!(digest(&again), digest(&s));
    }

    #[test]
    fn overlapping_images() {
        let doc = r#"{"backend":"finite","atoms":["u","v"],"labels":["a"],"actions":{"a":{"u":["u"],"v":["u"]}}}"#;
        match parse_system(doc) {
            Err(DocError::Validation(r)) => assert!(r.to_string().contains("intersect")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors_have_positions() {
        match parse_system("{\"backend\": \"finite\",\n \"atomz\": []}") {
            Err(DocError::Schema { line: Some(2), column: Some(_), .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_system(r#"{"backend":"finite","atoms":["u"],"labels":[],"actions":{"a":{}}}"#),
            Err(DocError::Schema { .. })
        ));
    }

    #[test]
    fn cofinite_round_trip() {
        let doc = r#"{"backend":"cofinite","window":{"universe":"Z","bound":1},"labels":["a","b","c"],
          "actions":{"a":{"exceptions":{"0":[0]},"tail":"kill"},
                     "b":{"exceptions":{"-1":[0],"0":[1],"1":[2]},"tail":{"shift":1}},
                     "c":{"exceptions":{"-1":[-2],"0":[-1],"1":[0]},"tail":{"shift":-1}}}}"#;
        let s = parse_system(doc).unwrap();
        assert_eq!(s, bds_core::presets::examples::s4());
        let text = serialize_system(&s);
        assert_eq!(parse_system(&text).unwrap(), s);
    }

    #[test]
    fn sft_preset() {
        let doc = r#"{"preset":{"sft":{"alphabet":["0","1"],"forbidden":["11"],"memory":1}}}"#;
        let s = parse_system(doc).unwrap();
        assert_eq!(s.backend().atoms(), ["[0]", "[1]"]);
        let doc = r#"{"preset":{"sft":{"alphabet":["0","1"],"forbidden":["12"],"memory":1}}}"#;
        assert!(matches!(parse_system(doc), Err(DocError::Preset(PresetError::BadWord(_)))));
    }
}
