//! Command dispatch and reports.

use std::fmt::Write as _;

use bds_core::boolean::{ultrafilters, BoolElem, Height, IdealDesc, Ultrafilter};
use bds_core::dynamics::{validate_system, System};
use bds_core::invariants::{
    check_condition2, enumerate_hs_ideals, enumerate_hs_ideals_with, find_cycle_no_exit, find_cycle_no_exit_with,
    hs_closure, hs_closure_with, is_cofinal, is_hereditary, is_saturated, is_simple, quotient_system, Condition2,
    InvError, SimplicityWitness,
};
use bds_core::ktheory::{k_groups, AbelianGroup, KError};
use bds_core::semigroup::{refine_cover, refine_cover_with, CoverResult, SemiElem, SemiError};
use bds_core::topograph::{boundary_paths, build_graph, classify_vertices, to_dot, BoundaryPaths, TopoError};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::doc::{digest, to_document};
use crate::expr::{parse_elem, parse_expr, ParseError};

/// The commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    /// Check the homomorphism laws.
    Validate,
    /// List the ultrafilters.
    Spectrum,
    /// The topological graph.
    Graph,
    /// Vertex tags of the graph.
    Classify,
    /// Regular and singular parts.
    Regular,
    /// Hereditary and saturated ideals.
    Ideals,
    /// Cycles without exits.
    Cycles,
    /// Simplicity.
    Simplicity,
    /// Cofinality, or the two-set condition with `--a` and `--b`.
    Cofinal,
    /// `K₀` and `K₁`.
    Ktheory,
    /// Quotient by the closure of `--ideal`.
    Quotient,
    /// Evaluate a semigroup expression.
    SemigroupEval,
    /// Decide and refine a cover.
    CoverCheck,
    /// List boundary paths.
    BoundaryPaths,
}

impl Command {
    /// Every command, in display order.
    pub const ALL: [Command; 14] = [
        Command::Validate,
        Command::Spectrum,
        Command::Graph,
        Command::Classify,
        Command::Regular,
        Command::Ideals,
        Command::Cycles,
        Command::Simplicity,
        Command::Cofinal,
        Command::Ktheory,
        Command::Quotient,
        Command::SemigroupEval,
        Command::CoverCheck,
        Command::BoundaryPaths,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Spectrum => "spectrum",
            Command::Graph => "graph",
            Command::Classify => "classify",
            Command::Regular => "regular",
            Command::Ideals => "ideals",
            Command::Cycles => "cycles",
            Command::Simplicity => "simplicity",
            Command::Cofinal => "cofinal",
            Command::Ktheory => "ktheory",
            Command::Quotient => "quotient",
            Command::SemigroupEval => "semigroup-eval",
            Command::CoverCheck => "cover-check",
            Command::BoundaryPaths => "boundary-paths",
        }
    }

    /// Look up a command by name.
    pub fn parse(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Command arguments beyond the system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// `graph --dot`.
    pub dot: bool,
    /// Seed element for `quotient`.
    pub ideal: Option<String>,
    /// Expression for `semigroup-eval`, or the idempotent `x` for `cover-check`.
    pub expr: Option<String>,
    /// Cover members for `cover-check`.
    pub cover: Vec<String>,
    /// Element argument for `spectrum` and `regular`.
    pub elem: Option<String>,
    /// `A` and `B` for the two-set form of `cofinal`.
    pub pair: Option<(String, String)>,
    /// Override for every iteration cap.
    pub bound: Option<usize>,
}

/// How a computation ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A definite answer.
    Computed,
    /// A bound or unsupported case stopped the computation.
    Inconclusive,
}

impl Status {
    /// Process exit code.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Computed => 0,
            Status::Inconclusive => 2,
        }
    }
}

/// A machine-readable report. Field order is fixed and payload keys are sorted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    /// Command name.
    pub command: String,
    /// SHA-256 of the canonical system document.
    pub digest: String,
    /// Command payload.
    pub result: Value,
    /// Human notes: witnesses, bounds hit.
    pub diagnostics: Vec<String>,
}

/// A finished run: the report, its text rendering and the status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    /// JSON report.
    pub report: Report,
    /// Text rendering.
    pub text: String,
    /// Exit status.
    pub status: Status,
}

impl Outcome {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Input errors (exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// A command argument failed to parse.
    #[error("{what}: {err}")]
    Parse {
        /// Which argument.
        what: &'static str,
        /// The error.
        err: ParseError,
    },
    /// A required argument is missing.
    #[error("missing argument: {0}")]
    Missing(&'static str),
    /// The library rejected the input.
    #[error("{0}")]
    Input(String),
}

fn parse_arg<T>(what: &'static str, r: Result<T, ParseError>) -> Result<T, RunError> {
    r.map_err(|err| RunError::Parse { what, err })
}

/// Ultrafilter name used in reports.
pub fn show_ultrafilter(sys: &System, u: Ultrafilter) -> String {
    match u {
        Ultrafilter::Atom(a) => format!("Principal({})", sys.backend().atoms()[a]),
        Ultrafilter::Index(i) => format!("Principal({i})"),
        Ultrafilter::AtInfinity => String::from("AtInfinity"),
    }
}

/// Ideal name used in reports: `I{..}` for principal ideals, `Fin~{..}` for finite parts.
pub fn show_ideal(sys: &System, i: &IdealDesc) -> String {
    let b = sys.backend();
    match i {
        IdealDesc::Principal(a) => format!("I{}", b.show(a)),
        IdealDesc::Definable { support, height: Height::Full } => format!("I{}", b.show(support)),
        IdealDesc::Definable { support, height: Height::FiniteOnly } => format!("Fin{}", b.show(support)),
    }
}

fn show(sys: &System, a: &BoolElem) -> String {
    sys.backend().show(a).to_string()
}

fn big(x: &BigInt) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn group_json(g: &AbelianGroup) -> Value {
    json!({ "rank": g.rank, "torsion": g.torsion.iter().map(big).collect::<Vec<_>>() })
}

/// Key/value lines with the values aligned.
fn columns(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let pad = w - k.chars().count();
        let _ = writeln!(out, "{k}{}  {v}", " ".repeat(pad));
    }
    out
}

fn row(k: impl Into<String>, v: impl ToString) -> (String, String) {
    (k.into(), v.to_string())
}

struct Builder {
    result: Value,
    rows: Vec<(String, String)>,
    diagnostics: Vec<String>,
    status: Status,
    raw_text: Option<String>,
}

impl Builder {
    fn new(result: Value) -> Builder {
        Builder { result, rows: Vec::new(), diagnostics: Vec::new(), status: Status::Computed, raw_text: None }
    }

    fn inconclusive(mut self, why: impl Into<String>) -> Builder {
        self.status = Status::Inconclusive;
        self.diagnostics.push(why.into());
        self
    }
}

/// Map a library error: bounds and unsupported cases are inconclusive, the rest are input errors.
fn inv_outcome(e: InvError) -> Result<Builder, RunError> {
    match e {
        InvError::ClosureBoundExceeded { .. } | InvError::SearchBoundExceeded { .. } | InvError::Unsupported(_) => {
            Ok(Builder::new(json!({ "inconclusive": e.to_string() })).inconclusive(e.to_string()))
        }
        other => Err(RunError::Input(other.to_string())),
    }
}

/// Run one command on a system.
pub fn run(command: Command, sys: &System, opts: &Options) -> Result<Outcome, RunError> {
    let b = match command {
        Command::Validate => {
            let r = validate_system(sys);
            let v: Vec<String> = r.violations.iter().map(ToString::to_string).collect();
            let mut b = Builder::new(json!({ "valid": r.is_valid(), "violations": v }));
            b.rows.push(row("valid", r.is_valid()));
            b.rows.extend(v.iter().map(|x| row("violation", x)));
            b
        }
        Command::Spectrum => spectrum(sys, opts)?,
        Command::Graph | Command::Classify => graph(command, sys, opts),
        Command::Regular => {
            let a = match &opts.elem {
                Some(t) => parse_arg("element", parse_elem(sys, t))?,
                None => sys.top(),
            };
            let sing = sys.singular_part(&a);
            let mut b = Builder::new(json!({
                "element": show(sys, &a),
                "regular": sing.is_empty() && !a.is_empty(),
                "singular_part": show(sys, &sing),
            }));
            b.rows = vec![
                row("element", show(sys, &a)),
                row("regular", sing.is_empty() && !a.is_empty()),
                row("singular part", show(sys, &sing)),
            ];
            b
        }
        Command::Ideals => {
            let lattice = match opts.bound {
                Some(n) => enumerate_hs_ideals_with(sys, n),
                None => enumerate_hs_ideals(sys),
            };
            match lattice {
                Ok(l) => {
                    let items: Vec<Value> = l
                        .ideals
                        .iter()
                        .map(|i| {
                            json!({
                                "ideal": show_ideal(sys, i),
                                "hereditary": is_hereditary(sys, i),
                                "saturated": is_saturated(sys, i),
                                "nontrivial": !i.is_trivial() && !i.is_whole(sys.backend()),
                            })
                        })
                        .collect();
                    let mut b = Builder::new(json!({ "ideals": items, "complete": l.complete }));
                    b.rows = l.ideals.iter().map(|i| row("hs ideal", show_ideal(sys, i))).collect();
                    b.rows.push(row("complete", l.complete));
                    if !l.complete {
                        b = b.inconclusive("cofinite search may have missed ideals");
                    }
                    b
                }
                Err(e) => inv_outcome(e)?,
            }
        }
        Command::Cycles => {
            let found = match opts.bound {
                Some(n) => find_cycle_no_exit_with(sys, n),
                None => find_cycle_no_exit(sys),
            };
            match found {
                Ok(Some(w)) => {
                    let trace: Vec<String> = w.trace.iter().map(|t| show(sys, t)).collect();
                    let mut b = Builder::new(json!({
                        "cycle_without_exit": true,
                        "word": sys.word_str(&w.word),
                        "base": show(sys, &w.base),
                        "trace": trace,
                    }));
                    b.rows = vec![
                        row("cycle without exit", true),
                        row("word", sys.word_str(&w.word)),
                        row("base", show(sys, &w.base)),
                    ];
                    b
                }
                Ok(None) => {
                    let mut b = Builder::new(json!({ "cycle_without_exit": false }));
                    b.rows.push(row("cycle without exit", false));
                    b
                }
                Err(e) => inv_outcome(e)?,
            }
        }
        Command::Simplicity => match is_simple(sys) {
            Ok(r) => {
                let mut b =
                    Builder::new(json!({ "simple": r.simple, "condition_LB": r.lb, "hs_trivial": r.hs_trivial }));
                b.rows = vec![
                    row("simple", r.simple),
                    row("condition (L_B)", r.lb),
                    row("HS lattice trivial", r.hs_trivial),
                ];
                match r.witness {
                    Some(SimplicityWitness::Cycle(c)) => b.diagnostics.push(format!(
                        "cycle without exit: word {} at {}",
                        sys.word_str(&c.word),
                        show(sys, &c.base)
                    )),
                    Some(SimplicityWitness::Ideal(i)) => {
                        b.diagnostics.push(format!("nontrivial ideal {}", show_ideal(sys, &i)))
                    }
                    None => {}
                }
                b
            }
            Err(e) => inv_outcome(e)?,
        },
        Command::Cofinal => cofinal(sys, opts)?,
        Command::Ktheory => match k_groups(sys) {
            Ok(k) => {
                let mut b = Builder::new(json!({ "k0": group_json(&k.k0), "k1": group_json(&k.k1) }));
                b.rows = vec![row("K0", &k.k0), row("K1", &k.k1)];
                b
            }
            Err(KError::UnsupportedBackend) => {
                Builder::new(json!({ "inconclusive": KError::UnsupportedBackend.to_string() }))
                    .inconclusive(KError::UnsupportedBackend.to_string())
            }
        },
        Command::Quotient => {
            let seed = parse_arg("ideal", parse_elem(sys, opts.ideal.as_deref().ok_or(RunError::Missing("--ideal"))?))?;
            let closed = match opts.bound {
                Some(n) => hs_closure_with(sys, &seed, n),
                None => hs_closure(sys, &seed),
            };
            match closed.and_then(|i| quotient_system(sys, &i).map(|q| (i, q))) {
                Ok((ideal, (q, _))) => {
                    let doc = serde_json::to_value(to_document(&q)).expect("documents serialize");
                    let mut b = Builder::new(json!({ "ideal": show_ideal(sys, &ideal), "system": doc }));
                    b.rows.push(row("ideal", show_ideal(sys, &ideal)));
                    b.rows.push(row("atoms", q.backend().atoms().join(" ")));
                    for l in 0..q.label_count() {
                        let parts: Vec<String> = (0..q.atom_count())
                            .map(|a| {
                                format!("{}↦{}", q.backend().atoms()[a], show(&q, &q.apply(l, &q.backend().atom(a))))
                            })
                            .collect();
                        b.rows.push(row(format!("θ_{}", q.labels()[l]), parts.join(" ")));
                    }
                    b
                }
                Err(e) => inv_outcome(e)?,
            }
        }
        Command::SemigroupEval => {
            let e =
                parse_arg("expression", parse_expr(sys, opts.expr.as_deref().ok_or(RunError::Missing("expression"))?))?;
            let mut b = Builder::new(json!({ "value": e.show(sys), "idempotent": e.is_idempotent() }));
            b.raw_text = Some(format!("{}\n", e.show(sys)));
            b
        }
        Command::CoverCheck => cover(sys, opts)?,
        Command::BoundaryPaths => {
            let cap = opts.bound.unwrap_or(256);
            match boundary_paths(sys, cap) {
                Ok(BoundaryPaths::Paths(p)) => {
                    let shown: Vec<String> = p.iter().map(|x| x.show(sys)).collect();
                    let mut b = Builder::new(json!({ "kind": "finite", "paths": shown }));
                    b.rows = shown.iter().map(|x| row("path", x)).collect();
                    b
                }
                Ok(BoundaryPaths::InfinitePathSpace) => {
                    let mut b = Builder::new(json!({ "kind": "infinite" }));
                    b.rows.push(row("paths", "infinitely many (a cycle has an exit)"));
                    b
                }
                Ok(BoundaryPaths::ExceedsCap(c)) => Builder::new(json!({ "kind": "exceeds-cap", "cap": c }))
                    .inconclusive(format!("more than {c} boundary paths")),
                Err(TopoError::NotFinite) => Builder::new(json!({ "inconclusive": TopoError::NotFinite.to_string() }))
                    .inconclusive("boundary paths need the finite backend; quotient the system first"),
            }
        }
    };
    let mut text = match b.raw_text {
        Some(t) => t,
        None => columns(&b.rows),
    };
    for d in &b.diagnostics {
        let _ = writeln!(text, "note: {d}");
    }
    Ok(Outcome {
        report: Report {
            command: command.name().into(),
            digest: digest(sys),
            result: b.result,
            diagnostics: b.diagnostics,
        },
        text,
        status: b.status,
    })
}

fn spectrum(sys: &System, opts: &Options) -> Result<Builder, RunError> {
    let elem = match &opts.elem {
        Some(t) => Some(parse_arg("element", parse_elem(sys, t))?),
        None => None,
    };
    // the cofinite spectrum is listed over the probe window; every other point is principal
    let listed: Vec<Ultrafilter> = if sys.is_finite() {
        ultrafilters(sys.backend()).collect()
    } else {
        let probes = sys.probe_indices(elem.as_ref().map_or(0, BoolElem::radius));
        std::iter::once(Ultrafilter::AtInfinity).chain(probes.into_iter().map(Ultrafilter::Index)).collect()
    };
    let names: Vec<String> = listed.iter().map(|&u| show_ultrafilter(sys, u)).collect();
    let mut result = json!({ "ultrafilters": names, "complete": sys.is_finite() });
    let mut b = Builder::new(Value::Null);
    match &elem {
        Some(a) => {
            let member: Vec<bool> = listed.iter().map(|u| u.contains(a)).collect();
            result["contains"] = json!(member);
            b.rows = names.iter().zip(&member).map(|(n, m)| row(n.clone(), if *m { "∈" } else { "∉" })).collect();
        }
        None => b.rows = names.iter().map(|n| row("ultrafilter", n)).collect(),
    }
    if !sys.is_finite() {
        let u = sys.backend().universe().expect("cofinite");
        b.rows.push(row("rest", format!("Principal(i) for every other i in {}", u.name())));
    }
    b.result = result;
    Ok(b)
}

fn graph(command: Command, sys: &System, opts: &Options) -> Builder {
    let g = build_graph(sys);
    let edge_name = |u: Ultrafilter| g.names[g.vertices.iter().position(|&v| v == u).expect("vertex")].clone();
    if command == Command::Classify {
        let tags = classify_vertices(sys, &g);
        let map: serde_json::Map<String, Value> =
            g.vertices.iter().zip(&g.names).map(|(v, n)| (n.clone(), json!(tags[v].tag()))).collect();
        let mut b = Builder::new(json!({ "classes": map, "truncated": g.truncated }));
        b.rows = g.vertices.iter().zip(&g.names).map(|(v, n)| row(n.clone(), tags[v].tag())).collect();
        return b;
    }
    let vertices: Vec<Value> =
        g.names.iter().zip(&g.classes).map(|(n, c)| json!({ "name": n, "class": c.tag() })).collect();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| json!({ "label": g.labels[e.label], "d": edge_name(e.d), "r": edge_name(e.r) }))
        .collect();
    let mut b = Builder::new(json!({ "vertices": vertices, "edges": edges, "truncated": g.truncated }));
    if opts.dot {
        b.raw_text = Some(to_dot(&g));
    } else {
        b.rows = g
            .edges
            .iter()
            .map(|e| {
                row(
                    format!("e^{}_{}", g.labels[e.label], edge_name(e.d)),
                    format!("{} → {}", edge_name(e.d), edge_name(e.r)),
                )
            })
            .collect();
    }
    if g.truncated {
        b.diagnostics.push("window of an infinite graph".into());
    }
    b
}

fn cofinal(sys: &System, opts: &Options) -> Result<Builder, RunError> {
    let Some((ta, tb)) = &opts.pair else {
        return match is_cofinal(sys) {
            Ok(c) => {
                let mut b = Builder::new(json!({ "cofinal": c }));
                b.rows.push(row("cofinal", c));
                Ok(b)
            }
            Err(e) => inv_outcome(e),
        };
    };
    let a = parse_arg("A", parse_elem(sys, ta))?;
    let bb = parse_arg("B", parse_elem(sys, tb))?;
    let depth = opts.bound.unwrap_or(64);
    Ok(match check_condition2(sys, &a, &bb, depth) {
        Ok(Condition2::Verified { c }) => {
            let mut b = Builder::new(json!({ "condition": "verified", "c": show(sys, &c) }));
            b.rows = vec![row("condition", "verified"), row("C", show(sys, &c))];
            b
        }
        Ok(Condition2::NotRegular { c, singular }) => {
            let mut b = Builder::new(
                json!({ "condition": "not-regular", "c": show(sys, &c), "singular": show(sys, &singular) }),
            );
            b.rows = vec![
                row("condition", "fails: C not regular"),
                row("C", show(sys, &c)),
                row("singular", show(sys, &singular)),
            ];
            b
        }
        Ok(Condition2::Counterexample { prefix, period }) => {
            let (p, q) = (sys.word_str(&prefix), sys.word_str(&period));
            let mut b = Builder::new(json!({ "condition": "counterexample", "prefix": p, "period": q }));
            b.rows = vec![row("condition", "fails"), row("word", format!("{p}({q})^∞"))];
            b
        }
        Ok(Condition2::Inconclusive { depth }) => Builder::new(json!({ "condition": "inconclusive", "depth": depth }))
            .inconclusive(format!("depth {depth} exhausted")),
        Err(e) => inv_outcome(e)?,
    })
}

fn cover(sys: &System, opts: &Options) -> Result<Builder, RunError> {
    let x = parse_arg("x", parse_expr(sys, opts.expr.as_deref().ok_or(RunError::Missing("--x"))?))?;
    let z = opts
        .cover
        .iter()
        .map(|t| parse_arg("cover member", parse_expr(sys, t)))
        .collect::<Result<Vec<SemiElem>, _>>()?;
    let r = match opts.bound {
        Some(n) => refine_cover_with(sys, &x, &z, n),
        None => refine_cover(sys, &x, &z),
    };
    Ok(match r {
        Ok(CoverResult::OrthogonalCover(m)) => {
            let shown: Vec<String> = m.iter().map(|e| e.show(sys)).collect();
            let mut b = Builder::new(json!({ "cover": true, "refinement": shown }));
            b.rows.push(row("cover", true));
            b.rows.extend(shown.iter().map(|s| row("piece", s)));
            b
        }
        Ok(CoverResult::NotACover(w)) => {
            let mut b = Builder::new(json!({ "cover": false, "witness": w.show(sys) }));
            b.rows = vec![row("cover", false), row("witness", w.show(sys))];
            b
        }
        Ok(CoverResult::Inconclusive(n)) => {
            Builder::new(json!({ "cover": null, "bound": n })).inconclusive(format!("refinement deeper than {n}"))
        }
        Err(SemiError::NotIdempotent) => return Err(RunError::Input("cover-check takes idempotents".into())),
        Err(e) => return Err(RunError::Input(e.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bds_core::presets::examples::{s1, s2, s4};

    #[test]
    fn simplicity_payload() {
        let o = run(Command::Simplicity, &s2(), &Options::default()).unwrap();
        assert_eq!(o.report.result, json!({ "simple": true, "condition_LB": true, "hs_trivial": true }));
        assert_eq!(o.exit_code(), 0);
    }

    #[test]
    fn ktheory_payload() {
        let o = run(Command::Ktheory, &s2(), &Options::default()).unwrap();
        assert_eq!(o.report.result, json!({ "k0": { "rank": 0, "torsion": [] }, "k1": { "rank": 0, "torsion": [] } }));
        let o = run(Command::Ktheory, &s4(), &Options::default()).unwrap();
        assert_eq!(o.exit_code(), 2);
    }

    #[test]
    fn semigroup_eval() {
        let opts = Options { expr: Some("s(b) p{w} s(b)* * s(c) p{w} s(c)*".into()), ..Options::default() };
        let o = run(Command::SemigroupEval, &s2(), &opts).unwrap();
        assert_eq!(o.text, "0\n");
    }

    #[test]
    fn quotient_of_s4() {
        let opts = Options { ideal: Some("{0}".into()), ..Options::default() };
        let o = run(Command::Quotient, &s4(), &opts).unwrap();
        assert_eq!(o.report.result["ideal"], json!("Fin~{}"));
        assert_eq!(o.report.result["system"]["atoms"], json!(["[Z]"]));
    }

    #[test]
    fn cover_check() {
        let opts = Options { expr: Some("p{w}".into()), cover: vec!["s(b) p{w} s(b)*".into()], ..Options::default() };
        let o = run(Command::CoverCheck, &s2(), &opts).unwrap();
        assert_eq!(o.report.result["witness"], json!("s(c) p{w} s(c)*"));
    }

    #[test]
    fn every_command_runs() {
        let s = s1();
        for c in Command::ALL {
            let opts = Options { expr: Some("p{u}".into()), ideal: Some("{v}".into()), ..Options::default() };
            let o = run(c, &s, &opts).unwrap();
            let again = run(c, &s, &opts).unwrap();
            assert_eq!(serde_json::to_string(&o.report).unwrap(), serde_json::to_string(&again.report).unwrap());
        }
    }
}
