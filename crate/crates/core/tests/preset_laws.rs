mod common;

use std::collections::BTreeSet;

use bds_core::boolean::Ultrafilter;
use bds_core::dynamics::validate_system;
use bds_core::invariants::is_simple;
use bds_core::presets::{
    from_directed_graph, from_labelled_graph, from_partial_homeo, from_sft, GraphEdge, LabelledGraphInput, PresetError,
    SftInput,
};
use bds_core::topograph::build_graph;
use common::sft::Shift;
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn sft(alphabet: &[char], forbidden: &[&str], memory: usize) -> Result<bds_core::System, PresetError> {
    from_sft(&SftInput {
        alphabet: alphabet.to_vec(),
        forbidden: forbidden.iter().map(|s| s.to_string()).collect(),
        memory,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn graphs_round_trip(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed), 6, 12);
        let sys = from_directed_graph(&g).unwrap();
        prop_assert!(validate_system(&sys).is_valid());
        let tg = build_graph(&sys);
        // vertices are atoms by name; each edge id labels one edge from r = source to d = target
        let names: BTreeSet<&String> = tg.names.iter().collect();
        prop_assert_eq!(names, g.vertices.iter().collect::<BTreeSet<_>>());
        let name = |v: &Ultrafilter| tg.names[tg.vertices.iter().position(|w| w == v).unwrap()].clone();
        let got: BTreeSet<(String, String, String)> =
            tg.edges.iter().map(|e| (tg.labels[e.label].clone(), name(&e.r), name(&e.d))).collect();
        let want: BTreeSet<(String, String, String)> =
            g.edges.iter().map(|e| (e.label.clone(), e.source.clone(), e.target.clone())).collect();
        prop_assert_eq!(got, want);
        prop_assert_eq!(tg.edges.len(), g.edges.len());
    }

    #[test]
    fn labelled_graphs_validate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<GraphEdge> = (0..r.gen_range(0..=8))
            .map(|_| {
                let s = vertices.choose(&mut r).unwrap();
                let t = vertices.choose(&mut r).unwrap();
                GraphEdge::new(s, t, LABELS[r.gen_range(0..2)])
            })
            .collect();
        let generators: Vec<Vec<String>> = (0..r.gen_range(0..3))
            .map(|_| vertices.iter().filter(|_| r.gen_bool(0.5)).cloned().collect())
            .collect();
        match from_labelled_graph(&LabelledGraphInput { vertices, edges, generators }) {
            Ok(sys) => prop_assert!(validate_system(&sys).is_valid()),
            Err(e) => prop_assert!(matches!(e, PresetError::NotWeaklyLeftResolving { .. }), "{e:?}"),
        }
    }

    #[test]
    fn partial_homeos_validate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let atoms = ["x0", "x1", "x2", "x3", "x4"];
        let y: Vec<&str> = atoms.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
        let mut z: Vec<&str> = atoms.to_vec();
        z.shuffle(&mut r);
        z.truncate(y.len());
        let phi: Vec<(&str, &str)> = y.iter().copied().zip(z.iter().copied()).collect();
        let sys = from_partial_homeo(&atoms, &y, &z, &phi).unwrap();
        prop_assert!(validate_system(&sys).is_valid());
    }

    #[test]
    fn shifts_validate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alphabet: &[char] = if r.gen_bool(0.5) { &['0', '1'] } else { &['0', '1', '2'] };
        let forbidden: Vec<String> = (0..r.gen_range(0..4))
            .map(|_| (0..r.gen_range(1..=3)).map(|_| *alphabet.choose(&mut r).unwrap()).collect())
            .collect();
        let memory = forbidden.iter().map(String::len).max().unwrap_or(1).saturating_sub(1) + r.gen_range(0..2);
        let words: Vec<&str> = forbidden.iter().map(String::as_str).collect();
        match sft(alphabet, &words, memory) {
            Ok(sys) => prop_assert!(validate_system(&sys).is_valid()),
            Err(e) => prop_assert!(matches!(e, PresetError::EmptyShift), "{e:?}"),
        }
    }
}

#[test]
fn shift_simplicity_matches_past_equivalence() {
    let cases: &[(&[char], &[&str], usize)] = &[
        (&['0', '1'], &[], 0),
        (&['0', '1', '2'], &[], 0),
        (&['0', '1'], &["11"], 1),
        (&['0', '1'], &["11"], 2),
        (&['0', '1'], &["10"], 1),
        (&['0', '1'], &["00", "11"], 1),
        (&['0', '1'], &["01", "10"], 1),
        (&['0', '1'], &["111"], 2),
        (&['0', '1'], &["000", "111"], 2),
        (&['0', '1', '2'], &["02", "20", "12"], 1),
        (&['0', '1', '2'], &["01", "12", "20"], 1),
    ];
    for &(alphabet, forbidden, memory) in cases {
        let sys = sft(alphabet, forbidden, memory).unwrap();
        let oracle = Shift::new(alphabet, forbidden, memory).simple();
        assert_eq!(is_simple(&sys).unwrap().simple, oracle, "{forbidden:?} memory {memory}");
    }
}

#[test]
fn random_shift_simplicity_matches_past_equivalence() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 40 {
        let forbidden: Vec<String> = (0..r.gen_range(1..4))
            .map(|_| (0..r.gen_range(2..=3)).map(|_| if r.gen_bool(0.5) { '0' } else { '1' }).collect())
            .collect();
        let words: Vec<&str> = forbidden.iter().map(String::as_str).collect();
        let memory = forbidden.iter().map(String::len).max().unwrap() - 1;
        let Ok(sys) = sft(&['0', '1'], &words, memory) else { continue };
        let oracle = Shift::new(&['0', '1'], &words, memory).simple();
        assert_eq!(is_simple(&sys).unwrap().simple, oracle, "{words:?}");
        checked += 1;
    }
}
