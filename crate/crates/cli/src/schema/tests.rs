use super::*;
use polarfloer_core::equiv_floer::{canonical_trn_equivariant, point_pair_dataset};
use polarfloer_core::equivariant::{finite_type_blocks, BlockKind};
use polarfloer_core::generate::{random_equivariant, random_graded_complex, random_km, random_twisted, seeded};
use polarfloer_core::morse_km::canonical_trn_dataset;
use polarfloer_core::twisted::two_point_dataset;
use proptest::prelude::*;

const TRN2: &str = include_str!("../../data/trn2.json");

fn round_trip(ds: &Dataset) -> String {
    let text = emit(ds);
    let again = emit(&parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}")));
    assert_eq!(text, again);
    text
}

fn schema_message(text: &str) -> String {
    match parse(text) {
        Err(CliError::Schema(m)) => m,
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn shipped_trn2_is_the_canonical_model() {
    let Dataset::Km(k) = parse(TRN2).unwrap() else { panic!("wrong kind") };
    assert_eq!((k.o.len(), k.s.len(), k.u.len()), (2, 5, 4));
    assert_eq!(emit(&Dataset::Km(k)), TRN2);
    assert_eq!(emit(&Dataset::Km(canonical_trn_dataset(2).unwrap())), TRN2);
}

#[test]
fn parsed_trn2_matches_the_generator_up_to_order() {
    let Dataset::Km(k) = parse(TRN2).unwrap() else { panic!("wrong kind") };
    let c = canonical_trn_dataset(2).unwrap();
    assert_eq!(k.lift.is_some(), c.lift.is_some());
    assert_eq!(k.window, c.window);
    let b = k.assemble().unwrap().bars().unwrap();
    assert_eq!(b.localized_ranks(), c.assemble().unwrap().bars().unwrap().localized_ranks());
}

#[test]
fn every_kind_round_trips() {
    round_trip(&Dataset::Km(canonical_trn_dataset(3).unwrap()));
    round_trip(&Dataset::Equivariant(canonical_trn_equivariant(2).unwrap()));
    round_trip(&Dataset::Equivariant(point_pair_dataset()));
    round_trip(&Dataset::Twisted(two_point_dataset(3, true).unwrap()));
    let b = round_trip(&Dataset::Z2Complex(finite_type_blocks(BlockKind::Binfty, 2).unwrap()));
    assert!(b.contains("\"window\": {\"lo\": -2, \"hi\": 2}"), "{b}");
    let v = round_trip(&Dataset::Floer(random_graded_complex(&mut seeded(3), 6)));
    assert!(v.starts_with("{\n  \"schema\": 1,\n  \"kind\": \"floer\",\n"));
}

#[test]
fn reordered_input_has_the_same_canonical_form() {
    let text = r#"{"kind": "z2complex", "schema": 1,
        "generators": [{"label": "b", "degree": 1}, {"label": "a", "degree": 0}],
        "differential": [["b", "a", "iota + 1"]]}"#;
    let out = emit(&parse(text).unwrap());
    assert_eq!(
        out,
        "{\n  \"schema\": 1,\n  \"kind\": \"z2complex\",\n  \"generators\": [\n    {\"label\": \"a\", \"degree\": 0},\n    \
         {\"label\": \"b\", \"degree\": 1}\n  ],\n  \"differential\": [\n    [\"b\", \"a\", \"1+i\"]\n  ]\n}\n"
    );
}

#[test]
fn empty_generator_lists_are_valid() {
    let Dataset::Z2Complex(a) = parse(r#"{"schema": 1, "kind": "z2complex", "generators": []}"#).unwrap() else {
        panic!()
    };
    assert!(a.is_empty());
    let Dataset::Km(k) = parse(r#"{"schema": 1, "kind": "km", "o": [], "s": [], "u": []}"#).unwrap() else { panic!() };
    assert_eq!(k.dims(), (0, 0, 0));
    round_trip(&Dataset::Km(k));
    assert!(parse(r#"{"schema": 1, "kind": "floer", "generators": []}"#).is_ok());
    assert!(parse(r#"{"schema": 1, "kind": "twisted", "points": [], "window": 2}"#).is_ok());
}

#[test]
fn dangling_labels_are_named() {
    let m = schema_message(
        r#"{"schema": 1, "kind": "km", "o": [{"label": "y"}], "s": [{"label": "x"}], "u": [],
            "counts": {"d_os": [["y", "ghost", "1"]]}}"#,
    );
    assert!(m.contains("'ghost'") && m.contains("counts.d_os[0]"), "{m}");
    let m = schema_message(
        r#"{"schema": 1, "kind": "twisted", "points": [{"label": "p", "index": 0}],
            "classes": [{"label": "c", "minus": "q", "plus": "p", "sf": 0}], "window": 2}"#,
    );
    assert!(m.contains("'q'"), "{m}");
    let m = schema_message(
        r#"{"schema": 1, "kind": "equivariant", "pairs": [{"label": "a", "degree": 0}],
            "boundary": {"points": [], "window": 2}, "interior": [["a", "z@1", "1"]]}"#,
    );
    assert!(m.contains("'z'"), "{m}");
}

#[test]
fn structural_errors() {
    assert!(schema_message("{").contains("line 1"));
    assert!(schema_message(r#"{"schema": 2, "kind": "km"}"#).contains("version"));
    assert!(schema_message(r#"{"schema": 1, "kind": "knot"}"#).contains("unknown kind 'knot'"));
    assert!(schema_message(r#"{"schema": 1, "kind": "floer", "generators": [], "extra": 0}"#).contains("extra"));
    let dup = r#"{"schema": 1, "kind": "floer", "generators": [{"label": "a"}, {"label": "a"}]}"#;
    assert!(schema_message(dup).contains("duplicate label 'a'"));
    let ring = r#"{"schema": 1, "kind": "floer", "generators": [{"label": "a"}, {"label": "b"}],
        "differential": [["a", "b", "1+i"]]}"#;
    assert!(schema_message(ring).contains("F2"));
    let partial = r#"{"schema": 1, "kind": "floer", "generators": [{"label": "a", "degree": 0}, {"label": "b"}]}"#;
    assert!(schema_message(partial).contains("degree"));
    let at = r#"{"schema": 1, "kind": "floer", "generators": [{"label": "a@1"}]}"#;
    assert!(schema_message(at).contains("'@'"));
}

#[test]
fn mathematical_errors_are_not_schema_errors() {
    let text = r#"{"schema": 1, "kind": "floer",
        "generators": [{"label": "a"}, {"label": "b"}, {"label": "c"}],
        "differential": [["b", "a", "1"], ["c", "b", "1"]]}"#;
    assert!(matches!(parse(text), Err(CliError::Invalid(polarfloer_core::Error::DSquaredNonzero { .. }))));
}

#[test]
fn counts_default_to_the_augmented_lift() {
    let text = r#"{"schema": 1, "kind": "km", "o": [], "s": [{"label": "a"}, {"label": "b"}], "u": [],
        "lift": {"dbar_ss": [["b", "a", "i"]]}}"#;
    let Dataset::Km(k) = parse(text).unwrap() else { panic!() };
    assert_eq!(*k.counts.dbar_ss.get(1, 0), Gf2::ONE);
    assert!(!emit(&Dataset::Km(k.clone())).contains("counts"));
    let mut k2 = k;
    k2.counts.dbar_ss.set(1, 0, Gf2::ZERO);
    let text = round_trip(&Dataset::Km(k2));
    assert!(text.contains("\"counts\": {}"), "{text}");
}

#[test]
fn explicit_mu_survives_only_when_it_differs() {
    let base = r#"{"schema": 1, "kind": "equivariant", "pairs": [{"label": "a", "degree": 0}],
        "boundary": {"points": [{"label": "x", "index": 0, "s": 0}], "window": 2}, "interior": [INTERIOR]}"#;
    let derived = emit(&parse(&base.replace("INTERIOR", r#"["a", "x@2", "1", 3]"#)).unwrap());
    assert!(derived.contains(r#"["a", "x@2", "1"]"#), "{derived}");
    let odd = emit(&parse(&base.replace("INTERIOR", r#"["a", "x@2", "1", 5]"#)).unwrap());
    assert!(odd.contains(r#"["a", "x@2", "1", 5]"#), "{odd}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_datasets_round_trip(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        round_trip(&Dataset::Km(random_km(&mut rng, 12)));
        round_trip(&Dataset::Twisted(random_twisted(&mut rng, 5)));
        round_trip(&Dataset::Equivariant(random_equivariant(&mut rng, 3)));
        round_trip(&Dataset::Floer(random_graded_complex(&mut rng, 8)));
    }
}
