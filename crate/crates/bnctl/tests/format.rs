use std::path::PathBuf;

use bnctl::format::{network_to_json, parse_network, parse_network_file, read_network, FormatError};
use bnctl_core::{
    build_family, random_network, Connective, FamilyKind, Fixture, GenSpec, NegationPolicy,
};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn semantic_field(err: FormatError) -> String {
    match err {
        FormatError::Semantic { field, .. } => field,
        other => panic!("expected a semantic error, got {other}"),
    }
}

#[test]
fn example_files_match_built_fixtures() {
    for f in Fixture::ALL {
        let name = match f.id() {
            "R1" => "r1.json".to_string(),
            id => format!("example{id}.json"),
        };
        let (net, meta) = read_network(&fixture_dir().join(&name)).unwrap().unwrap();
        let built = build_family(FamilyKind::Example(f)).unwrap().network;
        assert_eq!(net, built, "{name}");
        assert!(meta.is_none());
    }
}

#[test]
fn every_fixture_file_round_trips() {
    for entry in std::fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let net = parse_network(&text).unwrap();
        assert_eq!(network_to_json(&net, None), text.trim_end(), "{}", path.display());
    }
}

#[test]
fn generated_networks_round_trip_with_meta() {
    for (i, fam) in [Connective::Xor, Connective::And, Connective::Or, Connective::Nc].into_iter().enumerate() {
        let spec = GenSpec {
            negation: NegationPolicy::Random,
            ..GenSpec::new(9, 3, fam, 40 + i as u64)
        };
        let net = random_network(&spec).unwrap();
        let meta = serde_json::json!({ "seed": spec.seed });
        let text = network_to_json(&net, Some(meta.clone()));
        let file = parse_network_file(&text).unwrap();
        assert_eq!(file.meta, Some(meta));
        assert_eq!(file.to_network().unwrap(), net);
    }
}

#[test]
fn one_based_names_in_files() {
    let text = r#"{"n": 2, "k": 1, "family": "and", "functions": [
        {"connective": "and", "inputs": [{"node": 2, "neg": true}]},
        {"connective": "and", "inputs": [{"node": 1}]}
    ]}"#;
    let net = parse_network(text).unwrap();
    assert_eq!(net.function(0).inputs[0].node, 1);
    assert!(net.function(0).inputs[0].negated);
    assert_eq!(net.function(1).inputs[0].node, 0);
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let text = "{\n  \"n\": 2,\n  \"k\": ,\n}";
    match parse_network(text).unwrap_err() {
        FormatError::Syntax { line, column, .. } => {
            assert_eq!(line, 3);
            assert!(column >= 8, "column {column}");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn unknown_fields_rejected() {
    let text = r#"{"n": 1, "functions": [], "extra": 1}"#;
    assert!(matches!(parse_network(text), Err(FormatError::Syntax { .. })));
}

#[test]
fn semantic_errors_name_the_field() {
    let bad_node = r#"{"n": 2, "functions": [
        {"connective": "xor", "inputs": [{"node": 1}]},
        {"connective": "xor", "inputs": [{"node": 1}, {"node": 3}]}
    ]}"#;
    assert_eq!(semantic_field(parse_network(bad_node).unwrap_err()), "functions[1].inputs[1].node");

    let bad_conn = r#"{"n": 1, "functions": [{"connective": "nand", "inputs": [{"node": 1}]}]}"#;
    assert_eq!(semantic_field(parse_network(bad_conn).unwrap_err()), "functions[0].connective");

    let wrong_count = r#"{"n": 2, "functions": [{"connective": "xor", "inputs": [{"node": 1}]}]}"#;
    assert_eq!(semantic_field(parse_network(wrong_count).unwrap_err()), "functions");

    let dup = r#"{"n": 2, "functions": [
        {"connective": "and", "inputs": [{"node": 2}, {"node": 2}]},
        {"connective": "and", "inputs": [{"node": 1}]}
    ]}"#;
    assert_eq!(semantic_field(parse_network(dup).unwrap_err()), "functions[0].inputs[1]");
}

#[test]
fn declared_k_and_family_must_agree() {
    let net = r#"{"n": 2, "k": 2, "functions": [
        {"connective": "and", "inputs": [{"node": 2}]},
        {"connective": "and", "inputs": [{"node": 1}]}
    ]}"#;
    assert_eq!(semantic_field(parse_network(net).unwrap_err()), "k");
    let fam = r#"{"n": 1, "family": "or", "functions": [{"connective": "and", "inputs": [{"node": 1}]}]}"#;
    assert_eq!(semantic_field(parse_network(fam).unwrap_err()), "family");
}

#[test]
fn nc_layers_checked() {
    let layer_out = r#"{"n": 2, "functions": [
        {"connective": "nc", "nc": {"layers": [{"node": 2, "out": 2}], "default": 0}},
        {"connective": "nc", "nc": {"layers": [{"node": 1, "out": 1}], "default": 0}}
    ]}"#;
    assert_eq!(semantic_field(parse_network(layer_out).unwrap_err()), "functions[0].nc.layers[0].out");

    let mismatch = r#"{"n": 2, "functions": [
        {"connective": "nc", "inputs": [{"node": 1}], "nc": {"layers": [{"node": 2, "out": 1}], "default": 0}},
        {"connective": "nc", "nc": {"layers": [{"node": 1, "out": 1}], "default": 0}}
    ]}"#;
    assert_eq!(semantic_field(parse_network(mismatch).unwrap_err()), "functions[0].inputs");

    let missing = r#"{"n": 1, "functions": [{"connective": "nc", "inputs": [{"node": 1}]}]}"#;
    assert_eq!(semantic_field(parse_network(missing).unwrap_err()), "functions[0].nc");

    let stray = r#"{"n": 1, "functions": [{"connective": "or", "inputs": [{"node": 1}], "nc": {"layers": [], "default": 1}}]}"#;
    assert_eq!(semantic_field(parse_network(stray).unwrap_err()), "functions[0].nc");
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(read_network(&fixture_dir().join("no_such_file.json")).is_err());
}
