//! End-to-end library usage over the arbitrary-precision scalar: enumerate
//! generators, build tables on both engines, check stability, and feed the
//! empirical ranges through the certifier.

use confstab_core::certify::{certify_range, ComplementProfile, Orientation};
use confstab_core::enumerate::{enumerate_generators, AdmissibilityMode, EnumerationBounds};
use confstab_core::hilbert::{hilbert_by_enumeration, hilbert_by_product, rational_table};
use confstab_core::ops::{AmbientDim, Prime};
use confstab_core::stability::{
    check_theorem_range, empirical_range_function, verify_unstable_facts, z_half_report,
};
use confstab_core::{Big, BigGeneratorSet, BigHilbertTable};

fn big(x: u32) -> Big {
    Big::from(x)
}

fn generators(n: u32, p: u32, d: u32, k: u32) -> BigGeneratorSet {
    enumerate_generators(
        AmbientDim::new(n).unwrap(),
        Prime::new(p).unwrap(),
        EnumerationBounds::new(big(d), big(k)).unwrap(),
        AdmissibilityMode::FormalS,
    )
}

#[test]
fn full_pipeline_over_big_integers() {
    for (n, p) in [(3u32, 3u32), (4, 3), (6, 5)] {
        let gens = generators(n, p, 16, 14);
        let facts = verify_unstable_facts(&gens);
        assert!(facts.pass(), "n={n}, p={p}");

        let table = hilbert_by_enumeration(&gens);
        let product = hilbert_by_product(&gens);
        assert!(table.differences(&product).is_empty());
        table.validate().unwrap();

        let report = check_theorem_range(&table).unwrap();
        assert!(report.pass, "n={n}, p={p}: {:?}", report.counterexamples);

        let input = empirical_range_function(&table).unwrap();
        let profile = ComplementProfile::new(AmbientDim::new(n).unwrap(), n - 1).unwrap();
        let cert = certify_range(&input, &profile, Orientation::Trivial, input.len() - 1).unwrap();
        for k in 0..input.len() {
            assert!(*cert.certified.value(k).unwrap().floor() >= big(k as u32));
        }
    }
}

// Hand-frozen weight-2 columns: over an odd prime the only weight-2 classes
// are e^2 and, in even ambient dimension, the bracket l(e,e) in degree n-1.
#[test]
fn frozen_weight_two_columns() {
    for n in 3u32..=8 {
        let gens = generators(n, 3, 20, 20);
        let table = hilbert_by_enumeration(&gens);
        let column: Vec<(Big, Big)> = table
            .column(&big(2))
            .map(|(d, v)| (d.clone(), v.clone()))
            .collect();
        let expected = if n % 2 == 0 {
            vec![(big(0), big(1)), (big(n - 1), big(1))]
        } else {
            vec![(big(0), big(1))]
        };
        assert_eq!(column, expected, "n={n}");
    }
}

#[test]
fn generator_set_json_fields() {
    let gens = generators(3, 3, 10, 9);
    let json = gens.to_json();
    assert_eq!(json["n"], serde_json::json!(3));
    assert_eq!(json["p"], serde_json::json!(3));
    assert_eq!(json["mode"], serde_json::json!("formal-s"));
    assert_eq!(json["max_degree"], serde_json::json!("10"));
    let words: Vec<&str> = json["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["word"].as_str().unwrap())
        .collect();
    assert_eq!(words, vec!["e", "bQ1 e", "Q1 e", "bQ2 bQ1 e"]);
}

#[test]
fn hilbert_table_json_metadata_block() {
    let gens = generators(4, 3, 8, 4);
    let table = hilbert_by_enumeration(&gens);
    let json = table.to_json();
    for key in [
        "n",
        "coeff",
        "max_degree",
        "max_weight",
        "mode",
        "provenance",
        "caveat",
        "entries",
    ] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(json["coeff"], serde_json::json!("3"));
    assert_eq!(json["provenance"], serde_json::json!("enumeration"));

    let rational = rational_table(
        AmbientDim::new(4).unwrap(),
        &EnumerationBounds::new(big(8), big(4)).unwrap(),
    );
    let json = rational.to_json();
    assert_eq!(json["coeff"], serde_json::json!("Q"));
    assert_eq!(
        json["provenance"],
        serde_json::json!("rational-closed-form")
    );
    assert_eq!(json["caveat"], serde_json::Value::Null);
}

#[test]
fn certificate_json_schema() {
    let gens = generators(3, 3, 12, 12);
    let table = hilbert_by_enumeration(&gens);
    let input = empirical_range_function(&table).unwrap();
    let profile = ComplementProfile::new(AmbientDim::new(3).unwrap(), 2).unwrap();
    let cert = certify_range(&input, &profile, Orientation::Twisted, 5).unwrap();
    let json = cert.to_json();
    for key in ["n", "q", "input_range", "certified_range", "trace", "notes"] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(json["q"], serde_json::json!(1));
    assert_eq!(json["orientation"], serde_json::json!("twisted"));
    assert_eq!(json["certified_range"].as_array().unwrap().len(), 6);
    let notes = json["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("twisted")));
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("boundary")));
}

#[test]
fn z_half_over_big_integers() {
    let n = AmbientDim::new(4).unwrap();
    let mut tables: Vec<BigHilbertTable> = [3u32, 5]
        .iter()
        .map(|&p| hilbert_by_enumeration(&generators(4, p, 12, 12)))
        .collect();
    tables.push(rational_table(
        n,
        &EnumerationBounds::new(big(12), big(12)).unwrap(),
    ));
    let report = z_half_report(&tables).unwrap();
    assert!(report.pass);
    let json = report.to_json();
    for key in ["claim", "grid", "pass", "counterexamples", "caveats"] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
}
