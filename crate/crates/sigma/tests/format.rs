use std::path::Path;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sigma_cli::error::CliError;
use sigma_cli::format::{complex_from_str, complex_to_string, complex_value, from_file, parse_complex};
use sigma_core::builders::{builtin, random_complex, RandomShape, BUILTIN_NAMES};
use sigma_core::CoeffRing;

fn source(seed: u64) -> impl FnMut(u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move |n| rng.gen_range(0..n)
}

fn ring() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![Just(CoeffRing::Integers), Just(CoeffRing::Rationals), Just(CoeffRing::PrimeField(5))]
}

proptest! {
    #[test]
    fn complexes_round_trip(seed in any::<u64>(), deck in 1usize..=2, ring in ring()) {
        let c = random_complex(&mut source(seed), ring, &RandomShape::small(deck));
        let text = complex_to_string(&c);
        let back = complex_from_str(&text).unwrap();
        prop_assert_eq!(back.ranks(), c.ranks());
        for q in 1..=c.dim() {
            prop_assert_eq!(back.boundary(q), c.boundary(q));
        }
        prop_assert_eq!(complex_to_string(&back), text);
    }
}

#[test]
fn shipped_data_files_match_the_builtins() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for name in BUILTIN_NAMES {
        let c = from_file(&dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(complex_to_string(&c), complex_to_string(&builtin(name, CoeffRing::Integers).unwrap()), "{name}");
    }
}

fn circle() -> Value {
    complex_value(&builtin("circle", CoeffRing::Integers).unwrap())
}

fn schema_error(v: &Value) -> String {
    match parse_complex(v) {
        Err(e @ CliError::Schema(_)) => e.to_string(),
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn schema_errors_name_the_offending_field() {
    let mut v = circle();
    v["extra"] = json!(1);
    assert!(schema_error(&v).contains("\"extra\""));

    let mut v = circle();
    v["ring"]["coefficients"] = json!("Fp");
    v["ring"]["p"] = json!(9);
    assert!(schema_error(&v).contains('9'));

    let mut v = circle();
    v["boundaries"][0]["entries"][0]["row"] = json!(3);
    assert!(schema_error(&v).contains("outside"));

    let mut v = circle();
    let dup = v["boundaries"][0]["entries"][0].clone();
    v["boundaries"][0]["entries"].as_array_mut().unwrap().push(dup);
    assert!(schema_error(&v).contains("twice"));

    let mut v = circle();
    v["boundaries"][0]["entries"][0]["terms"] = json!([[[0, 1], 1]]);
    assert!(schema_error(&v).contains("exponents"));

    let mut v = circle();
    v["boundaries"][0]["entries"][0]["terms"] = json!([[[0], 1, 0]]);
    assert!(schema_error(&v).contains("zero denominator"));
}

#[test]
fn broken_boundary_is_rejected_with_its_degree() {
    let mut v = complex_value(&builtin("trefoil", CoeffRing::Integers).unwrap());
    v["boundaries"][0]["entries"][0]["terms"] = json!([[[0], 1]]);
    match parse_complex(&v) {
        Err(CliError::Invalid(violation)) => assert!(violation.to_string().contains('2'), "{violation}"),
        other => panic!("expected a boundary violation, got {other:?}"),
    }
}

#[test]
fn large_integers_survive_as_strings() {
    let mut v = circle();
    v["boundaries"][0]["entries"][0]["terms"] = json!([[[0], "-123456789012345678901234567890"], [[1], "123456789012345678901234567890"]]);
    let c = parse_complex(&v).unwrap();
    assert!(complex_to_string(&c).contains("\"123456789012345678901234567890\""));
}
