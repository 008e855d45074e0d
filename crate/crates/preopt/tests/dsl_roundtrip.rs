//! Round-trips between diagrams and their textual / JSON forms, on
//! engine-produced values: parse after print is the identity.

use proptest::prelude::*;

use preopt::dsl::{
    diagram_from_json, diagram_to_json, parse_diagram, parse_signature, print_diagram,
    print_signature,
};
use preopt::laws::{random_diagram, random_optic, random_word, suite_rng};
use preopt::signature::Signature;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn literal_roundtrip_on_random_diagrams(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let dom = random_word(&mut rng, &sig, 0, 4);
        let d = random_diagram(&mut rng, &sig, dom, 6).unwrap();
        let text = print_diagram(&d);
        let back = parse_diagram(&sig, &text).unwrap();
        prop_assert_eq!(back.slices(), d.slices());
        prop_assert_eq!(back.dom(), d.dom());
        prop_assert_eq!(print_diagram(&back), text);
    }

    #[test]
    fn literal_roundtrip_on_combs_with_holes(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let o = random_optic(&mut rng, &sig, 2).unwrap();
        let text = print_diagram(o.under());
        let back = parse_diagram(&sig, &text).unwrap();
        prop_assert_eq!(back.slices(), o.under().slices());
        prop_assert_eq!(print_diagram(&back), text);
    }

    #[test]
    fn json_roundtrip_matches_the_literal_roundtrip(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let dom = random_word(&mut rng, &sig, 0, 3);
        let d = random_diagram(&mut rng, &sig, dom, 5).unwrap();
        let json = diagram_to_json(&d);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: preopt::dsl::DiagramJson = serde_json::from_str(&text).unwrap();
        let back = diagram_from_json(&sig, &parsed).unwrap();
        prop_assert_eq!(back.slices(), d.slices());
        prop_assert_eq!(back.dom(), d.dom());
    }
}

#[test]
fn signature_statement_roundtrip_is_stable() {
    let sig = Signature::demo();
    let text = print_signature(&sig);
    let back = parse_signature(&text).unwrap();
    assert_eq!(print_signature(&back), text);
}

#[test]
fn barriers_survive_the_literal_roundtrip() {
    let sig = Signature::demo();
    let d = parse_diagram(&sig, "A*B | s@0, barrier, g@1").unwrap();
    let text = print_diagram(&d);
    let back = parse_diagram(&sig, &text).unwrap();
    assert_eq!(back.slices(), d.slices());
}

#[test]
fn type_errors_carry_the_offending_position() {
    let sig = Signature::demo();
    let err = parse_diagram(&sig, "A*B | s@0, g@0").unwrap_err();
    assert_eq!(err.kind(), "TypeMismatch");
    assert!(err.to_string().contains("1:12"), "message: {err}");

    let err = parse_signature("atoms A B ;\ngen s : A ->").unwrap_err();
    assert_eq!(err.kind(), "SyntaxError");
    assert!(err.to_string().contains("2:"), "message: {err}");
}
