//! Randomized properties of the optic layer, checked against the
//! test-side parts oracle: the engine's hole-aware congruence and the
//! oracle's coend-move BFS must always return the same verdict.

mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{
    exchange_raw, flip_partner, forced_cross, oracle_optic_equal, parts_state, random_legal_walk,
    rebuild,
};
use preopt::diagram::SliceKind;
use preopt::laws::{random_diagram, random_optic, random_word, suite_rng};
use preopt::optic::Optic;
use preopt::signature::Signature;

const B: usize = 500_000;

/// A pair of parallel optics derived from one random optic: sometimes a
/// congruent rewrite, sometimes a mutation that may leave the class.
fn sample_pair(seed: u64) -> (Optic, Optic) {
    let sig = Signature::demo();
    let mut rng = suite_rng(seed);
    let o1 = random_optic(&mut rng, &sig, 1).expect("random optics are well-typed");
    let dst = o1.dst();
    let st = parts_state(&o1);
    let variant = rng.gen_range(0..4u8);
    let mutated = match variant {
        0 => random_legal_walk(&mut rng, &st, &dst, 6),
        1 => forced_cross(&st, &dst).unwrap_or_else(|| random_legal_walk(&mut rng, &st, &dst, 4)),
        2 => {
            let ix = rng.gen_range(0..16usize);
            flip_partner(&st, ix).unwrap_or_else(|| random_legal_walk(&mut rng, &st, &dst, 4))
        }
        _ => {
            let walked = random_legal_walk(&mut rng, &st, &dst, 3);
            let ix = rng.gen_range(0..16usize);
            flip_partner(&walked, ix).unwrap_or(walked)
        }
    };
    let o2 = rebuild(&sig, o1.under().dom(), &mutated, &dst, o1.slot())
        .expect("mutations preserve typing");
    (o1, o2)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn parts_roundtrip_is_the_identity(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let o = random_optic(&mut rng, &sig, 1).unwrap();
        let st = parts_state(&o);
        let back = rebuild(&sig, o.under().dom(), &st, &o.dst(), o.slot()).unwrap();
        prop_assert_eq!(back.under().slices(), o.under().slices());
        prop_assert_eq!(back.under().dom(), o.under().dom());
    }

    #[test]
    fn engine_and_oracle_agree_on_derived_pairs(seed in any::<u64>()) {
        let (o1, o2) = sample_pair(seed);
        let engine = o1.equal(&o2).unwrap();
        let oracle = oracle_optic_equal(&o1, &o2, B).unwrap();
        prop_assert_eq!(engine, oracle);
    }

    #[test]
    fn legal_walks_stay_in_the_class(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let o1 = random_optic(&mut rng, &sig, 1).unwrap();
        let dst = o1.dst();
        let st = parts_state(&o1);
        let walked = random_legal_walk(&mut rng, &st, &dst, 8);
        let o2 = rebuild(&sig, o1.under().dom(), &walked, &dst, o1.slot()).unwrap();
        prop_assert!(o1.equal(&o2).unwrap());
        prop_assert!(oracle_optic_equal(&o1, &o2, B).unwrap());
    }

    #[test]
    fn a_noncentral_crossing_leaves_the_class(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let o1 = random_optic(&mut rng, &sig, 1).unwrap();
        let dst = o1.dst();
        let st = parts_state(&o1);
        if let Some(crossed) = forced_cross(&st, &dst) {
            // which box moved: compare part lengths
            let moved_from_before = crossed.before.len() < st.before.len();
            let moved = if moved_from_before { &crossed.after[0] } else { crossed.before.last().unwrap() };
            let central = moved.central;
            let o2 = rebuild(&sig, o1.under().dom(), &crossed, &dst, o1.slot()).unwrap();
            let engine = o1.equal(&o2).unwrap();
            let oracle = oracle_optic_equal(&o1, &o2, B).unwrap();
            prop_assert_eq!(engine, oracle);
            prop_assert_eq!(engine, central);
        }
    }

    #[test]
    fn plugging_tracks_boundaries(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let inner = random_optic(&mut rng, &sig, 3).unwrap();
        let outer = preopt::laws::random_optic_with_hole(&mut rng, &sig, 1, &inner.src()).unwrap();
        let res = outer.plug(&inner).unwrap();
        prop_assert_eq!(res.src(), outer.src());
        prop_assert_eq!(res.dst(), inner.dst());
        prop_assert_eq!(res.slot(), inner.slot());
    }

    #[test]
    fn oracle_arithmetic_matches_the_engine_swap(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let dom = random_word(&mut rng, &sig, 1, 4);
        let d = random_diagram(&mut rng, &sig, dom, 5).unwrap();
        for i in 0..d.slices().len().saturating_sub(1) {
            let (s1, s2) = (&d.slices()[i], &d.slices()[i + 1]);
            let geom = |s: &preopt::diagram::Slice| match s.kind {
                SliceKind::Gen(id) => {
                    let g = sig.generator(id);
                    (s.offset, g.dom.len(), g.cod.len(), g.central)
                }
                _ => unreachable!("random diagrams hold generator slices only"),
            };
            let (o1, i1, n1, c1) = geom(s1);
            let (o2, i2, n2, c2) = geom(s2);
            let predicted = if c1 || c2 { exchange_raw((o1, i1, n1), (o2, i2, n2)) } else { None };
            match (d.swap_adjacent(i), predicted) {
                (Ok(sw), Some((nb, na))) => {
                    prop_assert_eq!(sw.slices()[i].offset, nb);
                    prop_assert_eq!(sw.slices()[i + 1].offset, na);
                    prop_assert_eq!(sw.slices()[i].kind, s2.kind);
                    prop_assert_eq!(sw.slices()[i + 1].kind, s1.kind);
                }
                (Err(_), None) => {}
                (engine, oracle) => {
                    return Err(TestCaseError::fail(format!(
                        "divergence at {i}: engine {engine:?}, oracle {oracle:?}"
                    )));
                }
            }
        }
    }
}

#[test]
fn oracle_decides_the_hand_checked_slides() {
    let sig = Signature::demo();
    // a central box on the residual wire slides across the hole; a
    // noncentral one does not; a box feeding the hole itself never slides
    for (name, expect) in [("s", true), ("f", false)] {
        let boxed = preopt::dsl::parse_diagram(&sig, &format!("A*B | {name}@0")).unwrap();
        let id_ab = preopt::dsl::parse_diagram(&sig, "A*B |").unwrap();
        let b = boxed.cod().slice(1, 2);
        let spec = preopt::signature::HoleSpec::new(1, b.clone(), b);
        let before_hole = Optic::new(&boxed, 1, &spec, &id_ab).unwrap();
        let after_hole = Optic::new(&id_ab, 1, &spec, &boxed).unwrap();
        assert_eq!(
            oracle_optic_equal(&before_hole, &after_hole, B).unwrap(),
            expect,
            "sliding {name}"
        );
        assert_eq!(before_hole.equal(&after_hole).unwrap(), expect);
    }
    // central s on wire A, but the hole consumes that same wire
    let s_box = preopt::dsl::parse_diagram(&sig, "A | s@0").unwrap();
    let id_a = preopt::dsl::parse_diagram(&sig, "A |").unwrap();
    let a = s_box.cod().clone();
    let spec = preopt::signature::HoleSpec::new(1, a.clone(), a);
    let feeds = Optic::new(&s_box, 0, &spec, &id_a).unwrap();
    let drains = Optic::new(&id_a, 0, &spec, &s_box).unwrap();
    assert!(!oracle_optic_equal(&feeds, &drains, B).unwrap());
    assert!(!feeds.equal(&drains).unwrap());
}
