//! Randomized properties of the diagram layer: the normal form is a class
//! invariant and an idempotent, congruence behaves like a congruence, and
//! the interleavings of a tensor agree exactly when one side is central.

use proptest::prelude::*;

use preopt::diagram::{Diagram, InterleaveOrder};
use preopt::laws::{random_diagram, random_word, scramble, suite_rng};
use preopt::signature::Signature;

const B: usize = 500_000;

fn sample(seed: u64, max_slices: usize) -> Diagram {
    let sig = Signature::demo();
    let mut rng = suite_rng(seed);
    let dom = random_word(&mut rng, &sig, 0, 3);
    random_diagram(&mut rng, &sig, dom, max_slices).expect("generator produces valid diagrams")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn normal_form_is_idempotent_and_stays_in_class(seed in any::<u64>()) {
        let d = sample(seed, 6);
        let nf = d.normal_form_with_budget(B).unwrap();
        let again = nf.normal_form_with_budget(B).unwrap();
        prop_assert_eq!(again.slices(), nf.slices());
        prop_assert!(d.equal_with_budget(&nf, B).unwrap());
    }

    #[test]
    fn scrambling_never_leaves_the_class(seed in any::<u64>()) {
        let d = sample(seed, 6);
        let mut rng = suite_rng(seed ^ 0x5eed);
        let s = scramble(&mut rng, &d, 8);
        prop_assert!(d.equal_with_budget(&s, B).unwrap());
        prop_assert!(s.equal_with_budget(&d, B).unwrap());
        let nf_d = d.normal_form_with_budget(B).unwrap();
        let nf_s = s.normal_form_with_budget(B).unwrap();
        prop_assert_eq!(nf_d.slices(), nf_s.slices());
    }

    #[test]
    fn greedy_form_matches_the_exact_minimum(seed in any::<u64>()) {
        let d = sample(seed, 6);
        let greedy = d.greedy_form();
        let exact = d.normal_form_with_budget(B).unwrap();
        prop_assert_eq!(greedy.slices(), exact.slices());
    }

    #[test]
    fn swapping_twice_returns_the_original(seed in any::<u64>(), i in 0usize..6) {
        let d = sample(seed, 6);
        if d.slices().len() >= 2 {
            let i = i % (d.slices().len() - 1);
            if let Ok(sw) = d.swap_adjacent(i) {
                let back = sw.swap_adjacent(i).unwrap();
                prop_assert_eq!(back.slices(), d.slices());
            }
        }
    }

    #[test]
    fn congruence_respects_composition_and_whiskering(seed in any::<u64>()) {
        let sig = Signature::demo();
        let d = sample(seed, 4);
        let mut rng = suite_rng(seed ^ 0xc0de);
        let s = scramble(&mut rng, &d, 6);
        let e = random_diagram(&mut rng, &sig, d.cod().clone(), 3).unwrap();
        prop_assert!(d.compose(&e).unwrap().equal_with_budget(&s.compose(&e).unwrap(), B).unwrap());
        let l = random_word(&mut rng, &sig, 0, 2);
        let r = random_word(&mut rng, &sig, 0, 2);
        prop_assert!(
            d.whisker(&l, &r).unwrap().equal_with_budget(&s.whisker(&l, &r).unwrap(), B).unwrap()
        );
    }

    #[test]
    fn tensor_interleavings_agree_exactly_when_one_side_is_central(seed in any::<u64>()) {
        let sig = Signature::demo();
        let mut rng = suite_rng(seed);
        let a = {
            let dom = random_word(&mut rng, &sig, 1, 2);
            random_diagram(&mut rng, &sig, dom, 2).unwrap()
        };
        let b = {
            let dom = random_word(&mut rng, &sig, 1, 2);
            random_diagram(&mut rng, &sig, dom, 2).unwrap()
        };
        let lf = a.tensor_seq(&b, InterleaveOrder::LeftFirst).unwrap();
        let rf = a.tensor_seq(&b, InterleaveOrder::RightFirst).unwrap();
        prop_assert_eq!(lf.dom(), rf.dom());
        prop_assert_eq!(lf.cod(), rf.cod());
        let agree = lf.equal_with_budget(&rf, B).unwrap();
        prop_assert_eq!(agree, a.is_central() || b.is_central());
    }
}
