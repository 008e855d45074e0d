//! Cross-module runs over the finite-category stack: one effectful model is
//! threaded through the promonad, strength, convolution, and comb layers so
//! the pieces are exercised against each other rather than in isolation.

use preopt::fincat::{
    canonical_prostrength, closure_check, coyoneda_check, day_assoc_check, day_unit_check,
    funny_tensor, funny_word_compose, hom_profunctor, kleisli_check, make_writer_effectful,
    monoid_cat, prostrength_check, promonad_from_ioo, representable, tambara_check, walking_arrow,
    whisker_strengths, Letter, Monoid, OpticCat, Presheaf,
};

const B: usize = 1_000_000;

#[test]
fn promonad_kleisli_and_coyoneda_agree_on_the_noncommutative_writer() {
    let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
    let pm = promonad_from_ioo(&w.eff.j).unwrap();
    let kl = kleisli_check(&pm).unwrap();
    // the loose category is recovered on the nose
    assert_eq!(kl.to_loose.len(), w.eff.c1().arrow_count());
    assert_eq!(kl.cat.object_count(), w.eff.c1().object_count());
    for d in 0..w.eff.c0().object_count() {
        for c in 0..w.eff.c0().object_count() {
            assert_eq!(pm.t.size(d, c), w.eff.c1().hom(d, c).len());
        }
    }
    coyoneda_check(&pm.t).unwrap();
}

#[test]
fn the_loose_hom_is_tambara_exactly_over_the_central_image() {
    for monoid in [Monoid::m3(), Monoid::z3()] {
        let w = make_writer_effectful(monoid, &[0, 1]).unwrap();
        let p = hom_profunctor(w.eff.c1());
        let st = whisker_strengths(&p, w.eff.c1(), &w.eff.mon1).unwrap();
        let centre: Vec<_> = w.eff.image();
        let report = tambara_check(&p, &w.eff.mon1, &centre, &st).unwrap();
        assert!(report.ok, "{:?}", report.witness);
    }
    // and over all arrows only when the monoid is commutative
    let m3 = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
    let p = hom_profunctor(m3.eff.c1());
    let st = whisker_strengths(&p, m3.eff.c1(), &m3.eff.mon1).unwrap();
    let all: Vec<_> = m3.eff.c1().arrows_iter().collect();
    assert!(!tambara_check(&p, &m3.eff.mon1, &all, &st).unwrap().ok);

    let z3 = make_writer_effectful(Monoid::z3(), &[0, 1]).unwrap();
    let p = hom_profunctor(z3.eff.c1());
    let st = whisker_strengths(&p, z3.eff.c1(), &z3.eff.mon1).unwrap();
    let all: Vec<_> = z3.eff.c1().arrows_iter().collect();
    assert!(tambara_check(&p, &z3.eff.mon1, &all, &st).unwrap().ok);
}

#[test]
fn the_canonical_prostrength_of_the_writer_promonad_passes() {
    let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
    let pmon = representable(&w.eff.mon0).unwrap();
    let pm = promonad_from_ioo(&w.eff.j).unwrap();
    let sigma = canonical_prostrength(&w.eff, &pm);
    let report = prostrength_check(&pm, &pmon, sigma).unwrap();
    assert!(report.ok, "{:?}", report.witness);
}

#[test]
fn currying_bijections_hold_on_the_writer_base() {
    let w = make_writer_effectful(Monoid::z2(), &[0, 1]).unwrap();
    let mon0 = w.eff.mon0.clone();
    let base = mon0.cat.clone();
    let y0 = Presheaf::representable(&base, 0);
    let y1 = Presheaf::representable(&base, 1);
    let rep = closure_check(&mon0, &y0, &y1, &y1, B).unwrap();
    assert!(rep.ok, "{:?}", rep.witness);
    assert_eq!(rep.tensor_nats, rep.hom_nats);
}

#[test]
fn sequential_tensor_words_break_interchange_but_stay_associative() {
    let t = funny_tensor(&walking_arrow(), &monoid_cat(&Monoid::m3()).unwrap());
    let u = t.left.hom(0, 1)[0];
    // the two interleavings of (u x id) and (id x a) are distinct words
    let left_first = funny_word_compose(&t, &t.inl(u, 0).unwrap(), &t.inr(1, 1).unwrap()).unwrap();
    let right_first = funny_word_compose(&t, &t.inr(0, 1).unwrap(), &t.inl(u, 0).unwrap()).unwrap();
    assert_eq!(left_first.src, right_first.src);
    assert_eq!(left_first.dst, right_first.dst);
    assert_ne!(left_first, right_first);
    assert_eq!(left_first.letters, vec![Letter::L(u), Letter::R(1)]);

    // composition of reduced words is associative on every composable triple
    let mut words = vec![t.id((0, 0)), t.id((1, 0))];
    for d in 0..t.right.object_count() {
        words.push(t.inl(u, d).unwrap());
    }
    for m in 1..3 {
        for c in 0..t.left.object_count() {
            words.push(t.inr(c, m).unwrap());
        }
    }
    for w1 in &words {
        for w2 in &words {
            for w3 in &words {
                if w1.dst != w2.src || w2.dst != w3.src {
                    continue;
                }
                let ab = funny_word_compose(&t, w1, w2).unwrap();
                let bc = funny_word_compose(&t, w2, w3).unwrap();
                let l = funny_word_compose(&t, &ab, w3).unwrap();
                let r = funny_word_compose(&t, w1, &bc).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn the_writer_promonad_is_a_day_monoid_up_to_unit_and_associativity() {
    let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
    let pm = promonad_from_ioo(&w.eff.j).unwrap();
    day_unit_check(&w.eff.mon0, &pm.t, B).unwrap();
    day_assoc_check(&w.eff.mon0, &pm.t, &pm.t, &pm.t, B).unwrap();
}

#[test]
fn comb_composition_is_a_category_on_the_writer_model() {
    let w = make_writer_effectful(Monoid::z2(), &[0, 1]).unwrap();
    let cat = OpticCat::new(&w.eff, B).unwrap();
    cat.check_laws().unwrap();
}
