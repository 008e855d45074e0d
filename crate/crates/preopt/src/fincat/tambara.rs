//! Profunctors equipped with left and right strengths over a whiskering
//! action, checked against the full axiom set: unit and iterated-tensor
//! coherence, left/right compatibility, naturality in both hom variables,
//! and dinaturality in the acting object over a designated arrow class.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{Arr, FinCat, Obj};
use crate::fincat::mon::MonStructure;
use crate::fincat::prof::FinProfunctor;

/// left[(a, d, c)] : P(d, c) -> P(a(x)d, a(x)c), and
/// right[(a, d, c)] : P(d, c) -> P(d(x)a, c(x)a), as index tables.
#[derive(Debug, Clone)]
pub struct Strengths {
    pub left: HashMap<(Obj, Obj, Obj), Vec<usize>>,
    pub right: HashMap<(Obj, Obj, Obj), Vec<usize>>,
}

/// Outcome of a law suite: every axiom that fails is named with the
/// instance it failed on; an empty list means the module is lawful.
#[derive(Debug, Clone)]
pub struct TambaraReport {
    pub ok: bool,
    pub witness: Option<String>,
}

fn fail(witness: String) -> TambaraReport {
    TambaraReport { ok: false, witness: Some(witness) }
}

/// Check the Tambara axioms for strengths on an endo-bimodule over `mon`'s
/// category. Dinaturality in the acting object is quantified over `act`,
/// the arrows whose whiskered squares are required to commute: the whole
/// category when it is monoidal, the designated centre otherwise.
pub fn tambara_check(
    p: &FinProfunctor,
    mon: &MonStructure,
    act: &[Arr],
    st: &Strengths,
) -> Result<TambaraReport> {
    if !p.is_endo() {
        return Err(Error::mismatch("a strength-carrying bimodule must be endo"));
    }
    let cat: &Arc<FinCat> = &mon.cat;
    let n = cat.object_count();
    for a in 0..n {
        for d in 0..n {
            for c in 0..n {
                let lt = st.left.get(&(a, d, c)).ok_or_else(|| {
                    Error::mismatch(format!("missing left strength at ({a}, {d}, {c})"))
                })?;
                if lt.len() != p.size(d, c)
                    || lt.iter().any(|&y| y >= p.size(mon.tensor_obj(a, d), mon.tensor_obj(a, c)))
                {
                    return Err(Error::mismatch(format!("left strength shape at ({a}, {d}, {c})")));
                }
                let rt = st.right.get(&(a, d, c)).ok_or_else(|| {
                    Error::mismatch(format!("missing right strength at ({a}, {d}, {c})"))
                })?;
                if rt.len() != p.size(d, c)
                    || rt.iter().any(|&y| y >= p.size(mon.tensor_obj(d, a), mon.tensor_obj(c, a)))
                {
                    return Err(Error::mismatch(format!("right strength shape at ({a}, {d}, {c})")));
                }
            }
        }
    }

    let i = mon.unit();
    // unit coherence: strict tensoring with the unit changes nothing
    for d in 0..n {
        for c in 0..n {
            for x in 0..p.size(d, c) {
                if st.left[&(i, d, c)][x] != x {
                    return Ok(fail(format!(
                        "unit coherence (left) at ({}, {}) element {x}",
                        cat.object_name(d),
                        cat.object_name(c)
                    )));
                }
                if st.right[&(i, d, c)][x] != x {
                    return Ok(fail(format!(
                        "unit coherence (right) at ({}, {}) element {x}",
                        cat.object_name(d),
                        cat.object_name(c)
                    )));
                }
            }
        }
    }
    // iterated tensor: acting by a(x)b = acting by b, then by a (left)
    for a in 0..n {
        for b in 0..n {
            let ab = mon.tensor_obj(a, b);
            for d in 0..n {
                for c in 0..n {
                    let (bd, bc) = (mon.tensor_obj(b, d), mon.tensor_obj(b, c));
                    for x in 0..p.size(d, c) {
                        let two = st.left[&(a, bd, bc)][st.left[&(b, d, c)][x]];
                        if st.left[&(ab, d, c)][x] != two {
                            return Ok(fail(format!(
                                "tensor coherence (left) at a={}, b={}, ({}, {}) element {x}",
                                cat.object_name(a),
                                cat.object_name(b),
                                cat.object_name(d),
                                cat.object_name(c)
                            )));
                        }
                        let (da, ca) = (mon.tensor_obj(d, a), mon.tensor_obj(c, a));
                        let two_r = st.right[&(b, da, ca)][st.right[&(a, d, c)][x]];
                        if st.right[&(ab, d, c)][x] != two_r {
                            return Ok(fail(format!(
                                "tensor coherence (right) at a={}, b={}, ({}, {}) element {x}",
                                cat.object_name(a),
                                cat.object_name(b),
                                cat.object_name(d),
                                cat.object_name(c)
                            )));
                        }
                    }
                }
            }
        }
    }
    // left and right strengths commute
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                for c in 0..n {
                    let (db, cb) = (mon.tensor_obj(d, b), mon.tensor_obj(c, b));
                    let (ad, ac) = (mon.tensor_obj(a, d), mon.tensor_obj(a, c));
                    for x in 0..p.size(d, c) {
                        let lr = st.left[&(a, db, cb)][st.right[&(b, d, c)][x]];
                        let rl = st.right[&(b, ad, ac)][st.left[&(a, d, c)][x]];
                        if lr != rl {
                            return Ok(fail(format!(
                                "left/right compatibility at a={}, b={}, ({}, {}) element {x}",
                                cat.object_name(a),
                                cat.object_name(b),
                                cat.object_name(d),
                                cat.object_name(c)
                            )));
                        }
                    }
                }
            }
        }
    }
    // naturality in both hom variables
    for a in 0..n {
        for f in cat.arrows_iter() {
            let (d2, d) = (cat.arrow(f).src, cat.arrow(f).dst);
            for c in 0..n {
                for x in 0..p.size(d, c) {
                    let lhs = st.left[&(a, d2, c)][p.lact(f, c, x)];
                    let rhs = p.lact(mon.whisker_l(a, f), mon.tensor_obj(a, c), st.left[&(a, d, c)][x]);
                    if lhs != rhs {
                        return Ok(fail(format!(
                            "naturality (left, contravariant) at a={}, arrow {}",
                            cat.object_name(a),
                            cat.arrow(f).name
                        )));
                    }
                    let lhs_r = st.right[&(a, d2, c)][p.lact(f, c, x)];
                    let rhs_r = p.lact(mon.whisker_r(f, a), mon.tensor_obj(c, a), st.right[&(a, d, c)][x]);
                    if lhs_r != rhs_r {
                        return Ok(fail(format!(
                            "naturality (right, contravariant) at a={}, arrow {}",
                            cat.object_name(a),
                            cat.arrow(f).name
                        )));
                    }
                }
            }
        }
        for g in cat.arrows_iter() {
            let (c, c2) = (cat.arrow(g).src, cat.arrow(g).dst);
            for d in 0..n {
                for x in 0..p.size(d, c) {
                    let lhs = st.left[&(a, d, c2)][p.ract(g, d, x)];
                    let rhs = p.ract(mon.whisker_l(a, g), mon.tensor_obj(a, d), st.left[&(a, d, c)][x]);
                    if lhs != rhs {
                        return Ok(fail(format!(
                            "naturality (left, covariant) at a={}, arrow {}",
                            cat.object_name(a),
                            cat.arrow(g).name
                        )));
                    }
                    let lhs_r = st.right[&(a, d, c2)][p.ract(g, d, x)];
                    let rhs_r = p.ract(mon.whisker_r(g, a), mon.tensor_obj(d, a), st.right[&(a, d, c)][x]);
                    if lhs_r != rhs_r {
                        return Ok(fail(format!(
                            "naturality (right, covariant) at a={}, arrow {}",
                            cat.object_name(a),
                            cat.arrow(g).name
                        )));
                    }
                }
            }
        }
    }
    // dinaturality in the acting object over the designated arrows
    for &u in act {
        let (a, a1) = (cat.arrow(u).src, cat.arrow(u).dst);
        for d in 0..n {
            for c in 0..n {
                for x in 0..p.size(d, c) {
                    // left: P(a(x)d, a'(x)c) reached two ways
                    let via_a1 =
                        p.lact(mon.whisker_r(u, d), mon.tensor_obj(a1, c), st.left[&(a1, d, c)][x]);
                    let via_a = p.ract(mon.whisker_r(u, c), mon.tensor_obj(a, d), st.left[&(a, d, c)][x]);
                    if via_a1 != via_a {
                        return Ok(fail(format!(
                            "dinaturality (left) in the acting object at {}, ({}, {}) element {x}",
                            cat.arrow(u).name,
                            cat.object_name(d),
                            cat.object_name(c)
                        )));
                    }
                    let via_a1_r =
                        p.lact(mon.whisker_l(d, u), mon.tensor_obj(c, a1), st.right[&(a1, d, c)][x]);
                    let via_a_r =
                        p.ract(mon.whisker_l(c, u), mon.tensor_obj(d, a), st.right[&(a, d, c)][x]);
                    if via_a1_r != via_a_r {
                        return Ok(fail(format!(
                            "dinaturality (right) in the acting object at {}, ({}, {}) element {x}",
                            cat.arrow(u).name,
                            cat.object_name(d),
                            cat.object_name(c)
                        )));
                    }
                }
            }
        }
    }
    Ok(TambaraReport { ok: true, witness: None })
}

/// Strengths on a bimodule whose (d, c) values are the hom(d, c) arrows of
/// `inner`, obtained by whiskering there. Covers both the hom bimodule of a
/// premonoidal category and the loose-hom bimodule restricted to the tight
/// level.
pub fn whisker_strengths(
    p: &FinProfunctor,
    inner: &Arc<FinCat>,
    wmon: &MonStructure,
) -> Result<Strengths> {
    let n = p.src.object_count();
    if inner.object_count() != n {
        return Err(Error::mismatch("the value category must share the base's objects"));
    }
    for d in 0..n {
        for c in 0..n {
            if p.size(d, c) != inner.hom(d, c).len() {
                return Err(Error::mismatch("value sets must be the hom sets of the value category"));
            }
        }
    }
    let pos = |f: Arr| -> usize {
        let fd = inner.arrow(f);
        inner.hom(fd.src, fd.dst).iter().position(|&g| g == f).unwrap()
    };
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for a in 0..n {
        for d in 0..n {
            for c in 0..n {
                let lt: Vec<usize> =
                    inner.hom(d, c).iter().map(|&t| pos(wmon.whisker_l(a, t))).collect();
                let rt: Vec<usize> =
                    inner.hom(d, c).iter().map(|&t| pos(wmon.whisker_r(t, a))).collect();
                left.insert((a, d, c), lt);
                right.insert((a, d, c), rt);
            }
        }
    }
    Ok(Strengths { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::cat::Monoid;
    use crate::fincat::prof::hom_profunctor;
    use crate::fincat::promonad::promonad_from_ioo;
    use crate::fincat::writer::make_writer_effectful;

    #[test]
    fn loose_hom_with_whisker_strengths_is_tambara_over_the_centre() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let p = hom_profunctor(w.eff.c1());
        let st = whisker_strengths(&p, w.eff.c1(), &w.eff.mon1).unwrap();
        let centre: Vec<_> = w.eff.image();
        let report = tambara_check(&p, &w.eff.mon1, &centre, &st).unwrap();
        assert!(report.ok, "{:?}", report.witness);
        // over every arrow the dinaturality square fails for the emitters
        let all: Vec<_> = w.eff.c1().arrows_iter().collect();
        let report_all = tambara_check(&p, &w.eff.mon1, &all, &st).unwrap();
        assert!(!report_all.ok);
        assert!(report_all.witness.unwrap().contains("dinaturality"));
    }

    #[test]
    fn induced_bimodule_with_loose_whiskering_is_tambara_over_the_tight_level() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let t = promonad_from_ioo(&w.eff.j).unwrap().t;
        let st = whisker_strengths(&t, w.eff.c1(), &w.eff.mon1).unwrap();
        let all0: Vec<_> = w.eff.c0().arrows_iter().collect();
        let report = tambara_check(&t, &w.eff.mon0, &all0, &st).unwrap();
        assert!(report.ok, "{:?}", report.witness);
    }

    #[test]
    fn breaking_unit_coherence_is_reported_with_a_witness() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let p = hom_profunctor(w.eff.c1());
        let mut st = whisker_strengths(&p, w.eff.c1(), &w.eff.mon1).unwrap();
        let unit = w.eff.mon1.unit();
        let one = w.obj_of_size(1).unwrap();
        // swap two entries of the unit-indexed strength on the 3-element hom
        let tab = st.left.get_mut(&(unit, one, one)).unwrap();
        tab.swap(0, 1);
        let centre: Vec<_> = w.eff.image();
        let report = tambara_check(&p, &w.eff.mon1, &centre, &st).unwrap();
        assert!(!report.ok);
        assert!(report.witness.unwrap().contains("unit coherence"));
    }

    #[test]
    fn identity_inclusion_hom_module_is_tambara_everywhere() {
        let w = make_writer_effectful(Monoid::z2(), &[0, 1]).unwrap();
        let p = hom_profunctor(w.eff.c1());
        let st = whisker_strengths(&p, w.eff.c1(), &w.eff.mon1).unwrap();
        let all: Vec<_> = w.eff.c1().arrows_iter().collect();
        let report = tambara_check(&p, &w.eff.mon1, &all, &st).unwrap();
        assert!(report.ok, "{:?}", report.witness);
    }
}
