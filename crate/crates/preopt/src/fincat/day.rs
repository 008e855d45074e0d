//! Day convolution of endo-bimodules over a monoidal base: the four-variable
//! coend, its two-sided unit, and constructed unit/associativity bijections.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{Arr, FinCat, Obj};
use crate::fincat::mon::MonStructure;
use crate::fincat::prof::{FinProfunctor, UnionFind};

/// raw element (a, a', b, b', f, p, q, g) of the convolution at (d, c):
/// f : d -> a(x)a', p in P(a, b), q in Q(a', b'), g : b(x)b' -> c
pub type DayRaw = (Obj, Obj, Obj, Obj, Arr, usize, usize, Arr);

/// The convolution with its class structure kept around so comparison maps
/// can be built on representatives.
pub struct DayProf {
    pub prof: FinProfunctor,
    /// per (d, c): members of each class in enumeration order
    pub members: HashMap<(Obj, Obj), Vec<Vec<DayRaw>>>,
    coproj: HashMap<(Obj, Obj), HashMap<DayRaw, usize>>,
}

impl DayProf {
    pub fn coproj(&self, d: Obj, c: Obj, raw: DayRaw) -> usize {
        self.coproj[&(d, c)][&raw]
    }

    pub fn rep(&self, d: Obj, c: Obj, cls: usize) -> DayRaw {
        self.members[&(d, c)][cls][0]
    }
}

fn day_raws(
    mon: &MonStructure,
    p: &FinProfunctor,
    q: &FinProfunctor,
    d: Obj,
    c: Obj,
) -> Vec<DayRaw> {
    let cat = &mon.cat;
    let n = cat.object_count();
    let mut out = Vec::new();
    for a in 0..n {
        for a2 in 0..n {
            for b in 0..n {
                for b2 in 0..n {
                    for &f in cat.hom(d, mon.tensor_obj(a, a2)) {
                        for pi in 0..p.size(a, b) {
                            for qi in 0..q.size(a2, b2) {
                                for &g in cat.hom(mon.tensor_obj(b, b2), c) {
                                    out.push((a, a2, b, b2, f, pi, qi, g));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// P * Q as the coend over the four bound boundary objects.
pub fn day_convolve(
    mon: &MonStructure,
    p: &FinProfunctor,
    q: &FinProfunctor,
    budget: usize,
) -> Result<DayProf> {
    let cat: Arc<FinCat> = mon.cat.clone();
    if !p.is_endo() || !q.is_endo() {
        return Err(Error::mismatch("convolution needs endo-bimodules"));
    }
    let n = cat.object_count();
    let mut members: HashMap<(Obj, Obj), Vec<Vec<DayRaw>>> = HashMap::new();
    let mut coproj: HashMap<(Obj, Obj), HashMap<DayRaw, usize>> = HashMap::new();
    let mut total = 0usize;
    for d in 0..n {
        for c in 0..n {
            let raws = day_raws(mon, p, q, d, c);
            total = total.saturating_add(raws.len());
            if total > budget {
                return Err(Error::SizeExceeded(format!(
                    "convolution needs {total} elements, budget {budget}"
                )));
            }
            let index: HashMap<DayRaw, usize> =
                raws.iter().enumerate().map(|(i, &r)| (r, i)).collect();
            let mut uf = UnionFind::new(raws.len());
            for u in cat.arrows_iter() {
                let (x, x1) = (cat.arrow(u).src, cat.arrow(u).dst);
                for o2 in 0..n {
                    for b in 0..n {
                        for b2 in 0..n {
                            // bound object in P's source slot
                            for &f in cat.hom(d, mon.tensor_obj(x, o2)) {
                                let f1 = cat.compose(mon.whisker_r(u, o2), f);
                                for pe in 0..p.size(x1, b) {
                                    let pulled = p.lact(u, b, pe);
                                    for qe in 0..q.size(o2, b2) {
                                        for &g in cat.hom(mon.tensor_obj(b, b2), c) {
                                            uf.union(
                                                index[&(x1, o2, b, b2, f1, pe, qe, g)],
                                                index[&(x, o2, b, b2, f, pulled, qe, g)],
                                            );
                                        }
                                    }
                                }
                            }
                            // bound object in Q's source slot
                            for &f in cat.hom(d, mon.tensor_obj(o2, x)) {
                                let f1 = cat.compose(mon.whisker_l(o2, u), f);
                                for qe in 0..q.size(x1, b2) {
                                    let pulled = q.lact(u, b2, qe);
                                    for pe in 0..p.size(o2, b) {
                                        for &g in cat.hom(mon.tensor_obj(b, b2), c) {
                                            uf.union(
                                                index[&(o2, x1, b, b2, f1, pe, qe, g)],
                                                index[&(o2, x, b, b2, f, pe, pulled, g)],
                                            );
                                        }
                                    }
                                }
                            }
                            // bound object in P's target slot
                            for &g in cat.hom(mon.tensor_obj(x1, b2), c) {
                                let g1 = cat.compose(g, mon.whisker_r(u, b2));
                                for pe in 0..p.size(o2, x) {
                                    let pushed = p.ract(u, o2, pe);
                                    for qe in 0..q.size(b, b2) {
                                        for &f in cat.hom(d, mon.tensor_obj(o2, b)) {
                                            uf.union(
                                                index[&(o2, b, x1, b2, f, pushed, qe, g)],
                                                index[&(o2, b, x, b2, f, pe, qe, g1)],
                                            );
                                        }
                                    }
                                }
                            }
                            // bound object in Q's target slot
                            for &g in cat.hom(mon.tensor_obj(b, x1), c) {
                                let g1 = cat.compose(g, mon.whisker_l(b, u));
                                for qe in 0..q.size(o2, x) {
                                    let pushed = q.ract(u, o2, qe);
                                    for pe in 0..p.size(b2, b) {
                                        for &f in cat.hom(d, mon.tensor_obj(b2, o2)) {
                                            uf.union(
                                                index[&(b2, o2, b, x1, f, pe, pushed, g)],
                                                index[&(b2, o2, b, x, f, pe, qe, g1)],
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let (count, assign) = uf.classes();
            let mut cls: Vec<Vec<DayRaw>> = vec![Vec::new(); count];
            let mut co: HashMap<DayRaw, usize> = HashMap::new();
            for (i, &r) in raws.iter().enumerate() {
                cls[assign[i]].push(r);
                co.insert(r, assign[i]);
            }
            members.insert((d, c), cls);
            coproj.insert((d, c), co);
        }
    }

    let name = format!("({})*({})", p.name, q.name);
    let prof = {
        let (catc, memb, co) = (cat.clone(), members.clone(), coproj.clone());
        FinProfunctor::build(
            name,
            cat.clone(),
            cat.clone(),
            |d, c| {
                memb[&(d, c)]
                    .iter()
                    .enumerate()
                    .map(|(k, ms)| {
                        let (_, _, _, _, f, pi, qi, g) = ms[0];
                        format!(
                            "d{k}[{}|{pi}|{qi}|{}]",
                            catc.arrow(f).name,
                            catc.arrow(g).name
                        )
                    })
                    .collect()
            },
            |w, c, x| {
                let wd = catc.arrow(w);
                let (a, a2, b, b2, f, pi, qi, g) = memb[&(wd.dst, c)][x][0];
                co[&(wd.src, c)][&(a, a2, b, b2, catc.compose(f, w), pi, qi, g)]
            },
            |w, d, x| {
                let wd = catc.arrow(w);
                let (a, a2, b, b2, f, pi, qi, g) = memb[&(d, wd.src)][x][0];
                co[&(d, wd.dst)][&(a, a2, b, b2, f, pi, qi, catc.compose(w, g))]
            },
        )?
    };
    Ok(DayProf { prof, members, coproj })
}

/// The convolution unit: U(d, c) = hom(d, i) x hom(i, c). Elements are
/// numbered pairs, second component fastest.
pub fn day_unit(mon: &MonStructure) -> Result<FinProfunctor> {
    let cat = mon.cat.clone();
    let i = mon.unit();
    let (c1, c2, c3) = (cat.clone(), cat.clone(), cat.clone());
    FinProfunctor::build(
        format!("unit({})", cat.name()),
        cat.clone(),
        cat.clone(),
        move |d, c| {
            let mut out = Vec::new();
            for &u in c1.hom(d, i) {
                for &v in c1.hom(i, c) {
                    out.push(format!("({}, {})", c1.arrow(u).name, c1.arrow(v).name));
                }
            }
            out
        },
        move |w, c, x| {
            let wd = c2.arrow(w);
            let vn = c2.hom(i, c).len();
            let (ui, vi) = (x / vn, x % vn);
            let u2 = c2.compose(c2.hom(wd.dst, i)[ui], w);
            let upos = c2.hom(wd.src, i).iter().position(|&h| h == u2).unwrap();
            upos * vn + vi
        },
        move |w, d, x| {
            let _ = d;
            let wd = c3.arrow(w);
            let vn = c3.hom(i, wd.src).len();
            let (ui, vi) = (x / vn, x % vn);
            let v2 = c3.compose(w, c3.hom(i, wd.src)[vi]);
            let vpos = c3.hom(i, wd.dst).iter().position(|&h| h == v2).unwrap();
            ui * c3.hom(i, wd.dst).len() + vpos
        },
    )
}

fn unit_split(mon: &MonStructure, a: Obj, b: Obj, x: usize) -> (Arr, Arr) {
    let cat = &mon.cat;
    let i = mon.unit();
    let vn = cat.hom(i, b).len();
    (cat.hom(a, i)[x / vn], cat.hom(i, b)[x % vn])
}

/// Verify U * P = P and P * U = P through the canonical collapse maps:
/// constant on classes, bijective, and compatible with both actions.
pub fn day_unit_check(mon: &MonStructure, p: &FinProfunctor, budget: usize) -> Result<()> {
    let cat = &mon.cat;
    let u = day_unit(mon)?;
    let left = day_convolve(mon, &u, p, budget)?;
    let right = day_convolve(mon, p, &u, budget)?;
    let n = cat.object_count();
    for side in [true, false] {
        let conv = if side { &left } else { &right };
        let label = if side { "left unit" } else { "right unit" };
        let mut value: HashMap<(Obj, Obj), Vec<usize>> = HashMap::new();
        for d in 0..n {
            for c in 0..n {
                let classes = &conv.members[&(d, c)];
                let mut tab = vec![usize::MAX; classes.len()];
                for (k, ms) in classes.iter().enumerate() {
                    for &(a, a2, b, b2, f, pi, qi, g) in ms {
                        let val = if side {
                            let (un, vn) = unit_split(mon, a, b, pi);
                            let f1 = cat.compose(mon.whisker_r(un, a2), f);
                            let g1 = cat.compose(g, mon.whisker_r(vn, b2));
                            p.ract(g1, d, p.lact(f1, b2, qi))
                        } else {
                            let (un, vn) = unit_split(mon, a2, b2, qi);
                            let f1 = cat.compose(mon.whisker_l(a, un), f);
                            let g1 = cat.compose(g, mon.whisker_l(b, vn));
                            p.ract(g1, d, p.lact(f1, b, pi))
                        };
                        if tab[k] == usize::MAX {
                            tab[k] = val;
                        } else if tab[k] != val {
                            return Err(Error::law(
                                "convolution unit collapse well-definedness",
                                format!("{label} class {k} at ({d}, {c})"),
                            ));
                        }
                    }
                }
                if tab.len() != p.size(d, c) {
                    return Err(Error::law(
                        "convolution unit bijectivity",
                        format!("{label} at ({d}, {c}): {} vs {}", tab.len(), p.size(d, c)),
                    ));
                }
                let mut seen = vec![false; tab.len()];
                for &v in &tab {
                    if seen[v] {
                        return Err(Error::law(
                            "convolution unit injectivity",
                            format!("{label} at ({d}, {c})"),
                        ));
                    }
                    seen[v] = true;
                }
                value.insert((d, c), tab);
            }
        }
        // the collapse commutes with both actions
        for w in cat.arrows_iter() {
            let wd = cat.arrow(w);
            for o in 0..n {
                for cls in 0..conv.members[&(wd.dst, o)].len() {
                    let moved = conv.prof.lact(w, o, cls);
                    if value[&(wd.src, o)][moved] != p.lact(w, o, value[&(wd.dst, o)][cls]) {
                        return Err(Error::law(
                            "convolution unit naturality",
                            format!("{label} along {}", wd.name),
                        ));
                    }
                }
                for cls in 0..conv.members[&(o, wd.src)].len() {
                    let moved = conv.prof.ract(w, o, cls);
                    if value[&(o, wd.dst)][moved] != p.ract(w, o, value[&(o, wd.src)][cls]) {
                        return Err(Error::law(
                            "convolution unit naturality",
                            format!("{label} along {}", wd.name),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Verify ((P * Q) * R) = (P * (Q * R)) through the canonical
/// re-association, built on representatives and checked to be constant on
/// classes and bijective pointwise.
pub fn day_assoc_check(
    mon: &MonStructure,
    p: &FinProfunctor,
    q: &FinProfunctor,
    r: &FinProfunctor,
    budget: usize,
) -> Result<()> {
    let cat = &mon.cat;
    let pq = day_convolve(mon, p, q, budget)?;
    let pq_r = day_convolve(mon, &pq.prof, r, budget)?;
    let qr = day_convolve(mon, q, r, budget)?;
    let p_qr = day_convolve(mon, p, &qr.prof, budget)?;
    let n = cat.object_count();
    for d in 0..n {
        for c in 0..n {
            let classes = &pq_r.members[&(d, c)];
            let mut tab = vec![usize::MAX; classes.len()];
            for (k, ms) in classes.iter().enumerate() {
                for &(aa, a2, bb, b2, f, s, ri, g) in ms {
                    // every representative of the inner class must agree too
                    for &(ia, ia2, ib, ib2, f2, pi, qi, g2) in &pq.members[&(aa, bb)][s] {
                        let fo = cat.compose(mon.whisker_r(f2, a2), f);
                        let go = cat.compose(g, mon.whisker_r(g2, b2));
                        let mid_src = mon.tensor_obj(ia2, a2);
                        let mid_dst = mon.tensor_obj(ib2, b2);
                        let inner = qr.coproj(
                            mid_src,
                            mid_dst,
                            (ia2, a2, ib2, b2, cat.id(mid_src), qi, ri, cat.id(mid_dst)),
                        );
                        let val = p_qr.coproj(d, c, (ia, mid_src, ib, mid_dst, fo, pi, inner, go));
                        if tab[k] == usize::MAX {
                            tab[k] = val;
                        } else if tab[k] != val {
                            return Err(Error::law(
                                "convolution associativity well-definedness",
                                format!("class {k} at ({d}, {c})"),
                            ));
                        }
                    }
                }
            }
            if tab.len() != p_qr.members[&(d, c)].len() {
                return Err(Error::law(
                    "convolution associativity bijectivity",
                    format!(
                        "({d}, {c}): {} vs {}",
                        tab.len(),
                        p_qr.members[&(d, c)].len()
                    ),
                ));
            }
            let mut seen = vec![false; tab.len()];
            for &v in &tab {
                if seen[v] {
                    return Err(Error::law(
                        "convolution associativity injectivity",
                        format!("({d}, {c})"),
                    ));
                }
                seen[v] = true;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::cat::{monoid_cat, terminal, Monoid};
    use crate::fincat::mon::monoid_mon;
    use crate::fincat::prof::{constant_profunctor, hom_profunctor};
    use crate::fincat::writer::make_writer_effectful;

    const B: usize = 1_000_000;

    #[test]
    fn trivial_base_convolution_is_a_cardinality_product() {
        let t = terminal();
        let mon = monoid_mon(&t).unwrap();
        let p = constant_profunctor(&t, 2);
        let q = constant_profunctor(&t, 3);
        let d = day_convolve(&mon, &p, &q, B).unwrap();
        assert_eq!(d.prof.size(0, 0), 6);
    }

    #[test]
    fn hom_convolved_with_hom_matches_hom_on_the_pure_level() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let mon = &w.eff.mon0;
        let h = hom_profunctor(&mon.cat);
        let d = day_convolve(mon, &h, &h, B).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(d.prof.size(a, b), h.size(a, b), "at ({a}, {b})");
            }
        }
    }

    #[test]
    fn unit_laws_hold_on_the_pure_level_and_on_a_commutative_monoid() {
        let w = make_writer_effectful(Monoid::z2(), &[0, 1]).unwrap();
        let h0 = hom_profunctor(&w.eff.mon0.cat);
        day_unit_check(&w.eff.mon0, &h0, B).unwrap();
        let u0 = day_unit(&w.eff.mon0).unwrap();
        day_unit_check(&w.eff.mon0, &u0, B).unwrap();
        // the loose level of a commutative writer is monoidal too
        day_unit_check(&w.eff.mon1, &hom_profunctor(&w.eff.mon1.cat), B).unwrap();

        let z3 = monoid_mon(&monoid_cat(&Monoid::z3()).unwrap()).unwrap();
        day_unit_check(&z3, &hom_profunctor(&z3.cat), B).unwrap();
    }

    #[test]
    fn hom_is_not_the_convolution_unit() {
        // hom * U collapses to hom, which differs from U where the base has
        // an arrow not factoring through the unit object
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let mon = &w.eff.mon0;
        let h = hom_profunctor(&mon.cat);
        let u = day_unit(mon).unwrap();
        let hu = day_convolve(mon, &h, &u, B).unwrap();
        assert_eq!(hu.prof.size(0, 0), h.size(0, 0));
        assert_ne!(u.size(0, 0), h.size(0, 0));
    }

    #[test]
    fn associativity_holds_for_hom_triples() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let h = hom_profunctor(&w.eff.mon0.cat);
        day_assoc_check(&w.eff.mon0, &h, &h, &h, B).unwrap();

        let z3 = monoid_mon(&monoid_cat(&Monoid::z3()).unwrap()).unwrap();
        let hz = hom_profunctor(&z3.cat);
        day_assoc_check(&z3, &hz, &hz, &hz, B).unwrap();
    }

    #[test]
    fn mixed_associativity_with_the_unit_and_a_constant() {
        let w = make_writer_effectful(Monoid::z2(), &[0, 1]).unwrap();
        let mon = &w.eff.mon0;
        let h = hom_profunctor(&mon.cat);
        let u = day_unit(mon).unwrap();
        day_assoc_check(mon, &u, &h, &u, B).unwrap();
    }
}
