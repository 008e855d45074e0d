//! Composition of bimodules by pointwise coend, pairs of bimodules with a
//! comparison transformation, and their coends.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{same_cat, FinCat, IooFunctor, Obj};
use crate::fincat::prof::{coend, hom_profunctor, CoendResult, FinProfunctor, UnionFind};

/// Q after P with the middle variable quotiented per hom-pair. Keeps the
/// element lists and coprojections so callers can chase representatives.
#[derive(Debug, Clone)]
pub struct ComposedProf {
    pub prof: FinProfunctor,
    /// every raw element (x, q_idx, p_idx) at (d, c), in enumeration order
    pub members: HashMap<(Obj, Obj), Vec<(Obj, usize, usize)>>,
    coproj: HashMap<(Obj, Obj), HashMap<(Obj, usize, usize), usize>>,
}

impl ComposedProf {
    pub fn coproj(&self, d: Obj, c: Obj, x: Obj, q: usize, p: usize) -> usize {
        self.coproj[&(d, c)][&(x, q, p)]
    }
}

/// (Q.P)(d, c) = coend over x of Q(d, x) (x) P(x, c).
pub fn compose_profunctors(q: &FinProfunctor, p: &FinProfunctor) -> Result<ComposedProf> {
    if !same_cat(&p.dst, &q.src) {
        return Err(Error::mismatch("composition needs dst of the inner factor = src of the outer"));
    }
    let mid: Arc<FinCat> = q.src.clone();
    let dst = q.dst.clone();
    let src = p.src.clone();

    let mut members: HashMap<(Obj, Obj), Vec<(Obj, usize, usize)>> = HashMap::new();
    let mut coproj: HashMap<(Obj, Obj), HashMap<(Obj, usize, usize), usize>> = HashMap::new();
    let mut class_names: HashMap<(Obj, Obj), Vec<String>> = HashMap::new();

    for d in 0..dst.object_count() {
        for c in 0..src.object_count() {
            let mut elems: Vec<(Obj, usize, usize)> = Vec::new();
            let mut index: HashMap<(Obj, usize, usize), usize> = HashMap::new();
            for x in 0..mid.object_count() {
                for qi in 0..q.size(d, x) {
                    for pi in 0..p.size(x, c) {
                        index.insert((x, qi, pi), elems.len());
                        elems.push((x, qi, pi));
                    }
                }
            }
            // for u: x -> x' the pairs (q.u, p') and (q, u.p') are merged
            let mut uf = UnionFind::new(elems.len());
            for u in mid.arrows_iter() {
                let (x, x1) = (mid.arrow(u).src, mid.arrow(u).dst);
                for qi in 0..q.size(d, x) {
                    for pi in 0..p.size(x1, c) {
                        let a = index[&(x1, q.ract(u, d, qi), pi)];
                        let b = index[&(x, qi, p.lact(u, c, pi))];
                        uf.union(a, b);
                    }
                }
            }
            let (n_classes, assign) = uf.classes();
            let mut reps: Vec<Option<(Obj, usize, usize)>> = vec![None; n_classes];
            let mut proj: HashMap<(Obj, usize, usize), usize> = HashMap::new();
            for (i, &e) in elems.iter().enumerate() {
                let id = assign[i];
                if reps[id].is_none() {
                    reps[id] = Some(e);
                }
                proj.insert(e, id);
            }
            let names: Vec<String> = reps
                .iter()
                .map(|r| {
                    let (x, qi, pi) = r.expect("every class has a representative");
                    format!("[{}|{}]@{}", q.elem_name(d, x, qi), p.elem_name(x, c, pi), mid.object_name(x))
                })
                .collect();
            members.insert((d, c), elems);
            class_names.insert((d, c), names);
            coproj.insert((d, c), proj);
        }
    }

    // actions descend to classes through any representative
    let coproj_ref = &coproj;
    let rep_of = |d: Obj, c: Obj, cls: usize| -> (Obj, usize, usize) {
        let mut pick: Option<(Obj, usize, usize)> = None;
        for (&e, &id) in &coproj_ref[&(d, c)] {
            if id == cls && pick.map_or(true, |prev| e < prev) {
                pick = Some(e);
            }
        }
        pick.expect("classes are never empty")
    };
    let prof = FinProfunctor::build(
        format!("{}.{}", q.name, p.name),
        src.clone(),
        dst.clone(),
        |d, c| class_names[&(d, c)].clone(),
        |f, c, cls| {
            let d = dst.arrow(f).dst;
            let d2 = dst.arrow(f).src;
            let (x, qi, pi) = rep_of(d, c, cls);
            coproj_ref[&(d2, c)][&(x, q.lact(f, x, qi), pi)]
        },
        |g, d, cls| {
            let c = src.arrow(g).src;
            let c2 = src.arrow(g).dst;
            let (x, qi, pi) = rep_of(d, c, cls);
            coproj_ref[&(d, c2)][&(x, qi, p.ract(g, x, pi))]
        },
    )?;
    Ok(ComposedProf { prof, members, coproj })
}

/// Composing hom on the outside collapses by evaluation: the map sending
/// class(x, f: d -> x, p) to f acting on p must be a bijection onto P(d, c).
pub fn coyoneda_check(p: &FinProfunctor) -> Result<()> {
    let homp = hom_profunctor(&p.dst);
    let comp = compose_profunctors(&homp, p)?;
    let cat = &p.dst;
    for d in 0..cat.object_count() {
        for c in 0..p.src.object_count() {
            let n = comp.prof.size(d, c);
            if n != p.size(d, c) {
                return Err(Error::law(
                    "co-Yoneda cardinality",
                    format!("{} at ({}, {})", p.name, cat.object_name(d), p.src.object_name(c)),
                ));
            }
            let mut seen = vec![false; n];
            let mut image: HashMap<usize, usize> = HashMap::new();
            for x in 0..cat.object_count() {
                for (fi, &f) in cat.hom(d, x).iter().enumerate() {
                    for pi in 0..p.size(x, c) {
                        let cls = comp.coproj(d, c, x, fi, pi);
                        let value = p.lact(f, c, pi);
                        match image.get(&cls) {
                            Some(&v) if v != value => {
                                return Err(Error::law(
                                    "co-Yoneda well-definedness",
                                    format!("{} class {cls}", p.name),
                                ));
                            }
                            None => {
                                if seen[value] {
                                    return Err(Error::law(
                                        "co-Yoneda injectivity",
                                        format!("{} value {value}", p.name),
                                    ));
                                }
                                image.insert(cls, value);
                                seen[value] = true;
                            }
                            _ => {}
                        }
                    }
                }
            }
            if !seen.iter().all(|&s| s) {
                return Err(Error::law("co-Yoneda surjectivity", p.name.clone()));
            }
        }
    }
    Ok(())
}

// ── paired bimodules with a comparison map ──────────────────────────────

/// (P0, P1, eta) over a pair of identity-on-objects functors: P0 between
/// the tight levels, P1 between the loose ones, eta comparing them
/// naturally.
#[derive(Debug, Clone)]
pub struct V2Profunctor {
    pub p0: FinProfunctor,
    pub p1: FinProfunctor,
    pub j_src: IooFunctor,
    pub j_dst: IooFunctor,
    /// eta[d][c][x in P0(d,c)] -> index in P1(d,c), same object ids
    eta: Vec<Vec<Vec<usize>>>,
}

impl V2Profunctor {
    pub fn new(
        p0: FinProfunctor,
        p1: FinProfunctor,
        j_src: IooFunctor,
        j_dst: IooFunctor,
        eta: Vec<Vec<Vec<usize>>>,
    ) -> Result<V2Profunctor> {
        if !same_cat(&p0.src, &j_src.src)
            || !same_cat(&p1.src, &j_src.dst)
            || !same_cat(&p0.dst, &j_dst.src)
            || !same_cat(&p1.dst, &j_dst.dst)
        {
            return Err(Error::mismatch("comparison data must live over the given functors"));
        }
        let v = V2Profunctor { p0, p1, j_src, j_dst, eta };
        v.check_eta()?;
        Ok(v)
    }

    fn check_eta(&self) -> Result<()> {
        for d in 0..self.p0.dst.object_count() {
            for c in 0..self.p0.src.object_count() {
                if self.eta[d][c].len() != self.p0.size(d, c)
                    || self.eta[d][c].iter().any(|&y| y >= self.p1.size(d, c))
                {
                    return Err(Error::mismatch("comparison map has the wrong shape"));
                }
            }
        }
        // lact naturality: eta(f . x) = Jf . eta(x), likewise on the right
        for f in self.p0.dst.arrows_iter() {
            let (d2, d) = (self.p0.dst.arrow(f).src, self.p0.dst.arrow(f).dst);
            for c in 0..self.p0.src.object_count() {
                for x in 0..self.p0.size(d, c) {
                    let lhs = self.eta[d2][c][self.p0.lact(f, c, x)];
                    let rhs = self.p1.lact(self.j_dst.apply(f), c, self.eta[d][c][x]);
                    if lhs != rhs {
                        return Err(Error::law(
                            "comparison naturality",
                            format!("lact {}", self.p0.dst.arrow(f).name),
                        ));
                    }
                }
            }
        }
        for g in self.p0.src.arrows_iter() {
            let (c, c2) = (self.p0.src.arrow(g).src, self.p0.src.arrow(g).dst);
            for d in 0..self.p0.dst.object_count() {
                for x in 0..self.p0.size(d, c) {
                    let lhs = self.eta[d][c2][self.p0.ract(g, d, x)];
                    let rhs = self.p1.ract(self.j_src.apply(g), d, self.eta[d][c][x]);
                    if lhs != rhs {
                        return Err(Error::law(
                            "comparison naturality",
                            format!("ract {}", self.p0.src.arrow(g).name),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn eta(&self, d: Obj, c: Obj, x: usize) -> usize {
        self.eta[d][c][x]
    }

    /// tight = the comparison is a bijection in every component
    pub fn is_tight(&self) -> bool {
        for d in 0..self.p0.dst.object_count() {
            for c in 0..self.p0.src.object_count() {
                if self.p0.size(d, c) != self.p1.size(d, c) {
                    return false;
                }
                let mut seen = vec![false; self.p1.size(d, c)];
                for &y in &self.eta[d][c] {
                    if seen[y] {
                        return false;
                    }
                    seen[y] = true;
                }
            }
        }
        true
    }

    /// both hom bimodules with eta = the functor's arrow map
    pub fn hom(j: &IooFunctor) -> V2Profunctor {
        let p0 = hom_profunctor(&j.src);
        let p1 = hom_profunctor(&j.dst);
        let mut eta = Vec::new();
        for d in 0..j.src.object_count() {
            let mut per_c = Vec::new();
            for c in 0..j.src.object_count() {
                let tab: Vec<usize> = j
                    .src
                    .hom(d, c)
                    .iter()
                    .map(|&f| {
                        let jf = j.apply(f);
                        j.dst.hom(d, c).iter().position(|&g| g == jf).unwrap()
                    })
                    .collect();
                per_c.push(tab);
            }
            eta.push(per_c);
        }
        V2Profunctor::new(p0, p1, j.clone(), j.clone(), eta)
            .expect("the hom comparison is natural by functoriality")
    }
}

/// Compose both levels and descend the pairwise comparison to the quotient
/// classes, verifying it is well defined.
pub fn v2_compose(q: &V2Profunctor, p: &V2Profunctor) -> Result<(V2Profunctor, ComposedProf, ComposedProf)> {
    let c0 = compose_profunctors(&q.p0, &p.p0)?;
    let c1 = compose_profunctors(&q.p1, &p.p1)?;
    let mut eta: Vec<Vec<Vec<usize>>> = Vec::new();
    for d in 0..c0.prof.dst.object_count() {
        let mut per_c = Vec::new();
        for c in 0..c0.prof.src.object_count() {
            let mut tab = vec![usize::MAX; c0.prof.size(d, c)];
            for &(x, qi, pi) in &c0.members[&(d, c)] {
                let cls0 = c0.coproj(d, c, x, qi, pi);
                let img = c1.coproj(d, c, x, q.eta(d, x, qi), p.eta(x, c, pi));
                if tab[cls0] == usize::MAX {
                    tab[cls0] = img;
                } else if tab[cls0] != img {
                    return Err(Error::law(
                        "composite comparison well-definedness",
                        format!("class {cls0} at ({d}, {c})"),
                    ));
                }
            }
            per_c.push(tab);
        }
        eta.push(per_c);
    }
    let v = V2Profunctor::new(c0.prof.clone(), c1.prof.clone(), p.j_src.clone(), q.j_dst.clone(), eta)?;
    Ok((v, c0, c1))
}

/// Coends of both levels plus the induced map between the class sets; the
/// square coproj-then-map = eta-then-coproj is verified elementwise.
#[derive(Debug, Clone)]
pub struct V2Coend {
    pub c0: CoendResult,
    pub c1: CoendResult,
    pub map: Vec<usize>,
}

pub fn v2_coend(v: &V2Profunctor) -> Result<V2Coend> {
    let c0 = coend(&v.p0)?;
    let c1 = coend(&v.p1)?;
    let mut map = vec![usize::MAX; c0.class_count()];
    for (id, members) in c0.classes.iter().enumerate() {
        for &(c, x) in members {
            let img = c1.coproj(c, v.eta(c, c, x));
            if map[id] == usize::MAX {
                map[id] = img;
            } else if map[id] != img {
                return Err(Error::law(
                    "induced coend map well-definedness",
                    format!("class {id} splits across the loose quotient"),
                ));
            }
        }
    }
    for c in 0..v.p0.src.object_count() {
        for x in 0..v.p0.size(c, c) {
            if c1.coproj(c, v.eta(c, c, x)) != map[c0.coproj(c, x)] {
                return Err(Error::law("coend square", format!("element {x} at {c}")));
            }
        }
    }
    Ok(V2Coend { c0, c1, map })
}
