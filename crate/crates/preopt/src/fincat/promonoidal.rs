//! Promonoidal structure on a finite category: a two-argument tensor
//! bimodule and a unit presheaf together with unit and associativity
//! isomorphisms, supplied elementwise and validated, including the
//! triangle and pentagon instances expressible at element level. On top of
//! it, the strength laws tying such a structure to a promonad.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{product, Arr, FinCat, Obj, ProductCat};
use crate::fincat::mon::MonStructure;
use crate::fincat::presheaf::Presheaf;
use crate::fincat::prof::{pair_coend, FinProfunctor, PairCoend, UnionFind};
use crate::fincat::promonad::Promonad;
use crate::fincat::writer::Effectful;

const ISO_BUDGET: usize = 1_000_000;

struct UnitIso {
    co: PairCoend,
    /// class -> arrow of hom(d, b)
    to_hom: Vec<Arr>,
}

struct AssocIso {
    left: PairCoend,
    right: PairCoend,
    /// left class -> right class
    map: Vec<usize>,
}

/// P(d, (a, b)) with a unit presheaf I; unit isos onto the hom sets and an
/// associativity iso between the two-step tensors, all checked for
/// well-definedness, bijectivity and naturality at construction.
pub struct Promonoidal {
    pub base: Arc<FinCat>,
    pub prod: ProductCat,
    pub p: FinProfunctor,
    pub i: Presheaf,
    lunit: HashMap<(Obj, Obj), UnitIso>,
    runit: HashMap<(Obj, Obj), UnitIso>,
    assoc: HashMap<(Obj, Obj, Obj, Obj), AssocIso>,
}

impl Promonoidal {
    /// The suppliers give the isomorphisms on raw coend elements:
    /// lunit(d, b, x, p, i) and runit(d, b, x, p, i) produce an arrow of
    /// hom(d, b); assoc(d, a, b, c, (x, p, q)) produces a raw element of
    /// the right-nested coend.
    pub fn new(
        base: Arc<FinCat>,
        prod: ProductCat,
        p: FinProfunctor,
        i: Presheaf,
        mut lunit_fn: impl FnMut(Obj, Obj, Obj, usize, usize) -> Arr,
        mut runit_fn: impl FnMut(Obj, Obj, Obj, usize, usize) -> Arr,
        mut assoc_fn: impl FnMut(Obj, Obj, Obj, Obj, (Obj, usize, usize)) -> (Obj, usize, usize),
    ) -> Result<Promonoidal> {
        let n = base.object_count();
        if p.src.object_count() != n * n || i.cat.object_count() != n {
            return Err(Error::mismatch("tensor bimodule must live on base x base -> base"));
        }

        // unit isos
        let mut lunit = HashMap::new();
        let mut runit = HashMap::new();
        for d in 0..n {
            for b in 0..n {
                for side in [true, false] {
                    let co = pair_coend(
                        &base,
                        ISO_BUDGET,
                        |x| p.size(d, if side { prod.obj(x, b) } else { prod.obj(b, x) }),
                        |x| i.size(x),
                        |u, e| {
                            let id_b = base.id(b);
                            let pa = if side { prod.arr(u, id_b) } else { prod.arr(id_b, u) };
                            p.ract(pa, d, e)
                        },
                        |u, e| i.act(u, e),
                    )?;
                    let mut to_hom: Vec<Option<Arr>> = vec![None; co.class_count()];
                    for (id, members) in co.classes.iter().enumerate() {
                        for &(x, pe, ie) in members {
                            let v = if side {
                                lunit_fn(d, b, x, pe, ie)
                            } else {
                                runit_fn(d, b, x, pe, ie)
                            };
                            let vd = base.arrow(v);
                            if vd.src != d || vd.dst != b {
                                return Err(Error::mismatch("unit iso must land in hom(d, b)"));
                            }
                            match to_hom[id] {
                                None => to_hom[id] = Some(v),
                                Some(w) if w != v => {
                                    return Err(Error::law(
                                        "unit iso well-definedness",
                                        format!(
                                            "class {id} at ({}, {})",
                                            base.object_name(d),
                                            base.object_name(b)
                                        ),
                                    ));
                                }
                                _ => {}
                            }
                        }
                    }
                    let to_hom: Vec<Arr> =
                        to_hom.into_iter().map(|v| v.expect("classes are nonempty")).collect();
                    let homdb = base.hom(d, b);
                    if to_hom.len() != homdb.len() {
                        return Err(Error::law(
                            "unit iso bijectivity",
                            format!("({}, {})", base.object_name(d), base.object_name(b)),
                        ));
                    }
                    let mut hit = vec![false; homdb.len()];
                    for &v in &to_hom {
                        let k = homdb.iter().position(|&h| h == v).unwrap();
                        if hit[k] {
                            return Err(Error::law(
                                "unit iso injectivity",
                                format!("({}, {})", base.object_name(d), base.object_name(b)),
                            ));
                        }
                        hit[k] = true;
                    }
                    let iso = UnitIso { co, to_hom };
                    if side {
                        lunit.insert((d, b), iso);
                    } else {
                        runit.insert((d, b), iso);
                    }
                }
            }
        }

        // associativity isos
        let mut assoc = HashMap::new();
        for d in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let left = pair_coend(
                            &base,
                            ISO_BUDGET,
                            |x| p.size(d, prod.obj(x, c)),
                            |x| p.size(x, prod.obj(a, b)),
                            |u, e| p.ract(prod.arr(u, base.id(c)), d, e),
                            |u, e| p.lact(u, prod.obj(a, b), e),
                        )?;
                        let right = pair_coend(
                            &base,
                            ISO_BUDGET,
                            |y| p.size(d, prod.obj(a, y)),
                            |y| p.size(y, prod.obj(b, c)),
                            |u, e| p.ract(prod.arr(base.id(a), u), d, e),
                            |u, e| p.lact(u, prod.obj(b, c), e),
                        )?;
                        let mut map: Vec<Option<usize>> = vec![None; left.class_count()];
                        for (id, members) in left.classes.iter().enumerate() {
                            for &raw in members {
                                let (y, pj, qj) = assoc_fn(d, a, b, c, raw);
                                if pj >= p.size(d, prod.obj(a, y)) || qj >= p.size(y, prod.obj(b, c)) {
                                    return Err(Error::mismatch("assoc iso lands out of range"));
                                }
                                let img = right.coproj(y, pj, qj);
                                match map[id] {
                                    None => map[id] = Some(img),
                                    Some(prev) if prev != img => {
                                        return Err(Error::law(
                                            "assoc iso well-definedness",
                                            format!("class {id} at d={d}, ({a}, {b}, {c})"),
                                        ));
                                    }
                                    _ => {}
                                }
                            }
                        }
                        let map: Vec<usize> =
                            map.into_iter().map(|v| v.expect("classes are nonempty")).collect();
                        if map.len() != right.class_count() {
                            return Err(Error::law(
                                "assoc iso bijectivity",
                                format!("d={d}, ({a}, {b}, {c})"),
                            ));
                        }
                        let mut hit = vec![false; right.class_count()];
                        for &m in &map {
                            if hit[m] {
                                return Err(Error::law(
                                    "assoc iso injectivity",
                                    format!("d={d}, ({a}, {b}, {c})"),
                                ));
                            }
                            hit[m] = true;
                        }
                        assoc.insert((d, a, b, c), AssocIso { left, right, map });
                    }
                }
            }
        }

        let pm = Promonoidal { base, prod, p, i, lunit, runit, assoc };
        pm.check_unit_naturality()?;
        pm.check_assoc_naturality()?;
        pm.check_triangle()?;
        pm.check_pentagon()?;
        Ok(pm)
    }

    pub fn pair_obj(&self, a: Obj, b: Obj) -> Obj {
        self.prod.obj(a, b)
    }

    /// unit iso value on a raw element of the left-unit coend at (d, b)
    pub fn lunit_arrow(&self, d: Obj, b: Obj, x: Obj, pe: usize, ie: usize) -> Arr {
        let iso = &self.lunit[&(d, b)];
        iso.to_hom[iso.co.coproj(x, pe, ie)]
    }

    pub fn runit_arrow(&self, d: Obj, b: Obj, x: Obj, pe: usize, ie: usize) -> Arr {
        let iso = &self.runit[&(d, b)];
        iso.to_hom[iso.co.coproj(x, pe, ie)]
    }

    /// representative of the assoc image of a raw left-nested element
    pub fn assoc_image(&self, d: Obj, a: Obj, b: Obj, c: Obj, raw: (Obj, usize, usize)) -> (Obj, usize, usize) {
        let iso = &self.assoc[&(d, a, b, c)];
        iso.right.rep(iso.map[iso.left.coproj(raw.0, raw.1, raw.2)])
    }

    fn check_unit_naturality(&self) -> Result<()> {
        let base = &self.base;
        // in d: precomposing commutes with the collapse
        for w in base.arrows_iter() {
            let (d2, d) = (base.arrow(w).src, base.arrow(w).dst);
            for b in 0..base.object_count() {
                for x in 0..base.object_count() {
                    for pe in 0..self.p.size(d, self.prod.obj(x, b)) {
                        for ie in 0..self.i.size(x) {
                            let lhs = self.lunit_arrow(d2, b, x, self.p.lact(w, self.prod.obj(x, b), pe), ie);
                            let rhs = base.compose(self.lunit_arrow(d, b, x, pe, ie), w);
                            if lhs != rhs {
                                return Err(Error::law(
                                    "left unit naturality in the output",
                                    base.arrow(w).name.clone(),
                                ));
                            }
                        }
                    }
                    for pe in 0..self.p.size(d, self.prod.obj(b, x)) {
                        for ie in 0..self.i.size(x) {
                            let lhs = self.runit_arrow(d2, b, x, self.p.lact(w, self.prod.obj(b, x), pe), ie);
                            let rhs = base.compose(self.runit_arrow(d, b, x, pe, ie), w);
                            if lhs != rhs {
                                return Err(Error::law(
                                    "right unit naturality in the output",
                                    base.arrow(w).name.clone(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        // in b: pushing the free slot commutes with postcomposing
        for v in base.arrows_iter() {
            let (b, b2) = (base.arrow(v).src, base.arrow(v).dst);
            for d in 0..base.object_count() {
                for x in 0..base.object_count() {
                    for pe in 0..self.p.size(d, self.prod.obj(x, b)) {
                        for ie in 0..self.i.size(x) {
                            let pushed = self.p.ract(self.prod.arr(base.id(x), v), d, pe);
                            let lhs = self.lunit_arrow(d, b2, x, pushed, ie);
                            let rhs = base.compose(v, self.lunit_arrow(d, b, x, pe, ie));
                            if lhs != rhs {
                                return Err(Error::law(
                                    "left unit naturality in the free slot",
                                    base.arrow(v).name.clone(),
                                ));
                            }
                        }
                    }
                    for pe in 0..self.p.size(d, self.prod.obj(b, x)) {
                        for ie in 0..self.i.size(x) {
                            let pushed = self.p.ract(self.prod.arr(v, base.id(x)), d, pe);
                            let lhs = self.runit_arrow(d, b2, x, pushed, ie);
                            let rhs = base.compose(v, self.runit_arrow(d, b, x, pe, ie));
                            if lhs != rhs {
                                return Err(Error::law(
                                    "right unit naturality in the free slot",
                                    base.arrow(v).name.clone(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn right_class(&self, key: (Obj, Obj, Obj, Obj), raw: (Obj, usize, usize)) -> usize {
        self.assoc[&key].right.coproj(raw.0, raw.1, raw.2)
    }

    fn check_assoc_naturality(&self) -> Result<()> {
        let base = &self.base;
        let n = base.object_count();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // in the output slot
                    for w in base.arrows_iter() {
                        let (d2, d) = (base.arrow(w).src, base.arrow(w).dst);
                        for x in 0..n {
                            for pe in 0..self.p.size(d, self.prod.obj(x, c)) {
                                for qe in 0..self.p.size(x, self.prod.obj(a, b)) {
                                    let moved = (x, self.p.lact(w, self.prod.obj(x, c), pe), qe);
                                    let lhs = self.assoc_image(d2, a, b, c, moved);
                                    let (y, pj, qj) = self.assoc_image(d, a, b, c, (x, pe, qe));
                                    let rhs = (y, self.p.lact(w, self.prod.obj(a, y), pj), qj);
                                    if self.right_class((d2, a, b, c), lhs)
                                        != self.right_class((d2, a, b, c), rhs)
                                    {
                                        return Err(Error::law(
                                            "assoc naturality in the output",
                                            base.arrow(w).name.clone(),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                    // in the three tensor slots
                    for v in base.arrows_iter() {
                        let (s, t) = (base.arrow(v).src, base.arrow(v).dst);
                        for d in 0..n {
                            // slot a: s -> t moves a
                            if a == s {
                                for x in 0..n {
                                    for pe in 0..self.p.size(d, self.prod.obj(x, c)) {
                                        for qe in 0..self.p.size(x, self.prod.obj(a, b)) {
                                            let moved =
                                                (x, pe, self.p.ract(self.prod.arr(v, base.id(b)), x, qe));
                                            let lhs = self.assoc_image(d, t, b, c, moved);
                                            let (y, pj, qj) = self.assoc_image(d, a, b, c, (x, pe, qe));
                                            let rhs = (
                                                y,
                                                self.p.ract(self.prod.arr(v, base.id(y)), d, pj),
                                                qj,
                                            );
                                            if self.right_class((d, t, b, c), lhs)
                                                != self.right_class((d, t, b, c), rhs)
                                            {
                                                return Err(Error::law(
                                                    "assoc naturality in the first slot",
                                                    base.arrow(v).name.clone(),
                                                ));
                                            }
                                        }
                                    }
                                }
                            }
                            // slot b
                            if b == s {
                                for x in 0..n {
                                    for pe in 0..self.p.size(d, self.prod.obj(x, c)) {
                                        for qe in 0..self.p.size(x, self.prod.obj(a, b)) {
                                            let moved =
                                                (x, pe, self.p.ract(self.prod.arr(base.id(a), v), x, qe));
                                            let lhs = self.assoc_image(d, a, t, c, moved);
                                            let (y, pj, qj) = self.assoc_image(d, a, b, c, (x, pe, qe));
                                            let rhs = (
                                                y,
                                                pj,
                                                self.p.ract(self.prod.arr(v, base.id(c)), y, qj),
                                            );
                                            if self.right_class((d, a, t, c), lhs)
                                                != self.right_class((d, a, t, c), rhs)
                                            {
                                                return Err(Error::law(
                                                    "assoc naturality in the second slot",
                                                    base.arrow(v).name.clone(),
                                                ));
                                            }
                                        }
                                    }
                                }
                            }
                            // slot c
                            if c == s {
                                for x in 0..n {
                                    for pe in 0..self.p.size(d, self.prod.obj(x, c)) {
                                        for qe in 0..self.p.size(x, self.prod.obj(a, b)) {
                                            let moved =
                                                (x, self.p.ract(self.prod.arr(base.id(x), v), d, pe), qe);
                                            let lhs = self.assoc_image(d, a, b, t, moved);
                                            let (y, pj, qj) = self.assoc_image(d, a, b, c, (x, pe, qe));
                                            let rhs = (
                                                y,
                                                pj,
                                                self.p.ract(self.prod.arr(base.id(b), v), y, qj),
                                            );
                                            if self.right_class((d, a, b, t), lhs)
                                                != self.right_class((d, a, b, t), rhs)
                                            {
                                                return Err(Error::law(
                                                    "assoc naturality in the third slot",
                                                    base.arrow(v).name.clone(),
                                                ));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_triangle(&self) -> Result<()> {
        let base = &self.base;
        let n = base.object_count();
        for d in 0..n {
            for a in 0..n {
                for c in 0..n {
                    for x in 0..n {
                        for y in 0..n {
                            for pe in 0..self.p.size(d, self.prod.obj(x, c)) {
                                for qe in 0..self.p.size(x, self.prod.obj(a, y)) {
                                    for ie in 0..self.i.size(y) {
                                        // collapse the unit next to a, then absorb
                                        let w = self.runit_arrow(x, a, y, qe, ie);
                                        let r1 =
                                            self.p.ract(self.prod.arr(w, base.id(c)), d, pe);
                                        // associate, collapse on the other side, absorb
                                        let (z, pj, qj) =
                                            self.assoc_image(d, a, y, c, (x, pe, qe));
                                        let w2 = self.lunit_arrow(z, c, y, qj, ie);
                                        let r2 =
                                            self.p.ract(self.prod.arr(base.id(a), w2), d, pj);
                                        if r1 != r2 {
                                            return Err(Error::law(
                                                "triangle",
                                                format!(
                                                    "d={d}, a={a}, c={c} element ({x}, {y}, {pe}, {qe}, {ie})"
                                                ),
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// classes of the right-nested three-factor coend at (d, a, b, c, e)
    fn chain3(&self, d: Obj, a: Obj, b: Obj, c: Obj, e: Obj) -> HashMap<(Obj, Obj, usize, usize, usize), usize> {
        let base = &self.base;
        let n = base.object_count();
        let mut elems: Vec<(Obj, Obj, usize, usize, usize)> = Vec::new();
        let mut index: HashMap<(Obj, Obj, usize, usize, usize), usize> = HashMap::new();
        for u in 0..n {
            for v in 0..n {
                for i1 in 0..self.p.size(d, self.prod.obj(a, u)) {
                    for i2 in 0..self.p.size(u, self.prod.obj(b, v)) {
                        for i3 in 0..self.p.size(v, self.prod.obj(c, e)) {
                            index.insert((u, v, i1, i2, i3), elems.len());
                            elems.push((u, v, i1, i2, i3));
                        }
                    }
                }
            }
        }
        let mut uf = UnionFind::new(elems.len());
        for h in base.arrows_iter() {
            let (u, u1) = (base.arrow(h).src, base.arrow(h).dst);
            for v in 0..n {
                for i1 in 0..self.p.size(d, self.prod.obj(a, u)) {
                    let pushed = self.p.ract(self.prod.arr(base.id(a), h), d, i1);
                    for i2 in 0..self.p.size(u1, self.prod.obj(b, v)) {
                        let pulled = self.p.lact(h, self.prod.obj(b, v), i2);
                        for i3 in 0..self.p.size(v, self.prod.obj(c, e)) {
                            uf.union(index[&(u1, v, pushed, i2, i3)], index[&(u, v, i1, pulled, i3)]);
                        }
                    }
                }
            }
            // same arrow acting as the second bound variable
            let (v, v1) = (u, u1);
            for u in 0..n {
                for i2 in 0..self.p.size(u, self.prod.obj(b, v)) {
                    let pushed = self.p.ract(self.prod.arr(base.id(b), h), u, i2);
                    for i3 in 0..self.p.size(v1, self.prod.obj(c, e)) {
                        let pulled = self.p.lact(h, self.prod.obj(c, e), i3);
                        for i1 in 0..self.p.size(d, self.prod.obj(a, u)) {
                            uf.union(index[&(u, v1, i1, pushed, i3)], index[&(u, v, i1, i2, pulled)]);
                        }
                    }
                }
            }
        }
        let (_, assign) = uf.classes();
        elems.iter().enumerate().map(|(i, &k)| (k, assign[i])).collect()
    }

    fn check_pentagon(&self) -> Result<()> {
        let base = &self.base;
        let n = base.object_count();
        for d in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for e in 0..n {
                            let target = self.chain3(d, a, b, c, e);
                            for x in 0..n {
                                for y in 0..n {
                                    for p1 in 0..self.p.size(d, self.prod.obj(x, e)) {
                                        for p2 in 0..self.p.size(x, self.prod.obj(y, c)) {
                                            for p3 in 0..self.p.size(y, self.prod.obj(a, b)) {
                                                // two steps
                                                let (v, r1, r2) =
                                                    self.assoc_image(d, y, c, e, (x, p1, p2));
                                                let (u, s1, s2) =
                                                    self.assoc_image(d, a, b, v, (y, r1, p3));
                                                let top = target[&(u, v, s1, s2, r2)];
                                                // three steps
                                                let (w, t1, t2) =
                                                    self.assoc_image(x, a, b, c, (y, p2, p3));
                                                let (u2, m1, m2) =
                                                    self.assoc_image(d, a, w, e, (x, p1, t1));
                                                let (v2, n1, n2) =
                                                    self.assoc_image(u2, b, c, e, (w, m2, t2));
                                                let bottom = target[&(u2, v2, m1, n1, n2)];
                                                if top != bottom {
                                                    return Err(Error::law(
                                                        "pentagon",
                                                        format!(
                                                            "d={d}, ({a}, {b}, {c}, {e}) element ({x}, {y}, {p1}, {p2}, {p3})"
                                                        ),
                                                    ));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Promonoidal structure represented by a strict monoidal one:
/// P(d, (a, b)) = hom(d, a(x)b) and I = hom(-, unit), with collapse maps
/// as the isomorphisms.
pub fn representable(mon: &MonStructure) -> Result<Promonoidal> {
    if !mon.is_monoidal() {
        return Err(Error::mismatch("representable promonoidal data needs a monoidal base"));
    }
    let base = mon.cat.clone();
    let prod = product(&base, &base);
    let tensor_arr = {
        let base = base.clone();
        let mon = mon.clone();
        move |g: Arr, h: Arr| -> Arr {
            let (gd, hd) = (base.arrow(g).clone(), base.arrow(h).clone());
            base.compose(mon.whisker_r(g, hd.dst), mon.whisker_l(gd.src, h))
        }
    };
    let p = {
        let (b2, pr2, mon2, ta) = (base.clone(), prod.clone(), mon.clone(), tensor_arr.clone());
        FinProfunctor::build(
            format!("tensor({})", base.name()),
            prod.cat.clone(),
            base.clone(),
            |d, ab| {
                let (a, b) = pr2.split_obj(ab);
                b2.hom(d, mon2.tensor_obj(a, b))
                    .iter()
                    .map(|&f| b2.arrow(f).name.clone())
                    .collect()
            },
            |f, ab, x| {
                let (a, b) = pr2.split_obj(ab);
                let t = mon2.tensor_obj(a, b);
                let d = b2.arrow(f).dst;
                let h = b2.hom(d, t)[x];
                let hf = b2.compose(h, f);
                b2.hom(b2.arrow(f).src, t).iter().position(|&g| g == hf).unwrap()
            },
            |gh, d, x| {
                let (g, h) = pr2.split_arr(gh);
                let (a, b) = (b2.arrow(g).src, b2.arrow(h).src);
                let t = mon2.tensor_obj(a, b);
                let arrow = b2.hom(d, t)[x];
                let moved = b2.compose(ta(g, h), arrow);
                let t2 = mon2.tensor_obj(b2.arrow(g).dst, b2.arrow(h).dst);
                b2.hom(d, t2).iter().position(|&k| k == moved).unwrap()
            },
        )?
    };
    let i = Presheaf::representable(&base, mon.unit());
    let (b_l, m_l) = (base.clone(), mon.clone());
    let lunit_fn = move |d: Obj, b: Obj, x: Obj, pe: usize, ie: usize| -> Arr {
        let f = b_l.hom(d, m_l.tensor_obj(x, b))[pe];
        let u = b_l.hom(x, m_l.unit())[ie];
        b_l.compose(m_l.whisker_r(u, b), f)
    };
    let (b_r, m_r) = (base.clone(), mon.clone());
    let runit_fn = move |d: Obj, b: Obj, x: Obj, pe: usize, ie: usize| -> Arr {
        let f = b_r.hom(d, m_r.tensor_obj(b, x))[pe];
        let u = b_r.hom(x, m_r.unit())[ie];
        b_r.compose(m_r.whisker_l(b, u), f)
    };
    let (b_a, m_a) = (base.clone(), mon.clone());
    let assoc_fn = move |d: Obj, a: Obj, b: Obj, c: Obj, raw: (Obj, usize, usize)| {
        let (x, pe, qe) = raw;
        let f = b_a.hom(d, m_a.tensor_obj(x, c))[pe];
        let g = b_a.hom(x, m_a.tensor_obj(a, b))[qe];
        let h = b_a.compose(m_a.whisker_r(g, c), f);
        let y = m_a.tensor_obj(b, c);
        let pj = b_a
            .hom(d, m_a.tensor_obj(a, y))
            .iter()
            .position(|&k| k == h)
            .expect("strict tensor keeps the boundary");
        let qj = b_a
            .hom(y, m_a.tensor_obj(b, c))
            .iter()
            .position(|&k| k == b_a.id(y))
            .expect("the identity sits in its hom set");
        (y, pj, qj)
    };
    Promonoidal::new(base, prod, p, i, lunit_fn, runit_fn, assoc_fn)
}

// ── prostrength ─────────────────────────────────────────────────────────

#[derive(Debug, Clone)]
pub struct ProstrengthReport {
    pub ok: bool,
    pub witness: Option<String>,
}

fn ps_fail(witness: String) -> ProstrengthReport {
    ProstrengthReport { ok: false, witness: Some(witness) }
}

/// The two sides of the strength at (d, a, b): the bound variable pairs the
/// tensor bimodule with T on opposite sides.
fn strength_sides(
    pmon: &Promonoidal,
    pm: &Promonad,
    d: Obj,
    a: Obj,
    b: Obj,
) -> Result<(PairCoend, PairCoend)> {
    let base = &pmon.base;
    let lhs = pair_coend(
        base,
        ISO_BUDGET,
        |c| pmon.p.size(d, pmon.prod.obj(a, c)),
        |c| pm.t.size(c, b),
        |u, e| pmon.p.ract(pmon.prod.arr(base.id(a), u), d, e),
        |u, e| pm.t.lact(u, b, e),
    )?;
    let rhs = pair_coend(
        base,
        ISO_BUDGET,
        |c| pm.t.size(d, c),
        |c| pmon.p.size(c, pmon.prod.obj(a, b)),
        |u, e| pm.t.ract(u, d, e),
        |u, e| pmon.p.lact(u, pmon.prod.obj(a, b), e),
    )?;
    Ok((lhs, rhs))
}

/// sigma(d, a, b, c, p, t) -> raw element (x, t', q) of the right side.
/// Verifies well-definedness on the left quotient, naturality in all three
/// free slots, and compatibility with the promonad's unit and
/// multiplication.
pub fn prostrength_check(
    pm: &Promonad,
    pmon: &Promonoidal,
    mut sigma: impl FnMut(Obj, Obj, Obj, Obj, usize, usize) -> (Obj, usize, usize),
) -> Result<ProstrengthReport> {
    let base = &pmon.base;
    let n = base.object_count();
    let mut lhs_co: HashMap<(Obj, Obj, Obj), PairCoend> = HashMap::new();
    let mut rhs_co: HashMap<(Obj, Obj, Obj), PairCoend> = HashMap::new();
    for d in 0..n {
        for a in 0..n {
            for b in 0..n {
                let (l, r) = strength_sides(pmon, pm, d, a, b)?;
                lhs_co.insert((d, a, b), l);
                rhs_co.insert((d, a, b), r);
            }
        }
    }
    let mut sig = |d: Obj, a: Obj, b: Obj, c: Obj, pi: usize, ti: usize| -> Result<(Obj, usize, usize)> {
        let (x, tp, q) = sigma(d, a, b, c, pi, ti);
        if tp >= pm.t.size(d, x) || q >= pmon.p.size(x, pmon.prod.obj(a, b)) {
            return Err(Error::mismatch(format!(
                "strength output out of range at ({d}, {a}, {b}) bound {c}"
            )));
        }
        Ok((x, tp, q))
    };

    // well-definedness on the left quotient
    for d in 0..n {
        for a in 0..n {
            for b in 0..n {
                let l = &lhs_co[&(d, a, b)];
                let r = &rhs_co[&(d, a, b)];
                for members in l.classes.iter() {
                    let mut img: Option<usize> = None;
                    for &(c, pi, ti) in members {
                        let (x, tp, q) = sig(d, a, b, c, pi, ti)?;
                        let cls = r.coproj(x, tp, q);
                        match img {
                            None => img = Some(cls),
                            Some(prev) if prev != cls => {
                                return Ok(ps_fail(format!(
                                    "strength not constant on a left class at ({d}, {a}, {b})"
                                )));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }

    // naturality in the output slot
    for u in base.arrows_iter() {
        let (d2, d) = (base.arrow(u).src, base.arrow(u).dst);
        for a in 0..n {
            for b in 0..n {
                let r2 = &rhs_co[&(d2, a, b)];
                for c in 0..n {
                    for pi in 0..pmon.p.size(d, pmon.prod.obj(a, c)) {
                        for ti in 0..pm.t.size(c, b) {
                            let moved_p = pmon.p.lact(u, pmon.prod.obj(a, c), pi);
                            let via_lhs = sig(d2, a, b, c, moved_p, ti)?;
                            let (x, tp, q) = sig(d, a, b, c, pi, ti)?;
                            let via_rhs = (x, pm.t.lact(u, x, tp), q);
                            if r2.coproj(via_lhs.0, via_lhs.1, via_lhs.2)
                                != r2.coproj(via_rhs.0, via_rhs.1, via_rhs.2)
                            {
                                return Ok(ps_fail(format!(
                                    "strength naturality in the output along {}",
                                    base.arrow(u).name
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    // naturality in the passive slot
    for v in base.arrows_iter() {
        let (a, a2) = (base.arrow(v).src, base.arrow(v).dst);
        for d in 0..n {
            for b in 0..n {
                let r2 = &rhs_co[&(d, a2, b)];
                for c in 0..n {
                    for pi in 0..pmon.p.size(d, pmon.prod.obj(a, c)) {
                        for ti in 0..pm.t.size(c, b) {
                            let moved_p = pmon.p.ract(pmon.prod.arr(v, base.id(c)), d, pi);
                            let via_lhs = sig(d, a2, b, c, moved_p, ti)?;
                            let (x, tp, q) = sig(d, a, b, c, pi, ti)?;
                            let via_rhs =
                                (x, tp, pmon.p.ract(pmon.prod.arr(v, base.id(b)), x, q));
                            if r2.coproj(via_lhs.0, via_lhs.1, via_lhs.2)
                                != r2.coproj(via_rhs.0, via_rhs.1, via_rhs.2)
                            {
                                return Ok(ps_fail(format!(
                                    "strength naturality in the passive slot along {}",
                                    base.arrow(v).name
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    // naturality in the continuation slot
    for w in base.arrows_iter() {
        let (b, b2) = (base.arrow(w).src, base.arrow(w).dst);
        for d in 0..n {
            for a in 0..n {
                let r2 = &rhs_co[&(d, a, b2)];
                for c in 0..n {
                    for pi in 0..pmon.p.size(d, pmon.prod.obj(a, c)) {
                        for ti in 0..pm.t.size(c, b) {
                            let moved_t = pm.t.ract(w, c, ti);
                            let via_lhs = sig(d, a, b2, c, pi, moved_t)?;
                            let (x, tp, q) = sig(d, a, b, c, pi, ti)?;
                            let via_rhs =
                                (x, tp, pmon.p.ract(pmon.prod.arr(base.id(a), w), x, q));
                            if r2.coproj(via_lhs.0, via_lhs.1, via_lhs.2)
                                != r2.coproj(via_rhs.0, via_rhs.1, via_rhs.2)
                            {
                                return Ok(ps_fail(format!(
                                    "strength naturality in the continuation along {}",
                                    base.arrow(w).name
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    // unit compatibility
    for d in 0..n {
        for a in 0..n {
            for c in 0..n {
                for b in 0..n {
                    let r = &rhs_co[&(d, a, b)];
                    for pi in 0..pmon.p.size(d, pmon.prod.obj(a, c)) {
                        for &g in base.hom(c, b) {
                            let ti = pm.unit_of(g);
                            let got = sig(d, a, b, c, pi, ti)?;
                            let pure =
                                (d, pm.unit_of(base.id(d)), pmon.p.ract(pmon.prod.arr(base.id(a), g), d, pi));
                            if r.coproj(got.0, got.1, got.2) != r.coproj(pure.0, pure.1, pure.2) {
                                return Ok(ps_fail(format!(
                                    "strength against the unit at ({d}, {a}, {b}) along {}",
                                    base.arrow(g).name
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    // multiplication compatibility
    for d in 0..n {
        for a in 0..n {
            for b in 0..n {
                let r = &rhs_co[&(d, a, b)];
                for c in 0..n {
                    for e in 0..n {
                        for pi in 0..pmon.p.size(d, pmon.prod.obj(a, c)) {
                            for t1 in 0..pm.t.size(c, e) {
                                for t2 in 0..pm.t.size(e, b) {
                                    let t12 = pm.mult(c, e, b, t1, t2);
                                    let one = sig(d, a, b, c, pi, t12)?;
                                    let (x, tp, q) = sig(d, a, e, c, pi, t1)?;
                                    let (y, tq, rq) = sig(x, a, b, e, q, t2)?;
                                    let two = (y, pm.mult(d, x, y, tp, tq), rq);
                                    if r.coproj(one.0, one.1, one.2) != r.coproj(two.0, two.1, two.2) {
                                        return Ok(ps_fail(format!(
                                            "strength against multiplication at ({d}, {a}, {b}) bound ({c}, {e})"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(ProstrengthReport { ok: true, witness: None })
}

/// The strength that runs the pure part first and whiskers the effect:
/// requires the representable promonoidal structure, whose tensor values
/// are hom arrows.
pub fn canonical_prostrength<'a>(
    eff: &'a Effectful,
    pm: &'a Promonad,
) -> impl FnMut(Obj, Obj, Obj, Obj, usize, usize) -> (Obj, usize, usize) + 'a {
    move |d: Obj, a: Obj, b: Obj, c: Obj, pi: usize, ti: usize| {
        let base = eff.c0();
        let f = base.hom(d, eff.mon0.tensor_obj(a, c))[pi];
        let t_arr = pm.t_arrow(c, b, ti);
        let run = eff.c1().compose(eff.mon1.whisker_l(a, t_arr), eff.j.apply(f));
        let x = eff.mon0.tensor_obj(a, b);
        let q = base
            .hom(x, x)
            .iter()
            .position(|&g| g == base.id(x))
            .expect("the identity sits in its hom set");
        (x, pm.pos(run), q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::cat::{monoid_cat, Monoid};
    use crate::fincat::mon::monoid_mon;
    use crate::fincat::promonad::promonad_from_ioo;
    use crate::fincat::writer::{identity_effectful, make_writer_effectful};

    #[test]
    fn representable_structure_on_the_two_object_pure_level_validates() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let pmon = representable(&w.eff.mon0).unwrap();
        assert_eq!(pmon.p.size(1, pmon.pair_obj(1, 1)), 1);
    }

    #[test]
    fn representable_structure_on_a_commutative_monoid_validates() {
        let cat = monoid_cat(&Monoid::z3()).unwrap();
        let mon = monoid_mon(&cat).unwrap();
        let pmon = representable(&mon).unwrap();
        // one object; the tensor value set is the monoid itself
        assert_eq!(pmon.p.size(0, 0), 3);
    }

    #[test]
    fn noncommutative_one_object_base_is_rejected() {
        let cat = monoid_cat(&Monoid::m3()).unwrap();
        let mon = monoid_mon(&cat).unwrap();
        assert!(representable(&mon).is_err());
    }

    #[test]
    fn writer_strength_passes() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let pmon = representable(&w.eff.mon0).unwrap();
        let pm = promonad_from_ioo(&w.eff.j).unwrap();
        let sigma = canonical_prostrength(&w.eff, &pm);
        let report = prostrength_check(&pm, &pmon, sigma).unwrap();
        assert!(report.ok, "{:?}", report.witness);
    }

    #[test]
    fn identity_promonad_strength_passes() {
        let w = make_writer_effectful(Monoid::z2(), &[0, 1]).unwrap();
        let eff = identity_effectful(w.eff.mon0.clone()).unwrap();
        let pmon = representable(&eff.mon0).unwrap();
        let pm = promonad_from_ioo(&eff.j).unwrap();
        let sigma = canonical_prostrength(&eff, &pm);
        let report = prostrength_check(&pm, &pmon, sigma).unwrap();
        assert!(report.ok, "{:?}", report.witness);
    }

    #[test]
    fn redirected_strength_entry_is_caught() {
        let w = make_writer_effectful(Monoid::m3(), &[1]).unwrap();
        let pmon = representable(&w.eff.mon0).unwrap();
        let pm = promonad_from_ioo(&w.eff.j).unwrap();
        // send one non-unit effect to the unit's class: multiplication
        // compatibility must notice
        let mut canonical = canonical_prostrength(&w.eff, &pm);
        let a_pos = pm.pos(w.c1_arrow(0, 0, &[(1, 0)]).unwrap());
        let e_pos = pm.pos(w.c1_arrow(0, 0, &[(0, 0)]).unwrap());
        let twisted = move |d: Obj, a: Obj, b: Obj, c: Obj, pi: usize, ti: usize| {
            let out = canonical(d, a, b, c, pi, ti);
            if ti == a_pos {
                (out.0, e_pos, out.2)
            } else {
                out
            }
        };
        let report = prostrength_check(&pm, &pmon, twisted).unwrap();
        assert!(!report.ok);
        assert!(report.witness.unwrap().contains("multiplication"));
    }
}
