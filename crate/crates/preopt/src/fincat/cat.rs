//! Finite categories as explicit tables, validated exhaustively.

use std::sync::Arc;

use crate::error::{Error, Result};

pub type Obj = usize;
pub type Arr = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowData {
    pub name: String,
    pub src: Obj,
    pub dst: Obj,
}

/// Raw tables accepted by [`make_fincat`].
#[derive(Debug, Clone)]
pub struct FinCatData {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowData>,
    /// identity arrow per object, same order as `objects`
    pub ids: Vec<Arr>,
    /// entries (g, f, g_after_f); must be total on composable pairs
    pub comp: Vec<(Arr, Arr, Arr)>,
}

#[derive(Debug, Clone)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    hom: Vec<Vec<Vec<Arr>>>,
    comp: Vec<Vec<Option<Arr>>>,
    ids: Vec<Arr>,
}

/// Build and validate a finite category. Unit and associativity laws are
/// checked over every composable pair and triple; failures name the arrows.
pub fn make_fincat(data: FinCatData) -> Result<FinCat> {
    let n_obj = data.objects.len();
    let n_arr = data.arrows.len();
    for a in &data.arrows {
        if a.src >= n_obj || a.dst >= n_obj {
            return Err(Error::mismatch(format!("arrow {} has an out-of-range endpoint", a.name)));
        }
    }
    if data.ids.len() != n_obj {
        return Err(Error::mismatch("one identity arrow per object required"));
    }
    for (o, &i) in data.ids.iter().enumerate() {
        if i >= n_arr || data.arrows[i].src != o || data.arrows[i].dst != o {
            return Err(Error::mismatch(format!(
                "identity of {} must be an endo-arrow on it",
                data.objects[o]
            )));
        }
    }

    let mut hom = vec![vec![Vec::new(); n_obj]; n_obj];
    for (i, a) in data.arrows.iter().enumerate() {
        hom[a.src][a.dst].push(i);
    }

    let mut comp = vec![vec![None; n_arr]; n_arr];
    for &(g, f, gf) in &data.comp {
        if g >= n_arr || f >= n_arr || gf >= n_arr {
            return Err(Error::mismatch("composition entry indexes a missing arrow"));
        }
        let (fa, ga, ca) = (&data.arrows[f], &data.arrows[g], &data.arrows[gf]);
        if fa.dst != ga.src {
            return Err(Error::mismatch(format!("{} and {} are not composable", ga.name, fa.name)));
        }
        if ca.src != fa.src || ca.dst != ga.dst {
            return Err(Error::mismatch(format!(
                "composite of {} after {} has the wrong boundary",
                ga.name, fa.name
            )));
        }
        if comp[g][f].is_some() {
            return Err(Error::mismatch(format!(
                "duplicate composition entry for {} after {}",
                ga.name, fa.name
            )));
        }
        comp[g][f] = Some(gf);
    }
    for f in 0..n_arr {
        for g in 0..n_arr {
            if data.arrows[f].dst == data.arrows[g].src && comp[g][f].is_none() {
                return Err(Error::mismatch(format!(
                    "composition table misses {} after {}",
                    data.arrows[g].name, data.arrows[f].name
                )));
            }
        }
    }

    let cat = FinCat { name: data.name, objects: data.objects, arrows: data.arrows, hom, comp, ids: data.ids };
    cat.check_laws()?;
    Ok(cat)
}

impl FinCat {
    fn check_laws(&self) -> Result<()> {
        for f in 0..self.arrows.len() {
            let a = &self.arrows[f];
            if self.compose(f, self.ids[a.src]) != f {
                return Err(Error::law("right unit", format!("{} . id_{}", a.name, self.objects[a.src])));
            }
            if self.compose(self.ids[a.dst], f) != f {
                return Err(Error::law("left unit", format!("id_{} . {}", self.objects[a.dst], a.name)));
            }
        }
        for f in 0..self.arrows.len() {
            for g in self.hom_from(self.arrows[f].dst) {
                for h in self.hom_from(self.arrows[g].dst) {
                    let left = self.compose(h, self.compose(g, f));
                    let right = self.compose(self.compose(h, g), f);
                    if left != right {
                        return Err(Error::law(
                            "associativity",
                            format!(
                                "({} . {}) . {} vs {} . ({} . {})",
                                self.arrows[h].name,
                                self.arrows[g].name,
                                self.arrows[f].name,
                                self.arrows[h].name,
                                self.arrows[g].name,
                                self.arrows[f].name
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn hom_from(&self, a: Obj) -> Vec<Arr> {
        (0..self.object_count()).flat_map(|b| self.hom(a, b).to_vec()).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, f: Arr) -> &ArrowData {
        &self.arrows[f]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Arr] {
        &self.hom[a][b]
    }

    pub fn arrows_iter(&self) -> impl Iterator<Item = Arr> + '_ {
        0..self.arrows.len()
    }

    pub fn id(&self, o: Obj) -> Arr {
        self.ids[o]
    }

    pub fn try_compose(&self, g: Arr, f: Arr) -> Option<Arr> {
        self.comp[g][f]
    }

    /// g after f; callers must pass a composable pair.
    pub fn compose(&self, g: Arr, f: Arr) -> Arr {
        self.comp[g][f].unwrap_or_else(|| {
            panic!("{} after {} is not composable", self.arrows[g].name, self.arrows[f].name)
        })
    }

    pub fn same_objects(&self, other: &FinCat) -> bool {
        self.objects == other.objects
    }

    pub fn into_arc(self) -> Arc<FinCat> {
        Arc::new(self)
    }
}

/// Structural identity of categories, used as the precondition for endo
/// constructions. Pointer equality is the fast path.
pub fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.objects == b.objects && a.arrows == b.arrows && a.ids == b.ids && a.comp == b.comp)
}

// ── stock categories ────────────────────────────────────────────────────

pub fn terminal() -> Arc<FinCat> {
    make_fincat(FinCatData {
        name: "terminal".into(),
        objects: vec!["*".into()],
        arrows: vec![ArrowData { name: "id".into(), src: 0, dst: 0 }],
        ids: vec![0],
        comp: vec![(0, 0, 0)],
    })
    .expect("the terminal category satisfies the laws")
    .into_arc()
}

pub fn walking_arrow() -> Arc<FinCat> {
    make_fincat(FinCatData {
        name: "walking-arrow".into(),
        objects: vec!["0".into(), "1".into()],
        arrows: vec![
            ArrowData { name: "id0".into(), src: 0, dst: 0 },
            ArrowData { name: "id1".into(), src: 1, dst: 1 },
            ArrowData { name: "u".into(), src: 0, dst: 1 },
        ],
        ids: vec![0, 1],
        comp: vec![(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)],
    })
    .expect("the walking arrow satisfies the laws")
    .into_arc()
}

pub fn discrete(n: usize) -> Arc<FinCat> {
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let arrows: Vec<ArrowData> = (0..n)
        .map(|i| ArrowData { name: format!("id{i}"), src: i, dst: i })
        .collect();
    let comp = (0..n).map(|i| (i, i, i)).collect();
    make_fincat(FinCatData { name: format!("discrete{n}"), objects, arrows, ids: (0..n).collect(), comp })
        .expect("discrete categories satisfy the laws")
        .into_arc()
}

// ── monoids ─────────────────────────────────────────────────────────────

#[derive(Debug, Clone)]
pub struct Monoid {
    pub name: String,
    pub elems: Vec<String>,
    /// mul[x][y] = x . y, "x then y" when read as accumulation
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Monoid {
    pub fn validate(&self) -> Result<()> {
        let n = self.elems.len();
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n) || self.unit >= n {
            return Err(Error::mismatch("monoid table has the wrong shape"));
        }
        for x in 0..n {
            if self.mul[self.unit][x] != x || self.mul[x][self.unit] != x {
                return Err(Error::law("monoid unit", self.elems[x].clone()));
            }
            for y in 0..n {
                for z in 0..n {
                    if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]] {
                        return Err(Error::law(
                            "monoid associativity",
                            format!("{} {} {}", self.elems[x], self.elems[y], self.elems[z]),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.elems.len();
        (0..n).all(|x| (0..n).all(|y| self.mul[x][y] == self.mul[y][x]))
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    /// {e, a, b} with x.y = x on {a, b}: the smallest noncommutative witness
    /// for interchange failure.
    pub fn m3() -> Monoid {
        Monoid {
            name: "M3".into(),
            elems: vec!["e".into(), "a".into(), "b".into()],
            mul: vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
            unit: 0,
        }
    }

    pub fn z2() -> Monoid {
        Monoid {
            name: "Z2".into(),
            elems: vec!["0".into(), "1".into()],
            mul: vec![vec![0, 1], vec![1, 0]],
            unit: 0,
        }
    }

    pub fn z3() -> Monoid {
        Monoid {
            name: "Z3".into(),
            elems: vec!["0".into(), "1".into(), "2".into()],
            mul: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            unit: 0,
        }
    }

    pub fn by_name(name: &str) -> Option<Monoid> {
        match name {
            "M3" => Some(Monoid::m3()),
            "Z2" => Some(Monoid::z2()),
            "Z3" => Some(Monoid::z3()),
            _ => None,
        }
    }
}

/// One-object category whose endo-arrows are the monoid elements;
/// composition is "f then g" accumulation.
pub fn monoid_cat(m: &Monoid) -> Result<Arc<FinCat>> {
    m.validate()?;
    let n = m.elems.len();
    let arrows: Vec<ArrowData> =
        m.elems.iter().map(|e| ArrowData { name: e.clone(), src: 0, dst: 0 }).collect();
    let mut comp = Vec::new();
    for g in 0..n {
        for f in 0..n {
            comp.push((g, f, m.mul(f, g)));
        }
    }
    Ok(make_fincat(FinCatData {
        name: format!("monoid:{}", m.name),
        objects: vec!["*".into()],
        arrows,
        ids: vec![m.unit],
        comp,
    })?
    .into_arc())
}

// ── product categories ──────────────────────────────────────────────────

/// A x B with index bookkeeping for the pairing.
#[derive(Debug, Clone)]
pub struct ProductCat {
    pub cat: Arc<FinCat>,
    right_objs: usize,
    right_arrs: usize,
}

impl ProductCat {
    pub fn obj(&self, a: Obj, b: Obj) -> Obj {
        a * self.right_objs + b
    }

    pub fn split_obj(&self, o: Obj) -> (Obj, Obj) {
        (o / self.right_objs, o % self.right_objs)
    }

    pub fn arr(&self, f: Arr, g: Arr) -> Arr {
        f * self.right_arrs + g
    }

    pub fn split_arr(&self, h: Arr) -> (Arr, Arr) {
        (h / self.right_arrs, h % self.right_arrs)
    }
}

pub fn product(a: &Arc<FinCat>, b: &Arc<FinCat>) -> ProductCat {
    let (na, nb) = (a.object_count(), b.object_count());
    let (ma, mb) = (a.arrow_count(), b.arrow_count());
    let mut objects = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            objects.push(format!("({},{})", a.object_name(i), b.object_name(j)));
        }
    }
    let mut arrows = Vec::with_capacity(ma * mb);
    for f in 0..ma {
        for g in 0..mb {
            let (fa, ga) = (a.arrow(f), b.arrow(g));
            arrows.push(ArrowData {
                name: format!("({},{})", fa.name, ga.name),
                src: fa.src * nb + ga.src,
                dst: fa.dst * nb + ga.dst,
            });
        }
    }
    let ids = (0..na * nb).map(|o| a.id(o / nb) * mb + b.id(o % nb)).collect();
    let mut comp = Vec::new();
    for f1 in 0..ma {
        for g1 in 0..mb {
            for f2 in 0..ma {
                for g2 in 0..mb {
                    if let (Some(fc), Some(gc)) = (a.try_compose(f2, f1), b.try_compose(g2, g1)) {
                        comp.push((f2 * mb + g2, f1 * mb + g1, fc * mb + gc));
                    }
                }
            }
        }
    }
    let cat = make_fincat(FinCatData {
        name: format!("{}x{}", a.name(), b.name()),
        objects,
        arrows,
        ids,
        comp,
    })
    .expect("products of valid categories satisfy the laws")
    .into_arc();
    ProductCat { cat, right_objs: nb, right_arrs: mb }
}

// ── identity-on-objects functors ────────────────────────────────────────

#[derive(Debug, Clone)]
pub struct IooFunctor {
    pub src: Arc<FinCat>,
    pub dst: Arc<FinCat>,
    map: Vec<Arr>,
}

impl IooFunctor {
    pub fn new(src: Arc<FinCat>, dst: Arc<FinCat>, map: Vec<Arr>) -> Result<IooFunctor> {
        if !src.same_objects(&dst) {
            return Err(Error::mismatch("an identity-on-objects functor needs equal object lists"));
        }
        if map.len() != src.arrow_count() {
            return Err(Error::mismatch("arrow map must cover every arrow of the source"));
        }
        for f in 0..map.len() {
            let (fa, ia) = (src.arrow(f), dst.arrow(map[f]));
            if fa.src != ia.src || fa.dst != ia.dst {
                return Err(Error::law("functor boundary", fa.name.clone()));
            }
        }
        for o in 0..src.object_count() {
            if map[src.id(o)] != dst.id(o) {
                return Err(Error::law("functor identity", src.object_name(o).to_string()));
            }
        }
        for f in 0..map.len() {
            for g in src.arrows_iter() {
                if let Some(gf) = src.try_compose(g, f) {
                    if map[gf] != dst.compose(map[g], map[f]) {
                        return Err(Error::law(
                            "functor composition",
                            format!("{} . {}", src.arrow(g).name, src.arrow(f).name),
                        ));
                    }
                }
            }
        }
        Ok(IooFunctor { src, dst, map })
    }

    pub fn identity(c: &Arc<FinCat>) -> IooFunctor {
        IooFunctor { src: c.clone(), dst: c.clone(), map: (0..c.arrow_count()).collect() }
    }

    pub fn apply(&self, f: Arr) -> Arr {
        self.map[f]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walking_arrow_and_terminal_are_valid() {
        assert_eq!(walking_arrow().arrow_count(), 3);
        assert_eq!(terminal().arrow_count(), 1);
        assert_eq!(discrete(4).arrow_count(), 4);
    }

    #[test]
    fn broken_associativity_is_reported_with_a_witness() {
        // three endo-arrows on one object with a deliberately skewed table:
        // p.p = q but q absorbs everything, so (p.p).p != p.(p.p)
        let data = FinCatData {
            name: "broken".into(),
            objects: vec!["*".into()],
            arrows: vec![
                ArrowData { name: "id".into(), src: 0, dst: 0 },
                ArrowData { name: "p".into(), src: 0, dst: 0 },
                ArrowData { name: "q".into(), src: 0, dst: 0 },
            ],
            ids: vec![0],
            comp: vec![
                (0, 0, 0),
                (0, 1, 1),
                (1, 0, 1),
                (0, 2, 2),
                (2, 0, 2),
                (1, 1, 2),
                (1, 2, 2),
                (2, 1, 1),
                (2, 2, 2),
            ],
        };
        match make_fincat(data) {
            Err(Error::LawViolation { check, witness }) => {
                assert_eq!(check, "associativity");
                assert!(witness.contains("p"), "{witness}");
            }
            other => panic!("expected a law violation, got {other:?}"),
        }
    }

    #[test]
    fn missing_composition_entry_is_rejected() {
        let data = FinCatData {
            name: "partial".into(),
            objects: vec!["*".into()],
            arrows: vec![
                ArrowData { name: "id".into(), src: 0, dst: 0 },
                ArrowData { name: "p".into(), src: 0, dst: 0 },
            ],
            ids: vec![0],
            comp: vec![(0, 0, 0), (0, 1, 1), (1, 0, 1)],
        };
        assert!(make_fincat(data).is_err());
    }

    #[test]
    fn monoid_tables_validate_and_m3_is_noncommutative() {
        Monoid::m3().validate().unwrap();
        Monoid::z2().validate().unwrap();
        Monoid::z3().validate().unwrap();
        assert!(!Monoid::m3().is_commutative());
        assert!(Monoid::z2().is_commutative());
        // the interchange witness values: a.b = a and b.a = b
        let m = Monoid::m3();
        assert_eq!(m.mul(1, 2), 1);
        assert_eq!(m.mul(2, 1), 2);
        let bad = Monoid {
            name: "bad".into(),
            elems: vec!["e".into(), "x".into(), "y".into()],
            mul: vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]],
            unit: 0,
        };
        assert!(matches!(bad.validate(), Err(Error::LawViolation { .. })));
        assert!(monoid_cat(&Monoid::m3()).is_ok());
    }

    #[test]
    fn product_indexing_round_trips() {
        let p = product(&walking_arrow(), &terminal());
        assert_eq!(p.cat.object_count(), 2);
        assert_eq!(p.cat.arrow_count(), 3);
        for o in 0..p.cat.object_count() {
            let (a, b) = p.split_obj(o);
            assert_eq!(p.obj(a, b), o);
        }
        for h in p.cat.arrows_iter() {
            let (f, g) = p.split_arr(h);
            assert_eq!(p.arr(f, g), h);
        }
        let q = product(&walking_arrow(), &walking_arrow());
        assert_eq!(q.cat.arrow_count(), 9);
        q.cat.arrows_iter().for_each(|h| {
            let (f, g) = q.split_arr(h);
            assert_eq!(q.cat.arrow(h).src, q.obj(walking_arrow().arrow(f).src, walking_arrow().arrow(g).src));
        });
    }

    #[test]
    fn ioo_functor_validates_functoriality() {
        let w = walking_arrow();
        assert!(IooFunctor::new(w.clone(), w.clone(), vec![0, 1, 2]).is_ok());
        // swapping the identity with u breaks boundaries
        assert!(IooFunctor::new(w.clone(), w.clone(), vec![2, 1, 0]).is_err());
    }
}
