//! Writer-style effectful categories over finite sets: pure functions below,
//! functions that also emit a monoid value above, with the emitting level
//! premonoidal and the pure level monoidal.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{make_fincat, same_cat, Arr, ArrowData, FinCat, FinCatData, IooFunctor, Monoid, Obj};
use crate::fincat::mon::MonStructure;

/// An identity-on-objects inclusion of a monoidal category into a
/// premonoidal one, strict on the structure, with a central image.
#[derive(Debug, Clone)]
pub struct Effectful {
    pub j: IooFunctor,
    pub mon0: MonStructure,
    pub mon1: MonStructure,
}

impl Effectful {
    pub fn new(j: IooFunctor, mon0: MonStructure, mon1: MonStructure) -> Result<Effectful> {
        if !same_cat(&mon0.cat, &j.src) || !same_cat(&mon1.cat, &j.dst) {
            return Err(Error::mismatch("the two structures must sit on the functor's endpoints"));
        }
        let n = j.src.object_count();
        for a in 0..n {
            for b in 0..n {
                if mon0.tensor_obj(a, b) != mon1.tensor_obj(a, b) {
                    return Err(Error::law(
                        "shared object tensor",
                        format!("{} (x) {}", j.src.object_name(a), j.src.object_name(b)),
                    ));
                }
            }
        }
        if mon0.unit() != mon1.unit() {
            return Err(Error::law("shared unit object", String::new()));
        }
        if !mon0.is_monoidal() {
            return Err(Error::law("pure level interchange", mon0.cat.name().to_string()));
        }
        for f in j.src.arrows_iter() {
            for a in 0..n {
                if j.apply(mon0.whisker_l(a, f)) != mon1.whisker_l(a, j.apply(f)) {
                    return Err(Error::law(
                        "strictness of the inclusion",
                        format!("{} |> {}", j.src.object_name(a), j.src.arrow(f).name),
                    ));
                }
                if j.apply(mon0.whisker_r(f, a)) != mon1.whisker_r(j.apply(f), a) {
                    return Err(Error::law(
                        "strictness of the inclusion",
                        format!("{} <| {}", j.src.arrow(f).name, j.src.object_name(a)),
                    ));
                }
            }
        }
        for f in j.src.arrows_iter() {
            if !mon1.is_central(j.apply(f)) {
                return Err(Error::law("central image", j.src.arrow(f).name.clone()));
            }
        }
        Ok(Effectful { j, mon0, mon1 })
    }

    pub fn c0(&self) -> &Arc<FinCat> {
        &self.j.src
    }

    pub fn c1(&self) -> &Arc<FinCat> {
        &self.j.dst
    }

    /// arrows of the effectful level that interchange with everything
    pub fn central_arrows(&self) -> Vec<Arr> {
        self.c1().arrows_iter().filter(|&f| self.mon1.is_central(f)).collect()
    }

    /// image of the inclusion, sorted
    pub fn image(&self) -> Vec<Arr> {
        let mut v: Vec<Arr> = self.c0().arrows_iter().map(|f| self.j.apply(f)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// whether the designated centre (the image) is the whole centre
    pub fn centre_equals_image(&self) -> bool {
        self.central_arrows() == self.image()
    }
}

/// The degenerate case: a monoidal category included into itself.
pub fn identity_effectful(mon: MonStructure) -> Result<Effectful> {
    let j = IooFunctor::identity(&mon.cat);
    Effectful::new(j, mon.clone(), mon)
}

// ── writer construction ─────────────────────────────────────────────────

/// One level of the writer construction: objects are set sizes, an arrow
/// a -> b is a table sending each x < |a| to m * |b| + y.
struct Level {
    cat: Arc<FinCat>,
    tables: Vec<Vec<usize>>,
    lookup: HashMap<(Obj, Obj, Vec<usize>), Arr>,
}

fn trivial_monoid() -> Monoid {
    Monoid { name: "1".into(), elems: vec!["e".into()], mul: vec![vec![0]], unit: 0 }
}

fn level_name(m: &Monoid, sizes: &[usize], pure: bool) -> String {
    let s: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
    if pure {
        format!("finset{{{}}}", s.join(","))
    } else {
        format!("writer:{}{{{}}}", m.name, s.join(","))
    }
}

fn writer_level(m: &Monoid, sizes: &[usize], pure: bool) -> Result<Level> {
    let n_obj = sizes.len();
    let k = m.elems.len();
    let mut arrows: Vec<ArrowData> = Vec::new();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    let mut lookup: HashMap<(Obj, Obj, Vec<usize>), Arr> = HashMap::new();
    for a in 0..n_obj {
        for b in 0..n_obj {
            let per_slot = k * sizes[b];
            let count = if sizes[a] == 0 {
                1
            } else if per_slot == 0 {
                0
            } else {
                per_slot.checked_pow(sizes[a] as u32).ok_or_else(|| {
                    Error::SizeExceeded("writer hom set overflows".into())
                })?
            };
            for idx in 0..count {
                let mut table = Vec::with_capacity(sizes[a]);
                let mut rest = idx;
                for _ in 0..sizes[a] {
                    table.push(rest % per_slot);
                    rest /= per_slot;
                }
                let cells: Vec<String> = table
                    .iter()
                    .map(|&v| {
                        let (em, y) = (v / sizes[b], v % sizes[b]);
                        if pure {
                            y.to_string()
                        } else {
                            format!("{}.{}", m.elems[em], y)
                        }
                    })
                    .collect();
                let name = format!("{}-{}[{}]", sizes[a], sizes[b], cells.join(","));
                lookup.insert((a, b, table.clone()), arrows.len());
                arrows.push(ArrowData { name, src: a, dst: b });
                tables.push(table);
            }
        }
    }
    let ids: Vec<Arr> = (0..n_obj)
        .map(|a| {
            let table: Vec<usize> = (0..sizes[a]).map(|x| m.unit * sizes[a] + x).collect();
            lookup[&(a, a, table)]
        })
        .collect();
    let mut comp = Vec::new();
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            if arrows[f].dst != arrows[g].src {
                continue;
            }
            let (b, c) = (arrows[g].src, arrows[g].dst);
            let table: Vec<usize> = tables[f]
                .iter()
                .map(|&v| {
                    let (m1, y) = (v / sizes[b], v % sizes[b]);
                    let w = tables[g][y];
                    let (m2, z) = (w / sizes[c], w % sizes[c]);
                    m.mul(m1, m2) * sizes[c] + z
                })
                .collect();
            comp.push((g, f, lookup[&(arrows[f].src, c, table)]));
        }
    }
    let cat = make_fincat(FinCatData {
        name: level_name(m, sizes, pure),
        objects: sizes.iter().map(|n| n.to_string()).collect(),
        arrows,
        ids,
        comp,
    })?
    .into_arc();
    Ok(Level { cat, tables, lookup })
}

fn level_mon(level: &Level, sizes: &[usize], obj_of_size: &HashMap<usize, Obj>) -> Result<MonStructure> {
    let n_obj = sizes.len();
    let obj_tensor: Vec<Vec<Obj>> = (0..n_obj)
        .map(|a| (0..n_obj).map(|b| obj_of_size[&(sizes[a] * sizes[b])]).collect())
        .collect();
    let unit = obj_of_size[&1];
    let mut lw = Vec::with_capacity(n_obj);
    let mut rw = Vec::with_capacity(n_obj);
    for a in 0..n_obj {
        let mut lw_a = Vec::with_capacity(level.tables.len());
        let mut rw_a = Vec::with_capacity(level.tables.len());
        for f in 0..level.tables.len() {
            let fd = level.cat.arrow(f);
            let (b, c) = (fd.src, fd.dst);
            let (sa, sb, sc) = (sizes[a], sizes[b], sizes[c]);
            // a |> f : pairs (x, y) -> (m, (x, z)) where f(y) = (m, z)
            let mut lt = Vec::with_capacity(sa * sb);
            for x in 0..sa {
                for y in 0..sb {
                    let v = level.tables[f][y];
                    let (em, z) = (v / sc, v % sc);
                    lt.push(em * (sa * sc) + (x * sc + z));
                }
            }
            lw_a.push(level.lookup[&(obj_tensor[a][b], obj_tensor[a][c], lt)]);
            // f <| a : pairs (y, x) -> (m, (z, x))
            let mut rt = Vec::with_capacity(sb * sa);
            for y in 0..sb {
                for x in 0..sa {
                    let v = level.tables[f][y];
                    let (em, z) = (v / sc, v % sc);
                    rt.push(em * (sc * sa) + (z * sa + x));
                }
            }
            rw_a.push(level.lookup[&(obj_tensor[b][a], obj_tensor[c][a], rt)]);
        }
        lw.push(lw_a);
        rw.push(rw_a);
    }
    MonStructure::new(level.cat.clone(), obj_tensor, unit, lw, rw)
}

/// The writer effectful category with explicit table bookkeeping, so that
/// arrows can be produced from and decoded into value-level functions.
#[derive(Debug, Clone)]
pub struct WriterEffectful {
    pub eff: Effectful,
    pub monoid: Monoid,
    /// object index -> cardinality of the underlying set
    pub sizes: Vec<usize>,
    obj_of_size: HashMap<usize, Obj>,
    tables0: Vec<Vec<usize>>,
    tables1: Vec<Vec<usize>>,
    lookup0: HashMap<(Obj, Obj, Vec<usize>), Arr>,
    lookup1: HashMap<(Obj, Obj, Vec<usize>), Arr>,
}

/// Build the writer effectful category over the given universe of set
/// sizes. The universe must contain 1 and be closed under products, which
/// confines it to subsets of {0, 1}; larger sizes would generate
/// unboundedly many objects.
pub fn make_writer_effectful(monoid: Monoid, universe: &[usize]) -> Result<WriterEffectful> {
    monoid.validate()?;
    let mut sizes: Vec<usize> = universe.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() {
        return Err(Error::mismatch("the size universe is empty"));
    }
    let obj_of_size: HashMap<usize, Obj> = sizes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    if !obj_of_size.contains_key(&1) {
        return Err(Error::mismatch("the size universe must contain 1 for the tensor unit"));
    }
    for &a in &sizes {
        for &b in &sizes {
            if !obj_of_size.contains_key(&(a * b)) {
                return Err(Error::mismatch(format!(
                    "the size universe is not closed under products: {a} * {b} = {} is missing",
                    a * b
                )));
            }
        }
    }
    let pure = writer_level(&trivial_monoid(), &sizes, true)?;
    let eff_level = writer_level(&monoid, &sizes, false)?;
    let mon0 = level_mon(&pure, &sizes, &obj_of_size)?;
    let mon1 = level_mon(&eff_level, &sizes, &obj_of_size)?;
    // the inclusion keeps the function and emits the monoid unit
    let map: Vec<Arr> = (0..pure.tables.len())
        .map(|f| {
            let fd = pure.cat.arrow(f);
            let sb = sizes[fd.dst];
            let table: Vec<usize> = pure.tables[f].iter().map(|&y| monoid.unit * sb + y).collect();
            eff_level.lookup[&(fd.src, fd.dst, table)]
        })
        .collect();
    let j = IooFunctor::new(pure.cat.clone(), eff_level.cat.clone(), map)?;
    let eff = Effectful::new(j, mon0, mon1)?;
    Ok(WriterEffectful {
        eff,
        monoid,
        sizes,
        obj_of_size,
        tables0: pure.tables,
        tables1: eff_level.tables,
        lookup0: pure.lookup,
        lookup1: eff_level.lookup,
    })
}

impl WriterEffectful {
    pub fn obj_of_size(&self, n: usize) -> Option<Obj> {
        self.obj_of_size.get(&n).copied()
    }

    pub fn size(&self, o: Obj) -> usize {
        self.sizes[o]
    }

    /// pure arrow from a plain function table
    pub fn c0_arrow(&self, a: Obj, b: Obj, table: &[usize]) -> Result<Arr> {
        self.lookup0
            .get(&(a, b, table.to_vec()))
            .copied()
            .ok_or_else(|| Error::mismatch("no such pure arrow"))
    }

    /// effectful arrow from a table of (monoid element, value) pairs
    pub fn c1_arrow(&self, a: Obj, b: Obj, table: &[(usize, usize)]) -> Result<Arr> {
        let sb = self.sizes[b];
        let enc: Vec<usize> = table.iter().map(|&(em, y)| em * sb + y).collect();
        self.lookup1
            .get(&(a, b, enc))
            .copied()
            .ok_or_else(|| Error::mismatch("no such effectful arrow"))
    }

    pub fn c0_value(&self, f: Arr, x: usize) -> usize {
        self.tables0[f][x]
    }

    /// apply an effectful arrow to an element: (emitted, result)
    pub fn c1_value(&self, f: Arr, x: usize) -> (usize, usize) {
        let sb = self.sizes[self.eff.c1().arrow(f).dst];
        let v = self.tables1[f][x];
        (v / sb, v % sb)
    }

    /// index of the pair (x, y) inside a (x) b
    pub fn pair(&self, b: Obj, x: usize, y: usize) -> usize {
        x * self.sizes[b] + y
    }

    pub fn split_pair(&self, b: Obj, v: usize) -> (usize, usize) {
        (v / self.sizes[b], v % self.sizes[b])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::cat::monoid_cat;
    use crate::fincat::mon::monoid_mon;

    #[test]
    fn one_point_universe_recovers_the_monoid() {
        let w = make_writer_effectful(Monoid::m3(), &[1]).unwrap();
        assert_eq!(w.eff.c0().arrow_count(), 1);
        assert_eq!(w.eff.c1().arrow_count(), 3);
        // composition accumulates left to right: a then b keeps a
        let a = w.c1_arrow(0, 0, &[(1, 0)]).unwrap();
        let b = w.c1_arrow(0, 0, &[(2, 0)]).unwrap();
        let ab = w.eff.c1().compose(b, a);
        assert_eq!(w.c1_value(ab, 0), (1, 0));
        let ba = w.eff.c1().compose(a, b);
        assert_eq!(w.c1_value(ba, 0), (2, 0));
    }

    #[test]
    fn two_object_universe_has_the_designated_centre() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        assert_eq!(w.eff.c0().arrow_count(), 3);
        assert_eq!(w.eff.c1().arrow_count(), 5);
        assert!(!w.eff.mon1.is_monoidal());
        assert!(w.eff.mon0.is_monoidal());
        // only unit emitters slide past everything, so centre = image
        assert!(w.eff.centre_equals_image());
    }

    #[test]
    fn commutative_monoid_makes_the_effectful_level_monoidal() {
        let w = make_writer_effectful(Monoid::z2(), &[0, 1]).unwrap();
        assert!(w.eff.mon1.is_monoidal());
        // every arrow is central but the flip emitter is not pure
        assert!(!w.eff.centre_equals_image());
    }

    #[test]
    fn universe_must_be_product_closed_and_contain_the_unit() {
        assert!(make_writer_effectful(Monoid::z2(), &[2]).is_err());
        assert!(make_writer_effectful(Monoid::z2(), &[0]).is_err());
        assert!(make_writer_effectful(Monoid::z2(), &[1, 2]).is_err());
    }

    #[test]
    fn whiskering_by_the_empty_object_collapses_to_its_identity() {
        let w = make_writer_effectful(Monoid::m3(), &[0, 1]).unwrap();
        let zero = w.obj_of_size(0).unwrap();
        let one = w.obj_of_size(1).unwrap();
        let a = w.c1_arrow(one, one, &[(1, 0)]).unwrap();
        let id0 = w.eff.c1().id(zero);
        assert_eq!(w.eff.mon1.whisker_l(zero, a), id0);
        assert_eq!(w.eff.mon1.whisker_r(a, zero), id0);
    }

    #[test]
    fn identity_effectful_needs_a_monoidal_base() {
        let m3 = monoid_mon(&monoid_cat(&Monoid::m3()).unwrap()).unwrap();
        assert!(identity_effectful(m3).is_err());
        let z3 = monoid_mon(&monoid_cat(&Monoid::z3()).unwrap()).unwrap();
        let eff = identity_effectful(z3).unwrap();
        assert!(eff.centre_equals_image());
    }
}
