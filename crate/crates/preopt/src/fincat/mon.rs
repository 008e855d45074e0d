//! Strict (pre)monoidal structure on a finite category: an object monoid
//! plus whiskering tables. Interchange is deliberately not an axiom; it is
//! a separate query so callers can exhibit its failure.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{Arr, FinCat, Obj};

#[derive(Debug, Clone)]
pub struct MonStructure {
    pub cat: Arc<FinCat>,
    obj_tensor: Vec<Vec<Obj>>,
    unit: Obj,
    /// lw[a][f] = a whisker f : a(x)dom f -> a(x)cod f
    lw: Vec<Vec<Arr>>,
    /// rw[a][f] = f whisker a : dom f(x)a -> cod f(x)a
    rw: Vec<Vec<Arr>>,
}

impl MonStructure {
    pub fn new(
        cat: Arc<FinCat>,
        obj_tensor: Vec<Vec<Obj>>,
        unit: Obj,
        lw: Vec<Vec<Arr>>,
        rw: Vec<Vec<Arr>>,
    ) -> Result<MonStructure> {
        let s = MonStructure { cat, obj_tensor, unit, lw, rw };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        let n = self.cat.object_count();
        let m = self.cat.arrow_count();
        if self.obj_tensor.len() != n
            || self.obj_tensor.iter().any(|r| r.len() != n)
            || self.unit >= n
            || self.lw.len() != n
            || self.rw.len() != n
            || self.lw.iter().chain(self.rw.iter()).any(|r| r.len() != m)
        {
            return Err(Error::mismatch("monoidal structure tables have the wrong shape"));
        }
        let name = |o: Obj| self.cat.object_name(o).to_string();
        for a in 0..n {
            if self.tensor_obj(a, self.unit) != a || self.tensor_obj(self.unit, a) != a {
                return Err(Error::law("tensor unit", name(a)));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.tensor_obj(self.tensor_obj(a, b), c) != self.tensor_obj(a, self.tensor_obj(b, c)) {
                        return Err(Error::law(
                            "tensor associativity",
                            format!("{} {} {}", name(a), name(b), name(c)),
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            for f in 0..m {
                let fd = self.cat.arrow(f);
                let l = self.cat.arrow(self.lw[a][f]);
                if l.src != self.tensor_obj(a, fd.src) || l.dst != self.tensor_obj(a, fd.dst) {
                    return Err(Error::law("left whisker boundary", format!("{} |> {}", name(a), fd.name)));
                }
                let r = self.cat.arrow(self.rw[a][f]);
                if r.src != self.tensor_obj(fd.src, a) || r.dst != self.tensor_obj(fd.dst, a) {
                    return Err(Error::law("right whisker boundary", format!("{} <| {}", fd.name, name(a))));
                }
            }
        }
        for f in 0..m {
            if self.lw[self.unit][f] != f || self.rw[self.unit][f] != f {
                return Err(Error::law("unit whisker", self.cat.arrow(f).name.clone()));
            }
        }
        for a in 0..n {
            for o in 0..n {
                let i = self.cat.id(o);
                if self.lw[a][i] != self.cat.id(self.tensor_obj(a, o)) {
                    return Err(Error::law("whisker identity", format!("{} |> id_{}", name(a), name(o))));
                }
                if self.rw[a][i] != self.cat.id(self.tensor_obj(o, a)) {
                    return Err(Error::law("whisker identity", format!("id_{} <| {}", name(o), name(a))));
                }
            }
            for f in 0..m {
                for g in 0..m {
                    if let Some(gf) = self.cat.try_compose(g, f) {
                        if self.lw[a][gf] != self.cat.compose(self.lw[a][g], self.lw[a][f]) {
                            return Err(Error::law(
                                "whisker functoriality",
                                format!("{} |> ({} . {})", name(a), self.cat.arrow(g).name, self.cat.arrow(f).name),
                            ));
                        }
                        if self.rw[a][gf] != self.cat.compose(self.rw[a][g], self.rw[a][f]) {
                            return Err(Error::law(
                                "whisker functoriality",
                                format!("({} . {}) <| {}", self.cat.arrow(g).name, self.cat.arrow(f).name, name(a)),
                            ));
                        }
                    }
                }
            }
            for b in 0..n {
                let ab = self.tensor_obj(a, b);
                for f in 0..m {
                    if self.lw[ab][f] != self.lw[a][self.lw[b][f]] {
                        return Err(Error::law(
                            "whisker associativity",
                            format!("({}{}) |> {}", name(a), name(b), self.cat.arrow(f).name),
                        ));
                    }
                    if self.rw[ab][f] != self.rw[b][self.rw[a][f]] {
                        return Err(Error::law(
                            "whisker associativity",
                            format!("{} <| ({}{})", self.cat.arrow(f).name, name(a), name(b)),
                        ));
                    }
                    if self.rw[b][self.lw[a][f]] != self.lw[a][self.rw[b][f]] {
                        return Err(Error::law(
                            "whisker compatibility",
                            format!("{} |> {} <| {}", name(a), self.cat.arrow(f).name, name(b)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn unit(&self) -> Obj {
        self.unit
    }

    pub fn tensor_obj(&self, a: Obj, b: Obj) -> Obj {
        self.obj_tensor[a][b]
    }

    pub fn tensor_objs(&self, objs: &[Obj]) -> Obj {
        objs.iter().fold(self.unit, |acc, &o| self.tensor_obj(acc, o))
    }

    pub fn whisker_l(&self, a: Obj, f: Arr) -> Arr {
        self.lw[a][f]
    }

    pub fn whisker_r(&self, f: Arr, a: Obj) -> Arr {
        self.rw[a][f]
    }

    /// l |> f <| r, unambiguous by the compatibility law.
    pub fn whisker(&self, l: Obj, f: Arr, r: Obj) -> Arr {
        self.whisker_l(l, self.whisker_r(f, r))
    }

    /// f on the left wires, then g on the right wires, versus the other
    /// order; true when both routes agree.
    pub fn interchange_holds(&self, f: Arr, g: Arr) -> bool {
        let (fd, gd) = (self.cat.arrow(f), self.cat.arrow(g));
        let left_first = self.cat.compose(self.whisker_l(fd.dst, g), self.whisker_r(f, gd.src));
        let right_first = self.cat.compose(self.whisker_r(f, gd.dst), self.whisker_l(fd.src, g));
        left_first == right_first
    }

    pub fn interchange_witnesses(&self) -> Vec<(Arr, Arr)> {
        let m = self.cat.arrow_count();
        let mut out = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if !self.interchange_holds(f, g) {
                    out.push((f, g));
                }
            }
        }
        out
    }

    pub fn is_monoidal(&self) -> bool {
        self.interchange_witnesses().is_empty()
    }

    /// Arrows that interchange with every arrow on either side.
    pub fn is_central(&self, f: Arr) -> bool {
        (0..self.cat.arrow_count())
            .all(|g| self.interchange_holds(f, g) && self.interchange_holds(g, f))
    }
}

/// Canonical structure on a one-object monoid category: whiskering is the
/// identity, so the category is premonoidal for any monoid and monoidal
/// exactly when the monoid is commutative.
pub fn monoid_mon(cat: &Arc<FinCat>) -> Result<MonStructure> {
    if cat.object_count() != 1 {
        return Err(Error::mismatch("one-object category expected"));
    }
    let m = cat.arrow_count();
    MonStructure::new(
        cat.clone(),
        vec![vec![0]],
        0,
        vec![(0..m).collect()],
        vec![(0..m).collect()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::cat::{monoid_cat, Monoid};

    #[test]
    fn one_object_monoid_structures_validate() {
        let m3 = monoid_mon(&monoid_cat(&Monoid::m3()).unwrap()).unwrap();
        assert!(!m3.is_monoidal());
        let z2 = monoid_mon(&monoid_cat(&Monoid::z2()).unwrap()).unwrap();
        assert!(z2.is_monoidal());
    }

    #[test]
    fn m3_interchange_witness_is_the_ab_pair() {
        let cat = monoid_cat(&Monoid::m3()).unwrap();
        let mon = monoid_mon(&cat).unwrap();
        // arrows 1 = a, 2 = b: left-first accumulates a.b = a, right-first b.a = b
        assert!(!mon.interchange_holds(1, 2));
        assert!(mon.interchange_holds(0, 1));
        assert!(mon.is_central(0));
        assert!(!mon.is_central(1));
    }
}
