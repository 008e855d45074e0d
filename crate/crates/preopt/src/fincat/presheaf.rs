//! Contravariant set-valued functors on a finite category, as tables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{Arr, FinCat, Obj};

#[derive(Debug, Clone)]
pub struct Presheaf {
    pub name: String,
    pub cat: Arc<FinCat>,
    value: Vec<Vec<String>>,
    /// act[f: a -> b][x in F(b)] -> index in F(a)
    act: Vec<Vec<usize>>,
}

impl Presheaf {
    pub fn build(
        name: impl Into<String>,
        cat: Arc<FinCat>,
        mut elems: impl FnMut(Obj) -> Vec<String>,
        mut act_fn: impl FnMut(Arr, usize) -> usize,
    ) -> Result<Presheaf> {
        let value: Vec<Vec<String>> = (0..cat.object_count()).map(|o| elems(o)).collect();
        let mut act = Vec::with_capacity(cat.arrow_count());
        for f in cat.arrows_iter() {
            let fd = cat.arrow(f);
            let n_from = value[fd.dst].len();
            let n_to = value[fd.src].len();
            let tab: Vec<usize> = (0..n_from).map(|x| act_fn(f, x)).collect();
            if tab.iter().any(|&y| y >= n_to) {
                return Err(Error::mismatch(format!(
                    "action of {} lands outside the value set",
                    fd.name
                )));
            }
            act.push(tab);
        }
        let p = Presheaf { name: name.into(), cat, value, act };
        p.check_functorial()?;
        Ok(p)
    }

    fn check_functorial(&self) -> Result<()> {
        for o in 0..self.cat.object_count() {
            for x in 0..self.size(o) {
                if self.act(self.cat.id(o), x) != x {
                    return Err(Error::law("presheaf identity", format!("{} at {}", self.name, o)));
                }
            }
        }
        for f in self.cat.arrows_iter() {
            for g in self.cat.arrows_iter() {
                if let Some(gf) = self.cat.try_compose(g, f) {
                    let top = self.cat.arrow(g).dst;
                    for x in 0..self.size(top) {
                        if self.act(gf, x) != self.act(f, self.act(g, x)) {
                            return Err(Error::law(
                                "presheaf composition",
                                format!(
                                    "{}: {} . {}",
                                    self.name,
                                    self.cat.arrow(g).name,
                                    self.cat.arrow(f).name
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self, o: Obj) -> usize {
        self.value[o].len()
    }

    pub fn elem_name(&self, o: Obj, x: usize) -> &str {
        &self.value[o][x]
    }

    /// restrict along f: a -> b, sending F(b) into F(a)
    pub fn act(&self, f: Arr, x: usize) -> usize {
        self.act[f][x]
    }

    pub fn total_size(&self) -> usize {
        self.value.iter().map(|v| v.len()).sum()
    }

    /// hom(-, o)
    pub fn representable(cat: &Arc<FinCat>, o: Obj) -> Presheaf {
        let c = cat.clone();
        Presheaf::build(
            format!("y({})", cat.object_name(o)),
            cat.clone(),
            |a| c.hom(a, o).iter().map(|&f| c.arrow(f).name.clone()).collect(),
            |f, x| {
                let fd = c.arrow(f);
                let h = c.hom(fd.dst, o)[x];
                let hf = c.compose(h, f);
                c.hom(fd.src, o).iter().position(|&g| g == hf).unwrap()
            },
        )
        .expect("representables are functorial")
    }

    pub fn constant(cat: &Arc<FinCat>, k: usize) -> Presheaf {
        Presheaf::build(
            format!("const{k}"),
            cat.clone(),
            |_| (0..k).map(|i| format!("k{i}")).collect(),
            |_, x| x,
        )
        .expect("constant presheaves are functorial")
    }
}

/// All natural transformations F => G between presheaves on the same base,
/// each as a per-object table. Enumeration prunes on naturality as soon as
/// both endpoints of an arrow are assigned.
pub fn nat_presheaves(f: &Presheaf, g: &Presheaf, budget: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    use crate::fincat::cat::same_cat;
    if !same_cat(&f.cat, &g.cat) {
        return Err(Error::mismatch("transformations need a shared base"));
    }
    let cat = &f.cat;
    let n = cat.object_count();
    let mut total = 1usize;
    for o in 0..n {
        let choices = if f.size(o) == 0 {
            1
        } else if g.size(o) == 0 {
            0
        } else {
            g.size(o).saturating_pow(f.size(o) as u32)
        };
        total = total.saturating_mul(choices.max(1));
    }
    if total > budget {
        return Err(Error::SizeExceeded(format!(
            "transformation search space {total}, budget {budget}"
        )));
    }
    // arrows checkable once objects 0..=o are assigned
    let mut checks: Vec<Vec<Arr>> = vec![Vec::new(); n];
    for w in cat.arrows_iter() {
        let wd = cat.arrow(w);
        checks[wd.src.max(wd.dst)].push(w);
    }
    let mut out = Vec::new();
    let mut theta: Vec<Vec<usize>> = Vec::new();
    fn rec(
        f: &Presheaf,
        g: &Presheaf,
        checks: &[Vec<Arr>],
        theta: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let o = theta.len();
        if o == f.cat.object_count() {
            out.push(theta.clone());
            return;
        }
        let (nf, ng) = (f.size(o), g.size(o));
        let count = if nf == 0 { 1 } else { ng.pow(nf as u32) };
        for mut code in 0..count {
            let mut tab = Vec::with_capacity(nf);
            for _ in 0..nf {
                tab.push(code % ng);
                code /= ng;
            }
            theta.push(tab);
            let ok = checks[o].iter().all(|&w| {
                let wd = f.cat.arrow(w);
                (0..f.size(wd.dst))
                    .all(|x| theta[wd.src][f.act(w, x)] == g.act(w, theta[wd.dst][x]))
            });
            if ok {
                rec(f, g, checks, theta, out);
            }
            theta.pop();
        }
    }
    rec(f, g, &checks, &mut theta, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::cat::walking_arrow;

    #[test]
    fn representable_sizes_are_hom_set_sizes() {
        let w = walking_arrow();
        let y1 = Presheaf::representable(&w, 1);
        assert_eq!(y1.size(0), 1);
        assert_eq!(y1.size(1), 1);
        let y0 = Presheaf::representable(&w, 0);
        assert_eq!(y0.size(0), 1);
        assert_eq!(y0.size(1), 0);
    }

    #[test]
    fn broken_action_is_rejected() {
        let w = walking_arrow();
        // constant except the non-identity arrow swaps, breaking composition
        // with itself only if composable; here u . u is not composable, so
        // break the identity law instead
        let bad = Presheaf::build(
            "bad",
            w.clone(),
            |_| vec!["x".into(), "y".into()],
            |f, x| if f == 0 { 1 - x } else { x },
        );
        assert!(matches!(bad, Err(Error::LawViolation { .. })));
    }
}
