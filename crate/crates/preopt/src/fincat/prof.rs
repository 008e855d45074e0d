//! Set-valued bimodules between finite categories, their coends (union-find
//! coequalizers) and ends (filtered product enumeration).

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{same_cat, Arr, FinCat, Obj};

/// P : src -|-> dst with value sets indexed (d, c), d acting contravariantly
/// through `dst` and c covariantly through `src`.
#[derive(Debug, Clone)]
pub struct FinProfunctor {
    pub name: String,
    pub src: Arc<FinCat>,
    pub dst: Arc<FinCat>,
    value: Vec<Vec<Vec<String>>>,
    /// lact[f: dst arrow d'->d][c][x in P(d,c)] -> index in P(d',c)
    lact: Vec<Vec<Vec<usize>>>,
    /// ract[g: src arrow c->c'][d][x in P(d,c)] -> index in P(d,c')
    ract: Vec<Vec<Vec<usize>>>,
}

impl FinProfunctor {
    /// Assemble from closures and validate the bimodule laws exhaustively.
    pub fn build(
        name: impl Into<String>,
        src: Arc<FinCat>,
        dst: Arc<FinCat>,
        mut elems: impl FnMut(Obj, Obj) -> Vec<String>,
        mut lact_fn: impl FnMut(Arr, Obj, usize) -> usize,
        mut ract_fn: impl FnMut(Arr, Obj, usize) -> usize,
    ) -> Result<FinProfunctor> {
        let value: Vec<Vec<Vec<String>>> = (0..dst.object_count())
            .map(|d| (0..src.object_count()).map(|c| elems(d, c)).collect())
            .collect();
        let mut lact = Vec::with_capacity(dst.arrow_count());
        for f in dst.arrows_iter() {
            let fd = dst.arrow(f);
            let mut per_c = Vec::with_capacity(src.object_count());
            for c in 0..src.object_count() {
                let n_from = value[fd.dst][c].len();
                let n_to = value[fd.src][c].len();
                let tab: Vec<usize> = (0..n_from).map(|x| lact_fn(f, c, x)).collect();
                if tab.iter().any(|&y| y >= n_to) {
                    return Err(Error::mismatch(format!(
                        "left action of {} lands outside the value set",
                        fd.name
                    )));
                }
                per_c.push(tab);
            }
            lact.push(per_c);
        }
        let mut ract = Vec::with_capacity(src.arrow_count());
        for g in src.arrows_iter() {
            let gd = src.arrow(g);
            let mut per_d = Vec::with_capacity(dst.object_count());
            for d in 0..dst.object_count() {
                let n_from = value[d][gd.src].len();
                let n_to = value[d][gd.dst].len();
                let tab: Vec<usize> = (0..n_from).map(|x| ract_fn(g, d, x)).collect();
                if tab.iter().any(|&y| y >= n_to) {
                    return Err(Error::mismatch(format!(
                        "right action of {} lands outside the value set",
                        gd.name
                    )));
                }
                per_d.push(tab);
            }
            ract.push(per_d);
        }
        let p = FinProfunctor { name: name.into(), src, dst, value, lact, ract };
        p.check_bimodule()?;
        Ok(p)
    }

    fn check_bimodule(&self) -> Result<()> {
        for d in 0..self.dst.object_count() {
            for c in 0..self.src.object_count() {
                for x in 0..self.size(d, c) {
                    if self.lact(self.dst.id(d), c, x) != x {
                        return Err(Error::law("bimodule identity", format!("{} lact id", self.name)));
                    }
                    if self.ract(self.src.id(c), d, x) != x {
                        return Err(Error::law("bimodule identity", format!("{} ract id", self.name)));
                    }
                }
            }
        }
        // contravariant: lact(f2 . f1) = lact(f1) after lact(f2)
        for f1 in self.dst.arrows_iter() {
            for f2 in self.dst.arrows_iter() {
                if let Some(ff) = self.dst.try_compose(f2, f1) {
                    for c in 0..self.src.object_count() {
                        let d_top = self.dst.arrow(f2).dst;
                        for x in 0..self.size(d_top, c) {
                            if self.lact(ff, c, x) != self.lact(f1, c, self.lact(f2, c, x)) {
                                return Err(Error::law(
                                    "bimodule composition",
                                    format!(
                                        "{}: lact {} . {}",
                                        self.name,
                                        self.dst.arrow(f2).name,
                                        self.dst.arrow(f1).name
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        for g1 in self.src.arrows_iter() {
            for g2 in self.src.arrows_iter() {
                if let Some(gg) = self.src.try_compose(g2, g1) {
                    for d in 0..self.dst.object_count() {
                        let c_bot = self.src.arrow(g1).src;
                        for x in 0..self.size(d, c_bot) {
                            if self.ract(gg, d, x) != self.ract(g2, d, self.ract(g1, d, x)) {
                                return Err(Error::law(
                                    "bimodule composition",
                                    format!(
                                        "{}: ract {} . {}",
                                        self.name,
                                        self.src.arrow(g2).name,
                                        self.src.arrow(g1).name
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        for f in self.dst.arrows_iter() {
            for g in self.src.arrows_iter() {
                let d_top = self.dst.arrow(f).dst;
                let c_bot = self.src.arrow(g).src;
                for x in 0..self.size(d_top, c_bot) {
                    if self.ract(g, self.dst.arrow(f).src, self.lact(f, c_bot, x))
                        != self.lact(f, self.src.arrow(g).dst, self.ract(g, d_top, x))
                    {
                        return Err(Error::law(
                            "bimodule commutation",
                            format!("{}: {} vs {}", self.name, self.dst.arrow(f).name, self.src.arrow(g).name),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self, d: Obj, c: Obj) -> usize {
        self.value[d][c].len()
    }

    pub fn elem_name(&self, d: Obj, c: Obj, x: usize) -> &str {
        &self.value[d][c][x]
    }

    /// act by f: d' -> d, sending P(d, c) into P(d', c)
    pub fn lact(&self, f: Arr, c: Obj, x: usize) -> usize {
        self.lact[f][c][x]
    }

    /// act by g: c -> c', sending P(d, c) into P(d, c')
    pub fn ract(&self, g: Arr, d: Obj, x: usize) -> usize {
        self.ract[g][d][x]
    }

    pub fn is_endo(&self) -> bool {
        same_cat(&self.src, &self.dst)
    }

    pub fn total_size(&self) -> usize {
        self.value.iter().flatten().map(|v| v.len()).sum()
    }
}

/// hom as a bimodule: value (d, c) = hom(d, c), precompose/postcompose.
pub fn hom_profunctor(c: &Arc<FinCat>) -> FinProfunctor {
    let cat = c.clone();
    FinProfunctor::build(
        format!("hom({})", c.name()),
        c.clone(),
        c.clone(),
        |d, co| cat.hom(d, co).iter().map(|&a| cat.arrow(a).name.clone()).collect(),
        |f, co, x| {
            let d = cat.arrow(f).dst;
            let u = cat.hom(d, co)[x];
            let v = cat.compose(u, f);
            cat.hom(cat.arrow(f).src, co).iter().position(|&a| a == v).unwrap()
        },
        |g, d, x| {
            let co = cat.arrow(g).src;
            let u = cat.hom(d, co)[x];
            let v = cat.compose(g, u);
            cat.hom(d, cat.arrow(g).dst).iter().position(|&a| a == v).unwrap()
        },
    )
    .expect("the hom bimodule satisfies its laws")
}

pub fn constant_profunctor(c: &Arc<FinCat>, k: usize) -> FinProfunctor {
    FinProfunctor::build(
        format!("const{k}"),
        c.clone(),
        c.clone(),
        |_, _| (0..k).map(|i| format!("k{i}")).collect(),
        |_, _, x| x,
        |_, _, x| x,
    )
    .expect("constant bimodules satisfy their laws")
}

// ── union-find ──────────────────────────────────────────────────────────

pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    /// class ids numbered by first appearance, plus per-element assignment
    pub fn classes(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut assign = vec![0usize; n];
        for x in 0..n {
            let r = self.find(x);
            let next = index.len();
            let id = *index.entry(r).or_insert(next);
            assign[x] = id;
        }
        (index.len(), assign)
    }
}

// ── coend ───────────────────────────────────────────────────────────────

/// Quotient of the diagonal values of an endo-bimodule by extranaturality.
#[derive(Debug, Clone)]
pub struct CoendResult {
    /// members of each class: (object, element index), sorted
    pub classes: Vec<Vec<(Obj, usize)>>,
    coproj: HashMap<(Obj, usize), usize>,
}

impl CoendResult {
    pub fn coproj(&self, c: Obj, x: usize) -> usize {
        self.coproj[&(c, x)]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

pub fn coend(p: &FinProfunctor) -> Result<CoendResult> {
    if !p.is_endo() {
        return Err(Error::mismatch("coend requires an endo-bimodule"));
    }
    let cat = &p.src;
    let mut offset: Vec<usize> = Vec::with_capacity(cat.object_count());
    let mut total = 0usize;
    for c in 0..cat.object_count() {
        offset.push(total);
        total += p.size(c, c);
    }
    let mut uf = UnionFind::new(total);
    // for f: c -> c' and x in P(c', c): coproj_{c'}(ract f x) = coproj_c(lact f x)
    for f in cat.arrows_iter() {
        let (c, c1) = (cat.arrow(f).src, cat.arrow(f).dst);
        for x in 0..p.size(c1, c) {
            let up = p.ract(f, c1, x);
            let down = p.lact(f, c, x);
            uf.union(offset[c1] + up, offset[c] + down);
        }
    }
    let (n_classes, assign) = uf.classes();
    let mut classes = vec![Vec::new(); n_classes];
    let mut coproj = HashMap::new();
    for c in 0..cat.object_count() {
        for x in 0..p.size(c, c) {
            let id = assign[offset[c] + x];
            classes[id].push((c, x));
            coproj.insert((c, x), id);
        }
    }
    Ok(CoendResult { classes, coproj })
}

// ── two-factor coends ───────────────────────────────────────────────────

/// Quotient of Σ_x Cov(x) (x) Con(x) by the usual zig-zag relations, for a
/// covariant family Cov and a contravariant family Con indexed by the same
/// category. Elements are (object, cov index, con index).
#[derive(Debug, Clone)]
pub struct PairCoend {
    pub classes: Vec<Vec<(Obj, usize, usize)>>,
    coproj: HashMap<(Obj, usize, usize), usize>,
}

impl PairCoend {
    pub fn coproj(&self, x: Obj, l: usize, r: usize) -> usize {
        self.coproj[&(x, l, r)]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// smallest member, usable as a representative
    pub fn rep(&self, id: usize) -> (Obj, usize, usize) {
        self.classes[id][0]
    }

    pub fn total_elements(&self) -> usize {
        self.classes.iter().map(|c| c.len()).sum()
    }
}

/// cov_push moves e in Cov(src u) to Cov(dst u); con_pull moves e in
/// Con(dst u) back to Con(src u). For every u and compatible pair the
/// elements (dst u, push e, r) and (src u, e, pull r) are merged.
pub fn pair_coend(
    base: &Arc<FinCat>,
    budget: usize,
    mut cov_size: impl FnMut(Obj) -> usize,
    mut con_size: impl FnMut(Obj) -> usize,
    mut cov_push: impl FnMut(Arr, usize) -> usize,
    mut con_pull: impl FnMut(Arr, usize) -> usize,
) -> Result<PairCoend> {
    let n = base.object_count();
    let sizes: Vec<(usize, usize)> = (0..n).map(|x| (cov_size(x), con_size(x))).collect();
    let mut offset = Vec::with_capacity(n);
    let mut total = 0usize;
    for x in 0..n {
        offset.push(total);
        total = total.saturating_add(sizes[x].0.saturating_mul(sizes[x].1));
        if total > budget {
            return Err(Error::SizeExceeded(format!(
                "two-factor coend has more than {budget} elements"
            )));
        }
    }
    let idx = |x: Obj, l: usize, r: usize| offset[x] + l * sizes[x].1 + r;
    let mut uf = UnionFind::new(total);
    for u in base.arrows_iter() {
        let (x, x1) = (base.arrow(u).src, base.arrow(u).dst);
        for l in 0..sizes[x].0 {
            let pushed = cov_push(u, l);
            debug_assert!(pushed < sizes[x1].0, "covariant push out of range");
            for r in 0..sizes[x1].1 {
                let pulled = con_pull(u, r);
                debug_assert!(pulled < sizes[x].1, "contravariant pull out of range");
                uf.union(idx(x1, pushed, r), idx(x, l, pulled));
            }
        }
    }
    let (n_classes, assign) = uf.classes();
    let mut classes = vec![Vec::new(); n_classes];
    let mut coproj = HashMap::new();
    for x in 0..n {
        for l in 0..sizes[x].0 {
            for r in 0..sizes[x].1 {
                let id = assign[idx(x, l, r)];
                classes[id].push((x, l, r));
                coproj.insert((x, l, r), id);
            }
        }
    }
    Ok(PairCoend { classes, coproj })
}

// ── end ─────────────────────────────────────────────────────────────────

/// Families (x_c in P(c,c))_c with ract_f(x_c) = lact_f(x_{c'}) for every
/// f: c -> c'. Enumerated by a pruned product walk; the worst-case product
/// size is guarded by `budget`.
pub fn end_(p: &FinProfunctor, budget: usize) -> Result<Vec<Vec<usize>>> {
    if !p.is_endo() {
        return Err(Error::mismatch("end requires an endo-bimodule"));
    }
    let cat = &p.src;
    let n = cat.object_count();
    let mut product = 1usize;
    for c in 0..n {
        product = product.saturating_mul(p.size(c, c).max(1));
        if product > budget {
            return Err(Error::SizeExceeded(format!(
                "end product of {} exceeds budget {budget}",
                p.name
            )));
        }
    }
    let mut out = Vec::new();
    let mut family = vec![0usize; n];
    fn consistent(p: &FinProfunctor, family: &[usize], upto: usize) -> bool {
        let cat = &p.src;
        for f in cat.arrows_iter() {
            let (c, c1) = (cat.arrow(f).src, cat.arrow(f).dst);
            if c < upto && c1 < upto {
                if p.ract(f, c, family[c]) != p.lact(f, c1, family[c1]) {
                    return false;
                }
            }
        }
        true
    }
    fn walk(p: &FinProfunctor, family: &mut Vec<usize>, c: Obj, out: &mut Vec<Vec<usize>>) {
        let n = p.src.object_count();
        if c == n {
            out.push(family.clone());
            return;
        }
        if p.size(c, c) == 0 {
            return;
        }
        for x in 0..p.size(c, c) {
            family[c] = x;
            if consistent(p, family, c + 1) {
                walk(p, family, c + 1, out);
            }
        }
    }
    // an empty diagonal value set anywhere kills every family
    if (0..n).any(|c| p.size(c, c) == 0) {
        return Ok(Vec::new());
    }
    walk(p, &mut family, 0, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::cat::{discrete, terminal, walking_arrow};

    #[test]
    fn hom_coend_of_walking_arrow_has_two_classes() {
        // C(1,0) is empty so no relation merges the identity components
        let c = walking_arrow();
        let r = coend(&hom_profunctor(&c)).unwrap();
        assert_eq!(r.class_count(), 2);
    }

    #[test]
    fn hom_coend_of_discrete_counts_objects() {
        let c = discrete(5);
        assert_eq!(coend(&hom_profunctor(&c)).unwrap().class_count(), 5);
    }

    #[test]
    fn constant_coend_over_connected_base_counts_the_set() {
        let c = walking_arrow();
        let p = constant_profunctor(&c, 3);
        // u: 0 -> 1 relates the two coprojections pointwise
        let r = coend(&p).unwrap();
        assert_eq!(r.class_count(), 3);
        for k in 0..3 {
            assert_eq!(r.coproj(0, k), r.coproj(1, k));
        }
    }

    #[test]
    fn hom_end_is_the_centre_like_set() {
        assert_eq!(end_(&hom_profunctor(&terminal()), 1000).unwrap().len(), 1);
        // walking arrow: only the identity family is natural
        assert_eq!(end_(&hom_profunctor(&walking_arrow()), 1000).unwrap().len(), 1);
    }

    #[test]
    fn end_of_constant_over_discrete_is_the_full_product() {
        let c = discrete(2);
        let fams = end_(&constant_profunctor(&c, 2), 1000).unwrap();
        assert_eq!(fams.len(), 4);
    }

    #[test]
    fn end_budget_trips() {
        let c = discrete(8);
        let e = end_(&constant_profunctor(&c, 10), 100);
        assert!(matches!(e, Err(Error::SizeExceeded(_))));
    }

    #[test]
    fn coend_universal_property_factorization_is_unique() {
        // post-compose coprojections with an arbitrary function: the induced
        // family is extranatural and factors uniquely through the classes
        let c = walking_arrow();
        let p = hom_profunctor(&c);
        let r = coend(&p).unwrap();
        let target = |class: usize| (class * 7 + 3) % 5;
        // extranaturality of w := target . coproj over every arrow
        for f in c.arrows_iter() {
            let (a, b) = (c.arrow(f).src, c.arrow(f).dst);
            for x in 0..p.size(b, a) {
                let up = p.ract(f, b, x);
                let down = p.lact(f, a, x);
                assert_eq!(target(r.coproj(b, up)), target(r.coproj(a, down)));
            }
        }
        // joint surjectivity makes the factoring map unique
        assert!(r.classes.iter().all(|members| !members.is_empty()));
    }
}
