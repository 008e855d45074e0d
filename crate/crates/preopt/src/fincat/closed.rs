//! Day tensor of presheaves and the matching internal hom.
//!
//! The tensor is one coend over the square of the base per output object.
//! The hom [G,H](a) is the displayed end: a function P1L(c, (a,d)) ->
//! Set(G(d), H(c)) for every pair (c,d), dinatural in both indices.  It is
//! materialized as a filtered double product, so sizes are guarded by a
//! budget.  closure_check builds the currying bijection element by element
//! instead of trusting the cardinalities.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::cat::{product, same_cat, Arr, FinCat, Obj, ProductCat};
use super::mon::MonStructure;
use super::presheaf::{nat_presheaves, Presheaf};
use super::prof::{pair_coend, FinProfunctor, PairCoend};
use super::promonoidal::representable;
use crate::error::{Error, Result};

/// (F (*) G)(c) = integral^{ab} C(c, a(x)b) (x) F(a) (x) G(b).
pub struct DayTensor {
    pub ps: Presheaf,
    prod: ProductCat,
    gsizes: Vec<usize>,
    co: Vec<PairCoend>,
}

impl DayTensor {
    pub fn coproj(&self, c: Obj, a: Obj, b: Obj, hi: usize, xi: usize, yi: usize) -> usize {
        self.co[c].coproj(self.prod.obj(a, b), hi, xi * self.gsizes[b] + yi)
    }
}

pub fn day_tensor(
    mon: &MonStructure,
    f: &Presheaf,
    g: &Presheaf,
    budget: usize,
) -> Result<DayTensor> {
    let base = mon.cat.clone();
    if !same_cat(&f.cat, &base) || !same_cat(&g.cat, &base) {
        return Err(Error::mismatch("presheaves live on the base of the tensor"));
    }
    let prod = product(&base, &base);
    let n = base.object_count();
    let gsizes: Vec<usize> = (0..n).map(|b| g.size(b)).collect();
    let tensor_arr = |v: Arr, w: Arr| -> Arr {
        let (vd, wd) = (base.arrow(v), base.arrow(w));
        base.compose(mon.whisker_r(v, wd.dst), mon.whisker_l(vd.src, w))
    };
    let mut co = Vec::with_capacity(n);
    for c in 0..n {
        let mut pos: HashMap<(Obj, Arr), usize> = HashMap::new();
        for t in 0..n {
            for (i, &ar) in base.hom(c, t).iter().enumerate() {
                pos.insert((t, ar), i);
            }
        }
        co.push(pair_coend(
            &prod.cat,
            budget,
            |ab| {
                let (a, b) = prod.split_obj(ab);
                base.hom(c, mon.tensor_obj(a, b)).len()
            },
            |ab| {
                let (a, b) = prod.split_obj(ab);
                f.size(a) * g.size(b)
            },
            |u, e| {
                let (v, w) = prod.split_arr(u);
                let (vd, wd) = (base.arrow(v), base.arrow(w));
                let h = base.hom(c, mon.tensor_obj(vd.src, wd.src))[e];
                pos[&(
                    mon.tensor_obj(vd.dst, wd.dst),
                    base.compose(tensor_arr(v, w), h),
                )]
            },
            |u, e| {
                let (v, w) = prod.split_arr(u);
                let wd = base.arrow(w);
                let (xi, yi) = (e / g.size(wd.dst), e % g.size(wd.dst));
                f.act(v, xi) * g.size(wd.src) + g.act(w, yi)
            },
        )?);
    }
    let ps = Presheaf::build(
        format!("{}(*){}", f.name, g.name),
        base.clone(),
        |c| (0..co[c].class_count()).map(|k| format!("t{k}")).collect(),
        |w, x| {
            let wd = base.arrow(w);
            let (ab, hi, ei) = co[wd.dst].classes[x][0];
            let (a, b) = prod.split_obj(ab);
            let h = base.hom(wd.dst, mon.tensor_obj(a, b))[hi];
            let moved = base.compose(h, w);
            let hi2 = base
                .hom(wd.src, mon.tensor_obj(a, b))
                .iter()
                .position(|&q| q == moved)
                .unwrap();
            co[wd.src].coproj(ab, hi2, ei)
        },
    )?;
    Ok(DayTensor { ps, prod, gsizes, co })
}

/// One dinaturality constraint between two slot tables.
struct Rel {
    from: usize,
    to: usize,
    arr: Arr,
    out_side: bool,
}

/// The internal hom as a presheaf on the tight category, together with the
/// slot layout needed to read elements back as families.
#[derive(Debug)]
pub struct ClosedHom {
    pub ps: Presheaf,
    slots: Vec<Vec<(Obj, Obj, usize)>>,
    families: Vec<Vec<Vec<Vec<usize>>>>,
    index: Vec<HashMap<Vec<Vec<usize>>, usize>>,
}

impl ClosedHom {
    pub fn slots(&self, a: Obj) -> &[(Obj, Obj, usize)] {
        &self.slots[a]
    }

    pub fn family(&self, a: Obj, e: usize) -> &[Vec<usize>] {
        &self.families[a][e]
    }

    pub fn find(&self, a: Obj, fam: &[Vec<usize>]) -> Option<usize> {
        self.index[a].get(fam).copied()
    }
}

/// [G,H](a): for every (c,d) and every p in P1L(c,(a,d)) a function
/// G(d) -> H(c), subject to dinaturality along every arrow of the loose
/// category in both the c and the d slot.
pub fn closed_hom(
    c0: &Arc<FinCat>,
    g: &Presheaf,
    h: &Presheaf,
    p1l: &FinProfunctor,
    budget: usize,
) -> Result<ClosedHom> {
    let c1 = g.cat.clone();
    if !same_cat(&h.cat, &c1) {
        return Err(Error::mismatch("hom arguments live on the same category"));
    }
    let prod01 = product(c0, &c1);
    if !same_cat(&p1l.dst, &c1) || !same_cat(&p1l.src, &prod01.cat) {
        return Err(Error::mismatch("the proaction is not a bimodule over tight x loose"));
    }
    let n1 = c1.object_count();

    let mut slots: Vec<Vec<(Obj, Obj, usize)>> = Vec::new();
    let mut families: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    let mut index: Vec<HashMap<Vec<Vec<usize>>, usize>> = Vec::new();
    for a in 0..c0.object_count() {
        let mut sl = Vec::new();
        let mut slot_idx: HashMap<(Obj, Obj, usize), usize> = HashMap::new();
        for c in 0..n1 {
            for d in 0..n1 {
                for p in 0..p1l.size(c, prod01.obj(a, d)) {
                    slot_idx.insert((c, d, p), sl.len());
                    sl.push((c, d, p));
                }
            }
        }
        let mut total: u128 = 1;
        for &(c, d, _) in &sl {
            total = total.saturating_mul((h.size(c) as u128).saturating_pow(g.size(d) as u32));
        }
        if total > budget as u128 {
            return Err(Error::SizeExceeded(format!(
                "internal hom at {} wants {} raw families, budget {}",
                c0.object_name(a),
                total,
                budget
            )));
        }
        let mut rels = Vec::new();
        for (k, &(c, d, p)) in sl.iter().enumerate() {
            let pair = prod01.obj(a, d);
            for u in c1.arrows_iter() {
                let ud = c1.arrow(u);
                if ud.dst == c {
                    let to = slot_idx[&(ud.src, d, p1l.lact(u, pair, p))];
                    rels.push(Rel { from: k, to, arr: u, out_side: true });
                }
                if ud.src == d {
                    let moved = p1l.ract(prod01.arr(c0.id(a), u), c, p);
                    let to = slot_idx[&(c, ud.dst, moved)];
                    rels.push(Rel { from: k, to, arr: u, out_side: false });
                }
            }
        }
        let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); sl.len()];
        for (i, r) in rels.iter().enumerate() {
            by_last[r.from.max(r.to)].push(i);
        }
        let mut found: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut cur: Vec<Vec<usize>> = Vec::new();
        enumerate_slot(&sl, g, h, &rels, &by_last, &mut cur, &mut found);
        let mut idx = HashMap::new();
        for (i, fam) in found.iter().enumerate() {
            idx.insert(fam.clone(), i);
        }
        slots.push(sl);
        families.push(found);
        index.push(idx);
    }

    let ps = Presheaf::build(
        format!("[{},{}]", g.name, h.name),
        c0.clone(),
        |a| (0..families[a].len()).map(|i| format!("e{i}")).collect(),
        |w, x| {
            let wd = c0.arrow(w);
            let fam = &families[wd.dst][x];
            let from_slots: HashMap<(Obj, Obj, usize), usize> = slots[wd.dst]
                .iter()
                .enumerate()
                .map(|(i, &s)| (s, i))
                .collect();
            let mut out = Vec::with_capacity(slots[wd.src].len());
            for &(c, d, q) in &slots[wd.src] {
                let up = p1l.ract(prod01.arr(w, c1.id(d)), c, q);
                out.push(fam[from_slots[&(c, d, up)]].clone());
            }
            *index[wd.src].get(&out).expect("transported family is dinatural")
        },
    )?;
    Ok(ClosedHom { ps, slots, families, index })
}

fn enumerate_slot(
    sl: &[(Obj, Obj, usize)],
    g: &Presheaf,
    h: &Presheaf,
    rels: &[Rel],
    by_last: &[Vec<usize>],
    cur: &mut Vec<Vec<usize>>,
    found: &mut Vec<Vec<Vec<usize>>>,
) {
    let k = cur.len();
    if k == sl.len() {
        found.push(cur.clone());
        return;
    }
    let (c, d, _) = sl[k];
    let (gsz, hsz) = (g.size(d), h.size(c));
    let count = hsz.checked_pow(gsz as u32).unwrap_or(0);
    if gsz > 0 && hsz == 0 {
        return;
    }
    for code in 0..count.max(1) {
        let mut table = Vec::with_capacity(gsz);
        let mut rest = code;
        for _ in 0..gsz {
            table.push(rest % hsz.max(1));
            rest /= hsz.max(1);
        }
        cur.push(table);
        let ok = by_last[k].iter().all(|&ri| {
            let r = &rels[ri];
            if r.out_side {
                (0..cur[r.from].len()).all(|y| cur[r.to][y] == h.act(r.arr, cur[r.from][y]))
            } else {
                (0..cur[r.to].len()).all(|y| cur[r.to][y] == cur[r.from][g.act(r.arr, y)])
            }
        });
        if ok {
            enumerate_slot(sl, g, h, rels, by_last, cur, found);
        }
        cur.pop();
    }
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub ok: bool,
    pub tensor_nats: usize,
    pub hom_nats: usize,
    pub witness: Option<String>,
}

/// Currying for the Day structure of a monoidal base: every transformation
/// F (*) G => H transposes to one F => [G,H], bijectively.  The transpose
/// is constructed per element and looked up on the other side.
pub fn closure_check(
    mon: &MonStructure,
    f: &Presheaf,
    g: &Presheaf,
    h: &Presheaf,
    budget: usize,
) -> Result<ClosureReport> {
    let base = mon.cat.clone();
    if !same_cat(&f.cat, &base) {
        return Err(Error::mismatch("presheaves live on the base of the tensor"));
    }
    let p1l = representable(mon)?.p;
    let day = day_tensor(mon, f, g, budget)?;
    let lhs = nat_presheaves(&day.ps, h, budget)?;
    let ch = closed_hom(&base, g, h, &p1l, budget)?;
    let rhs = nat_presheaves(f, &ch.ps, budget)?;
    let mut report = ClosureReport {
        ok: true,
        tensor_nats: lhs.len(),
        hom_nats: rhs.len(),
        witness: None,
    };
    if lhs.len() != rhs.len() {
        report.ok = false;
        report.witness =
            Some(format!("{} tensor-side maps against {} hom-side maps", lhs.len(), rhs.len()));
        return Ok(report);
    }
    let rhs_set: HashSet<&Vec<Vec<usize>>> = rhs.iter().collect();
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    for theta in &lhs {
        let mut transpose: Vec<Vec<usize>> = Vec::with_capacity(base.object_count());
        for a in 0..base.object_count() {
            let mut row = Vec::with_capacity(f.size(a));
            for x in 0..f.size(a) {
                let fam: Vec<Vec<usize>> = ch
                    .slots(a)
                    .iter()
                    .map(|&(c, d, p)| {
                        (0..g.size(d)).map(|y| theta[c][day.coproj(c, a, d, p, x, y)]).collect()
                    })
                    .collect();
                match ch.find(a, &fam) {
                    Some(i) => row.push(i),
                    None => {
                        report.ok = false;
                        report.witness = Some(format!(
                            "transpose at ({}, element {x}) is not dinatural",
                            base.object_name(a)
                        ));
                        return Ok(report);
                    }
                }
            }
            transpose.push(row);
        }
        if !rhs_set.contains(&transpose) {
            report.ok = false;
            report.witness = Some("a transpose is not natural on the hom side".into());
            return Ok(report);
        }
        if !seen.insert(transpose) {
            report.ok = false;
            report.witness = Some("two tensor-side maps share a transpose".into());
            return Ok(report);
        }
    }
    Ok(report)
}
