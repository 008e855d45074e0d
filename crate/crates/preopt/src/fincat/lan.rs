//! Extension of presheaves along an identity-on-objects functor, its
//! restriction back, and the comparison bijection between transformations
//! into the restriction and transformations between the extensions.

use crate::error::{Error, Result};
use crate::fincat::cat::{same_cat, IooFunctor, Obj};
use crate::fincat::presheaf::{nat_presheaves, Presheaf};
use crate::fincat::prof::{pair_coend, PairCoend};

/// (Lan F)(c) = coend over x of hom1(c, x) (x) F(x), kept with its class
/// structure; `ps` is the quotient presheaf on the loose level.
pub struct LanPresheaf {
    pub ps: Presheaf,
    co: Vec<PairCoend>,
}

impl LanPresheaf {
    /// class of the pair (h : c -> x, e in F(x)) at the object c
    pub fn coproj(&self, c: Obj, x: Obj, hi: usize, fi: usize) -> usize {
        self.co[c].coproj(x, hi, fi)
    }

    pub fn rep(&self, c: Obj, cls: usize) -> (Obj, usize, usize) {
        self.co[c].rep(cls)
    }
}

pub fn lan_extend(f: &Presheaf, j: &IooFunctor, budget: usize) -> Result<LanPresheaf> {
    if !same_cat(&f.cat, &j.src) {
        return Err(Error::mismatch("presheaf must live on the functor's source"));
    }
    let c0 = &j.src;
    let c1 = &j.dst;
    let n = c1.object_count();
    let mut co = Vec::with_capacity(n);
    for c in 0..n {
        co.push(pair_coend(
            c0,
            budget,
            |x| c1.hom(c, x).len(),
            |x| f.size(x),
            |u, e| {
                // postcompose the image of u : x -> x'
                let ud = c0.arrow(u);
                let h = c1.hom(c, ud.src)[e];
                let moved = c1.compose(j.apply(u), h);
                c1.hom(c, ud.dst).iter().position(|&k| k == moved).unwrap()
            },
            |u, e| f.act(u, e),
        )?);
    }
    let ps = {
        let (c1c, f_name) = (c1.clone(), f.name.clone());
        let co_ref = &co;
        Presheaf::build(
            format!("lan({f_name})"),
            c1.clone(),
            |c| {
                (0..co_ref[c].class_count())
                    .map(|k| {
                        let (x, hi, fi) = co_ref[c].rep(k);
                        format!("[{}|{}]", c1c.arrow(c1c.hom(c, x)[hi]).name, f.elem_name(x, fi))
                    })
                    .collect()
            },
            |w, e| {
                let wd = c1c.arrow(w);
                let (x, hi, fi) = co_ref[wd.dst].rep(e);
                let h = c1c.hom(wd.dst, x)[hi];
                let moved = c1c.compose(h, w);
                let pos = c1c.hom(wd.src, x).iter().position(|&k| k == moved).unwrap();
                co_ref[wd.src].coproj(x, pos, fi)
            },
        )?
    };
    Ok(LanPresheaf { ps, co })
}

/// The extension restricted back along the functor: same values, action
/// through the image arrows.
pub fn restrict(lan: &LanPresheaf, j: &IooFunctor) -> Result<Presheaf> {
    let c0 = &j.src;
    Presheaf::build(
        format!("restrict({})", lan.ps.name),
        c0.clone(),
        |x| (0..lan.ps.size(x)).map(|k| lan.ps.elem_name(x, k).to_string()).collect(),
        |u, e| lan.ps.act(j.apply(u), e),
    )
}

#[derive(Debug, Clone)]
pub struct Theorem5Report {
    pub ok: bool,
    pub tight_count: usize,
    pub loose_count: usize,
    pub witness: Option<String>,
}

/// Transformations F => restrict(Lan G) on the tight level against
/// transformations Lan F => Lan G on the loose level: the canonical map
/// must be well-defined on classes and a bijection.
pub fn theorem5_check(
    j: &IooFunctor,
    f: &Presheaf,
    g: &Presheaf,
    budget: usize,
) -> Result<Theorem5Report> {
    let lanf = lan_extend(f, j, budget)?;
    let lang = lan_extend(g, j, budget)?;
    let that = restrict(&lang, j)?;
    let tight = nat_presheaves(f, &that, budget)?;
    let loose = nat_presheaves(&lanf.ps, &lang.ps, budget)?;
    let c1 = &j.dst;
    let n = c1.object_count();
    let fail = |witness: String| Theorem5Report {
        ok: false,
        tight_count: tight.len(),
        loose_count: loose.len(),
        witness: Some(witness),
    };

    let mut images: Vec<Vec<Vec<usize>>> = Vec::with_capacity(tight.len());
    for (ti, psi) in tight.iter().enumerate() {
        let mut phi: Vec<Vec<usize>> = Vec::with_capacity(n);
        for c in 0..n {
            let mut tab = vec![usize::MAX; lanf.ps.size(c)];
            for cls in 0..lanf.ps.size(c) {
                for &(x, hi, fi) in &lanf.co[c].classes[cls] {
                    let h = c1.hom(c, x)[hi];
                    let val = lang.ps.act(h, psi[x][fi]);
                    if tab[cls] == usize::MAX {
                        tab[cls] = val;
                    } else if tab[cls] != val {
                        return Ok(fail(format!(
                            "comparison of transformation {ti} not constant on class {cls} at {c}"
                        )));
                    }
                }
            }
            phi.push(tab);
        }
        if !loose.contains(&phi) {
            return Ok(fail(format!("image of transformation {ti} is not natural")));
        }
        if images.contains(&phi) {
            return Ok(fail(format!("comparison collapses transformation {ti}")));
        }
        images.push(phi);
    }
    if images.len() != loose.len() {
        return Ok(fail(format!(
            "comparison hits {} of {} loose transformations",
            images.len(),
            loose.len()
        )));
    }
    Ok(Theorem5Report { ok: true, tight_count: tight.len(), loose_count: loose.len(), witness: None })
}
