//! The bimodule induced by an identity-on-objects functor, with its unit and
//! multiplication, and the reconstruction of the loose level as its Kleisli
//! category.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::cat::{make_fincat, Arr, ArrowData, FinCat, FinCatData, IooFunctor, Obj};
use crate::fincat::compose::{compose_profunctors, ComposedProf};
use crate::fincat::prof::FinProfunctor;

/// T(d, c) = loose arrows d -> c, acted on by precomposing and postcomposing
/// images of tight arrows. Unit is the functor itself, multiplication is
/// loose composition descended to the middle-variable quotient.
#[derive(Debug, Clone)]
pub struct Promonad {
    pub j: IooFunctor,
    pub t: FinProfunctor,
    pub tt: ComposedProf,
    /// unit[d][c][tight hom position] -> element of T(d, c)
    unit: Vec<Vec<Vec<usize>>>,
    /// per (d, c): quotient class of T.T -> element of T(d, c)
    mult: HashMap<(Obj, Obj), Vec<usize>>,
    /// loose arrow -> its position inside its hom list
    hom_pos: Vec<usize>,
}

impl Promonad {
    /// element of T(d, c) as a loose arrow
    pub fn t_arrow(&self, d: Obj, c: Obj, ti: usize) -> Arr {
        self.j.dst.hom(d, c)[ti]
    }

    /// unit applied to a tight arrow
    pub fn unit_of(&self, f: Arr) -> usize {
        let fd = self.j.src.arrow(f);
        let pos = self
            .j
            .src
            .hom(fd.src, fd.dst)
            .iter()
            .position(|&g| g == f)
            .expect("arrows appear in their hom list");
        self.unit[fd.src][fd.dst][pos]
    }

    /// multiplication on a representative pair through the quotient
    pub fn mult(&self, d: Obj, x: Obj, c: Obj, qi: usize, pi: usize) -> usize {
        self.mult[&(d, c)][self.tt.coproj(d, c, x, qi, pi)]
    }

    /// position of a loose arrow inside hom(src, dst)
    pub fn pos(&self, f: Arr) -> usize {
        self.hom_pos[f]
    }
}

pub fn promonad_from_ioo(j: &IooFunctor) -> Result<Promonad> {
    let c0 = j.src.clone();
    let c1 = j.dst.clone();
    let mut hom_pos = vec![0usize; c1.arrow_count()];
    for a in 0..c1.object_count() {
        for b in 0..c1.object_count() {
            for (i, &f) in c1.hom(a, b).iter().enumerate() {
                hom_pos[f] = i;
            }
        }
    }
    let t = {
        let (c0c, c1c, hp) = (c0.clone(), c1.clone(), hom_pos.clone());
        let j2 = j.clone();
        FinProfunctor::build(
            format!("T({})", c1.name()),
            c0.clone(),
            c0.clone(),
            |d, c| c1c.hom(d, c).iter().map(|&f| c1c.arrow(f).name.clone()).collect(),
            |f, c, x| {
                // precompose with the image of f: d' -> d
                let d = c0c.arrow(f).dst;
                let t = c1c.hom(d, c)[x];
                hp[c1c.compose(t, j2.apply(f))]
            },
            |g, d, x| {
                let c = c0c.arrow(g).src;
                let t = c1c.hom(d, c)[x];
                hp[c1c.compose(j2.apply(g), t)]
            },
        )?
    };

    // unit: tight hom -> T, position by position
    let mut unit = Vec::with_capacity(c0.object_count());
    for d in 0..c0.object_count() {
        let mut per_c = Vec::with_capacity(c0.object_count());
        for c in 0..c0.object_count() {
            per_c.push(c0.hom(d, c).iter().map(|&f| hom_pos[j.apply(f)]).collect::<Vec<_>>());
        }
        unit.push(per_c);
    }
    // unit naturality: J(g . f . u) = Jg . Jf . Ju, checked elementwise
    for u in c0.arrows_iter() {
        let (d2, d) = (c0.arrow(u).src, c0.arrow(u).dst);
        for c in 0..c0.object_count() {
            for (i, &f) in c0.hom(d, c).iter().enumerate() {
                let precomposed = c0.compose(f, u);
                let lhs = unit[d2][c][c0.hom(d2, c).iter().position(|&h| h == precomposed).unwrap()];
                let rhs = t.lact(u, c, unit[d][c][i]);
                if lhs != rhs {
                    return Err(Error::law("promonad unit naturality", c0.arrow(u).name.clone()));
                }
            }
        }
    }

    let tt = compose_profunctors(&t, &t)?;
    let mut mult: HashMap<(Obj, Obj), Vec<usize>> = HashMap::new();
    for d in 0..c0.object_count() {
        for c in 0..c0.object_count() {
            let mut tab = vec![usize::MAX; tt.prof.size(d, c)];
            for &(x, qi, pi) in &tt.members[&(d, c)] {
                let cls = tt.coproj(d, c, x, qi, pi);
                let composed = c1.compose(c1.hom(x, c)[pi], c1.hom(d, x)[qi]);
                let val = hom_pos[composed];
                if tab[cls] == usize::MAX {
                    tab[cls] = val;
                } else if tab[cls] != val {
                    return Err(Error::law(
                        "promonad multiplication well-definedness",
                        format!("class {cls} of T.T at ({d}, {c})"),
                    ));
                }
            }
            mult.insert((d, c), tab);
        }
    }

    let p = Promonad { j: j.clone(), t, tt, unit, mult, hom_pos };

    // associativity on raw triples, routed through the quotient both ways
    for d in 0..c0.object_count() {
        for x in 0..c0.object_count() {
            for y in 0..c0.object_count() {
                for c in 0..c0.object_count() {
                    for qi in 0..p.t.size(d, x) {
                        for mi in 0..p.t.size(x, y) {
                            for pi in 0..p.t.size(y, c) {
                                let left = p.mult(d, y, c, p.mult(d, x, y, qi, mi), pi);
                                let right = p.mult(d, x, c, qi, p.mult(x, y, c, mi, pi));
                                if left != right {
                                    return Err(Error::law(
                                        "promonad associativity",
                                        format!(
                                            "({}, {}, {})",
                                            p.t.elem_name(d, x, qi),
                                            p.t.elem_name(x, y, mi),
                                            p.t.elem_name(y, c, pi)
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
    // unit laws on every element
    for d in 0..c0.object_count() {
        for c in 0..c0.object_count() {
            let e_d = p.unit_of(c0.id(d));
            let e_c = p.unit_of(c0.id(c));
            for ti in 0..p.t.size(d, c) {
                if p.mult(d, d, c, e_d, ti) != ti {
                    return Err(Error::law("promonad left unit", p.t.elem_name(d, c, ti).to_string()));
                }
                if p.mult(d, c, c, ti, e_c) != ti {
                    return Err(Error::law("promonad right unit", p.t.elem_name(d, c, ti).to_string()));
                }
            }
        }
    }
    Ok(p)
}

/// The Kleisli category rebuilt from the promonad's tables alone, plus the
/// arrow-for-arrow dictionary into the loose level.
#[derive(Debug, Clone)]
pub struct KleisliReport {
    pub cat: Arc<FinCat>,
    /// kleisli arrow -> loose arrow
    pub to_loose: Vec<Arr>,
}

/// Assemble the Kleisli category of T and verify it is the loose level:
/// the dictionary must be bijective, preserve identities and composition.
pub fn kleisli_check(p: &Promonad) -> Result<KleisliReport> {
    let c0 = &p.j.src;
    let c1 = &p.j.dst;
    let mut arrows: Vec<ArrowData> = Vec::new();
    let mut to_loose: Vec<Arr> = Vec::new();
    let mut index: HashMap<(Obj, Obj, usize), Arr> = HashMap::new();
    let mut key_of: Vec<(Obj, Obj, usize)> = Vec::new();
    for d in 0..c0.object_count() {
        for c in 0..c0.object_count() {
            for ti in 0..p.t.size(d, c) {
                index.insert((d, c, ti), arrows.len());
                key_of.push((d, c, ti));
                arrows.push(ArrowData {
                    name: format!("k[{}]", p.t.elem_name(d, c, ti)),
                    src: d,
                    dst: c,
                });
                to_loose.push(p.t_arrow(d, c, ti));
            }
        }
    }
    let ids: Vec<Arr> = (0..c0.object_count())
        .map(|d| index[&(d, d, p.unit_of(c0.id(d)))])
        .collect();
    let mut comp = Vec::new();
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            if arrows[f].dst != arrows[g].src {
                continue;
            }
            let (d, x, fi) = key_of[f];
            let (_, c, gi) = key_of[g];
            let m = p.mult(d, x, c, fi, gi);
            comp.push((g, f, index[&(d, c, m)]));
        }
    }
    let cat = make_fincat(FinCatData {
        name: format!("kleisli({})", p.t.name),
        objects: c0.objects().to_vec(),
        arrows,
        ids,
        comp,
    })?
    .into_arc();

    // dictionary must be a bijection
    if to_loose.len() != c1.arrow_count() {
        return Err(Error::law("kleisli comparison bijectivity", "arrow counts differ"));
    }
    let mut seen = vec![false; c1.arrow_count()];
    for &f in &to_loose {
        if seen[f] {
            return Err(Error::law("kleisli comparison injectivity", c1.arrow(f).name.clone()));
        }
        seen[f] = true;
    }
    // identity and composition preservation
    for d in 0..c0.object_count() {
        if to_loose[cat.id(d)] != c1.id(d) {
            return Err(Error::law("kleisli comparison identity", cat.object_name(d).to_string()));
        }
    }
    for f in cat.arrows_iter() {
        for g in cat.arrows_iter() {
            if let Some(gf) = cat.try_compose(g, f) {
                if to_loose[gf] != c1.compose(to_loose[g], to_loose[f]) {
                    return Err(Error::law(
                        "kleisli comparison functoriality",
                        format!("{} . {}", cat.arrow(g).name, cat.arrow(f).name),
                    ));
                }
            }
        }
    }
    Ok(KleisliReport { cat, to_loose })
}
