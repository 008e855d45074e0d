//! Combs and optics: diagrams with typed holes, substitution, and
//! evaluation against concrete fills.
//!
//! A comb is a diagram over a hole-extended signature in which every hole
//! slot occurs exactly once. A one-hole comb is an optic from its outer
//! boundary pair to its hole pair; plugging one optic's boundary into
//! another's hole is their composition. Because holes never trade places
//! with each other, the relative order of two adjacent wire-disjoint holes
//! is data: evaluating a comb therefore takes an explicit fill order, which
//! is realized by re-seating exactly those adjustable hole pairs before the
//! fills are spliced in. Barriers mark unit cuts and dissolve once all
//! fills are in place.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::diagram::{raw_swap_disjoint, Diagram, Slice, SliceKind};
use crate::error::{Error, Result};
use crate::signature::{HoleSpec, ObjectWord, Signature};

/// A forward/backward boundary pair `(a, a')`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjPair {
    pub fwd: ObjectWord,
    pub bwd: ObjectWord,
}

impl ObjPair {
    pub fn new(fwd: ObjectWord, bwd: ObjectWord) -> Self {
        ObjPair { fwd, bwd }
    }
}

impl std::fmt::Display for ObjPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.fwd, self.bwd)
    }
}

fn merged_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> Result<Arc<Signature>> {
    if crate::signature::same_signature(a, b) {
        return Ok(a.clone());
    }
    Ok(a.merge(b)?.into_arc())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comb {
    under: Diagram,
    /// Hole specs in order of appearance in the slice list.
    holes: Vec<HoleSpec>,
}

impl Comb {
    /// Validate that every hole slot of the diagram occurs exactly once and
    /// collect the specs in slice order.
    pub fn from_diagram(under: Diagram) -> Result<Comb> {
        let sig = under.signature().clone();
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut holes = Vec::new();
        for s in under.slices() {
            if let SliceKind::Hole(slot) = s.kind {
                if !seen.insert(slot) {
                    return Err(Error::DuplicateName(format!("HOLE{slot}")));
                }
                holes.push(sig.hole(slot).ok_or(Error::UnknownSlot(slot))?.clone());
            }
        }
        Ok(Comb { under, holes })
    }

    pub fn under(&self) -> &Diagram {
        &self.under
    }

    pub fn holes(&self) -> &[HoleSpec] {
        &self.holes
    }

    pub fn hole(&self, slot: u32) -> Result<&HoleSpec> {
        self.holes.iter().find(|h| h.slot == slot).ok_or(Error::UnknownSlot(slot))
    }

    pub fn boundary(&self) -> ObjPair {
        ObjPair::new(self.under.dom().clone(), self.under.cod().clone())
    }

    /// Congruence of the underlying diagrams (holes included as opaque
    /// slices; hole order is invariant under the congruence).
    pub fn equal(&self, other: &Comb) -> Result<bool> {
        let sig = merged_signature(self.under.signature(), other.under.signature())?;
        self.under.with_signature(&sig)?.equal(&other.under.with_signature(&sig)?)
    }

    /// Replace hole `slot` by `fill`, whiskered at the hole's position.
    /// The fill's own holes join the result in order; its slot labels must
    /// not collide with the remaining ones.
    pub fn substitute(&self, slot: u32, fill: &Comb) -> Result<Comb> {
        let spec = self.hole(slot)?.clone();
        if fill.under.dom() != &spec.in_type || fill.under.cod() != &spec.out_type {
            return Err(Error::mismatch(format!(
                "fill boundary {} -> {} does not match hole {} -> {}",
                fill.under.dom(),
                fill.under.cod(),
                spec.in_type,
                spec.out_type
            )));
        }
        for h in &fill.holes {
            if h.slot != slot && self.holes.iter().any(|o| o.slot == h.slot) {
                return Err(Error::DuplicateName(format!("HOLE{}", h.slot)));
            }
        }
        // the consumed slot's spec is gone; the fill may reuse its label
        let sig = self
            .under
            .signature()
            .without_hole(slot)
            .merge(fill.under.signature())?
            .into_arc();
        let mut slices: Vec<Slice> = Vec::new();
        for s in self.under.slices() {
            match s.kind {
                SliceKind::Hole(k) if k == slot => {
                    for fs in fill.under.slices() {
                        match fs.kind {
                            SliceKind::Barrier => slices.push(*fs),
                            _ => slices.push(Slice { kind: fs.kind, offset: fs.offset + s.offset }),
                        }
                    }
                }
                _ => slices.push(*s),
            }
        }
        let under = Diagram::from_slices(&sig, self.under.dom().clone(), slices)?;
        Comb::from_diagram(under)
    }

    /// Evaluate against hole-free fills in the given temporal order. Order
    /// is realized on the adjustable (adjacent, wire-disjoint) hole pairs;
    /// hole pairs whose relative position is forced by the comb are
    /// unaffected. All barriers dissolve afterwards.
    pub fn eval(&self, fills: &BTreeMap<u32, Diagram>, order: &[u32]) -> Result<Diagram> {
        let slots: BTreeSet<u32> = self.holes.iter().map(|h| h.slot).collect();
        let order_set: BTreeSet<u32> = order.iter().copied().collect();
        if order.len() != slots.len() || order_set != slots {
            return Err(Error::mismatch(format!(
                "fill order must be a permutation of the comb's slots ({:?})",
                slots
            )));
        }
        // fills are hole-free, so only base agreement matters; the comb's
        // own signature types everything that remains after splicing
        let sig = self.under.signature().extend_with_holes(&[])?.into_arc();
        for (slot, fill) in fills {
            let spec = self.hole(*slot)?;
            if !sig.same_base(fill.signature()) {
                return Err(Error::SignatureMismatch);
            }
            if fill.slices().iter().any(|s| matches!(s.kind, SliceKind::Hole(_))) {
                return Err(Error::mismatch(format!("fill for slot {slot} must be hole-free")));
            }
            if fill.dom() != &spec.in_type || fill.cod() != &spec.out_type {
                return Err(Error::mismatch(format!(
                    "fill for slot {slot} has boundary {} -> {}, hole expects {} -> {}",
                    fill.dom(),
                    fill.cod(),
                    spec.in_type,
                    spec.out_type
                )));
            }
        }
        if fills.len() != slots.len() {
            let missing: Vec<u32> = slots.iter().filter(|s| !fills.contains_key(s)).copied().collect();
            if let Some(m) = missing.first() {
                return Err(Error::UnknownSlot(*m));
            }
            let extra = fills.keys().find(|k| !slots.contains(k)).copied().unwrap_or_default();
            return Err(Error::UnknownSlot(extra));
        }

        let rank: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut slices = self.under.slices().to_vec();
        // bubble adjustable hole pairs until they agree with the requested order
        loop {
            let mut changed = false;
            for i in 0..slices.len().saturating_sub(1) {
                if let (SliceKind::Hole(k1), SliceKind::Hole(k2)) = (slices[i].kind, slices[i + 1].kind) {
                    if rank[&k1] > rank[&k2] && raw_swap_disjoint(&sig, &mut slices, i) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // splice fills in place, then drop barriers
        let mut out: Vec<Slice> = Vec::new();
        for s in &slices {
            match s.kind {
                SliceKind::Hole(slot) => {
                    for fs in fills[&slot].slices() {
                        match fs.kind {
                            SliceKind::Barrier => {}
                            _ => out.push(Slice { kind: fs.kind, offset: fs.offset + s.offset }),
                        }
                    }
                }
                SliceKind::Barrier => {}
                _ => out.push(*s),
            }
        }
        Diagram::from_slices(&sig, self.under.dom().clone(), out)
    }
}

/// A one-hole comb, read as a morphism `src -> dst` of the optic category:
/// `src` is the outer boundary pair, `dst` the hole pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optic {
    comb: Comb,
}

impl Optic {
    pub fn from_comb(comb: Comb) -> Result<Optic> {
        if comb.holes.len() != 1 {
            return Err(Error::mismatch(format!(
                "an optic has exactly one hole, found {}",
                comb.holes.len()
            )));
        }
        Ok(Optic { comb })
    }

    /// Build `f ; hole ; g` with the hole seated at `x_width` on `f`'s
    /// codomain. `f : a -> x ⊗ in ⊗ y` and `g : x ⊗ out ⊗ y -> a'`.
    pub fn new(f: &Diagram, x_width: usize, hole: &HoleSpec, g: &Diagram) -> Result<Optic> {
        let base = merged_signature(f.signature(), g.signature())?;
        let sig = base.extend_with_holes(std::slice::from_ref(hole))?.into_arc();
        let codf = f.cod();
        if !codf.segment_matches(x_width, &hole.in_type) {
            return Err(Error::mismatch(format!(
                "codomain {codf} does not carry {} at offset {x_width}",
                hole.in_type
            )));
        }
        let expected_g_dom = codf.splice(x_width, hole.in_type.len(), &hole.out_type);
        if g.dom() != &expected_g_dom {
            return Err(Error::mismatch(format!(
                "residual mismatch: expected {} -> .., found {} -> ..",
                expected_g_dom,
                g.dom()
            )));
        }
        let mut slices = f.slices().to_vec();
        slices.push(Slice::hole(hole.slot, x_width));
        slices.extend_from_slice(g.slices());
        let under = Diagram::from_slices(&sig, f.dom().clone(), slices)?;
        Optic::from_comb(Comb::from_diagram(under)?)
    }

    /// The identity optic on `p`: a bare hole.
    pub fn identity(sig: &Arc<Signature>, p: &ObjPair, slot: u32) -> Result<Optic> {
        let spec = HoleSpec::new(slot, p.fwd.clone(), p.bwd.clone());
        let ext = sig.extend_with_holes(std::slice::from_ref(&spec))?.into_arc();
        let under = Diagram::from_slices(&ext, p.fwd.clone(), vec![Slice::hole(slot, 0)])?;
        Optic::from_comb(Comb::from_diagram(under)?)
    }

    pub fn comb(&self) -> &Comb {
        &self.comb
    }

    pub fn under(&self) -> &Diagram {
        &self.comb.under
    }

    pub fn slot(&self) -> u32 {
        self.comb.holes[0].slot
    }

    pub fn src(&self) -> ObjPair {
        self.comb.boundary()
    }

    pub fn dst(&self) -> ObjPair {
        let h = &self.comb.holes[0];
        ObjPair::new(h.in_type.clone(), h.out_type.clone())
    }

    /// Composition in the optic category: plug `inner` into this optic's
    /// hole. Defined when `self.dst() == inner.src()`.
    pub fn plug(&self, inner: &Optic) -> Result<Optic> {
        let res = self.comb.substitute(self.slot(), &inner.comb)?;
        Optic::from_comb(res)
    }

    /// Fill the hole with a plain diagram and dissolve barriers.
    pub fn apply(&self, fill: &Diagram) -> Result<Diagram> {
        let mut fills = BTreeMap::new();
        fills.insert(self.slot(), fill.clone());
        self.comb.eval(&fills, &[self.slot()])
    }

    pub fn equal(&self, other: &Optic) -> Result<bool> {
        if self.src() != other.src() || self.dst() != other.dst() {
            return Err(Error::mismatch(
                "optic equality requires matching outer and hole boundaries",
            ));
        }
        self.comb.equal(&other.comb)
    }
}

/// Two stacked holes `f ; hole_a ; m ; hole_b ; g`, with a flag recording
/// whether the connecting tissue is central.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertElement {
    comb: Comb,
    central: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillOrder {
    AB,
    BA,
}

/// Two side-by-side holes `f ; hole_a | hole_b ; g` in a chosen order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizElement {
    comb: Comb,
    order: FillOrder,
}

/// A barriered morphism `p ; | ; q`: the unit object's element shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitElement {
    under: Diagram,
}

pub fn vert_element(
    f: &Diagram,
    a_off: usize,
    a: &HoleSpec,
    m: &Diagram,
    b_off: usize,
    b: &HoleSpec,
    g: &Diagram,
) -> Result<VertElement> {
    if a.slot == b.slot {
        return Err(Error::DuplicateName(a.pseudo_name()));
    }
    let base = merged_signature(&merged_signature(f.signature(), m.signature())?, g.signature())?;
    let sig = base.extend_with_holes(&[a.clone(), b.clone()])?.into_arc();
    let mut slices = f.slices().to_vec();
    slices.push(Slice::hole(a.slot, a_off));
    slices.extend_from_slice(m.slices());
    slices.push(Slice::hole(b.slot, b_off));
    slices.extend_from_slice(g.slices());
    let under = Diagram::from_slices(&sig, f.dom().clone(), slices)?;
    if under.cod() != g.cod() {
        return Err(Error::mismatch("stacked element does not reach g's codomain"));
    }
    let central = f.is_central() && m.is_central() && g.is_central();
    Ok(VertElement { comb: Comb::from_diagram(under)?, central })
}

impl VertElement {
    pub fn comb(&self) -> &Comb {
        &self.comb
    }

    pub fn is_central(&self) -> bool {
        self.central
    }
}

pub fn horiz_element(
    f: &Diagram,
    x_width: usize,
    a: &HoleSpec,
    y_width: usize,
    b: &HoleSpec,
    g: &Diagram,
    order: FillOrder,
) -> Result<HorizElement> {
    if a.slot == b.slot {
        return Err(Error::DuplicateName(a.pseudo_name()));
    }
    let base = merged_signature(f.signature(), g.signature())?;
    let sig = base.extend_with_holes(&[a.clone(), b.clone()])?.into_arc();
    let codf = f.cod();
    if !codf.segment_matches(x_width, &a.in_type) {
        return Err(Error::mismatch(format!(
            "codomain {codf} does not carry {} at offset {x_width}",
            a.in_type
        )));
    }
    let b_in_off = x_width + a.in_type.len() + y_width;
    if !codf.segment_matches(b_in_off, &b.in_type) {
        return Err(Error::mismatch(format!(
            "codomain {codf} does not carry {} at offset {b_in_off}",
            b.in_type
        )));
    }
    let slices = match order {
        FillOrder::AB => vec![
            Slice::hole(a.slot, x_width),
            Slice::hole(b.slot, x_width + a.out_type.len() + y_width),
        ],
        FillOrder::BA => vec![Slice::hole(b.slot, b_in_off), Slice::hole(a.slot, x_width)],
    };
    let mut all = f.slices().to_vec();
    all.extend(slices);
    all.extend_from_slice(g.slices());
    let under = Diagram::from_slices(&sig, f.dom().clone(), all)?;
    if under.cod() != g.cod() {
        return Err(Error::mismatch("side-by-side element does not reach g's codomain"));
    }
    Ok(HorizElement { comb: Comb::from_diagram(under)?, order })
}

impl HorizElement {
    pub fn comb(&self) -> &Comb {
        &self.comb
    }

    pub fn order(&self) -> FillOrder {
        self.order
    }
}

pub fn unit_element(p: &Diagram, q: &Diagram) -> Result<UnitElement> {
    let base = merged_signature(p.signature(), q.signature())?;
    let sig = base.extend_with_holes(&[])?.into_arc(); // enables barriers
    if p.cod() != q.dom() {
        return Err(Error::mismatch(format!(
            "cannot cut: {} does not meet {}",
            p.cod(),
            q.dom()
        )));
    }
    let mut slices = p.slices().to_vec();
    slices.push(Slice::barrier());
    slices.extend_from_slice(q.slices());
    let under = Diagram::from_slices(&sig, p.dom().clone(), slices)?;
    Ok(UnitElement { under })
}

impl UnitElement {
    pub fn under(&self) -> &Diagram {
        &self.under
    }

    pub fn boundary(&self) -> (ObjectWord, ObjectWord) {
        (self.under.dom().clone(), self.under.cod().clone())
    }

    /// Congruence of barriered morphisms: central slices slide across the
    /// cut, so `(p;s | q) = (p | s;q)` exactly when `s` is central.
    pub fn equal(&self, other: &UnitElement) -> Result<bool> {
        let sig = merged_signature(self.under.signature(), other.under.signature())?;
        self.under.with_signature(&sig)?.equal(&other.under.with_signature(&sig)?)
    }
}
