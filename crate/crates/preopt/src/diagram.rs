//! Diagrams over a signature: typed sequences of whiskered slices.
//!
//! A morphism is stored as its *slice form*: a domain word plus a list of
//! slices, each a generator (or hole, or barrier) placed at a wire offset.
//! Composition is concatenation, whiskering is an offset shift, and the only
//! non-trivial identification is the central interchange: a slice may trade
//! places with an adjacent slice when their wire intervals are disjoint and
//! at least one of the two is a central generator. Barriers cross central
//! generators only.
//!
//! Equality of morphisms is therefore reachability under adjacent swaps.
//! Classes are finite (swaps permute the slice multiset), so equality and
//! normal forms are decided by breadth-first enumeration, with a budget
//! guarding against blowup. `greedy_form` is a fast candidate used to
//! short-circuit positive equality checks; `normal_form` always returns the
//! exact breadth-first minimum.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::{same_signature, GenId, ObjectWord, Signature};

/// Hard ceiling on explored states per equivalence class unless overridden.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceKind {
    Gen(GenId),
    Hole(u32),
    Barrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slice {
    pub kind: SliceKind,
    pub offset: usize,
}

impl Slice {
    pub fn gen(id: GenId, offset: usize) -> Slice {
        Slice { kind: SliceKind::Gen(id), offset }
    }

    pub fn hole(slot: u32, offset: usize) -> Slice {
        Slice { kind: SliceKind::Hole(slot), offset }
    }

    pub fn barrier() -> Slice {
        Slice { kind: SliceKind::Barrier, offset: 0 }
    }
}

/// Order on slices used by the normal form: offset first, then kind
/// (generators before holes before barriers), then generator name (via its
/// lexicographic rank) or slot label.
fn slice_key(sig: &Signature, s: &Slice) -> (usize, u8, u32) {
    match s.kind {
        SliceKind::Gen(id) => (s.offset, 0, sig.lex_rank(id)),
        SliceKind::Hole(slot) => (s.offset, 1, slot),
        SliceKind::Barrier => (s.offset, 2, 0),
    }
}

fn seq_key(sig: &Signature, slices: &[Slice]) -> Vec<(usize, u8, u32)> {
    slices.iter().map(|s| slice_key(sig, s)).collect()
}

#[derive(Debug, Clone)]
pub struct Diagram {
    sig: Arc<Signature>,
    dom: ObjectWord,
    slices: Vec<Slice>,
    cod: ObjectWord,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        same_signature(&self.sig, &other.sig) && self.dom == other.dom && self.slices == other.slices
    }
}

impl Eq for Diagram {}

impl std::hash::Hash for Diagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dom.hash(state);
        self.slices.hash(state);
    }
}

/// The in/out boundary a slice consumes and produces, `None` for barriers
/// (which span whatever level they sit at).
fn slice_boundary<'a>(sig: &'a Signature, kind: SliceKind) -> Result<Option<(&'a ObjectWord, &'a ObjectWord)>> {
    match kind {
        SliceKind::Gen(id) => {
            let g = sig.generator(id);
            Ok(Some((&g.dom, &g.cod)))
        }
        SliceKind::Hole(slot) => {
            let h = sig.hole(slot).ok_or(Error::UnknownSlot(slot))?;
            Ok(Some((&h.in_type, &h.out_type)))
        }
        SliceKind::Barrier => Ok(None),
    }
}

/// Apply one slice to a level word, checking the wire segment it consumes.
fn advance(sig: &Signature, level: &ObjectWord, s: &Slice, at: usize) -> Result<ObjectWord> {
    match slice_boundary(sig, s.kind)? {
        None => {
            if !sig.barriers_enabled() {
                return Err(Error::mismatch(format!(
                    "slice {at}: barriers are not enabled for this signature"
                )));
            }
            if s.offset != 0 {
                return Err(Error::mismatch(format!("slice {at}: barrier offset must be 0")));
            }
            Ok(level.clone())
        }
        Some((dom, cod)) => {
            if !level.segment_matches(s.offset, dom) {
                return Err(Error::mismatch(format!(
                    "slice {at}: expected {dom} at offset {} of {level}",
                    s.offset
                )));
            }
            Ok(level.splice(s.offset, dom.len(), cod))
        }
    }
}

impl Diagram {
    pub fn identity(sig: &Arc<Signature>, obj: ObjectWord) -> Result<Diagram> {
        sig.check_word(&obj)?;
        Ok(Diagram { sig: sig.clone(), dom: obj.clone(), slices: Vec::new(), cod: obj })
    }

    /// Typecheck a slice list against a domain word.
    pub fn from_slices(sig: &Arc<Signature>, dom: ObjectWord, slices: Vec<Slice>) -> Result<Diagram> {
        sig.check_word(&dom)?;
        let mut level = dom.clone();
        for (i, s) in slices.iter().enumerate() {
            level = advance(sig, &level, s, i)?;
        }
        Ok(Diagram { sig: sig.clone(), dom, slices, cod: level })
    }

    /// Single-generator diagram `name` at `offset` on `dom`.
    pub fn generator(sig: &Arc<Signature>, name: &str, dom: ObjectWord, offset: usize) -> Result<Diagram> {
        let id = sig
            .lookup(name)
            .ok_or_else(|| Error::UndeclaredAtom(name.to_string()))?;
        Diagram::from_slices(sig, dom, vec![Slice::gen(id, offset)])
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn dom(&self) -> &ObjectWord {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectWord {
        &self.cod
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// All level words, from `dom` (index 0) to `cod` (index len).
    pub fn levels(&self) -> Vec<ObjectWord> {
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut level = self.dom.clone();
        out.push(level.clone());
        for (i, s) in self.slices.iter().enumerate() {
            level = advance(&self.sig, &level, s, i).expect("stored diagram is well-typed");
            out.push(level.clone());
        }
        out
    }

    pub fn compose(&self, other: &Diagram) -> Result<Diagram> {
        if !same_signature(&self.sig, &other.sig) {
            return Err(Error::SignatureMismatch);
        }
        if self.cod != other.dom {
            return Err(Error::mismatch(format!(
                "cannot compose: codomain {} does not match domain {}",
                self.cod, other.dom
            )));
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&other.slices);
        Ok(Diagram {
            sig: self.sig.clone(),
            dom: self.dom.clone(),
            slices,
            cod: other.cod.clone(),
        })
    }

    /// `left ⋉ self ⋊ right`: shift every slice right by `left.len()`.
    /// Barriers keep spanning the whole (now wider) level.
    pub fn whisker(&self, left: &ObjectWord, right: &ObjectWord) -> Result<Diagram> {
        self.sig.check_word(left)?;
        self.sig.check_word(right)?;
        let shift = left.len();
        let slices = self
            .slices
            .iter()
            .map(|s| match s.kind {
                SliceKind::Barrier => *s,
                _ => Slice { kind: s.kind, offset: s.offset + shift },
            })
            .collect();
        Ok(Diagram {
            sig: self.sig.clone(),
            dom: left.tensor(&self.dom).tensor(right),
            slices,
            cod: left.tensor(&self.cod).tensor(right),
        })
    }

    /// Revalidate this diagram against another (typically merged) signature.
    pub fn with_signature(&self, sig: &Arc<Signature>) -> Result<Diagram> {
        Diagram::from_slices(sig, self.dom.clone(), self.slices.clone())
    }

    /// True when every slice is a central generator (identities count).
    pub fn is_central(&self) -> bool {
        self.slices.iter().all(|s| match s.kind {
            SliceKind::Gen(id) => self.sig.generator(id).central,
            _ => false,
        })
    }
}

/// Which side acts first in a sequenced tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterleaveOrder {
    LeftFirst,
    RightFirst,
}

impl Diagram {
    /// The two interleavings of `self ⊗ other`. `LeftFirst` runs `self` on
    /// the left wires before `other` on the right wires; `RightFirst` is the
    /// opposite. Without interchange these are distinct morphisms unless a
    /// central slice lets them slide past each other.
    pub fn tensor_seq(&self, other: &Diagram, order: InterleaveOrder) -> Result<Diagram> {
        let empty = ObjectWord::empty();
        match order {
            InterleaveOrder::LeftFirst => {
                let first = self.whisker(&empty, other.dom())?;
                let second = other.whisker(self.cod(), &empty)?;
                first.compose(&second)
            }
            InterleaveOrder::RightFirst => {
                let first = other.whisker(self.dom(), &empty)?;
                let second = self.whisker(&empty, other.cod())?;
                first.compose(&second)
            }
        }
    }
}

/// Widths `(|dom|, |cod|)` of a non-barrier slice.
fn widths(sig: &Signature, kind: SliceKind) -> Option<(usize, usize)> {
    slice_boundary(sig, kind).ok().flatten().map(|(d, c)| (d.len(), c.len()))
}

/// Disjoint-interval exchange of an adjacent pair, ignoring centrality.
/// Returns the pair in swapped order, or `None` when the intervals overlap.
fn swap_pair(sig: &Signature, s1: &Slice, s2: &Slice) -> Option<(Slice, Slice)> {
    let (m1, n1) = widths(sig, s1.kind)?;
    let (m2, n2) = widths(sig, s2.kind)?;
    let (o1, o2) = (s1.offset, s2.offset);
    if o2 + m2 <= o1 {
        // second slice acts strictly left of the first's wires
        Some((*s2, Slice { kind: s1.kind, offset: o1 + n2 - m2 }))
    } else if o2 >= o1 + n1 {
        // second slice acts strictly right of the first's output
        Some((Slice { kind: s2.kind, offset: o2 - n1 + m1 }, *s1))
    } else {
        None
    }
}

fn is_central_gen(sig: &Signature, kind: SliceKind) -> bool {
    matches!(kind, SliceKind::Gen(id) if sig.generator(id).central)
}

/// Attempt the congruence move at position `i` of a slice list.
fn try_swap(sig: &Signature, slices: &[Slice], i: usize) -> Result<(Slice, Slice)> {
    let (s1, s2) = (&slices[i], &slices[i + 1]);
    let c1 = is_central_gen(sig, s1.kind);
    let c2 = is_central_gen(sig, s2.kind);
    let barrier1 = s1.kind == SliceKind::Barrier;
    let barrier2 = s2.kind == SliceKind::Barrier;
    if barrier1 || barrier2 {
        if (barrier1 && c2) || (barrier2 && c1) {
            // barrier crossing: positions exchange, offsets unchanged
            return Ok((*s2, *s1));
        }
        return Err(Error::NotSwappable {
            i,
            j: i + 1,
            reason: "barriers only cross central generators".into(),
        });
    }
    if !c1 && !c2 {
        return Err(Error::NotSwappable {
            i,
            j: i + 1,
            reason: "neither slice is a central generator".into(),
        });
    }
    swap_pair(sig, s1, s2).ok_or_else(|| Error::NotSwappable {
        i,
        j: i + 1,
        reason: "wire intervals overlap".into(),
    })
}

impl Diagram {
    /// Exchange slices `i` and `i+1` when the congruence allows it.
    pub fn swap_adjacent(&self, i: usize) -> Result<Diagram> {
        if i + 1 >= self.slices.len() {
            return Err(Error::IndexOutOfRange(i + 1));
        }
        let (a, b) = try_swap(&self.sig, &self.slices, i)?;
        let mut slices = self.slices.clone();
        slices[i] = a;
        slices[i + 1] = b;
        Ok(Diagram {
            sig: self.sig.clone(),
            dom: self.dom.clone(),
            slices,
            cod: self.cod.clone(),
        })
    }

    fn class_states(&self, budget: usize) -> Result<HashSet<Vec<Slice>>> {
        let mut seen: HashSet<Vec<Slice>> = HashSet::new();
        let mut queue: VecDeque<Vec<Slice>> = VecDeque::new();
        seen.insert(self.slices.clone());
        queue.push_back(self.slices.clone());
        while let Some(state) = queue.pop_front() {
            for i in 0..state.len().saturating_sub(1) {
                if let Ok((a, b)) = try_swap(&self.sig, &state, i) {
                    let mut next = state.clone();
                    next[i] = a;
                    next[i + 1] = b;
                    if !seen.contains(&next) {
                        if seen.len() >= budget {
                            return Err(Error::BudgetExceeded(seen.len()));
                        }
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(seen)
    }

    fn with_slices(&self, slices: Vec<Slice>) -> Diagram {
        Diagram {
            sig: self.sig.clone(),
            dom: self.dom.clone(),
            slices,
            cod: self.cod.clone(),
        }
    }

    /// Every member of the congruence class, sorted by the normal-form
    /// order. Errors with `BudgetExceeded` if more than `budget` states
    /// would be materialized.
    pub fn enumerate_class(&self, budget: usize) -> Result<Vec<Diagram>> {
        let states = self.class_states(budget)?;
        let mut out: Vec<Vec<Slice>> = states.into_iter().collect();
        out.sort_by(|a, b| seq_key(&self.sig, a).cmp(&seq_key(&self.sig, b)));
        Ok(out.into_iter().map(|s| self.with_slices(s)).collect())
    }

    pub fn class_size(&self, budget: usize) -> Result<usize> {
        Ok(self.class_states(budget)?.len())
    }

    /// Greedy candidate normal form: repeatedly select, among the slices
    /// that can be bubbled to the front through legal swaps, the one whose
    /// arrival slice is least in the slice order, then recurse on the rest.
    /// This is a fast candidate, not the contract; `normal_form` checks the
    /// exact minimum. The two are compared wholesale in the law suites.
    pub fn greedy_form(&self) -> Diagram {
        let mut rest = self.slices.clone();
        let mut out: Vec<Slice> = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<((usize, u8, u32), Vec<Slice>)> = None;
            for j in 0..rest.len() {
                if let Some(bubbled) = bubble_to_front(&self.sig, &rest, j) {
                    let key = slice_key(&self.sig, &bubbled[0]);
                    if best.as_ref().map_or(true, |(bk, _)| key < *bk) {
                        best = Some((key, bubbled));
                    }
                }
            }
            let (_, seq) = best.expect("index 0 always bubbles trivially");
            out.push(seq[0]);
            rest = seq[1..].to_vec();
        }
        self.with_slices(out)
    }

    /// The least member of the congruence class in the slice order:
    /// exact breadth-first minimum.
    pub fn normal_form_with_budget(&self, budget: usize) -> Result<Diagram> {
        let states = self.class_states(budget)?;
        let min = states
            .into_iter()
            .min_by_key(|s| seq_key(&self.sig, s))
            .expect("class contains at least the diagram itself");
        Ok(self.with_slices(min))
    }

    pub fn normal_form(&self) -> Result<Diagram> {
        self.normal_form_with_budget(DEFAULT_BUDGET)
    }

    /// Decide congruence of two parallel diagrams.
    pub fn equal_with_budget(&self, other: &Diagram, budget: usize) -> Result<bool> {
        if !same_signature(&self.sig, &other.sig) {
            return Err(Error::SignatureMismatch);
        }
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::mismatch(format!(
                "equal requires matching boundaries: {} -> {} vs {} -> {}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        if self.slices == other.slices {
            return Ok(true);
        }
        // swaps preserve the slice multiset, so differing multisets are
        // a sound fast negative
        let mut k1: Vec<SliceKind> = self.slices.iter().map(|s| s.kind).collect();
        let mut k2: Vec<SliceKind> = other.slices.iter().map(|s| s.kind).collect();
        k1.sort();
        k2.sort();
        if k1 != k2 {
            return Ok(false);
        }
        // greedy agreement is sound for the positive case: both forms are
        // reached by legal swaps only
        if self.greedy_form().slices == other.greedy_form().slices {
            return Ok(true);
        }
        Ok(self.normal_form_with_budget(budget)?.slices == other.normal_form_with_budget(budget)?.slices)
    }

    pub fn equal(&self, other: &Diagram) -> Result<bool> {
        self.equal_with_budget(other, DEFAULT_BUDGET)
    }
}

/// Bubble slice `j` to index 0 by successive legal adjacent swaps; `None`
/// if any crossing is refused.
fn bubble_to_front(sig: &Signature, slices: &[Slice], j: usize) -> Option<Vec<Slice>> {
    let mut work = slices.to_vec();
    let mut pos = j;
    while pos > 0 {
        match try_swap(sig, &work, pos - 1) {
            Ok((a, b)) => {
                work[pos - 1] = a;
                work[pos] = b;
                pos -= 1;
            }
            Err(_) => return None,
        }
    }
    Some(work)
}

/// Exchange an adjacent wire-disjoint pair regardless of centrality.
/// This is not a congruence move; it is the mechanism the comb evaluator
/// uses to realize a chosen fill interleaving. Holes and generators both
/// move; barriers do not.
pub(crate) fn raw_swap_disjoint(sig: &Signature, slices: &mut [Slice], i: usize) -> bool {
    if i + 1 >= slices.len() || slices[i].kind == SliceKind::Barrier || slices[i + 1].kind == SliceKind::Barrier {
        return false;
    }
    match swap_pair(sig, &slices[i], &slices[i + 1]) {
        Some((a, b)) => {
            slices[i] = a;
            slices[i + 1] = b;
            true
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::HoleSpec;

    fn sig() -> Arc<Signature> {
        Signature::demo()
    }

    fn w(s: &[&str]) -> ObjectWord {
        ObjectWord::from_atoms(s)
    }

    fn gen(sig: &Arc<Signature>, name: &str) -> GenId {
        sig.lookup(name).unwrap()
    }

    fn diag(sig: &Arc<Signature>, dom: &[&str], slices: &[(&str, usize)]) -> Diagram {
        let slices = slices
            .iter()
            .map(|(n, o)| Slice::gen(gen(sig, n), *o))
            .collect();
        Diagram::from_slices(sig, w(dom), slices).unwrap()
    }

    #[test]
    fn identity_has_no_slices_and_is_central() {
        let s = sig();
        let d = Diagram::identity(&s, w(&["A", "B"])).unwrap();
        assert_eq!(d.dom(), d.cod());
        assert!(d.slices().is_empty());
        assert!(d.is_central());
    }

    #[test]
    fn typechecking_rejects_wrong_segment() {
        let s = sig();
        let err = Diagram::from_slices(&s, w(&["A", "B"]), vec![Slice::gen(gen(&s, "s"), 1)]).unwrap_err();
        assert!(matches!(err, Error::TypeMismatch(_)));
    }

    #[test]
    fn composition_concatenates_and_checks_boundary() {
        let s = sig();
        let d1 = diag(&s, &["A", "B"], &[("s", 0)]);
        let d2 = diag(&s, &["A", "B"], &[("g", 1)]);
        let c = d1.compose(&d2).unwrap();
        assert_eq!(c.slices().len(), 2);
        let d3 = diag(&s, &["A"], &[("h", 0)]); // A -> A*A
        let d4 = diag(&s, &["A", "A"], &[("s", 1)]);
        assert!(d3.compose(&d4).is_ok());
        assert!(d4.compose(&d3).is_err());
    }

    #[test]
    fn whisker_shifts_offsets() {
        let s = sig();
        let d = diag(&s, &["A"], &[("s", 0)]);
        let wd = d.whisker(&w(&["B", "B"]), &w(&["A"])).unwrap();
        assert_eq!(wd.dom(), &w(&["B", "B", "A", "A"]));
        assert_eq!(wd.slices()[0].offset, 2);
    }

    #[test]
    fn width_changing_swap_uses_output_shift() {
        // on A*B: h at 0 (A -> A*A) then g at 2; swapping pulls g to offset 1
        let s = sig();
        let d = diag(&s, &["A", "B"], &[("h", 0), ("g", 2)]);
        let swapped = d.swap_adjacent(0).unwrap();
        assert_eq!(
            swapped.slices(),
            &[Slice::gen(gen(&s, "g"), 1), Slice::gen(gen(&s, "h"), 0)]
        );
        // involution
        let back = swapped.swap_adjacent(0).unwrap();
        assert_eq!(back.slices(), d.slices());
    }

    #[test]
    fn non_central_disjoint_pair_is_stuck() {
        let s = sig();
        let d = diag(&s, &["A", "B"], &[("f", 0), ("g", 1)]);
        let err = d.swap_adjacent(0).unwrap_err();
        assert!(matches!(err, Error::NotSwappable { .. }));
    }

    #[test]
    fn overlapping_central_pair_is_stuck() {
        let s = sig();
        let d = diag(&s, &["A"], &[("s", 0), ("f", 0)]);
        let err = d.swap_adjacent(0).unwrap_err();
        assert!(matches!(err, Error::NotSwappable { .. }));
    }

    #[test]
    fn class_of_central_noncentral_disjoint_pair_has_two_members() {
        let s = sig();
        let d = diag(&s, &["A", "B"], &[("g", 1), ("s", 0)]);
        let class = d.enumerate_class(DEFAULT_BUDGET).unwrap();
        assert_eq!(class.len(), 2);
        let nf = d.normal_form().unwrap();
        assert_eq!(
            nf.slices(),
            &[Slice::gen(gen(&s, "s"), 0), Slice::gen(gen(&s, "g"), 1)]
        );
    }

    #[test]
    fn three_disjoint_central_slices_make_a_class_of_six() {
        let s = sig();
        let d = diag(&s, &["A", "A", "B"], &[("s", 0), ("s", 1), ("c", 2)]);
        assert_eq!(d.class_size(DEFAULT_BUDGET).unwrap(), 6);
    }

    #[test]
    fn greedy_escapes_the_blocked_descent_trap() {
        // f@2, f@0, s@1: no single decreasing swap exists, yet the class
        // minimum starts with s@1. Front selection must find it.
        let s = sig();
        let d = diag(&s, &["A", "A", "A"], &[("f", 2), ("f", 0), ("s", 1)]);
        let nf = d.normal_form().unwrap();
        assert_eq!(
            nf.slices(),
            &[
                Slice::gen(gen(&s, "s"), 1),
                Slice::gen(gen(&s, "f"), 2),
                Slice::gen(gen(&s, "f"), 0)
            ]
        );
        assert_eq!(d.greedy_form().slices(), nf.slices());
    }

    #[test]
    fn equal_distinguishes_interchange_orders_exactly_for_noncentral() {
        let s = sig();
        let f = diag(&s, &["A"], &[("f", 0)]);
        let g = diag(&s, &["B"], &[("g", 0)]);
        let lf = f.tensor_seq(&g, InterleaveOrder::LeftFirst).unwrap();
        let rf = f.tensor_seq(&g, InterleaveOrder::RightFirst).unwrap();
        assert!(!lf.equal(&rf).unwrap());

        let sdiag = diag(&s, &["A"], &[("s", 0)]);
        let lf = sdiag.tensor_seq(&g, InterleaveOrder::LeftFirst).unwrap();
        let rf = sdiag.tensor_seq(&g, InterleaveOrder::RightFirst).unwrap();
        assert!(lf.equal(&rf).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let s = sig();
        let d = diag(&s, &["A", "A", "B"], &[("s", 0), ("s", 1), ("c", 2)]);
        assert!(matches!(d.enumerate_class(3), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn barrier_crosses_central_only() {
        let s = sig().extend_with_holes(&[]).unwrap().into_arc();
        let sid = gen(&s, "s");
        let fid = gen(&s, "f");
        let d = Diagram::from_slices(&s, w(&["A"]), vec![Slice::gen(sid, 0), Slice::barrier()]).unwrap();
        let swapped = d.swap_adjacent(0).unwrap();
        assert_eq!(swapped.slices(), &[Slice::barrier(), Slice::gen(sid, 0)]);
        let d2 = Diagram::from_slices(&s, w(&["A"]), vec![Slice::gen(fid, 0), Slice::barrier()]).unwrap();
        assert!(d2.swap_adjacent(0).is_err());
    }

    #[test]
    fn barriers_require_extension() {
        let s = sig();
        let err = Diagram::from_slices(&s, w(&["A"]), vec![Slice::barrier()]).unwrap_err();
        assert!(matches!(err, Error::TypeMismatch(_)));
    }

    #[test]
    fn hole_slices_typecheck_and_never_cross_each_other() {
        let s = sig()
            .extend_with_holes(&[
                HoleSpec::new(0, w(&["A"]), w(&["A"])),
                HoleSpec::new(1, w(&["B"]), w(&["B"])),
            ])
            .unwrap()
            .into_arc();
        let d = Diagram::from_slices(
            &s,
            w(&["A", "B"]),
            vec![Slice::hole(0, 0), Slice::hole(1, 1)],
        )
        .unwrap();
        assert!(!d.is_central());
        assert!(matches!(d.swap_adjacent(0), Err(Error::NotSwappable { .. })));
        // but a central generator slides across a disjoint hole
        let d2 = Diagram::from_slices(
            &s,
            w(&["A", "B"]),
            vec![Slice::hole(1, 1), Slice::gen(gen(&s, "s"), 0)],
        )
        .unwrap();
        let sw = d2.swap_adjacent(0).unwrap();
        assert_eq!(sw.slices()[0], Slice::gen(gen(&s, "s"), 0));
    }
}
