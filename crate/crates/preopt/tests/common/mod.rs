//! Test-side oracle for optic equality. Optics are held as parts: the
//! boxes before the hole, the hole's position, and the boxes after it.
//! Equality is decided by breadth-first search over coend moves (a central
//! box crossing the hole) and interchange moves inside each part, with the
//! wire arithmetic written here from scratch so the verdict does not rest
//! on the engine's own swap code.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use preopt::diagram::{Diagram, Slice, SliceKind};
use preopt::optic::{ObjPair, Optic};
use preopt::signature::{HoleSpec, Signature};
use preopt::{Error, Result};

/// One box: a generator occurrence with explicit widths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Node {
    pub name: String,
    pub central: bool,
    pub in_len: usize,
    pub out_len: usize,
    pub offset: usize,
}

/// An optic as raw parts. States compare structurally, so the BFS orbit
/// is a set of these.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartsState {
    pub before: Vec<Node>,
    pub hole_off: usize,
    pub after: Vec<Node>,
}

/// Window geometry of a box or a hole, enough to transport offsets.
#[derive(Debug, Clone, Copy)]
struct Window {
    offset: usize,
    in_len: usize,
    out_len: usize,
}

impl Node {
    fn window(&self) -> Window {
        Window { offset: self.offset, in_len: self.in_len, out_len: self.out_len }
    }

    fn at(&self, offset: usize) -> Node {
        let mut n = self.clone();
        n.offset = offset;
        n
    }
}

/// Entry point for cross-validating the arithmetic against the engine's
/// swap: windows given as (offset, in_len, out_len).
#[allow(dead_code)] // shared module; not every test binary cross-validates
pub fn exchange_raw(
    a: (usize, usize, usize),
    b: (usize, usize, usize),
) -> Option<(usize, usize)> {
    exchange(
        Window { offset: a.0, in_len: a.1, out_len: a.2 },
        Window { offset: b.0, in_len: b.1, out_len: b.2 },
    )
}

/// `a` acts first, `b` second. When their wire windows are disjoint the
/// pair can be reordered; the returned offsets are the windows transported
/// to the other coordinate system.
fn exchange(a: Window, b: Window) -> Option<(usize, usize)> {
    if b.offset + b.in_len <= a.offset {
        // b entirely to the left: its wires are untouched by a, while a
        // shifts by b's width change once b goes first
        let new_b = b.offset;
        let new_a = a.offset + b.out_len - b.in_len;
        Some((new_b, new_a))
    } else if b.offset >= a.offset + a.out_len {
        // b entirely to the right: undo a's width change on b's position
        let new_b = b.offset + a.in_len - a.out_len;
        let new_a = a.offset;
        Some((new_b, new_a))
    } else {
        None
    }
}

pub fn parts_state(o: &Optic) -> PartsState {
    let under = o.under();
    let sig = under.signature();
    let hpos = under
        .slices()
        .iter()
        .position(|s| matches!(s.kind, SliceKind::Hole(_)))
        .expect("an optic has a hole");
    let node = |s: &Slice| -> Node {
        match s.kind {
            SliceKind::Gen(id) => {
                let g = sig.generator(id);
                Node {
                    name: g.name.clone(),
                    central: g.central,
                    in_len: g.dom.len(),
                    out_len: g.cod.len(),
                    offset: s.offset,
                }
            }
            _ => panic!("oracle parts hold plain generator boxes"),
        }
    };
    PartsState {
        before: under.slices()[..hpos].iter().map(node).collect(),
        hole_off: under.slices()[hpos].offset,
        after: under.slices()[hpos + 1..].iter().map(node).collect(),
    }
}

fn hole_window(st: &PartsState, dst: &ObjPair) -> Window {
    Window { offset: st.hole_off, in_len: dst.fwd.len(), out_len: dst.bwd.len() }
}

/// All states reachable by legal moves: interchange inside a part needs
/// one central party, crossing the hole needs the crossing box central.
fn orbit(start: &PartsState, dst: &ObjPair, budget: usize) -> Result<BTreeSet<PartsState>> {
    let mut seen: BTreeSet<PartsState> = BTreeSet::new();
    let mut queue: VecDeque<PartsState> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(st) = queue.pop_front() {
        let push = |next: PartsState, seen: &mut BTreeSet<PartsState>, queue: &mut VecDeque<PartsState>| {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        };
        for part in [true, false] {
            let nodes = if part { &st.before } else { &st.after };
            for i in 0..nodes.len().saturating_sub(1) {
                let (a, b) = (&nodes[i], &nodes[i + 1]);
                if !(a.central || b.central) {
                    continue;
                }
                if let Some((nb, na)) = exchange(a.window(), b.window()) {
                    let mut next = st.clone();
                    let v = if part { &mut next.before } else { &mut next.after };
                    v[i] = b.at(nb);
                    v[i + 1] = a.at(na);
                    push(next, &mut seen, &mut queue);
                }
            }
        }
        // a central box at the end of the forward part crosses the hole
        if let Some(a) = st.before.last() {
            if a.central {
                if let Some((new_hole, new_a)) = exchange(a.window(), hole_window(&st, dst)) {
                    let mut next = st.clone();
                    let moved = next.before.pop().expect("checked nonempty").at(new_a);
                    next.hole_off = new_hole;
                    next.after.insert(0, moved);
                    push(next, &mut seen, &mut queue);
                }
            }
        }
        // a central box at the start of the backward part crosses back
        if let Some(b) = st.after.first() {
            if b.central {
                if let Some((new_b, new_hole)) = exchange(hole_window(&st, dst), b.window()) {
                    let mut next = st.clone();
                    let moved = next.after.remove(0).at(new_b);
                    next.hole_off = new_hole;
                    next.before.push(moved);
                    push(next, &mut seen, &mut queue);
                }
            }
        }
        if seen.len() > budget {
            return Err(Error::SizeExceeded(format!(
                "oracle orbit exceeded {budget} states"
            )));
        }
    }
    Ok(seen)
}

/// The oracle verdict: the two parts representations lie in one orbit.
pub fn oracle_optic_equal(o1: &Optic, o2: &Optic, budget: usize) -> Result<bool> {
    assert_eq!(o1.src(), o2.src(), "oracle compares parallel optics");
    assert_eq!(o1.dst(), o2.dst(), "oracle compares optics with one hole shape");
    let dst = o1.dst();
    let s1 = parts_state(o1);
    let s2 = parts_state(o2);
    Ok(orbit(&s1, &dst, budget)?.contains(&s2))
}

/// Rebuild an optic from a parts state over the base signature; inverse
/// of `parts_state` and the bridge back from mutated states.
pub fn rebuild(
    sig: &Arc<Signature>,
    dom: &preopt::signature::ObjectWord,
    st: &PartsState,
    dst: &ObjPair,
    slot: u32,
) -> Result<Optic> {
    let to_slices = |nodes: &[Node]| -> Result<Vec<Slice>> {
        nodes
            .iter()
            .map(|n| {
                let id = sig
                    .lookup(&n.name)
                    .ok_or_else(|| Error::mismatch(format!("unknown generator {}", n.name)))?;
                Ok(Slice::gen(id, n.offset))
            })
            .collect()
    };
    let f = Diagram::from_slices(sig, dom.clone(), to_slices(&st.before)?)?;
    let spec = HoleSpec::new(slot, dst.fwd.clone(), dst.bwd.clone());
    let g_dom = f.cod().splice(st.hole_off, dst.fwd.len(), &dst.bwd);
    let g = Diagram::from_slices(sig, g_dom, to_slices(&st.after)?)?;
    Optic::new(&f, st.hole_off, &spec, &g)
}

/// Apply up to `steps` random legal oracle moves; the result stays in the
/// same orbit, so the rebuilt optic must compare equal.
pub fn random_legal_walk(
    rng: &mut rand_chacha::ChaCha8Rng,
    st: &PartsState,
    dst: &ObjPair,
    steps: usize,
) -> PartsState {
    use rand::Rng;
    let mut cur = st.clone();
    for _ in 0..steps {
        let mut moves: Vec<PartsState> = Vec::new();
        for part in [true, false] {
            let nodes = if part { &cur.before } else { &cur.after };
            for i in 0..nodes.len().saturating_sub(1) {
                let (a, b) = (&nodes[i], &nodes[i + 1]);
                if !(a.central || b.central) {
                    continue;
                }
                if let Some((nb, na)) = exchange(a.window(), b.window()) {
                    let mut next = cur.clone();
                    let v = if part { &mut next.before } else { &mut next.after };
                    v[i] = b.at(nb);
                    v[i + 1] = a.at(na);
                    moves.push(next);
                }
            }
        }
        if let Some(a) = cur.before.last() {
            if a.central {
                if let Some((nh, na)) = exchange(a.window(), hole_window(&cur, dst)) {
                    let mut next = cur.clone();
                    let moved = next.before.pop().expect("nonempty").at(na);
                    next.hole_off = nh;
                    next.after.insert(0, moved);
                    moves.push(next);
                }
            }
        }
        if let Some(b) = cur.after.first() {
            if b.central {
                if let Some((nb, nh)) = exchange(hole_window(&cur, dst), b.window()) {
                    let mut next = cur.clone();
                    let moved = next.after.remove(0).at(nb);
                    next.hole_off = nh;
                    next.before.push(moved);
                    moves.push(next);
                }
            }
        }
        if moves.is_empty() {
            break;
        }
        cur = moves[rng.gen_range(0..moves.len())].clone();
    }
    cur
}

/// Force a wire-disjoint box across the hole regardless of centrality:
/// type-correct, but a congruence move only when the box is central.
pub fn forced_cross(st: &PartsState, dst: &ObjPair) -> Option<PartsState> {
    if let Some(a) = st.before.last() {
        if let Some((nh, na)) = exchange(a.window(), hole_window(st, dst)) {
            let mut next = st.clone();
            let moved = next.before.pop().expect("nonempty").at(na);
            next.hole_off = nh;
            next.after.insert(0, moved);
            return Some(next);
        }
    }
    if let Some(b) = st.after.first() {
        if let Some((nb, nh)) = exchange(hole_window(st, dst), b.window()) {
            let mut next = st.clone();
            let moved = next.after.remove(0).at(nb);
            next.hole_off = nh;
            next.before.push(moved);
            return Some(next);
        }
    }
    None
}

/// Replace one box by its same-boundary partner of the opposite
/// centrality (s <-> f on A, c <-> g on B in the demo signature).
pub fn flip_partner(st: &PartsState, index: usize) -> Option<PartsState> {
    let total = st.before.len() + st.after.len();
    if total == 0 {
        return None;
    }
    let i = index % total;
    let mut next = st.clone();
    let node = if i < next.before.len() {
        &mut next.before[i]
    } else {
        let j = i - next.before.len();
        &mut next.after[j]
    };
    let partner = match node.name.as_str() {
        "s" => "f",
        "f" => "s",
        "c" => "g",
        "g" => "c",
        _ => return None,
    };
    node.name = partner.to_string();
    node.central = !node.central;
    Some(next)
}
